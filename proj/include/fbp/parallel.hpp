#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fbp {

// Runs body(i) for i in [0, n) over up to `threads` workers pulling indices
// from a shared counter. Results are deterministic as long as body(i) writes
// only to its own slot; worker count never changes what is computed. The
// first exception wins and is rethrown after all workers drain.
template <typename F>
void parallel_for(int n, int threads, F&& body) {
  if (n <= 0) return;
  if (threads <= 1 || n == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    while (!failed.load(std::memory_order_relaxed)) {
      const int i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const int count = std::min<int>(threads, n);
    pool.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace fbp
