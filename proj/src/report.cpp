#include "fbp/report.hpp"

#include <cstdio>

namespace fbp {

namespace {

// Minimal JSON emitter for the fixed report shapes: objects only, insertion
// order preserved, numbers via fmt17.
class JsonObject {
 public:
  JsonObject(std::ostream& out, int indent = 0) : out_(out), indent_(indent) {
    out_ << "{";
  }

  void field(const std::string& name, const std::string& text, bool quoted) {
    separator();
    out_ << '"' << name << "\": ";
    if (quoted) {
      out_ << '"';
      for (const char c : text) {
        if (c == '"' || c == '\\') out_ << '\\';
        out_ << c;
      }
      out_ << '"';
    } else {
      out_ << text;
    }
  }

  void field(const std::string& name, double value) { field(name, fmt17(value), false); }
  void field(const std::string& name, int value) {
    field(name, std::to_string(value), false);
  }
  void field(const std::string& name, std::uint64_t value) {
    field(name, std::to_string(value), false);
  }
  void field(const std::string& name, bool value) {
    field(name, value ? "true" : "false", false);
  }
  void text_field(const std::string& name, const std::string& value) {
    field(name, value, true);
  }

  JsonObject object_field(const std::string& name) {
    separator();
    out_ << '"' << name << "\": ";
    return JsonObject(out_, indent_ + 1);
  }

  void close() {
    out_ << "\n";
    pad(indent_);
    out_ << "}";
    if (indent_ == 0) out_ << "\n";
  }

 private:
  void separator() {
    out_ << (first_ ? "\n" : ",\n");
    first_ = false;
    pad(indent_ + 1);
  }

  void pad(int levels) {
    for (int i = 0; i < 2 * levels; ++i) out_ << ' ';
  }

  std::ostream& out_;
  int indent_;
  bool first_ = true;
};

void write_config_object(JsonObject& parent, const ConfigItems& config) {
  JsonObject obj = parent.object_field("config");
  for (const auto& [key, value] : config) {
    obj.text_field(key, value);
  }
  obj.close();
}

void write_stats_object(JsonObject& parent, const std::string& name,
                        const ParamStats& stats) {
  JsonObject obj = parent.object_field(name);
  obj.field("mean", stats.mean);
  obj.field("mad", stats.mad);
  obj.field("mse", stats.mse);
  obj.field("bias_pct", stats.percent_bias);
  obj.field("cv", stats.cv);
  obj.close();
}

}  // namespace

std::string fmt17(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_config(std::ostream& out, const ConfigItems& items) {
  for (const auto& [key, value] : items) {
    // Values with separators or comment characters are quoted so the file
    // reads back as written (a bare comma would otherwise parse as a list).
    const bool quote =
        value.empty() || value.find_first_of(" \t,#\"=[]") != std::string::npos;
    out << key << "=";
    if (quote) {
      out << '"';
      for (const char c : value) {
        if (c == '"' || c == '\\') out << '\\';
        out << c;
      }
      out << '"';
    } else {
      out << value;
    }
    out << "\n";
  }
}

void write_paths_csv(std::ostream& out, const std::vector<SamplePath>& paths) {
  out << "path_id,time,population\n";
  for (std::size_t id = 0; id < paths.size(); ++id) {
    const SamplePath& path = paths[id];
    out << id << ",0," << path.initial << "\n";
    for (const PathEvent& event : path.events) {
      out << id << "," << fmt17(event.time) << "," << event.population << "\n";
    }
  }
}

void write_moments_csv(std::ostream& out, const std::vector<MomentPoint>& points) {
  out << "t,mean,variance,second_moment\n";
  for (const MomentPoint& point : points) {
    out << fmt17(point.t) << "," << fmt17(point.mean) << "," << fmt17(point.variance)
        << "," << fmt17(point.second_moment) << "\n";
  }
}

void write_covariance_csv(std::ostream& out, const std::vector<CovarianceRow>& rows) {
  out << "s,t,covariance,correlation,asymptotic_covariance,asymptotic_correlation\n";
  for (const CovarianceRow& row : rows) {
    out << fmt17(row.s) << "," << fmt17(row.t) << "," << fmt17(row.covariance) << ","
        << fmt17(row.correlation) << "," << fmt17(row.asymptotic_covariance) << ","
        << fmt17(row.asymptotic_correlation) << "\n";
  }
}

void write_replicates_csv(std::ostream& out, const std::vector<ReplicateRecord>& records) {
  out << "replicate,lambda_hat,nu_hat,residual,converged\n";
  for (const ReplicateRecord& record : records) {
    out << record.replicate << "," << fmt17(record.lambda_hat) << ","
        << fmt17(record.nu_hat) << "," << fmt17(record.residual) << ","
        << (record.converged ? 1 : 0) << "\n";
  }
}

void write_estimate_json(std::ostream& out, const EstimateResult& result,
                         const MomentSummary& summary, const ConfigItems& config) {
  JsonObject root(out);
  root.field("lambda_hat", result.lambda_hat);
  root.field("nu_hat", result.nu_hat);
  root.field("residual_norm", result.residual_norm);
  root.field("iterations", result.iterations);
  root.field("converged", result.converged);
  {
    JsonObject obj = root.object_field("summary");
    obj.field("m1", summary.m1);
    obj.field("m2", summary.m2);
    obj.field("sample_size", summary.sample_size);
    obj.field("observation_time", summary.observation_time);
    obj.close();
  }
  write_config_object(root, config);
  root.close();
}

void write_study_json(std::ostream& out, const McStudyReport& report,
                      const ConfigItems& config) {
  JsonObject root(out);
  {
    JsonObject obj = root.object_field("true_params");
    obj.field("lambda", report.true_params.lambda);
    obj.field("mu", report.true_params.mu);
    obj.field("nu", report.true_params.nu);
    obj.field("N", report.true_params.capacity);
    obj.field("M", report.true_params.initial);
    obj.close();
  }
  root.field("J", report.paths_per_replicate);
  root.field("K", report.replicates);
  root.field("T", report.observation_time);
  root.field("seed", report.seed);
  write_stats_object(root, "lambda", report.lambda);
  write_stats_object(root, "nu", report.nu);
  root.field("failures", report.failures);
  write_config_object(root, config);
  root.close();
}

void write_lrd_json(std::ostream& out, const std::string& mode, const DependenceFit& fit,
                    const std::string& classification, const ConfigItems& config) {
  JsonObject root(out);
  root.text_field("mode", mode);
  root.field("exponent", fit.exponent);
  root.field("intercept", fit.intercept);
  root.field("r_squared", fit.r_squared);
  root.text_field("classification", classification);
  write_config_object(root, config);
  root.close();
}

}  // namespace fbp
