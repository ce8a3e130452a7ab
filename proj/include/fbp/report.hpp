#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "fbp/estimator.hpp"
#include "fbp/moments.hpp"
#include "fbp/process.hpp"

namespace fbp {

// All floating-point output goes through %.17g so equal doubles always render
// to equal bytes; output comparison doubles as a determinism check.
std::string fmt17(double value);

// Resolved configuration as ordered key/value text (the config-file dialect).
using ConfigItems = std::vector<std::pair<std::string, std::string>>;

void write_config(std::ostream& out, const ConfigItems& items);

// `path_id,time,population`, one block per path including the (0, initial) row.
void write_paths_csv(std::ostream& out, const std::vector<SamplePath>& paths);

// `t,mean,variance,second_moment`
void write_moments_csv(std::ostream& out, const std::vector<MomentPoint>& points);

struct CovarianceRow {
  double s;
  double t;
  double covariance;
  double correlation;
  double asymptotic_covariance;
  double asymptotic_correlation;
};

// `s,t,covariance,correlation,asymptotic_covariance,asymptotic_correlation`
void write_covariance_csv(std::ostream& out, const std::vector<CovarianceRow>& rows);

// `replicate,lambda_hat,nu_hat,residual,converged`
void write_replicates_csv(std::ostream& out, const std::vector<ReplicateRecord>& records);

void write_estimate_json(std::ostream& out, const EstimateResult& result,
                         const MomentSummary& summary, const ConfigItems& config);

void write_study_json(std::ostream& out, const McStudyReport& report,
                      const ConfigItems& config);

void write_lrd_json(std::ostream& out, const std::string& mode, const DependenceFit& fit,
                    const std::string& classification, const ConfigItems& config);

}  // namespace fbp
