// Monte Carlo oracle: estimates coverage and scaled expected length from the
// (pivot, gamma_tilde, W) representation and from full simulated regressions,
// independently of the quadrature path.
#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "maci/exact.hpp"
#include "maci/testbed.hpp"
#include "maci/weights.hpp"

namespace maci {

struct McSettings {
  long long replicates = 1'000'000;
  std::uint64_t seed = 1;
  bool antithetic = false;
  void validate() const;  // replicates >= 1
};

struct McEstimate {
  double estimate = 0.0;
  double std_err = 0.0;
};

// One draw of the joint law: pivot g, shifted departure gamma_tilde (unit
// variances, correlation rho, means 0 and gamma) and the independent scaled
// residual sd w = sqrt(chi^2_m / m).
struct JointDraw {
  double g = 0.0;
  double gamma_tilde = 0.0;
  double w = 0.0;
};

// Replicate index -> draw, as a pure function of (settings.seed, index).
JointDraw sample_joint_at(const ParamPoint& point, const TestbedConfig& cfg,
                          const McSettings& settings, long long index);

// All draws materialized (test/diagnostic use; prefer the estimators below
// for large replicate counts).
std::vector<JointDraw> sample_joint(const ParamPoint& point,
                                    const TestbedConfig& cfg,
                                    const McSettings& settings);

// Fraction of draws with pivot_lower <= g <= pivot_upper, with binomial
// standard error.  Bit-reproducible for a fixed seed at any thread count.
McEstimate mc_coverage(const ParamPoint& point, const TestbedConfig& cfg,
                       const McSettings& settings);

// Sample analogue of the scaled expected length: the mean of
// w r(gamma_tilde/w, rho) times the t-quantile ratio over the closed-form
// E(W); delta-method standard error.  c_min must come from min_coverage.
McEstimate mc_scaled_length(const ParamPoint& point, const TestbedConfig& cfg,
                            double c_min, const McSettings& settings);

// Fixed design for end-to-end simulation; beta is derived from the requested
// (theta, gamma) inside mc_regression_coverage.
struct RegressionTemplate {
  Eigen::MatrixXd X;
  Eigen::VectorXd a;
  Eigen::VectorXd c;
  double t = 0.0;
  double sigma = 1.0;
};

struct RegressionMcResult {
  double coverage = 0.0;
  double coverage_std_err = 0.0;
  double mean_length = 0.0;
};

// Simulates full (X, y) datasets under the full model, runs bba_interval on
// each, and counts coverage of the true theta.  Agrees with mc_coverage and
// coverage_probability at the design's implied (gamma, rho, m, p).
RegressionMcResult mc_regression_coverage(const RegressionTemplate& tmpl,
                                          double theta_true, double gamma_true,
                                          const TestbedConfig& cfg,
                                          const McSettings& settings);

}  // namespace maci
