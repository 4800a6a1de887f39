// Two-nested-linear-models testbed: least squares, derived scalars and the
// model-averaged confidence interval built from raw data.
#pragma once

#include <string>

#include <Eigen/Dense>

#include "maci/weights.hpp"

namespace maci {

// y = X beta + noise with interest parameter theta = a'beta; the simpler
// model constrains tau = c'beta - t to zero.
struct RegressionProblem {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  Eigen::VectorXd a;
  Eigen::VectorXd c;
  double t = 0.0;

  int n() const { return static_cast<int>(X.rows()); }
  int p() const { return static_cast<int>(X.cols()); }
  void validate() const;  // shape checks; throws std::invalid_argument
};

struct LeastSquaresFit {
  Eigen::VectorXd beta_hat;
  double sigma_hat2 = 0.0;  // RSS / (n - p)
  double rss = 0.0;
};

struct DerivedScalars {
  double v_theta = 0.0;  // var(theta_hat) / sigma^2
  double v_tau = 0.0;    // var(tau_hat) / sigma^2
  double rho = 0.0;      // corr(theta_hat, tau_hat)
  int m = 0;             // n - p
};

struct IntervalResult {
  double theta_hat = 0.0;    // full-model estimate a'beta_hat
  double theta_hat_1 = 0.0;  // simpler-model estimate
  double theta_tilde = 0.0;  // model-averaged center
  double sigma_hat = 0.0;
  double gamma_hat = 0.0;    // tau_hat / (sigma_hat v_tau^{1/2})
  double w1_value = 0.0;     // weight on the simpler model
  double se = 0.0;           // sigma_hat v_theta^{1/2} r(gamma_hat, rho)
  double lower = 0.0;
  double upper = 0.0;
};

// Least squares by Householder QR; sigma_hat2 uses the unbiased divisor
// n - p.  Throws on rank-deficient X or n <= p.
LeastSquaresFit fit(const RegressionProblem& problem);

// v_theta = a'(X'X)^{-1}a, v_tau = c'(X'X)^{-1}c and their correlation.
// Throws when the contrasts are numerically collinear (|rho| >= 1 - 1e-12).
DerivedScalars derived_scalars(const RegressionProblem& problem);

// Estimate of theta under the simpler model:
//   theta_hat - rho v_theta^{1/2} tau_hat / v_tau^{1/2}.
double model1_estimate(double theta_hat, double tau_hat,
                       const DerivedScalars& scalars);

// The model-averaged interval and every intermediate statistic.  cfg.m and
// cfg.p must match the problem shape.  Throws on a perfect fit
// (sigma_hat2 < 1e-300), where gamma_hat is undefined.
IntervalResult bba_interval(const RegressionProblem& problem,
                            const TestbedConfig& cfg);

struct RssPair {
  double rss1 = 0.0;  // residual sum of squares of the constrained fit
  double rss2 = 0.0;  // m * sigma_hat2 from the full fit
};

// Fits the simpler model by eliminating one coordinate along c and returns
// both residual sums of squares; rss1 = tau_hat^2 / v_tau + rss2 holds.
RssPair model_rss(const RegressionProblem& problem);

// Plain-text problem format: header "n p", then n rows of p reals (X), then
// n reals (y), p reals (a), p reals (c) and one real (t).  Parse errors
// carry 1-based line numbers and the section being read.
RegressionProblem read_problem_file(const std::string& path);

}  // namespace maci
