// Exact finite-sample coverage probability and scaled expected length of the
// model-averaged interval, by nested adaptive quadrature.
#pragma once

#include <optional>
#include <vector>

#include "maci/quadrature.hpp"
#include "maci/weights.hpp"

namespace maci {

// Evaluation coordinate: standardized model departure gamma and the
// correlation rho between the interest and constraint estimators.
struct ParamPoint {
  double gamma = 0.0;
  double rho = 0.0;
  void validate() const;  // |rho| <= 0.999999, gamma finite
};

struct MinCoverageResult {
  double c_min = 0.0;
  double gamma_at_min = 0.0;
  int grid_points = 0;
};

struct CurveRow {
  double abs_gamma = 0.0;
  std::optional<double> cp;
  std::optional<double> sel;
};

// A curve over |gamma| plus the metadata needed to reproduce it.  config is
// absent for limiting (m -> infinity) curves.
struct CurveTable {
  std::optional<TestbedConfig> config;
  double rho = 0.0;  // rho, or rho_bar for limiting curves
  double alpha = 0.05;
  double d = 2.0;
  std::vector<CurveRow> rows;
  std::optional<double> c_min;
};

// Standardized bounds of the coverage event at scaled residual sd w:
//   rho w k(gamma/w) -/+ t_{m,1-alpha/2} w r(gamma/w, rho).
// The overloads taking t_quantile avoid recomputing it in hot loops.
double pivot_lower(double gamma, double w, double rho, const TestbedConfig& cfg);
double pivot_upper(double gamma, double w, double rho, const TestbedConfig& cfg);
double pivot_lower(double gamma, double w, double rho, const TestbedConfig& cfg,
                   double t_quantile);
double pivot_upper(double gamma, double w, double rho, const TestbedConfig& cfg,
                   double t_quantile);

// Exact coverage probability CP(gamma, rho): the probability that the pivot
// falls between the standardized bounds, integrated over the independent
// (pivot offset, W) pair.  Inner integrals run at a tenth of quad.abs_tol so
// the composite error is dominated by quad.abs_tol.  Even in gamma and rho.
double coverage_probability(const ParamPoint& point, const TestbedConfig& cfg,
                            const QuadratureSpec& quad);

// Minimum of CP(., rho) over gamma in [0, gamma_max] (evenness in gamma
// makes the restriction lossless).
MinCoverageResult min_coverage(double rho, const TestbedConfig& cfg,
                               const QuadratureSpec& quad,
                               double gamma_max = 10.0);

// Expected length of the model-averaged interval divided by the expected
// length of the standard full-model interval calibrated to coverage c_min.
// c_min must come from a prior min_coverage run at the same (rho, cfg).
double scaled_expected_length(const ParamPoint& point, const TestbedConfig& cfg,
                              double c_min, const QuadratureSpec& quad);

// c_min once, then CP and SEL on the gamma grid (grid points evaluated
// concurrently).  The minimization phase never runs looser than 1e-7; grid
// values use quad.abs_tol as given.
CurveTable sweep_curve(double rho, const TestbedConfig& cfg,
                       const std::vector<double>& gammas,
                       const QuadratureSpec& quad);

}  // namespace maci
