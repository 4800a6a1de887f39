// Limiting (m -> infinity, p fixed) coverage and scaled expected length, and
// the bridge to the Hjort-Claeskens correlation parameter.
#pragma once

#include <utility>
#include <vector>

#include "maci/exact.hpp"
#include "maci/quadrature.hpp"

namespace maci {

struct AsymptoticConfig {
  double d = 2.0;
  double alpha = 0.05;
  double rho_bar = 0.0;   // limit of rho as n grows
  void validate() const;  // |rho_bar| <= 0.999999
};

// Limiting coverage CP*(gamma, rho_bar): a single phi-weighted integral of
// the normal rectangle probability between the limiting standardized bounds
//   rho_bar k*(x) -/+ z_{1-alpha/2} r*(x, rho_bar),  x = y + gamma.
// Equals 1 - alpha identically when rho_bar = 0.
double coverage_probability_limit(double gamma, const AsymptoticConfig& acfg,
                                  const QuadratureSpec& quad);

// Minimum of CP*(., rho_bar) over gamma in [0, gamma_max].
MinCoverageResult min_coverage_limit(const AsymptoticConfig& acfg,
                                     const QuadratureSpec& quad,
                                     double gamma_max = 10.0);

// Limiting scaled expected length
//   [z_{1-alpha/2} / z_{(1+c*_min)/2}] Integral r*(y+gamma, rho_bar) phi(y) dy;
// c_min_star must come from a prior min_coverage_limit run.
double scaled_expected_length_limit(double gamma, const AsymptoticConfig& acfg,
                                    double c_min_star,
                                    const QuadratureSpec& quad);

// Correlation conversions: rho_hc = -rho_bar / sqrt(1 - rho_bar^2) and its
// inverse; the two compose to the identity.
double rho_hc_to_rho_bar(double rho_hc);
double rho_bar_to_rho_hc(double rho_bar);

// CP*/SEL* curves over a gamma grid; c*_min computed once.
CurveTable sweep_curve_limit(const AsymptoticConfig& acfg,
                             const std::vector<double>& gammas,
                             const QuadratureSpec& quad);

// The two limiting-coverage curves at nominal level 0.9 (d = 2) for
// rho_hc = 2/3 and rho_hc = 1, over gamma in [0, 10] step 0.1.
std::pair<CurveTable, CurveTable> hc_comparison_curves(const QuadratureSpec& quad);

}  // namespace maci
