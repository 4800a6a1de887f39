#include "maci/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "maci/parallel.hpp"
#include "maci/special_functions.hpp"

namespace maci {

void AsymptoticConfig::validate() const {
  if (!(d > 0.0)) throw std::invalid_argument("AsymptoticConfig: d must be positive");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("AsymptoticConfig: alpha must lie in (0,1)");
  if (!(std::fabs(rho_bar) <= 0.999999))
    throw std::invalid_argument("AsymptoticConfig: |rho_bar| must be <= 0.999999");
}

double coverage_probability_limit(double gamma, const AsymptoticConfig& acfg,
                                  const QuadratureSpec& quad) {
  acfg.validate();
  quad.validate();
  const double rho = acfg.rho_bar;
  const double cond_var = 1.0 - rho * rho;
  const double z = normal_quantile(1.0 - acfg.alpha / 2.0);
  return integrate_gauss_weighted(
      [&](double y) {
        const double x = y + gamma;
        const double center = rho * center_shift_limit(x, acfg.d);
        const double half = z * se_kernel_limit(x, rho, acfg.d);
        return normal_interval_prob(center - half, center + half, rho * y,
                                    cond_var);
      },
      quad);
}

MinCoverageResult min_coverage_limit(const AsymptoticConfig& acfg,
                                     const QuadratureSpec& quad,
                                     double gamma_max) {
  if (!(gamma_max > 0.0))
    throw std::invalid_argument("min_coverage_limit: gamma_max must be positive");
  constexpr int kGridPoints = 201;
  const ScalarMinimum best = minimize_scalar(
      [&](double gamma) { return coverage_probability_limit(gamma, acfg, quad); },
      0.0, gamma_max, 1e-6, kGridPoints);
  return MinCoverageResult{best.min, best.argmin, kGridPoints};
}

double scaled_expected_length_limit(double gamma, const AsymptoticConfig& acfg,
                                    double c_min_star,
                                    const QuadratureSpec& quad) {
  acfg.validate();
  quad.validate();
  if (!(c_min_star > 0.0 && c_min_star < 1.0))
    throw std::invalid_argument(
        "scaled_expected_length_limit: c_min_star must lie in (0,1)");
  const double z = normal_quantile(1.0 - acfg.alpha / 2.0);
  const double zc = normal_quantile((1.0 + c_min_star) / 2.0);
  const double mean_kernel = integrate_gauss_weighted(
      [&](double y) { return se_kernel_limit(y + gamma, acfg.rho_bar, acfg.d); },
      quad);
  return z / zc * mean_kernel;
}

double rho_hc_to_rho_bar(double rho_hc) {
  if (!std::isfinite(rho_hc))
    throw std::invalid_argument("rho_hc_to_rho_bar: rho_hc must be finite");
  return -rho_hc / std::sqrt(1.0 + rho_hc * rho_hc);
}

double rho_bar_to_rho_hc(double rho_bar) {
  if (!(std::fabs(rho_bar) < 1.0))
    throw std::invalid_argument("rho_bar_to_rho_hc: |rho_bar| must be < 1");
  return -rho_bar / std::sqrt(1.0 - rho_bar * rho_bar);
}

CurveTable sweep_curve_limit(const AsymptoticConfig& acfg,
                             const std::vector<double>& gammas,
                             const QuadratureSpec& quad) {
  acfg.validate();
  quad.validate();
  if (gammas.empty())
    throw std::invalid_argument("sweep_curve_limit: gamma grid must be nonempty");
  if (!std::is_sorted(gammas.begin(), gammas.end()))
    throw std::invalid_argument("sweep_curve_limit: gamma grid must be ascending");
  if (gammas.front() < 0.0)
    throw std::invalid_argument("sweep_curve_limit: gamma grid must be nonnegative");

  const double gamma_max = std::max(10.0, gammas.back());
  const MinCoverageResult mc = min_coverage_limit(acfg, quad, gamma_max);

  CurveTable table;
  table.rho = acfg.rho_bar;
  table.alpha = acfg.alpha;
  table.d = acfg.d;
  table.c_min = mc.c_min;
  table.rows.resize(gammas.size());
  parallel_for(gammas.size(), [&](std::size_t i) {
    CurveRow row;
    row.abs_gamma = gammas[i];
    row.cp = coverage_probability_limit(gammas[i], acfg, quad);
    row.sel = scaled_expected_length_limit(gammas[i], acfg, mc.c_min, quad);
    table.rows[i] = row;
  });
  return table;
}

std::pair<CurveTable, CurveTable> hc_comparison_curves(const QuadratureSpec& quad) {
  quad.validate();
  std::vector<double> gammas;
  for (int i = 0; i <= 100; ++i) gammas.push_back(i * 0.1);

  auto cp_curve = [&](double rho_hc) {
    const AsymptoticConfig acfg{2.0, 0.1, std::fabs(rho_hc_to_rho_bar(rho_hc))};
    CurveTable table;
    table.rho = acfg.rho_bar;
    table.alpha = acfg.alpha;
    table.d = acfg.d;
    table.c_min = min_coverage_limit(acfg, quad, 10.0).c_min;
    table.rows.resize(gammas.size());
    parallel_for(gammas.size(), [&](std::size_t i) {
      CurveRow row;
      row.abs_gamma = gammas[i];
      row.cp = coverage_probability_limit(gammas[i], acfg, quad);
      table.rows[i] = row;
    });
    return table;
  };
  return {cp_curve(2.0 / 3.0), cp_curve(1.0)};
}

}  // namespace maci
