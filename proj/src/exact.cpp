#include "maci/exact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "maci/parallel.hpp"
#include "maci/special_functions.hpp"

namespace maci {

void ParamPoint::validate() const {
  if (!std::isfinite(gamma))
    throw std::invalid_argument("ParamPoint: gamma must be finite");
  if (!(std::fabs(rho) <= 0.999999))
    throw std::invalid_argument("ParamPoint: |rho| must be <= 0.999999");
}

double pivot_lower(double gamma, double w, double rho, const TestbedConfig& cfg,
                   double t_quantile) {
  const KernelValues kv = eval_kernels(gamma / w, rho, cfg);
  return rho * w * kv.shift - t_quantile * w * kv.se;
}

double pivot_upper(double gamma, double w, double rho, const TestbedConfig& cfg,
                   double t_quantile) {
  const KernelValues kv = eval_kernels(gamma / w, rho, cfg);
  return rho * w * kv.shift + t_quantile * w * kv.se;
}

double pivot_lower(double gamma, double w, double rho, const TestbedConfig& cfg) {
  return pivot_lower(gamma, w, rho, cfg,
                     student_t_quantile(cfg.m, 1.0 - cfg.alpha / 2.0));
}

double pivot_upper(double gamma, double w, double rho, const TestbedConfig& cfg) {
  return pivot_upper(gamma, w, rho, cfg,
                     student_t_quantile(cfg.m, 1.0 - cfg.alpha / 2.0));
}

double coverage_probability(const ParamPoint& point, const TestbedConfig& cfg,
                            const QuadratureSpec& quad) {
  point.validate();
  cfg.validate();
  quad.validate();

  const double gamma = point.gamma;
  const double rho = point.rho;
  const double cond_var = 1.0 - rho * rho;
  const double tq = student_t_quantile(cfg.m, 1.0 - cfg.alpha / 2.0);

  QuadratureSpec inner = quad;
  inner.abs_tol = quad.abs_tol / 10.0;

  auto conditional_coverage = [&](double w) {
    return integrate_gauss_weighted(
        [&](double y) {
          const KernelValues kv = eval_kernels((y + gamma) / w, rho, cfg);
          const double center = rho * w * kv.shift;
          const double half = tq * w * kv.se;
          return normal_interval_prob(center - half, center + half, rho * y,
                                      cond_var);
        },
        inner);
  };
  return integrate_w_weighted(conditional_coverage, cfg.m, quad);
}

MinCoverageResult min_coverage(double rho, const TestbedConfig& cfg,
                               const QuadratureSpec& quad, double gamma_max) {
  if (!(gamma_max > 0.0))
    throw std::invalid_argument("min_coverage: gamma_max must be positive");
  constexpr int kGridPoints = 201;
  const ScalarMinimum best = minimize_scalar(
      [&](double gamma) {
        return coverage_probability(ParamPoint{gamma, rho}, cfg, quad);
      },
      0.0, gamma_max, 1e-6, kGridPoints);
  return MinCoverageResult{best.min, best.argmin, kGridPoints};
}

double scaled_expected_length(const ParamPoint& point, const TestbedConfig& cfg,
                              double c_min, const QuadratureSpec& quad) {
  point.validate();
  cfg.validate();
  quad.validate();
  if (!(c_min > 0.0 && c_min < 1.0))
    throw std::invalid_argument("scaled_expected_length: c_min must lie in (0,1)");

  const double gamma = point.gamma;
  const double rho = point.rho;
  const double tq = student_t_quantile(cfg.m, 1.0 - cfg.alpha / 2.0);
  const double tc = student_t_quantile(cfg.m, (1.0 + c_min) / 2.0);

  QuadratureSpec inner = quad;
  inner.abs_tol = quad.abs_tol / 10.0;

  auto mean_kernel_at = [&](double w) {
    return w * integrate_gauss_weighted(
                   [&](double y) { return se_kernel((y + gamma) / w, rho, cfg); },
                   inner);
  };
  const double mean_w_r = integrate_w_weighted(mean_kernel_at, cfg.m, quad);
  return tq / tc * inv_mean_w(cfg.m) * mean_w_r;
}

CurveTable sweep_curve(double rho, const TestbedConfig& cfg,
                       const std::vector<double>& gammas,
                       const QuadratureSpec& quad) {
  cfg.validate();
  quad.validate();
  if (gammas.empty())
    throw std::invalid_argument("sweep_curve: gamma grid must be nonempty");
  if (!std::is_sorted(gammas.begin(), gammas.end()))
    throw std::invalid_argument("sweep_curve: gamma grid must be ascending");
  if (gammas.front() < 0.0)
    throw std::invalid_argument("sweep_curve: gamma grid must be nonnegative");

  // The minimization phase tolerates a looser quadrature target; reported
  // grid values use quad.abs_tol as given.
  QuadratureSpec search = quad;
  search.abs_tol = std::max(quad.abs_tol, 1e-7);
  const double gamma_max = std::max(10.0, gammas.back());
  const MinCoverageResult mc = min_coverage(rho, cfg, search, gamma_max);

  CurveTable table;
  table.config = cfg;
  table.rho = rho;
  table.alpha = cfg.alpha;
  table.d = cfg.d;
  table.c_min = mc.c_min;
  table.rows.resize(gammas.size());
  parallel_for(gammas.size(), [&](std::size_t i) {
    const ParamPoint pt{gammas[i], rho};
    CurveRow row;
    row.abs_gamma = gammas[i];
    row.cp = coverage_probability(pt, cfg, quad);
    row.sel = scaled_expected_length(pt, cfg, mc.c_min, quad);
    table.rows[i] = row;
  });
  return table;
}

}  // namespace maci
