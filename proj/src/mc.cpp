#include "maci/mc.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "maci/parallel.hpp"
#include "maci/rng.hpp"
#include "maci/special_functions.hpp"

namespace maci {

void McSettings::validate() const {
  if (replicates < 1)
    throw std::invalid_argument("McSettings: replicates must be >= 1");
}

namespace {

double standard_normal(ReplicateStream& stream) {
  return normal_quantile(stream.uniform());
}

// W = sqrt(Q/m): Q as a sum of m squared normals for small m, otherwise a
// Marsaglia-Tsang gamma(m/2, 2) variate driven by the same stream.
double sample_w(ReplicateStream& stream, int m) {
  if (m <= 50) {
    double q = 0.0;
    for (int j = 0; j < m; ++j) {
      const double z = standard_normal(stream);
      q += z * z;
    }
    return std::sqrt(q / m);
  }
  const double shape = 0.5 * m;
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = standard_normal(stream);
    const double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    const double v = t * t * t;
    const double u = stream.uniform();
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
      const double q = 2.0 * d * v;  // gamma(shape, 2) == chi^2_m
      return std::sqrt(q / m);
    }
  }
}

JointDraw draw_at(double gamma, double rho, int m, std::uint64_t seed,
                  long long index, bool antithetic) {
  const std::uint64_t stream_index =
      antithetic ? static_cast<std::uint64_t>(index / 2)
                 : static_cast<std::uint64_t>(index);
  const bool mirrored = antithetic && (index & 1);
  ReplicateStream stream(seed, stream_index, mirrored);

  const double z1 = standard_normal(stream);
  const double z2 = standard_normal(stream);
  JointDraw draw;
  draw.g = z1;
  draw.gamma_tilde = gamma + rho * z1 + std::sqrt(1.0 - rho * rho) * z2;
  draw.w = sample_w(stream, m);
  return draw;
}

// Per-chunk partial sums, merged in chunk order so results do not depend on
// the thread count.
struct ChunkSums {
  long long count = 0;
  double sum = 0.0;
  double sumsq = 0.0;
};

constexpr long long kChunk = 8192;

template <typename PerReplicate>
std::vector<ChunkSums> accumulate_chunks(long long replicates,
                                         const PerReplicate& per_replicate) {
  const long long n_chunks = (replicates + kChunk - 1) / kChunk;
  std::vector<ChunkSums> partials(static_cast<std::size_t>(n_chunks));
  parallel_for(static_cast<std::size_t>(n_chunks), [&](std::size_t chunk) {
    const long long lo = static_cast<long long>(chunk) * kChunk;
    const long long hi = std::min(lo + kChunk, replicates);
    ChunkSums sums;
    for (long long i = lo; i < hi; ++i) per_replicate(i, sums);
    partials[chunk] = sums;
  });
  return partials;
}

ChunkSums merge_in_order(const std::vector<ChunkSums>& partials) {
  ChunkSums total;
  for (const ChunkSums& part : partials) {
    total.count += part.count;
    total.sum += part.sum;
    total.sumsq += part.sumsq;
  }
  return total;
}

}  // namespace

JointDraw sample_joint_at(const ParamPoint& point, const TestbedConfig& cfg,
                          const McSettings& settings, long long index) {
  point.validate();
  cfg.validate();
  settings.validate();
  return draw_at(point.gamma, point.rho, cfg.m, settings.seed, index,
                 settings.antithetic);
}

std::vector<JointDraw> sample_joint(const ParamPoint& point,
                                    const TestbedConfig& cfg,
                                    const McSettings& settings) {
  point.validate();
  cfg.validate();
  settings.validate();
  std::vector<JointDraw> draws(static_cast<std::size_t>(settings.replicates));
  parallel_for(draws.size(), [&](std::size_t i) {
    draws[i] = draw_at(point.gamma, point.rho, cfg.m, settings.seed,
                       static_cast<long long>(i), settings.antithetic);
  });
  return draws;
}

McEstimate mc_coverage(const ParamPoint& point, const TestbedConfig& cfg,
                       const McSettings& settings) {
  point.validate();
  cfg.validate();
  settings.validate();

  const double tq = student_t_quantile(cfg.m, 1.0 - cfg.alpha / 2.0);
  const double rho = point.rho;
  const auto partials = accumulate_chunks(
      settings.replicates, [&](long long i, ChunkSums& sums) {
        const JointDraw draw = draw_at(point.gamma, rho, cfg.m, settings.seed,
                                       i, settings.antithetic);
        const KernelValues kv =
            eval_kernels(draw.gamma_tilde / draw.w, rho, cfg);
        const double center = rho * draw.w * kv.shift;
        const double half = tq * draw.w * kv.se;
        if (center - half <= draw.g && draw.g <= center + half) ++sums.count;
      });
  const ChunkSums total = merge_in_order(partials);

  const double n = static_cast<double>(settings.replicates);
  McEstimate est;
  est.estimate = static_cast<double>(total.count) / n;
  est.std_err = std::sqrt(est.estimate * (1.0 - est.estimate) / n);
  return est;
}

McEstimate mc_scaled_length(const ParamPoint& point, const TestbedConfig& cfg,
                            double c_min, const McSettings& settings) {
  point.validate();
  cfg.validate();
  settings.validate();
  if (!(c_min > 0.0 && c_min < 1.0))
    throw std::invalid_argument("mc_scaled_length: c_min must lie in (0,1)");

  const double rho = point.rho;
  const auto partials = accumulate_chunks(
      settings.replicates, [&](long long i, ChunkSums& sums) {
        const JointDraw draw = draw_at(point.gamma, rho, cfg.m, settings.seed,
                                       i, settings.antithetic);
        const double v =
            draw.w * se_kernel(draw.gamma_tilde / draw.w, rho, cfg);
        sums.sum += v;
        sums.sumsq += v * v;
      });
  const ChunkSums total = merge_in_order(partials);

  const double n = static_cast<double>(settings.replicates);
  const double mean = total.sum / n;
  const double var = std::max(total.sumsq / n - mean * mean, 0.0);
  const double tq = student_t_quantile(cfg.m, 1.0 - cfg.alpha / 2.0);
  const double tc = student_t_quantile(cfg.m, (1.0 + c_min) / 2.0);
  const double scale = tq / tc * inv_mean_w(cfg.m);

  McEstimate est;
  est.estimate = scale * mean;
  est.std_err = scale * std::sqrt(var / n);
  return est;
}

RegressionMcResult mc_regression_coverage(const RegressionTemplate& tmpl,
                                          double theta_true, double gamma_true,
                                          const TestbedConfig& cfg,
                                          const McSettings& settings) {
  settings.validate();
  cfg.validate();
  if (!(tmpl.sigma > 0.0))
    throw std::invalid_argument("mc_regression_coverage: sigma must be positive");

  const int n = static_cast<int>(tmpl.X.rows());
  const int p = static_cast<int>(tmpl.X.cols());
  if (cfg.m != n - p || cfg.p != p)
    throw std::invalid_argument("mc_regression_coverage: cfg (m, p) must match X");

  // Design scalars fix v_tau; beta is then pinned inside span{a, c} by the
  // requested theta and tau = gamma sigma v_tau^{1/2}.
  RegressionProblem scalars_probe{tmpl.X, Eigen::VectorXd::Zero(n), tmpl.a,
                                  tmpl.c, tmpl.t};
  const DerivedScalars sc = derived_scalars(scalars_probe);
  const double tau_true = gamma_true * tmpl.sigma * std::sqrt(sc.v_tau);

  Eigen::Matrix2d gram;
  gram << tmpl.a.dot(tmpl.a), tmpl.a.dot(tmpl.c),
          tmpl.a.dot(tmpl.c), tmpl.c.dot(tmpl.c);
  const Eigen::Vector2d rhs(theta_true, tmpl.t + tau_true);
  const Eigen::Vector2d coef = gram.ldlt().solve(rhs);
  const Eigen::VectorXd beta = coef[0] * tmpl.a + coef[1] * tmpl.c;

  const Eigen::VectorXd mean_y = tmpl.X * beta;
  const auto partials = accumulate_chunks(
      settings.replicates, [&](long long i, ChunkSums& sums) {
        ReplicateStream stream(settings.seed, static_cast<std::uint64_t>(i));
        RegressionProblem prob{tmpl.X, mean_y, tmpl.a, tmpl.c, tmpl.t};
        for (int row = 0; row < n; ++row)
          prob.y[row] += tmpl.sigma * normal_quantile(stream.uniform());
        const IntervalResult res = bba_interval(prob, cfg);
        if (res.lower <= theta_true && theta_true <= res.upper) ++sums.count;
        sums.sum += res.upper - res.lower;
      });
  const ChunkSums total = merge_in_order(partials);

  const double reps = static_cast<double>(settings.replicates);
  RegressionMcResult out;
  out.coverage = static_cast<double>(total.count) / reps;
  out.coverage_std_err = std::sqrt(out.coverage * (1.0 - out.coverage) / reps);
  out.mean_length = total.sum / reps;
  return out;
}

}  // namespace maci
