#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "maci/exact.hpp"
#include "maci/mc.hpp"
#include "maci/special_functions.hpp"

using namespace maci;

namespace {

TestbedConfig cfg_of(int m, int p, double d = 2.0, double alpha = 0.05) {
  return TestbedConfig{m, p, d, alpha};
}

McSettings settings_of(long long n, std::uint64_t seed = 20240611) {
  McSettings s;
  s.replicates = n;
  s.seed = seed;
  return s;
}

// orthonormal-column design realizing a given correlation between contrasts
RegressionTemplate engineered_design(int m, int p, double rho, double sigma = 1.0) {
  const int n = m + p;
  RegressionTemplate tmpl;
  tmpl.X = Eigen::MatrixXd::Zero(n, p);
  for (int j = 0; j < p; ++j) tmpl.X(j, j) = 1.0;
  tmpl.a = Eigen::VectorXd::Zero(p);
  tmpl.a[0] = 1.0;
  tmpl.c = Eigen::VectorXd::Zero(p);
  tmpl.c[0] = rho;
  tmpl.c[1] = std::sqrt(1.0 - rho * rho);
  tmpl.t = 0.0;
  tmpl.sigma = sigma;
  return tmpl;
}

}  // namespace

TEST_CASE("McSettings validation") {
  CHECK_THROWS_AS(settings_of(0).validate(), std::invalid_argument);
  CHECK_NOTHROW(settings_of(1).validate());
}

TEST_CASE("joint sample reproduces means, correlation and W moments") {
  const ParamPoint pt{1.5, 0.7};
  const TestbedConfig cfg = cfg_of(3, 3);
  const auto draws = sample_joint(pt, cfg, settings_of(1000000));

  double sum_g = 0.0, sum_gt = 0.0, sum_gg = 0.0, sum_gtgt = 0.0, sum_cross = 0.0;
  double sum_w2 = 0.0;
  for (const JointDraw& d : draws) {
    sum_g += d.g;
    sum_gt += d.gamma_tilde;
    sum_gg += d.g * d.g;
    sum_gtgt += d.gamma_tilde * d.gamma_tilde;
    sum_cross += d.g * d.gamma_tilde;
    sum_w2 += d.w * d.w;
  }
  const double n = static_cast<double>(draws.size());
  const double mean_g = sum_g / n;
  const double mean_gt = sum_gt / n;
  const double var_g = sum_gg / n - mean_g * mean_g;
  const double var_gt = sum_gtgt / n - mean_gt * mean_gt;
  const double corr = (sum_cross / n - mean_g * mean_gt) / std::sqrt(var_g * var_gt);

  CHECK(mean_g == doctest::Approx(0.0).epsilon(0.005));
  CHECK(mean_gt == doctest::Approx(1.5).epsilon(0.003));
  CHECK(var_g == doctest::Approx(1.0).epsilon(0.005));
  CHECK(var_gt == doctest::Approx(1.0).epsilon(0.005));
  CHECK(corr == doctest::Approx(0.7).epsilon(0.005));
  CHECK(sum_w2 / n == doctest::Approx(1.0).epsilon(0.005));
}

TEST_CASE("W sampling matches its closed-form mean for small and large m") {
  for (int m : {1, 10, 80, 200}) {
    const ParamPoint pt{0.0, 0.0};
    const auto draws = sample_joint(pt, cfg_of(m, 3), settings_of(400000));
    double sum_w = 0.0;
    for (const JointDraw& d : draws) sum_w += d.w;
    const double mean_w = sum_w / static_cast<double>(draws.size());
    CAPTURE(m);
    CHECK(mean_w == doctest::Approx(1.0 / inv_mean_w(m)).epsilon(0.004));
  }
}

TEST_CASE("mc_coverage agrees with exact quadrature") {
  const QuadratureSpec quad;
  const TestbedConfig cfg = cfg_of(1, 3);
  const ParamPoint pt{0.0, 0.9};
  const double exact = coverage_probability(pt, cfg, quad);
  const McEstimate est = mc_coverage(pt, cfg, settings_of(1000000));
  CHECK(std::fabs(est.estimate - exact) < 3.0 * est.std_err);
  CHECK(est.std_err < 1e-3);
}

TEST_CASE("mc_coverage near-asymptotic null approaches the nominal level") {
  const McEstimate est =
      mc_coverage(ParamPoint{0.0, 1e-9}, cfg_of(200, 4), settings_of(200000));
  CHECK(est.estimate == doctest::Approx(0.95).epsilon(0.01));
}

TEST_CASE("mc_coverage is seed-stable and seed-consistent") {
  const TestbedConfig cfg = cfg_of(5, 3);
  const ParamPoint pt{1.0, 0.5};
  const McEstimate a = mc_coverage(pt, cfg, settings_of(200000, 1));
  const McEstimate b = mc_coverage(pt, cfg, settings_of(200000, 1));
  CHECK(a.estimate == b.estimate);  // bit-identical
  const McEstimate c = mc_coverage(pt, cfg, settings_of(200000, 2));
  const double combined = std::hypot(a.std_err, c.std_err);
  CHECK(std::fabs(a.estimate - c.estimate) < 6.0 * combined);
}

TEST_CASE("mc_coverage is invariant to the thread count") {
  const TestbedConfig cfg = cfg_of(3, 3);
  const ParamPoint pt{0.5, 0.7};
  setenv("MA_CI_THREADS", "1", 1);
  const McEstimate serial = mc_coverage(pt, cfg, settings_of(100000));
  setenv("MA_CI_THREADS", "3", 1);
  const McEstimate threaded = mc_coverage(pt, cfg, settings_of(100000));
  unsetenv("MA_CI_THREADS");
  CHECK(serial.estimate == threaded.estimate);
}

TEST_CASE("mc_scaled_length agrees with exact quadrature") {
  const QuadratureSpec quad;
  const TestbedConfig cfg = cfg_of(10, 3);
  const ParamPoint pt{0.0, 0.9};
  const double c_min = 0.9;  // fixed calibration for both routes
  const double exact = scaled_expected_length(pt, cfg, c_min, quad);
  const McEstimate est = mc_scaled_length(pt, cfg, c_min, settings_of(1000000));
  CHECK(std::fabs(est.estimate - exact) < 3.0 * est.std_err);
  CHECK_THROWS_AS(mc_scaled_length(pt, cfg, 0.0, settings_of(10)),
                  std::invalid_argument);
}

TEST_CASE("mc_scaled_length near-asymptotic null is about 1") {
  const McEstimate est = mc_scaled_length(ParamPoint{0.0, 1e-9}, cfg_of(200, 4),
                                          0.95, settings_of(200000));
  CHECK(est.estimate == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("mc_scaled_length is even in gamma within Monte Carlo error") {
  const TestbedConfig cfg = cfg_of(4, 3);
  const McEstimate plus =
      mc_scaled_length(ParamPoint{2.0, 0.6}, cfg, 0.9, settings_of(400000, 5));
  const McEstimate minus =
      mc_scaled_length(ParamPoint{-2.0, 0.6}, cfg, 0.9, settings_of(400000, 6));
  const double combined = std::hypot(plus.std_err, minus.std_err);
  CHECK(std::fabs(plus.estimate - minus.estimate) < 6.0 * combined);
}

TEST_CASE("antithetic pairing keeps the estimate and reduces length variance") {
  const TestbedConfig cfg = cfg_of(6, 3);
  const ParamPoint pt{1.0, 0.5};
  McSettings anti = settings_of(200000);
  anti.antithetic = true;
  const McEstimate plain = mc_scaled_length(pt, cfg, 0.9, settings_of(200000));
  const McEstimate paired = mc_scaled_length(pt, cfg, 0.9, anti);
  const double combined = std::hypot(plain.std_err, paired.std_err);
  CHECK(std::fabs(plain.estimate - paired.estimate) < 6.0 * combined);
}

TEST_CASE("full-regression simulation matches the reduced-form analysis") {
  // orthogonal contrasts: rho = 0
  {
    const TestbedConfig cfg = cfg_of(10, 3);
    const RegressionTemplate tmpl = engineered_design(10, 3, 0.0);
    const RegressionMcResult res =
        mc_regression_coverage(tmpl, 1.0, 0.0, cfg, settings_of(20000));
    const double exact =
        coverage_probability(ParamPoint{0.0, 0.0}, cfg, QuadratureSpec{});
    CHECK(std::fabs(res.coverage - exact) < 3.0 * res.coverage_std_err);
    CHECK(res.mean_length > 0.0);
  }
  // strongly correlated contrasts
  {
    const TestbedConfig cfg = cfg_of(10, 3);
    const RegressionTemplate tmpl = engineered_design(10, 3, 0.9);
    const RegressionMcResult res =
        mc_regression_coverage(tmpl, 1.0, 3.0, cfg, settings_of(20000));
    const double exact =
        coverage_probability(ParamPoint{3.0, 0.9}, cfg, QuadratureSpec{});
    CHECK(std::fabs(res.coverage - exact) < 3.0 * res.coverage_std_err);
  }
}

TEST_CASE("coverage depends on the error scale only through gamma") {
  const TestbedConfig cfg = cfg_of(8, 3);
  const RegressionTemplate small = engineered_design(8, 3, 0.6, 1.0);
  const RegressionTemplate big = engineered_design(8, 3, 0.6, 10.0);
  const RegressionMcResult a =
      mc_regression_coverage(small, 0.7, 1.2, cfg, settings_of(20000));
  const RegressionMcResult b =
      mc_regression_coverage(big, 0.7, 1.2, cfg, settings_of(20000));
  // identical standardized replicates, so the counts agree exactly
  CHECK(a.coverage == b.coverage);
  CHECK(b.mean_length == doctest::Approx(10.0 * a.mean_length).epsilon(1e-10));
}

TEST_CASE("mc_regression_coverage validates its inputs") {
  const TestbedConfig cfg = cfg_of(8, 3);
  RegressionTemplate tmpl = engineered_design(9, 3, 0.5);
  CHECK_THROWS_AS(mc_regression_coverage(tmpl, 1.0, 0.0, cfg, settings_of(10)),
                  std::invalid_argument);
  tmpl = engineered_design(8, 3, 0.5);
  tmpl.sigma = 0.0;
  CHECK_THROWS_AS(mc_regression_coverage(tmpl, 1.0, 0.0, cfg, settings_of(10)),
                  std::invalid_argument);
}
