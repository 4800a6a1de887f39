#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "maci/exact.hpp"
#include "maci/special_functions.hpp"
#include "oracles.hpp"

using namespace maci;

namespace {

QuadratureSpec default_quad() { return QuadratureSpec{}; }  // 1e-7 composite

TestbedConfig cfg_of(int m, int p, double d = 2.0, double alpha = 0.05) {
  return TestbedConfig{m, p, d, alpha};
}

}  // namespace

TEST_CASE("pivot bounds at the origin and ordering") {
  const TestbedConfig cfg = cfg_of(4, 3);
  const double tq = student_t_quantile(4, 0.975);
  const double r0 = se_kernel(0.0, 0.0, cfg);
  CHECK(pivot_lower(0.0, 1.0, 0.0, cfg) == doctest::Approx(-tq * r0).epsilon(1e-13));
  CHECK(pivot_upper(0.0, 1.0, 0.0, cfg) == doctest::Approx(tq * r0).epsilon(1e-13));

  auto rng = testing::seeded_rng(21);
  std::uniform_real_distribution<double> gammas(-6.0, 6.0);
  std::uniform_real_distribution<double> ws(0.05, 3.0);
  std::uniform_real_distribution<double> rhos(-0.95, 0.95);
  for (int i = 0; i < 200; ++i) {
    const double g = gammas(rng), w = ws(rng), rho = rhos(rng);
    CHECK(pivot_lower(g, w, rho, cfg) < pivot_upper(g, w, rho, cfg));
  }
}

TEST_CASE("pivot bound reflection identities hold to rounding") {
  auto rng = testing::seeded_rng(22);
  std::uniform_real_distribution<double> gammas(-6.0, 6.0);
  std::uniform_real_distribution<double> ws(0.05, 3.0);
  std::uniform_real_distribution<double> rhos(-0.95, 0.95);
  std::uniform_int_distribution<int> ms(1, 12), ps(1, 9);
  for (int i = 0; i < 100; ++i) {
    const TestbedConfig cfg = cfg_of(ms(rng), ps(rng));
    const double h = gammas(rng), w = ws(rng), rho = rhos(rng);
    const double tq = student_t_quantile(cfg.m, 1.0 - cfg.alpha / 2.0);
    CAPTURE(h);
    CAPTURE(w);
    CAPTURE(rho);
    CHECK(-pivot_upper(-h, w, rho, cfg, tq) ==
          doctest::Approx(pivot_lower(h, w, rho, cfg, tq)).epsilon(1e-12));
    CHECK(-pivot_lower(-h, w, rho, cfg, tq) ==
          doctest::Approx(pivot_upper(h, w, rho, cfg, tq)).epsilon(1e-12));
    CHECK(pivot_lower(h, w, -rho, cfg, tq) ==
          doctest::Approx(-pivot_upper(h, w, rho, cfg, tq)).epsilon(1e-12));
    CHECK(pivot_upper(h, w, -rho, cfg, tq) ==
          doctest::Approx(-pivot_lower(h, w, rho, cfg, tq)).epsilon(1e-12));
  }
  // the worked example from the identity list
  const TestbedConfig cfg = cfg_of(5, 4);
  CHECK(-pivot_upper(-1.2, 0.8, 0.5, cfg) ==
        doctest::Approx(pivot_lower(1.2, 0.8, 0.5, cfg)).epsilon(1e-13));
  CHECK(pivot_lower(1.2, 0.8, -0.5, cfg) ==
        doctest::Approx(-pivot_upper(1.2, 0.8, 0.5, cfg)).epsilon(1e-13));
}

TEST_CASE("coverage probability matches independent 2-D quadrature values") {
  const QuadratureSpec quad = default_quad();
  // reference values from a separate high-order Gauss-Legendre evaluation of
  // the defining double integral
  CHECK(coverage_probability(ParamPoint{0.0, 0.9}, cfg_of(10, 3), quad) ==
        doctest::Approx(0.973122110678).epsilon(5e-7));
  CHECK(coverage_probability(ParamPoint{1.5, 0.7}, cfg_of(2, 3), quad) ==
        doctest::Approx(0.945675141745).epsilon(5e-7));
  CHECK(coverage_probability(ParamPoint{3.0, 0.5}, cfg_of(1, 3), quad) ==
        doctest::Approx(0.950005338034).epsilon(5e-7));
}

TEST_CASE("coverage probability is even in gamma and rho") {
  const QuadratureSpec quad = default_quad();
  const TestbedConfig cfg = cfg_of(2, 3);
  const double base = coverage_probability(ParamPoint{1.5, 0.7}, cfg, quad);
  CHECK(base > 0.0);
  CHECK(base < 1.0);
  CHECK(coverage_probability(ParamPoint{-1.5, 0.7}, cfg, quad) ==
        doctest::Approx(base).epsilon(1e-6));
  CHECK(coverage_probability(ParamPoint{1.5, -0.7}, cfg, quad) ==
        doctest::Approx(base).epsilon(1e-6));
}

TEST_CASE("coverage probability flattens to the nominal level for large gamma") {
  const QuadratureSpec quad = default_quad();
  CHECK(coverage_probability(ParamPoint{20.0, 0.7}, cfg_of(5, 3), quad) ==
        doctest::Approx(0.95).epsilon(0.002));
  CHECK(coverage_probability(ParamPoint{20.0, 0.9}, cfg_of(10, 3), quad) ==
        doctest::Approx(0.95).epsilon(0.002));
}

TEST_CASE("coverage probability rejects invalid inputs") {
  const QuadratureSpec quad = default_quad();
  CHECK_THROWS_AS(
      coverage_probability(ParamPoint{0.0, 0.9999999}, cfg_of(3, 3), quad),
      std::invalid_argument);
  QuadratureSpec bad = quad;
  bad.abs_tol = -1.0;
  CHECK_THROWS_AS(coverage_probability(ParamPoint{0.0, 0.5}, cfg_of(3, 3), bad),
                  std::invalid_argument);
}

TEST_CASE("min_coverage near the nominal level when rho = 0 and m is large") {
  QuadratureSpec quad = default_quad();
  const MinCoverageResult res = min_coverage(0.0, cfg_of(200, 4), quad);
  CHECK(res.c_min == doctest::Approx(0.95).epsilon(0.003));
  CHECK(res.grid_points == 201);
}

TEST_CASE("min_coverage stays close to nominal at m = 1") {
  const QuadratureSpec quad = default_quad();
  for (double rho : {0.5, 0.9}) {
    const MinCoverageResult res = min_coverage(rho, cfg_of(1, 3), quad);
    CAPTURE(rho);
    CHECK(res.c_min >= 0.94);
    CHECK(res.c_min < 0.95);
  }
}

TEST_CASE("scaled expected length matches independent quadrature at fixed c_min") {
  const QuadratureSpec quad = default_quad();
  CHECK(scaled_expected_length(ParamPoint{0.0, 0.9}, cfg_of(10, 3), 0.9, quad) ==
        doctest::Approx(0.925430146229).epsilon(1e-6));
  CHECK(scaled_expected_length(ParamPoint{1.5, 0.7}, cfg_of(2, 3), 0.9, quad) ==
        doctest::Approx(1.408197589365).epsilon(1e-6));
  CHECK_THROWS_AS(
      scaled_expected_length(ParamPoint{0.0, 0.5}, cfg_of(2, 3), 1.5, quad),
      std::invalid_argument);
}

TEST_CASE("scaled expected length is even in gamma and rho") {
  const QuadratureSpec quad = default_quad();
  const TestbedConfig cfg = cfg_of(2, 3);
  const double base = scaled_expected_length(ParamPoint{1.5, 0.7}, cfg, 0.9, quad);
  CHECK(scaled_expected_length(ParamPoint{-1.5, 0.7}, cfg, 0.9, quad) ==
        doctest::Approx(base).epsilon(1e-6));
  CHECK(scaled_expected_length(ParamPoint{1.5, -0.7}, cfg, 0.9, quad) ==
        doctest::Approx(base).epsilon(1e-6));
}

TEST_CASE("scaled expected length approaches 1 in the near-asymptotic null") {
  const QuadratureSpec quad = default_quad();
  const TestbedConfig cfg = cfg_of(200, 4);
  const MinCoverageResult mc = min_coverage(1e-8, cfg, quad);
  for (double g : {0.0, 1.0, 3.0}) {
    CHECK(scaled_expected_length(ParamPoint{g, 1e-8}, cfg, mc.c_min, quad) ==
          doctest::Approx(1.0).epsilon(0.01));
  }
}

TEST_CASE("sweep_curve smoke case: single-point grid") {
  QuadratureSpec quad = default_quad();
  const CurveTable table = sweep_curve(0.0, cfg_of(1, 3), {0.0}, quad);
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0].cp.has_value());
  CHECK(table.rows[0].sel.has_value());
  CHECK(*table.rows[0].cp > 0.0);
  CHECK(*table.rows[0].cp < 1.0);
  CHECK(*table.rows[0].sel > 0.0);
  CHECK(table.c_min.has_value());
  CHECK(*table.c_min <= *table.rows[0].cp + 1e-9);
}

TEST_CASE("sweep_curve shape: dip and recovery at m = 10, rho = 0.9") {
  QuadratureSpec quad = default_quad();
  std::vector<double> gammas;
  for (double g = 0.0; g <= 10.0 + 1e-9; g += 0.5) gammas.push_back(g);
  const CurveTable table = sweep_curve(0.9, cfg_of(10, 3), gammas, quad);

  double min_cp = 1.0, max_sel = 0.0;
  for (const CurveRow& row : table.rows) {
    min_cp = std::min(min_cp, *row.cp);
    max_sel = std::max(max_sel, *row.sel);
  }
  CHECK(min_cp < 0.95);                        // dips below nominal
  CHECK(*table.rows.back().cp == doctest::Approx(0.95).epsilon(0.01));  // recovers
  CHECK(max_sel > 1.0);
  CHECK(*table.c_min <= min_cp + 1e-9);
  // rows ascend in gamma
  for (std::size_t i = 1; i < table.rows.size(); ++i)
    CHECK(table.rows[i].abs_gamma > table.rows[i - 1].abs_gamma);
}

TEST_CASE("sweep_curve at m = 1 keeps SEL(0) below 1") {
  QuadratureSpec quad = default_quad();
  const CurveTable table = sweep_curve(0.5, cfg_of(1, 3), {0.0, 1.0}, quad);
  CHECK(*table.rows[0].sel < 1.0);
}

TEST_CASE("sweep_curve input validation") {
  QuadratureSpec quad = default_quad();
  CHECK_THROWS_AS(sweep_curve(0.5, cfg_of(1, 3), {}, quad), std::invalid_argument);
  CHECK_THROWS_AS(sweep_curve(0.5, cfg_of(1, 3), {1.0, 0.5}, quad),
                  std::invalid_argument);
  CHECK_THROWS_AS(sweep_curve(0.5, cfg_of(1, 3), {-1.0, 0.5}, quad),
                  std::invalid_argument);
}
