// Command-line front end: finite-m curves, limiting curves, the
// Hjort-Claeskens comparison, interval construction from data files, and
// Monte Carlo verification of the exact analysis.
#include <cmath>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "maci/asymptotic.hpp"
#include "maci/exact.hpp"
#include "maci/mc.hpp"
#include "maci/special_functions.hpp"
#include "maci/testbed.hpp"
#include "report.hpp"

namespace {

constexpr const char* kVersion = "maci 1.0.0";
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitVerifyFailed = 4;

using maci::report::fmt10;

std::vector<double> gamma_grid(double gamma_max, double gamma_step) {
  if (!(gamma_max > 0.0) || !(gamma_step > 0.0))
    throw std::invalid_argument("gamma-max and gamma-step must be positive");
  std::vector<double> grid;
  const int count = static_cast<int>(std::floor(gamma_max / gamma_step + 1e-9));
  for (int i = 0; i <= count; ++i) grid.push_back(i * gamma_step);
  return grid;
}

void check_rho_flag(double rho, const std::string& name) {
  if (!(std::fabs(rho) <= 0.999999))
    throw std::invalid_argument(name + " must satisfy |" + name + "| <= 0.999999");
}

maci::report::MetaLines common_meta(const std::string& command,
                                    const maci::QuadratureSpec& quad) {
  return {
      kVersion,
      "command: " + command,
      "abs_tol=" + fmt10(quad.abs_tol) +
          " inner_half_width=" + fmt10(quad.inner_half_width) +
          " outer_prob_tail=" + fmt10(quad.outer_prob_tail) +
          " max_subdivisions=" + std::to_string(quad.max_subdivisions),
  };
}

std::vector<std::pair<double, double>> column(const maci::CurveTable& table,
                                              bool sel) {
  std::vector<std::pair<double, double>> pts;
  for (const maci::CurveRow& row : table.rows)
    pts.emplace_back(row.abs_gamma, sel ? *row.sel : *row.cp);
  return pts;
}

void write_curve_svg(const std::string& path, const maci::CurveTable& table) {
  using maci::report::Panel;
  Panel cp_panel{"coverage probability", "CP", 1.0 - table.alpha,
                 {{"", column(table, false)}}};
  Panel sel_panel{"scaled expected length", "SEL", 1.0, {{"", column(table, true)}}};
  maci::report::write_file(path, maci::report::render_svg({cp_panel, sel_panel}));
}

// ---------------------------------------------------------------- curve ----

int cmd_curve(int m, int p, double rho, double alpha, double d, double gamma_max,
              double gamma_step, double tol, const std::string& out,
              const std::string& plot) {
  check_rho_flag(rho, "rho");
  const maci::TestbedConfig cfg{m, p, d, alpha};
  cfg.validate();
  maci::QuadratureSpec quad;
  quad.abs_tol = tol;
  quad.validate();

  const std::vector<double> grid = gamma_grid(gamma_max, gamma_step);
  const maci::CurveTable table = maci::sweep_curve(rho, cfg, grid, quad);

  std::string command = "maci curve --m " + std::to_string(m) + " --p " +
                        std::to_string(p) + " --rho " + fmt10(rho) + " --alpha " +
                        fmt10(alpha) + " --d " + fmt10(d) + " --gamma-max " +
                        fmt10(gamma_max) + " --gamma-step " + fmt10(gamma_step) +
                        " --tol " + fmt10(tol) + " --out " + out;
  if (!plot.empty()) command += " --plot " + plot;
  maci::report::MetaLines meta = common_meta(command, quad);
  meta.push_back("m=" + std::to_string(m) + " p=" + std::to_string(p) +
                 " rho=" + fmt10(rho) + " alpha=" + fmt10(alpha) + " d=" + fmt10(d));
  meta.push_back("c_min=" + fmt10(*table.c_min));
  maci::report::write_file(out, maci::report::curve_csv(table, meta));
  if (!plot.empty()) write_curve_svg(plot, table);
  std::printf("wrote %s (%zu rows), c_min=%s\n", out.c_str(), table.rows.size(),
              fmt10(*table.c_min).c_str());
  return 0;
}

// ----------------------------------------------------------- asymptotic ----

int cmd_asymptotic(double rho_bar, double alpha, double d, double gamma_max,
                   double gamma_step, double tol, const std::string& out,
                   const std::string& plot) {
  check_rho_flag(rho_bar, "rho-bar");
  const maci::AsymptoticConfig acfg{d, alpha, rho_bar};
  acfg.validate();
  maci::QuadratureSpec quad;
  quad.abs_tol = tol;
  quad.validate();

  const std::vector<double> grid = gamma_grid(gamma_max, gamma_step);
  const maci::CurveTable table = maci::sweep_curve_limit(acfg, grid, quad);

  std::string command = "maci asymptotic --rho-bar " + fmt10(rho_bar) +
                        " --alpha " + fmt10(alpha) + " --d " + fmt10(d) +
                        " --gamma-max " + fmt10(gamma_max) + " --gamma-step " +
                        fmt10(gamma_step) + " --tol " + fmt10(tol) + " --out " + out;
  if (!plot.empty()) command += " --plot " + plot;
  maci::report::MetaLines meta = common_meta(command, quad);
  meta.push_back("rho_bar=" + fmt10(rho_bar) + " alpha=" + fmt10(alpha) +
                 " d=" + fmt10(d));
  meta.push_back("c_min_star=" + fmt10(*table.c_min));
  maci::report::write_file(out, maci::report::curve_csv(table, meta));
  if (!plot.empty()) write_curve_svg(plot, table);
  std::printf("wrote %s (%zu rows), c_min_star=%s\n", out.c_str(),
              table.rows.size(), fmt10(*table.c_min).c_str());
  return 0;
}

// ------------------------------------------------------------ hc-compare ----

int cmd_hc_compare(double tol, const std::string& out, const std::string& plot) {
  maci::QuadratureSpec quad;
  quad.abs_tol = tol;
  quad.validate();
  const auto [first, second] = maci::hc_comparison_curves(quad);

  std::string command = "maci hc-compare --tol " + fmt10(tol) + " --out " + out;
  if (!plot.empty()) command += " --plot " + plot;
  maci::report::MetaLines meta = common_meta(command, quad);
  meta.push_back("alpha=0.1 d=2 nominal=0.9");
  meta.push_back("curve cp1: rho_hc=" + fmt10(2.0 / 3.0) +
                 " rho_bar=" + fmt10(first.rho) + " c_min_star=" + fmt10(*first.c_min));
  meta.push_back("curve cp2: rho_hc=" + fmt10(1.0) + " rho_bar=" +
                 fmt10(second.rho) + " c_min_star=" + fmt10(*second.c_min));
  maci::report::write_file(out, maci::report::paired_cp_csv(first, second, meta));

  if (!plot.empty()) {
    maci::report::Panel panel{
        "limiting coverage probability (nominal 0.9)",
        "CP*",
        0.9,
        {{"|rho_bar| = " + fmt10(first.rho), column(first, false)},
         {"|rho_bar| = " + fmt10(second.rho), column(second, false)}}};
    maci::report::write_file(plot, maci::report::render_svg({panel}));
  }
  std::printf("wrote %s (%zu rows)\n", out.c_str(), first.rows.size());
  return 0;
}

// -------------------------------------------------------------- interval ----

int cmd_interval(const std::string& data, double alpha, double d,
                 const std::string& out) {
  const maci::RegressionProblem prob = maci::read_problem_file(data);
  const maci::TestbedConfig cfg{prob.n() - prob.p(), prob.p(), d, alpha};
  cfg.validate();
  const maci::IntervalResult res = maci::bba_interval(prob, cfg);

  std::printf("problem: n=%d p=%d (m=%d)\n", prob.n(), prob.p(), cfg.m);
  std::printf("alpha=%s d=%s\n", fmt10(alpha).c_str(), fmt10(d).c_str());
  const std::vector<std::pair<const char*, double>> fields = {
      {"theta_hat", res.theta_hat},   {"theta_hat_1", res.theta_hat_1},
      {"theta_tilde", res.theta_tilde}, {"sigma_hat", res.sigma_hat},
      {"gamma_hat", res.gamma_hat},   {"w1", res.w1_value},
      {"se", res.se},                 {"lower", res.lower},
      {"upper", res.upper}};
  for (const auto& [name, value] : fields)
    std::printf("%s = %s\n", name, fmt10(value).c_str());
  std::printf("interval: [%s, %s]\n", fmt10(res.lower).c_str(),
              fmt10(res.upper).c_str());

  if (!out.empty()) {
    std::string csv = "field,value\n";
    for (const auto& [name, value] : fields)
      csv += std::string(name) + "," + fmt10(value) + "\n";
    maci::report::write_file(out, csv);
  }
  return 0;
}

// ------------------------------------------------------------- mc-verify ----

int cmd_mc_verify(int m, int p, double rho, double gamma, double alpha, double d,
                  long long replicates, std::uint64_t seed, bool full_regression) {
  check_rho_flag(rho, "rho");
  const maci::TestbedConfig cfg{m, p, d, alpha};
  cfg.validate();
  const maci::ParamPoint pt{gamma, rho};
  maci::McSettings settings;
  settings.replicates = replicates;
  settings.seed = seed;
  settings.validate();

  maci::QuadratureSpec quad;
  quad.abs_tol = 1e-7;

  std::printf("mc-verify at gamma=%s rho=%s m=%d p=%d alpha=%s d=%s\n",
              fmt10(gamma).c_str(), fmt10(rho).c_str(), m, p,
              fmt10(alpha).c_str(), fmt10(d).c_str());
  std::printf("replicates=%lld seed=%llu\n", replicates,
              static_cast<unsigned long long>(seed));

  bool pass = true;
  const double exact_cp = maci::coverage_probability(pt, cfg, quad);
  const maci::McEstimate mc_cp = maci::mc_coverage(pt, cfg, settings);
  const double z_cp = std::fabs(mc_cp.estimate - exact_cp) /
                      std::max(mc_cp.std_err, 1e-300);
  pass = pass && z_cp <= 3.0;
  std::printf("exact cp  = %s\n", fmt10(exact_cp).c_str());
  std::printf("mc cp     = %s  se = %s  |z| = %s  %s\n",
              fmt10(mc_cp.estimate).c_str(), fmt10(mc_cp.std_err).c_str(),
              fmt10(z_cp).c_str(), z_cp <= 3.0 ? "ok" : "MISMATCH");

  const maci::MinCoverageResult cmin = maci::min_coverage(rho, cfg, quad);
  std::printf("c_min     = %s  (gamma_at_min = %s)\n", fmt10(cmin.c_min).c_str(),
              fmt10(cmin.gamma_at_min).c_str());
  const double exact_sel = maci::scaled_expected_length(pt, cfg, cmin.c_min, quad);
  const maci::McEstimate mc_sel =
      maci::mc_scaled_length(pt, cfg, cmin.c_min, settings);
  const double z_sel = std::fabs(mc_sel.estimate - exact_sel) /
                       std::max(mc_sel.std_err, 1e-300);
  pass = pass && z_sel <= 3.0;
  std::printf("exact sel = %s\n", fmt10(exact_sel).c_str());
  std::printf("mc sel    = %s  se = %s  |z| = %s  %s\n",
              fmt10(mc_sel.estimate).c_str(), fmt10(mc_sel.std_err).c_str(),
              fmt10(z_sel).c_str(), z_sel <= 3.0 ? "ok" : "MISMATCH");

  if (full_regression) {
    const int n = m + p;
    maci::RegressionTemplate tmpl;
    tmpl.X = Eigen::MatrixXd::Zero(n, p);
    for (int j = 0; j < p; ++j) tmpl.X(j, j) = 1.0;
    tmpl.a = Eigen::VectorXd::Zero(p);
    tmpl.a[0] = 1.0;
    tmpl.c = Eigen::VectorXd::Zero(p);
    if (p < 2) throw std::invalid_argument("--full-regression needs p >= 2");
    tmpl.c[0] = rho;
    tmpl.c[1] = std::sqrt(1.0 - rho * rho);
    tmpl.t = 0.0;
    tmpl.sigma = 1.0;
    maci::McSettings full = settings;
    full.replicates = std::max<long long>(replicates / 10, 1);
    const maci::RegressionMcResult reg =
        maci::mc_regression_coverage(tmpl, 1.0, gamma, cfg, full);
    const double z_reg = std::fabs(reg.coverage - exact_cp) /
                         std::max(reg.coverage_std_err, 1e-300);
    pass = pass && z_reg <= 3.0;
    std::printf("full-regression cp = %s  se = %s  |z| = %s  %s  (replicates=%lld)\n",
                fmt10(reg.coverage).c_str(), fmt10(reg.coverage_std_err).c_str(),
                fmt10(z_reg).c_str(), z_reg <= 3.0 ? "ok" : "MISMATCH",
                full.replicates);
  }

  std::printf("VERDICT: %s\n", pass ? "PASS" : "FAIL");
  return pass ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact coverage and length analysis of the model-averaged "
               "confidence interval in the two-nested-models testbed"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // curve
  auto* curve = app.add_subcommand("curve", "finite-m CP/SEL curve over gamma");
  int m = 10, p = 3;
  double rho = 0.5, alpha = 0.05, d = 2.0;
  double gamma_max = 10.0, gamma_step = 0.1, tol = 1e-8;
  std::string out, plot;
  curve->add_option("--m", m, "residual degrees of freedom")->required();
  curve->add_option("--p", p, "regressor count")->required();
  curve->add_option("--rho", rho, "correlation of the two contrasts")->required();
  curve->add_option("--alpha", alpha, "1 - nominal coverage");
  curve->add_option("--d", d, "information-criterion penalty (2 = AIC)");
  curve->add_option("--gamma-max", gamma_max, "grid upper end");
  curve->add_option("--gamma-step", gamma_step, "grid step");
  curve->add_option("--tol", tol, "quadrature absolute tolerance");
  curve->add_option("--out", out, "output CSV path")->required();
  curve->add_option("--plot", plot, "optional SVG path");

  // asymptotic
  auto* asym = app.add_subcommand("asymptotic", "limiting CP*/SEL* curve");
  double rho_bar = 0.0;
  double a_alpha = 0.05, a_d = 2.0, a_gmax = 10.0, a_gstep = 0.1, a_tol = 1e-8;
  std::string a_out, a_plot;
  asym->add_option("--rho-bar", rho_bar, "limiting correlation")->required();
  asym->add_option("--alpha", a_alpha, "1 - nominal coverage");
  asym->add_option("--d", a_d, "information-criterion penalty");
  asym->add_option("--gamma-max", a_gmax, "grid upper end");
  asym->add_option("--gamma-step", a_gstep, "grid step");
  asym->add_option("--tol", a_tol, "quadrature absolute tolerance");
  asym->add_option("--out", a_out, "output CSV path")->required();
  asym->add_option("--plot", a_plot, "optional SVG path");

  // hc-compare
  auto* hc = app.add_subcommand(
      "hc-compare", "limiting coverage at rho_hc = 2/3 and 1 (nominal 0.9)");
  double hc_tol = 1e-8;
  std::string hc_out, hc_plot;
  hc->add_option("--tol", hc_tol, "quadrature absolute tolerance");
  hc->add_option("--out", hc_out, "output CSV path")->required();
  hc->add_option("--plot", hc_plot, "optional SVG path");

  // interval
  auto* interval = app.add_subcommand("interval", "construct the interval from a data file");
  std::string data, i_out;
  double i_alpha = 0.05, i_d = 2.0;
  interval->add_option("--data", data, "problem file")->required();
  interval->add_option("--alpha", i_alpha, "1 - nominal coverage");
  interval->add_option("--d", i_d, "information-criterion penalty");
  interval->add_option("--out", i_out, "optional CSV of the report fields");

  // mc-verify
  auto* verify = app.add_subcommand("mc-verify",
                                    "check exact CP/SEL against Monte Carlo");
  int v_m = 10, v_p = 3;
  double v_rho = 0.9, v_gamma = 0.0, v_alpha = 0.05, v_d = 2.0;
  long long v_reps = 1000000;
  std::uint64_t v_seed = 1;
  bool v_full = false;
  verify->add_option("--m", v_m, "residual degrees of freedom");
  verify->add_option("--p", v_p, "regressor count");
  verify->add_option("--rho", v_rho, "correlation");
  verify->add_option("--gamma", v_gamma, "standardized departure");
  verify->add_option("--alpha", v_alpha, "1 - nominal coverage");
  verify->add_option("--d", v_d, "information-criterion penalty");
  verify->add_option("--replicates", v_reps, "Monte Carlo replicates");
  verify->add_option("--seed", v_seed, "random seed");
  verify->add_flag("--full-regression", v_full,
                   "also simulate full regression datasets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (curve->parsed())
      return cmd_curve(m, p, rho, alpha, d, gamma_max, gamma_step, tol, out, plot);
    if (asym->parsed())
      return cmd_asymptotic(rho_bar, a_alpha, a_d, a_gmax, a_gstep, a_tol, a_out,
                            a_plot);
    if (hc->parsed()) return cmd_hc_compare(hc_tol, hc_out, hc_plot);
    if (interval->parsed()) return cmd_interval(data, i_alpha, i_d, i_out);
    if (verify->parsed())
      return cmd_mc_verify(v_m, v_p, v_rho, v_gamma, v_alpha, v_d, v_reps, v_seed,
                           v_full);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const maci::ConvergenceError& e) {
    std::fprintf(stderr, "numeric failure: %s (estimate %s, error bound %s)\n",
                 e.what(), fmt10(e.estimate()).c_str(),
                 fmt10(e.error_bound()).c_str());
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return kExitNumeric;
  }
  return kExitUsage;
}
