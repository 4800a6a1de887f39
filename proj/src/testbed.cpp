#include "maci/testbed.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "maci/special_functions.hpp"

namespace maci {

void RegressionProblem::validate() const {
  if (X.rows() < 1 || X.cols() < 1)
    throw std::invalid_argument("RegressionProblem: empty design matrix");
  if (n() <= p())
    throw std::invalid_argument("RegressionProblem: need n > p");
  if (y.size() != X.rows())
    throw std::invalid_argument("RegressionProblem: y length must equal n");
  if (a.size() != X.cols() || c.size() != X.cols())
    throw std::invalid_argument("RegressionProblem: a and c must have length p");
  if (a.norm() == 0.0)
    throw std::invalid_argument("RegressionProblem: a must be nonzero");
  if (c.norm() == 0.0)
    throw std::invalid_argument("RegressionProblem: c must be nonzero");
}

LeastSquaresFit fit(const RegressionProblem& problem) {
  problem.validate();
  const int n = problem.n();
  const int p = problem.p();

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(problem.X);
  if (qr.rank() < p)
    throw std::runtime_error("fit: design matrix is rank deficient");

  LeastSquaresFit out;
  out.beta_hat = qr.solve(problem.y);
  const Eigen::VectorXd resid = problem.y - problem.X * out.beta_hat;
  out.rss = resid.squaredNorm();
  out.sigma_hat2 = out.rss / (n - p);
  return out;
}

DerivedScalars derived_scalars(const RegressionProblem& problem) {
  problem.validate();
  const int p = problem.p();

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(problem.X);
  if (qr.rank() < p)
    throw std::runtime_error("derived_scalars: design matrix is rank deficient");

  // (X'X)^{-1} v for v in {a, c} through the R factor of the pivoted QR:
  // X P = Q R  =>  (X'X)^{-1} = P R^{-1} R^{-T} P'.
  const Eigen::MatrixXd R =
      qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd P = qr.colsPermutation();
  const Eigen::VectorXd za =
      R.transpose().triangularView<Eigen::Lower>().solve(P.transpose() * problem.a);
  const Eigen::VectorXd zc =
      R.transpose().triangularView<Eigen::Lower>().solve(P.transpose() * problem.c);

  DerivedScalars out;
  out.v_theta = za.squaredNorm();
  out.v_tau = zc.squaredNorm();
  out.m = problem.n() - p;
  const double cross = za.dot(zc);
  out.rho = cross / std::sqrt(out.v_theta * out.v_tau);
  if (!(std::fabs(out.rho) < 1.0 - 1e-12))
    throw std::runtime_error(
        "derived_scalars: contrasts a and c are numerically collinear");
  return out;
}

double model1_estimate(double theta_hat, double tau_hat,
                       const DerivedScalars& scalars) {
  return theta_hat -
         scalars.rho * std::sqrt(scalars.v_theta / scalars.v_tau) * tau_hat;
}

IntervalResult bba_interval(const RegressionProblem& problem,
                            const TestbedConfig& cfg) {
  cfg.validate();
  problem.validate();
  if (cfg.m != problem.n() - problem.p() || cfg.p != problem.p())
    throw std::invalid_argument("bba_interval: cfg (m, p) must match the data");

  const LeastSquaresFit ls = fit(problem);
  const DerivedScalars sc = derived_scalars(problem);
  if (ls.sigma_hat2 < 1e-300)
    throw std::runtime_error(
        "bba_interval: perfect fit (sigma_hat = 0), gamma_hat undefined");

  IntervalResult res;
  res.sigma_hat = std::sqrt(ls.sigma_hat2);
  res.theta_hat = problem.a.dot(ls.beta_hat);
  const double tau_hat = problem.c.dot(ls.beta_hat) - problem.t;
  res.theta_hat_1 = model1_estimate(res.theta_hat, tau_hat, sc);
  res.gamma_hat = tau_hat / (res.sigma_hat * std::sqrt(sc.v_tau));

  const KernelValues kv = eval_kernels(res.gamma_hat, sc.rho, cfg);
  res.w1_value = kv.weight;
  const double scale = res.sigma_hat * std::sqrt(sc.v_theta);
  res.theta_tilde = res.theta_hat - sc.rho * scale * kv.shift;
  res.se = scale * kv.se;
  const double tq = student_t_quantile(cfg.m, 1.0 - cfg.alpha / 2.0);
  res.lower = res.theta_tilde - tq * res.se;
  res.upper = res.theta_tilde + tq * res.se;
  return res;
}

RssPair model_rss(const RegressionProblem& problem) {
  problem.validate();
  const int n = problem.n();
  const int p = problem.p();

  const LeastSquaresFit full = fit(problem);

  // Eliminate the coordinate with the largest |c_j| using c'beta = t.
  int j = 0;
  for (int i = 1; i < p; ++i) {
    if (std::fabs(problem.c[i]) > std::fabs(problem.c[j])) j = i;
  }
  const double cj = problem.c[j];
  const Eigen::VectorXd xj = problem.X.col(j);
  const Eigen::VectorXd y_reduced = problem.y - (problem.t / cj) * xj;

  double rss1;
  if (p == 1) {
    rss1 = y_reduced.squaredNorm();
  } else {
    Eigen::MatrixXd X_reduced(n, p - 1);
    int col = 0;
    for (int i = 0; i < p; ++i) {
      if (i == j) continue;
      X_reduced.col(col++) = problem.X.col(i) - (problem.c[i] / cj) * xj;
    }
    const Eigen::VectorXd beta_reduced =
        X_reduced.householderQr().solve(y_reduced);
    rss1 = (y_reduced - X_reduced * beta_reduced).squaredNorm();
  }
  return RssPair{rss1, full.rss};
}

namespace {

// Token reader that remembers the line each value came from.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  double next(const std::string& section) {
    for (;;) {
      if (pos_ < tokens_.size()) {
        const std::string& tok = tokens_[pos_++];
        try {
          std::size_t used = 0;
          const double v = std::stod(tok, &used);
          if (used != tok.size()) throw std::invalid_argument("trailing junk");
          return v;
        } catch (...) {
          throw std::invalid_argument("line " + std::to_string(line_) +
                                      ": bad number '" + tok + "' in " + section);
        }
      }
      std::string line;
      if (!std::getline(in_, line)) {
        throw std::invalid_argument("line " + std::to_string(line_) +
                                    ": file ended while reading " + section);
      }
      ++line_;
      tokens_.clear();
      pos_ = 0;
      std::istringstream ss(line);
      std::string tok;
      while (ss >> tok) tokens_.push_back(tok);
    }
  }

  int next_int(const std::string& section) {
    const double v = next(section);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
      throw std::invalid_argument("line " + std::to_string(line_) +
                                  ": expected an integer in " + section);
    return i;
  }

 private:
  std::istream& in_;
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
  int line_ = 0;
};

}  // namespace

RegressionProblem read_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open problem file: " + path);

  TokenReader reader(in);
  const int n = reader.next_int("header (n p)");
  const int p = reader.next_int("header (n p)");
  if (n < 2 || p < 1 || n <= p)
    throw std::invalid_argument("problem file header: need n > p >= 1");

  RegressionProblem prob;
  prob.X.resize(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) prob.X(i, j) = reader.next("design matrix X");
  prob.y.resize(n);
  for (int i = 0; i < n; ++i) prob.y[i] = reader.next("response y");
  prob.a.resize(p);
  for (int i = 0; i < p; ++i) prob.a[i] = reader.next("contrast a");
  prob.c.resize(p);
  for (int i = 0; i < p; ++i) prob.c[i] = reader.next("contrast c");
  prob.t = reader.next("offset t");
  prob.validate();
  return prob;
}

}  // namespace maci
