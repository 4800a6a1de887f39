#include "maci/weights.hpp"

#include <cmath>
#include <stdexcept>

namespace maci {

void TestbedConfig::validate() const {
  if (m < 1) throw std::invalid_argument("TestbedConfig: m must be >= 1");
  if (p < 1) throw std::invalid_argument("TestbedConfig: p must be >= 1");
  if (!(d > 0.0)) throw std::invalid_argument("TestbedConfig: d must be positive");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("TestbedConfig: alpha must lie in (0,1)");
}

namespace {

// 1/(1+e^t) without overflow for any t.
double logistic_complement(double t) {
  if (t > 0.0) {
    const double e = std::exp(-t);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(t));
}

void check_rho(double rho) {
  if (!(std::fabs(rho) < 1.0))
    throw std::domain_error("se_kernel: |rho| must be < 1");
}

double se_kernel_with_weight(double x, double rho, double w1, int m) {
  if (w1 <= 0.0) return 1.0;  // weight underflow; both radicals collapse
  const double x2 = x * x;
  const double rx = rho * x;
  const double rx2 = rx * rx;
  const double term1 =
      w1 * std::sqrt((m + x2) / (m + 1.0) * (1.0 - rho * rho) +
                     (1.0 - w1) * (1.0 - w1) * rx2);
  const double term2 = (1.0 - w1) * std::sqrt(1.0 + w1 * w1 * rx2);
  return term1 + term2;
}

}  // namespace

double model1_weight(double x, const TestbedConfig& cfg) {
  // exponent of the penalized likelihood ratio, in log space
  const double t = 0.5 * cfg.n() * std::log1p(x * x / cfg.m) - 0.5 * cfg.d;
  return logistic_complement(t);
}

double center_shift(double x, const TestbedConfig& cfg) {
  return x * model1_weight(x, cfg);
}

double se_kernel(double x, double rho, const TestbedConfig& cfg) {
  check_rho(rho);
  return se_kernel_with_weight(x, rho, model1_weight(x, cfg), cfg.m);
}

KernelValues eval_kernels(double x, double rho, const TestbedConfig& cfg) {
  check_rho(rho);
  const double w1 = model1_weight(x, cfg);
  return KernelValues{w1, x * w1, se_kernel_with_weight(x, rho, w1, cfg.m)};
}

double model1_weight_limit(double x, double d) {
  return logistic_complement(0.5 * (x * x - d));
}

double center_shift_limit(double x, double d) {
  return x * model1_weight_limit(x, d);
}

double se_kernel_limit(double x, double rho_bar, double d) {
  check_rho(rho_bar);
  const double w1 = model1_weight_limit(x, d);
  if (w1 <= 0.0) return 1.0;
  const double rx2 = rho_bar * rho_bar * x * x;
  return w1 * std::sqrt(1.0 - rho_bar * rho_bar + (1.0 - w1) * (1.0 - w1) * rx2) +
         (1.0 - w1) * std::sqrt(1.0 + w1 * w1 * rx2);
}

}  // namespace maci
