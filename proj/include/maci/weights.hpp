// Model-averaging weight kernels, finite-m and their large-m limits.
#pragma once

namespace maci {

// Residual degrees of freedom m = n - p, regressor count p, information
// criterion penalty d (2 for AIC, ln(n) for BIC), nominal miss probability
// alpha.
struct TestbedConfig {
  int m = 1;
  int p = 1;
  double d = 2.0;
  double alpha = 0.05;

  int n() const { return m + p; }
  void validate() const;  // throws std::invalid_argument
};

// Weight put on the simpler model at a standardized departure x:
//   1 / (1 + (1 + x^2/m)^{(m+p)/2} e^{-d/2})
// evaluated in log space so large |x| cannot overflow.  Even in x, strictly
// decreasing in |x|, maximum 1/(1+e^{-d/2}) at x = 0.
double model1_weight(double x, const TestbedConfig& cfg);

// x * model1_weight(x): the shift of the averaged estimate away from the
// full-model estimate, in units of rho * v_theta^{1/2} * sigma_hat.
double center_shift(double x, const TestbedConfig& cfg);

// Scaled standard-error kernel r(x, rho) of the averaged estimator; even in
// x and in rho, tends to 1 as |x| -> infinity.  Throws std::domain_error
// when |rho| >= 1.
double se_kernel(double x, double rho, const TestbedConfig& cfg);

// All three kernels at once; shares the weight evaluation.
struct KernelValues {
  double weight;  // model1_weight(x)
  double shift;   // x * weight
  double se;      // se_kernel(x, rho)
};
KernelValues eval_kernels(double x, double rho, const TestbedConfig& cfg);

// m -> infinity limits (p fixed): the weight tends to a logistic in x^2.
double model1_weight_limit(double x, double d);
double center_shift_limit(double x, double d);
double se_kernel_limit(double x, double rho_bar, double d);

}  // namespace maci
