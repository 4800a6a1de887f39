// Special functions for the normal, Student-t and chi-squared families.
#pragma once

namespace maci {

double normal_pdf(double x);

// Phi(x), monotone, saturates at 0/1 in the far tails.
double normal_cdf(double x);

// Inverse of normal_cdf on (0,1) (Wichura's PPND16 rational approximations).
double normal_quantile(double p);

// P(a <= Z <= b) for Z ~ N(mu, v).  Returns 0 when a > b; throws
// std::domain_error when v <= 0.
double normal_interval_prob(double a, double b, double mu, double v);

// Regularized incomplete beta I_x(a, b), modified-Lentz continued fraction.
double regularized_incomplete_beta(double x, double a, double b);

// Regularized lower incomplete gamma P(a, x).
double regularized_lower_gamma(double a, double x);

double student_t_pdf(double x, int m);
double student_t_cdf(double x, int m);

// q-quantile of Student's t with m degrees of freedom; odd around q = 0.5.
// Inverted from the incomplete-beta CDF by a guarded Newton iteration.
// Throws std::domain_error unless 0 < q < 1.
double student_t_quantile(int m, double q);

double chi_squared_cdf(double x, int m);
double chi_squared_quantile(int m, double q);

// Density of W = sqrt(Q/m) with Q ~ chi^2_m, the distribution of the
// residual-sd ratio sigma_hat/sigma.  Throws std::domain_error for w <= 0.
double scaled_chi_pdf(double w, int m);

// 1/E(W) = sqrt(m/2) Gamma(m/2) / Gamma((m+1)/2).  Exceeds 1 for every
// finite m and decreases monotonically to 1.
double inv_mean_w(int m);

}  // namespace maci
