// Adaptive Gauss-Kronrod quadrature and bounded scalar minimization.
#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace maci {

struct QuadratureSpec {
  double abs_tol = 1e-7;           // target absolute error per integral
  double inner_half_width = 8.0;   // truncation radius for the phi-weighted integral
  double outer_prob_tail = 1e-10;  // probability mass discarded per tail of W
  int max_subdivisions = 2000;

  // Throws std::invalid_argument when a field is outside its legal range.
  void validate() const;
};

// Raised when the subdivision budget is exhausted before the error target is
// met; carries the best estimate and its error bound.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double estimate, double error_bound)
      : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}
  double estimate() const { return estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

// Integral of f over [lo, hi] by adaptive 15-point Gauss-Kronrod bisection.
double integrate_adaptive(const std::function<double(double)>& f, double lo,
                          double hi, double abs_tol, int max_subdivisions,
                          int initial_segments = 8);

// Integral of g(y) phi(y) dy over [-H, H], H = spec.inner_half_width.
double integrate_gauss_weighted(const std::function<double(double)>& g,
                                const QuadratureSpec& spec);

// Integral of g(w) f_W(w) dw over the [outer_prob_tail, 1 - outer_prob_tail]
// quantile range of W = sqrt(chi^2_m / m).
double integrate_w_weighted(const std::function<double(double)>& g, int m,
                            const QuadratureSpec& spec);

struct ScalarMinimum {
  double argmin = 0.0;
  double min = 0.0;
};

// Grid-seeded bounded minimization: evaluate f on a uniform grid over
// [lo, hi] (grid points evaluated concurrently; f must be pure), then
// golden-section refine around the best grid point until the bracket is
// narrower than tol.  Returns the smallest value seen.
ScalarMinimum minimize_scalar(const std::function<double(double)>& f, double lo,
                              double hi, double tol, int grid_points = 201);

}  // namespace maci
