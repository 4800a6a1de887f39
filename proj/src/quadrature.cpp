#include "maci/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "maci/parallel.hpp"
#include "maci/special_functions.hpp"

namespace maci {

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0))
    throw std::invalid_argument("QuadratureSpec: abs_tol must be positive");
  if (!(inner_half_width >= 6.0))
    throw std::invalid_argument("QuadratureSpec: inner_half_width must be >= 6");
  if (!(outer_prob_tail > 0.0 && outer_prob_tail <= 1e-8))
    throw std::invalid_argument(
        "QuadratureSpec: outer_prob_tail must lie in (0, 1e-8]");
  if (max_subdivisions < 1)
    throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 1");
}

namespace {

// 15-point Kronrod / 7-point Gauss pair (abscissae and weights as in QUADPACK
// dqk15; positive half, symmetric).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a = 0.0;
  double b = 0.0;
  double integral = 0.0;
  double error = 0.0;
};

bool operator<(const Segment& lhs, const Segment& rhs) {
  return lhs.error < rhs.error;
}

Segment gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double fv1[7];  // f(center - h x), Kronrod order
  double fv2[7];  // f(center + h x)
  const double fc = f(center);
  double result_gauss = fc * kWg[3];
  double result_kronrod = fc * kWgk[7];
  for (int j = 0; j < 3; ++j) {
    const int idx = 2 * j + 1;
    const double dx = half * kXgk[idx];
    fv1[idx] = f(center - dx);
    fv2[idx] = f(center + dx);
    result_gauss += kWg[j] * (fv1[idx] + fv2[idx]);
    result_kronrod += kWgk[idx] * (fv1[idx] + fv2[idx]);
  }
  for (int j = 0; j < 4; ++j) {
    const int idx = 2 * j;
    const double dx = half * kXgk[idx];
    fv1[idx] = f(center - dx);
    fv2[idx] = f(center + dx);
    result_kronrod += kWgk[idx] * (fv1[idx] + fv2[idx]);
  }

  const double mean = result_kronrod * 0.5;
  double resasc = kWgk[7] * std::fabs(fc - mean);
  for (int idx = 0; idx < 7; ++idx) {
    resasc += kWgk[idx] * (std::fabs(fv1[idx] - mean) + std::fabs(fv2[idx] - mean));
  }
  resasc *= std::fabs(half);

  double err = std::fabs((result_kronrod - result_gauss) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  return Segment{a, b, result_kronrod * half, err};
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double lo,
                          double hi, double abs_tol, int max_subdivisions,
                          int initial_segments) {
  if (!(hi > lo)) throw std::invalid_argument("integrate_adaptive: hi must exceed lo");
  if (initial_segments < 1) initial_segments = 1;

  std::priority_queue<Segment> heap;
  double total = 0.0;
  double total_err = 0.0;
  const double step = (hi - lo) / initial_segments;
  for (int i = 0; i < initial_segments; ++i) {
    const double a = lo + i * step;
    const double b = (i + 1 == initial_segments) ? hi : a + step;
    Segment seg = gk15(f, a, b);
    total += seg.integral;
    total_err += seg.error;
    heap.push(seg);
  }

  int splits = 0;
  while (total_err > abs_tol) {
    if (splits >= max_subdivisions) {
      throw ConvergenceError("quadrature: subdivision budget exhausted", total,
                             total_err);
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // interval no longer splittable in double precision; accept its error
      total_err -= worst.error;
      continue;
    }
    Segment left = gk15(f, worst.a, mid);
    Segment right = gk15(f, mid, worst.b);
    total += left.integral + right.integral - worst.integral;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++splits;
  }
  return total;
}

double integrate_gauss_weighted(const std::function<double(double)>& g,
                                const QuadratureSpec& spec) {
  spec.validate();
  const double h = spec.inner_half_width;
  return integrate_adaptive([&g](double y) { return g(y) * normal_pdf(y); }, -h,
                            h, spec.abs_tol, spec.max_subdivisions, 8);
}

double integrate_w_weighted(const std::function<double(double)>& g, int m,
                            const QuadratureSpec& spec) {
  spec.validate();
  const double w_lo =
      std::sqrt(chi_squared_quantile(m, spec.outer_prob_tail) / m);
  const double w_hi =
      std::sqrt(chi_squared_quantile(m, 1.0 - spec.outer_prob_tail) / m);
  return integrate_adaptive(
      [&g, m](double w) { return g(w) * scaled_chi_pdf(w, m); }, w_lo, w_hi,
      spec.abs_tol, spec.max_subdivisions, 8);
}

ScalarMinimum minimize_scalar(const std::function<double(double)>& f, double lo,
                              double hi, double tol, int grid_points) {
  if (!(hi > lo)) throw std::invalid_argument("minimize_scalar: hi must exceed lo");
  if (!(tol > 0.0)) throw std::invalid_argument("minimize_scalar: tol must be positive");
  if (grid_points < 3) grid_points = 3;

  std::vector<double> xs(grid_points), fs(grid_points);
  const double step = (hi - lo) / (grid_points - 1);
  for (int i = 0; i < grid_points; ++i) xs[i] = lo + i * step;
  xs.back() = hi;
  parallel_for(static_cast<std::size_t>(grid_points),
               [&](std::size_t i) { fs[i] = f(xs[i]); });

  int best = 0;
  for (int i = 1; i < grid_points; ++i) {
    if (fs[i] < fs[best]) best = i;
  }
  double best_x = xs[best];
  double best_f = fs[best];

  // Golden-section refinement inside the bracketing grid cells.
  double a = xs[std::max(best - 1, 0)];
  double b = xs[std::min(best + 1, grid_points - 1)];
  constexpr double kInvPhi = 0.6180339887498948482;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  auto consider = [&](double x, double fx) {
    if (fx < best_f) {
      best_f = fx;
      best_x = x;
    }
  };
  consider(x1, f1);
  consider(x2, f2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
      consider(x1, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
      consider(x2, f2);
    }
  }
  return ScalarMinimum{best_x, best_f};
}

}  // namespace maci
