#include "maci/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace maci {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::domain_error(msg);
}

}  // namespace

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

// Wichura (1988), algorithm AS 241, PPND16.
double normal_quantile(double p) {
  require(p > 0.0 && p < 1.0, "normal_quantile: p must lie in (0,1)");
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
               1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
             1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
               5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
             4.2313330701600911252e1) * r + 1.0);
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r + 1.0);
  } else {
    r -= 5.0;
    x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
  }
  return (q < 0.0) ? -x : x;
}

double normal_interval_prob(double a, double b, double mu, double v) {
  require(v > 0.0, "normal_interval_prob: variance must be positive");
  if (a > b) return 0.0;
  const double s = std::sqrt(v);
  const double hi = normal_cdf((b - mu) / s);
  const double lo = normal_cdf((a - mu) / s);
  const double prob = hi - lo;
  return prob > 0.0 ? prob : 0.0;
}

namespace {

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cf(double x, double a, double b) {
  constexpr double kTiny = 1e-300;
  constexpr int kMaxIter = 2000000;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int iter = 1; iter <= kMaxIter; ++iter) {
    const double im = iter;
    double aa = im * (b - im) * x / ((qam + 2.0 * im) * (a + 2.0 * im));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + im) * (qab + im) * x / ((a + 2.0 * im) * (qap + 2.0 * im));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double x, double a, double b) {
  require(a > 0.0 && b > 0.0, "regularized_incomplete_beta: a, b must be positive");
  require(x >= 0.0 && x <= 1.0, "regularized_incomplete_beta: x must lie in [0,1]");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front =
      std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(x, a, b) / a;
  }
  return 1.0 - front * beta_cf(1.0 - x, b, a) / b;
}

namespace {

// Lower incomplete gamma by series (x < a + 1).
double gamma_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int iter = 0; iter < 2000000; ++iter) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper incomplete gamma by continued fraction (x >= a + 1).
double gamma_cf(double a, double x) {
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 2000000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_lower_gamma(double a, double x) {
  require(a > 0.0, "regularized_lower_gamma: a must be positive");
  require(x >= 0.0, "regularized_lower_gamma: x must be nonnegative");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_series(a, x);
  return 1.0 - gamma_cf(a, x);
}

double student_t_pdf(double x, int m) {
  require(m >= 1, "student_t_pdf: df must be >= 1");
  const double v = m;
  const double lognorm = std::lgamma((v + 1.0) / 2.0) - std::lgamma(v / 2.0) -
                         0.5 * std::log(v * M_PI);
  return std::exp(lognorm - 0.5 * (v + 1.0) * std::log1p(x * x / v));
}

double student_t_cdf(double x, int m) {
  require(m >= 1, "student_t_cdf: df must be >= 1");
  if (x == 0.0) return 0.5;
  const double v = m;
  const double z = v / (v + x * x);
  const double tail = 0.5 * regularized_incomplete_beta(z, v / 2.0, 0.5);
  return x > 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(int m, double q) {
  require(m >= 1, "student_t_quantile: df must be >= 1");
  require(q > 0.0 && q < 1.0, "student_t_quantile: q must lie in (0,1)");
  if (q == 0.5) return 0.0;
  if (q < 0.5) return -student_t_quantile(m, 1.0 - q);

  // Bracket the root of F(x) = q, then guarded Newton.
  double lo = 0.0;
  double hi = std::max(1.0, normal_quantile(q) * 2.0);
  while (student_t_cdf(hi, m) < q) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) break;
  }
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = student_t_cdf(x, m) - q;
    if (f > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    const double deriv = student_t_pdf(x, m);
    double next = (deriv > 0.0) ? x - f / deriv : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - x) <= 1e-15 * std::max(1.0, std::fabs(x))) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

double chi_squared_cdf(double x, int m) {
  require(m >= 1, "chi_squared_cdf: df must be >= 1");
  if (x <= 0.0) return 0.0;
  return regularized_lower_gamma(m / 2.0, x / 2.0);
}

double chi_squared_quantile(int m, double q) {
  require(m >= 1, "chi_squared_quantile: df must be >= 1");
  require(q > 0.0 && q < 1.0, "chi_squared_quantile: q must lie in (0,1)");
  const double a = m / 2.0;

  // Wilson-Hilferty starting point; in the far left tail invert the leading
  // series term P(a, x/2) ~ (x/2)^a / (a Gamma(a)) instead.
  const double z = normal_quantile(q);
  const double wh = 1.0 - 2.0 / (9.0 * m) + z * std::sqrt(2.0 / (9.0 * m));
  double x;
  if (wh > 0.03) {
    x = m * wh * wh * wh;
  } else {
    x = 2.0 * std::exp((std::log(q) + std::log(a) + std::lgamma(a)) / a);
  }

  double lo = 0.0;
  double hi = std::max(2.0 * x, 1.0);
  while (chi_squared_cdf(hi, m) < q) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) break;
  }
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 300; ++iter) {
    const double f = chi_squared_cdf(x, m) - q;
    if (f > 0.0) {
      hi = x;
    } else if (f < 0.0) {
      lo = x;
    } else {
      break;
    }
    // chi^2 density at x
    const double logpdf = (a - 1.0) * std::log(x) - 0.5 * x - std::lgamma(a) -
                          a * std::log(2.0);
    const double deriv = std::exp(logpdf);
    double next = (deriv > 0.0) ? x - f / deriv : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - x) <= 1e-14 * std::fabs(next)) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

double scaled_chi_pdf(double w, int m) {
  require(m >= 1, "scaled_chi_pdf: df must be >= 1");
  require(w > 0.0, "scaled_chi_pdf: w must be positive");
  const double half_m = m / 2.0;
  const double logpdf = std::log(2.0) + half_m * std::log(half_m) -
                        std::lgamma(half_m) + (m - 1.0) * std::log(w) -
                        half_m * w * w;
  return std::exp(logpdf);
}

double inv_mean_w(int m) {
  require(m >= 1, "inv_mean_w: df must be >= 1");
  return std::exp(0.5 * std::log(m / 2.0) + std::lgamma(m / 2.0) -
                  std::lgamma((m + 1.0) / 2.0));
}

}  // namespace maci
