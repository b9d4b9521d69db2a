#include "slab/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace slab::specfun {

namespace {

constexpr double kEulerGamma = 0.577215664901532860606512090082402431;
constexpr double kZeta2 = 1.644934066848226436472415166646025189;
constexpr double kZeta3 = 1.202056903159594285399738161511449991;

// digamma(x) for x > 0: recurrence shift to x >= 10, then the Bernoulli
// asymptotic series. Absolute error < 1e-15 on the shifted range.
double digamma(double x) {
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double series =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 -
                              inv2 * (1.0 / 240 -
                                      inv2 * (1.0 / 132 -
                                              inv2 * (691.0 / 32760 -
                                                      inv2 * (1.0 / 12)))))));
  return acc + std::log(x) - 0.5 * inv - series;
}

// H_x extended to x > -1; used internally where m - 1 may fall below 0.
double harmonic_ext(double x) {
  if (x == 0.0) return 0.0;
  if (x > 0.0 && x < 1e-8) return x * (kZeta2 - x * kZeta3);
  return digamma(x + 1.0) + kEulerGamma;
}

// Direct series B(q;m,0) = sum_{i>=0} q^(m+i)/(m+i), truncated when a term
// drops below 1e-13. Only called for q away from 1.
double inc_beta_zero_series(double q, double m) {
  if (q == 0.0) return 0.0;
  double pow_q = std::exp(m * std::log(q));
  double sum = 0.0;
  for (int i = 0; i < 2000000; ++i) {
    const double term = pow_q / (m + i);
    sum += term;
    if (term < 1e-13) return sum;
    pow_q *= q;
  }
  throw std::runtime_error("inc_beta_zero: series did not converge");
}

// Adaptive Simpson on [a,b] for a callable f, absolute tolerance tol.
template <typename F>
double simpson_recurse(const F& f, double a, double b, double fa, double fm,
                       double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 60);
}

}  // namespace

double harmonic(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw std::domain_error("harmonic: argument must be finite and >= 0");
  }
  return harmonic_ext(x);
}

double inc_beta_zero_tail(double one_minus_q, double m) {
  const double p = one_minus_q;
  if (!std::isfinite(p) || p <= 0.0 || p > 1.0) {
    throw std::domain_error("inc_beta_zero_tail: 1-q must lie in (0, 1]");
  }
  if (!std::isfinite(m) || m <= 0.0) {
    throw std::domain_error("inc_beta_zero_tail: m must be finite and > 0");
  }
  if (m == 1.0) return 0.0;
  // Substituting u = 1 - p*s maps the integral to
  //   int_0^1 (1 - (1 - p*s)^(m-1)) / s ds
  // with a removable point at s = 0 (limit (m-1)*p).
  const double mm1 = m - 1.0;
  auto f = [p, mm1](double s) -> double {
    if (s == 0.0) return mm1 * p;
    return -std::expm1(mm1 * std::log1p(-p * s)) / s;
  };
  return adaptive_simpson(f, 0.0, 1.0, 1e-12);
}

double inc_beta_zero_1m(double one_minus_q, double m) {
  if (!std::isfinite(m) || m <= 0.0) {
    throw std::domain_error("inc_beta_zero: m must be finite and > 0");
  }
  if (!std::isfinite(one_minus_q) || one_minus_q <= 0.0 || one_minus_q > 1.0) {
    throw std::domain_error("inc_beta_zero: q must lie in [0, 1)");
  }
  if (one_minus_q >= 0.05) {
    return inc_beta_zero_series(1.0 - one_minus_q, m);
  }
  // Near q = 1 the series truncates catastrophically; use the identity with
  // the tail remainder instead.
  return -std::log(one_minus_q) - harmonic_ext(m - 1.0) +
         inc_beta_zero_tail(one_minus_q, m);
}

double inc_beta_zero(double q, double m) {
  if (!std::isfinite(q) || q < 0.0 || q >= 1.0) {
    throw std::domain_error("inc_beta_zero: q must lie in [0, 1)");
  }
  return inc_beta_zero_1m(1.0 - q, m);
}

double ln_gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw std::domain_error("ln_gamma: argument must be finite and > 0");
  }
  return std::lgamma(x);
}

double gamma_ratio(double a, double b) {
  if (!std::isfinite(a) || a <= 0.0 || !std::isfinite(b) || b <= 0.0) {
    throw std::domain_error("gamma_ratio: arguments must be finite and > 0");
  }
  if (a == b) return 1.0;
  return std::exp(std::lgamma(a) - std::lgamma(b));
}

}  // namespace slab::specfun
