#pragma once

// Test-side oracles, kept independent of the library implementation paths
// they check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

// Kahan-compensated partial sum 1 + 1/2 + ... + 1/n.
inline double harmonic_sum(long n) {
  double sum = 0.0, comp = 0.0;
  for (long i = 1; i <= n; ++i) {
    const double y = 1.0 / static_cast<double>(i) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

// Composite Simpson with panel doubling until two refinements agree.
inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-11) {
  auto composite = [&](int m) {
    const double h = (b - a) / m;
    double odd = 0.0, even = 0.0;
    for (int i = 1; i < m; i += 2) odd += f(a + i * h);
    for (int i = 2; i < m; i += 2) even += f(a + i * h);
    return (f(a) + f(b) + 4.0 * odd + 2.0 * even) * h / 3.0;
  };
  double prev = composite(64);
  for (int m = 128; m <= (1 << 22); m *= 2) {
    const double cur = composite(m);
    if (std::abs(cur - prev) <= tol) return cur;
    prev = cur;
  }
  return prev;
}

// H_x via the defining integral of (1 - t^x)/(1 - t) over [0, 1].
inline double harmonic_integral(double x) {
  if (x == 0.0) return 0.0;
  return integrate(
      [x](double t) {
        if (t == 0.0) return 1.0;
        if (t == 1.0) return x;  // removable limit
        return -std::expm1(x * std::log(t)) / (1.0 - t);
      },
      0.0, 1.0);
}

// B(q; m, 0) by quadrature. The substitution u = v^2 removes the integrable
// endpoint singularity when m < 1.
inline double inc_beta_zero_quad(double q, double m) {
  if (q == 0.0) return 0.0;
  return integrate(
      [m](double v) {
        if (v == 0.0) return m == 0.5 ? 2.0 : 0.0;
        return 2.0 * std::pow(v, 2.0 * m - 1.0) / (1.0 - v * v);
      },
      0.0, std::sqrt(q));
}

// Kolmogorov-Smirnov statistic of samples against a CDF.
inline double ks_statistic(std::vector<double> samples,
                           const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::abs(f - (static_cast<double>(i) + 1.0) / n));
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
  }
  return d;
}

}  // namespace oracle
