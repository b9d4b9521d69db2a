#include "slab/analytic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "slab/specfun.hpp"

namespace slab::analytic {

namespace {

using specfun::harmonic;
using specfun::inc_beta_zero_1m;
using specfun::inc_beta_zero_tail;
using specfun::ln_gamma;

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_common(int k, double delta, double mu) {
  if (k < 1) throw std::domain_error("metrics: k must be >= 1");
  if (!std::isfinite(delta) || delta < 0.0) {
    throw std::domain_error("metrics: delta must be finite and >= 0");
  }
  if (!std::isfinite(mu) || mu <= 0.0) {
    throw std::domain_error("metrics: mu must be finite and > 0");
  }
}

// pow(1-p, k) without forming 1-p when p is tiny.
double one_minus_pow(double p, int k) {
  if (p >= 1.0) return 0.0;
  return std::exp(k * std::log1p(-p));
}

// Delayed replicated latency (H_k - c/(c+1) H_{k p}) / mu, where p is the
// surviving fraction proxy exp(-mu * effective_delta).
double rep_latency(int k, int c, double p, double mu) {
  const double hk = harmonic(static_cast<double>(k));
  const double frac = static_cast<double>(c) / (c + 1.0);
  return (hk - frac * harmonic(k * p)) / mu;
}

// Delayed coded latency with the divergences cancelled analytically:
//   delta - (B(q;k+1,0) + H_{n-k} - H_{n-kq}) / mu
//     == (H_k - tail(p, k+1) + (H_{n-kq} - H_{n-k})) / mu,   p = e^{-mu delta}.
// The alternate orientation flips the harmonic-pair sign.
double coded_latency(int k, int n, double p, double mu,
                     CodedLatencyOrientation orientation) {
  const double hk = harmonic(static_cast<double>(k));
  const double tail = inc_beta_zero_tail(p, k + 1.0);
  const double pair = harmonic((n - k) + k * p) - harmonic(n - k);
  const double signed_pair =
      orientation == CodedLatencyOrientation::resolved ? pair : -pair;
  return (hk - tail + signed_pair) / mu;
}

Metrics zero_delay_sexp(int k, const Scheme& scheme, double d, double mu) {
  const double hk = harmonic(static_cast<double>(k));
  const double task_mean = d + 1.0 / mu;
  Metrics m;
  if (const auto* rep = std::get_if<Replicated>(&scheme)) {
    const int c = rep->c;
    m.latency = {d + hk / ((c + 1.0) * mu), Exactness::exact};
    m.cost_cancel = {(c + 1.0) * k * d + k / mu, Exactness::exact};
    m.cost_nocancel = {(c + 1.0) * k * task_mean, Exactness::exact};
  } else {
    const int n = std::get<Coded>(scheme).n;
    m.latency = {d + (harmonic(n) - harmonic(n - k)) / mu, Exactness::exact};
    m.cost_cancel = {n * d + k / mu, Exactness::exact};
    m.cost_nocancel = {n * task_mean, Exactness::exact};
  }
  return m;
}

Metrics zero_delay_pareto(int k, const Scheme& scheme, double lambda,
                          double alpha) {
  Metrics m;
  const bool finite_cost = alpha > 1.0;
  if (const auto* rep = std::get_if<Replicated>(&scheme)) {
    const int c = rep->c;
    const double s = 1.0 / ((c + 1.0) * alpha);
    if (1.0 - s <= 0.0) {
      throw std::domain_error(
          "zero-delay Pareto: (c+1)*alpha must exceed 1 for finite latency");
    }
    m.latency = {lambda * std::exp(ln_gamma(k + 1.0) + ln_gamma(1.0 - s) -
                                   ln_gamma(k + 1.0 - s)),
                 Exactness::exact};
    if (finite_cost) {
      const double r = (c + 1.0) * alpha;
      m.cost_cancel = {lambda * k * (c + 1.0) * r / (r - 1.0),
                       Exactness::exact};
      m.cost_nocancel = {(c + 1.0) * k * lambda * alpha / (alpha - 1.0),
                         Exactness::exact};
    } else {
      m.cost_cancel = {kInf, Exactness::exact};
      m.cost_nocancel = {kInf, Exactness::exact};
    }
  } else {
    const int n = std::get<Coded>(scheme).n;
    const double s = 1.0 / alpha;
    if (n - k + 1.0 - s <= 0.0) {
      throw std::domain_error(
          "zero-delay Pareto: alpha too small for the coded latency formula");
    }
    m.latency = {lambda * std::exp(ln_gamma(n + 1.0) - ln_gamma(n - k + 1.0) +
                                   ln_gamma(n - k + 1.0 - s) -
                                   ln_gamma(n + 1.0 - s)),
                 Exactness::exact};
    if (finite_cost) {
      double cancel;
      if (n == k) {
        cancel = k * lambda * alpha / (alpha - 1.0);
      } else {
        const double ratio =
            std::exp(ln_gamma(static_cast<double>(n)) -
                     ln_gamma(static_cast<double>(n - k)) +
                     ln_gamma(n - k + 1.0 - s) - ln_gamma(n + 1.0 - s));
        cancel = lambda * n / (alpha - 1.0) * (alpha - ratio);
      }
      m.cost_cancel = {cancel, Exactness::exact};
      m.cost_nocancel = {n * lambda * alpha / (alpha - 1.0), Exactness::exact};
    } else {
      m.cost_cancel = {kInf, Exactness::exact};
      m.cost_nocancel = {kInf, Exactness::exact};
    }
  }
  return m;
}

}  // namespace

Metrics rep_exp_metrics(int k, int c, double delta, double mu) {
  check_common(k, delta, mu);
  if (c < 0) throw std::domain_error("metrics: c must be >= 0");
  const double p = std::exp(-mu * delta);
  Metrics m;
  m.latency = {rep_latency(k, c, p, mu), Exactness::approximation};
  m.cost_cancel = {k / mu, Exactness::exact};
  m.cost_nocancel = {(c * p + 1.0) * k / mu, Exactness::exact};
  return m;
}

Metrics rep_sexp_metrics(int k, int c, double delta, double D, double mu,
                         QVariant latency_q) {
  check_common(k, delta, mu);
  if (c < 0) throw std::domain_error("metrics: c must be >= 0");
  if (!std::isfinite(D) || D < 0.0) {
    throw std::domain_error("metrics: D must be finite and >= 0");
  }
  const double d = D / k;
  const double p_plain = std::exp(-mu * delta);
  const double p_shift = delta > d ? std::exp(-mu * (delta - d)) : 1.0;
  const double p_lat = latency_q == QVariant::plain ? p_plain : p_shift;

  Metrics m;
  m.latency = {d + rep_latency(k, c, p_lat, mu), Exactness::approximation};
  m.latency_q_variant = latency_q;
  if (delta > d || d == 0.0) {
    // 1 - q - e^{-mu delta} with the shift-adjusted q equals p_shift - p_plain.
    m.cost_cancel = {D + (k / mu) * (1.0 + c * (p_shift - p_plain)),
                     Exactness::approximation};
  } else {
    // Stated only for delta > D/k; report the delta -> (D/k)+ limit.
    m.cost_cancel = {D + (k / mu) * (1.0 + c * (-std::expm1(-mu * d))),
                     Exactness::extrapolated};
  }
  m.cost_nocancel = {(c * p_shift + 1.0) * (D + k / mu),
                     Exactness::approximation};
  return m;
}

Metrics coded_exp_metrics(int k, int n, double delta, double mu,
                          CodedLatencyOrientation orientation) {
  check_common(k, delta, mu);
  if (n < k) throw std::domain_error("metrics: n must be >= k");
  const double p = std::exp(-mu * delta);
  const double q_pow_k = one_minus_pow(p, k);
  Metrics m;
  m.latency = {coded_latency(k, n, p, mu, orientation),
               Exactness::approximation};
  m.cost_cancel = {k / mu, Exactness::exact};
  m.cost_nocancel = {(k / mu) * q_pow_k + (n / mu) * (1.0 - q_pow_k),
                     Exactness::exact};
  return m;
}

DelayIntermediates delay_intermediates(int k, double delta, double D,
                                       double mu) {
  check_common(k, delta, mu);
  const double d = D / k;
  DelayIntermediates di;
  di.one_minus_q_tilde = std::exp(-mu * delta);
  di.q_tilde = -std::expm1(-mu * delta);
  di.eta = di.q_tilde;
  if (delta > d) {
    di.one_minus_q = std::exp(-mu * (delta - d));
    di.q = -std::expm1(-mu * (delta - d));
  } else {
    di.one_minus_q = 1.0;
    di.q = 0.0;
  }
  return di;
}

Metrics coded_sexp_metrics(int k, int n, double delta, double D, double mu,
                           CodedLatencyOrientation orientation) {
  check_common(k, delta, mu);
  if (n < k) throw std::domain_error("metrics: n must be >= k");
  if (!std::isfinite(D) || D < 0.0) {
    throw std::domain_error("metrics: D must be finite and >= 0");
  }
  const double d = D / k;
  const DelayIntermediates di = delay_intermediates(k, delta, D, mu);
  const double task_mean = d + 1.0 / mu;

  Metrics m;
  m.latency = {d + coded_latency(k, n, di.one_minus_q_tilde, mu, orientation),
               Exactness::approximation};

  const double q_pow_k = one_minus_pow(di.one_minus_q, k);
  m.cost_nocancel = {q_pow_k * k * task_mean + (1.0 - q_pow_k) * n * task_mean,
                     Exactness::exact};

  // E[C^c] = E[C] - (n-k)/mu (1 - q^k)
  //                - (n-k)/mu eta^{-k(1-q)} B(eta; k(1-q)+1, 0) (qt^k - q^k).
  const double qt_pow_k = one_minus_pow(di.one_minus_q_tilde, k);
  const double term2 = ((n - k) / mu) * (1.0 - q_pow_k);
  double term3 = 0.0;
  const double pow_gap = qt_pow_k - q_pow_k;
  if (di.eta > 0.0 && pow_gap != 0.0) {
    const double m2 = k * di.one_minus_q + 1.0;  // k(1-q) + 1
    const double beta = inc_beta_zero_1m(di.one_minus_q_tilde, m2);
    if (beta > 0.0) {
      const double ln_factor =
          -k * di.one_minus_q * std::log1p(-di.one_minus_q_tilde);
      term3 = ((n - k) / mu) * std::exp(ln_factor + std::log(beta)) * pow_gap;
    }
  }
  m.cost_cancel = {m.cost_nocancel.value - term2 - term3,
                   Exactness::approximation};
  return m;
}

Metrics zero_delay_metrics(int k, const Scheme& scheme,
                           const TaskDistribution& dist) {
  if (k < 1) throw std::domain_error("metrics: k must be >= 1");
  if (const auto* rep = std::get_if<Replicated>(&scheme)) {
    if (rep->c < 0) throw std::domain_error("metrics: c must be >= 0");
  } else if (std::get<Coded>(scheme).n < k) {
    throw std::domain_error("metrics: n must be >= k");
  }
  if (const auto* e = std::get_if<Exp>(&dist)) {
    return zero_delay_sexp(k, scheme, 0.0, e->mu);
  }
  if (const auto* se = std::get_if<SExp>(&dist)) {
    return zero_delay_sexp(k, scheme, se->d, se->mu);
  }
  const auto& par = std::get<Pareto>(dist);
  return zero_delay_pareto(k, scheme, par.lambda, par.alpha);
}

BaselineCostOptimum pareto_min_latency_at_baseline_cost(int k, double lambda,
                                                        double alpha,
                                                        SchemeKind kind,
                                                        int n_max) {
  if (k < 1) throw std::domain_error("baseline optimum: k must be >= 1");
  if (!std::isfinite(lambda) || lambda <= 0.0) {
    throw std::domain_error("baseline optimum: lambda must be > 0");
  }
  if (!std::isfinite(alpha) || alpha <= 1.0) {
    throw std::domain_error(
        "baseline optimum: alpha must exceed 1 (finite baseline cost)");
  }
  const double baseline_cost = k * lambda * alpha / (alpha - 1.0);

  BaselineCostOptimum out;
  if (kind == SchemeKind::replicated) {
    // Largest c whose cancellation cost stays within baseline; no c >= 1
    // qualifies once alpha reaches 1.5.
    int c_max = 0;
    if (alpha < 1.5) {
      c_max = std::max(
          static_cast<int>(std::floor(1.0 / (alpha - 1.0))) - 1, 0);
    }
    out.level = c_max;
    out.feasible = c_max >= 1;
    out.t_min =
        zero_delay_metrics(k, Replicated{c_max}, Pareto{lambda, alpha})
            .latency.value;
    return out;
  }

  const double t0 =
      zero_delay_metrics(k, Replicated{0}, Pareto{lambda, alpha})
          .latency.value;
  out.coded_bound = lambda * alpha + t0;

  // For heavy tails the coded cost first dips below baseline and then grows;
  // the scan may stop at the first point above baseline as long as the curve
  // never turns back down, which is checked as it goes.
  int n_star = k;
  double prev_cost =
      zero_delay_metrics(k, Coded{k}, Pareto{lambda, alpha}).cost_cancel.value;
  bool rising = false;
  const int hard_cap = n_max >= k ? n_max : k + 1000000;
  for (int n = k + 1; n <= hard_cap; ++n) {
    const Metrics m = zero_delay_metrics(k, Coded{n}, Pareto{lambda, alpha});
    const double cost = m.cost_cancel.value;
    if (cost < prev_cost) {
      if (rising) {
        throw std::logic_error(
            "baseline optimum: coded cost is not unimodal over the scan");
      }
    } else if (cost > prev_cost) {
      rising = true;
    }
    prev_cost = cost;
    if (cost > baseline_cost) break;
    n_star = n;
  }
  out.level = n_star;
  out.feasible = n_star > k;
  out.t_min =
      zero_delay_metrics(k, Coded{n_star}, Pareto{lambda, alpha})
          .latency.value;
  return out;
}

Metrics metrics_for(const SystemConfig& config, QVariant latency_q,
                    CodedLatencyOrientation orientation) {
  config.validate();
  const int k = config.k;
  if (const auto* e = std::get_if<Exp>(&config.dist)) {
    if (const auto* rep = std::get_if<Replicated>(&config.scheme)) {
      return rep_exp_metrics(k, rep->c, config.delta, e->mu);
    }
    return coded_exp_metrics(k, std::get<Coded>(config.scheme).n, config.delta,
                             e->mu, orientation);
  }
  if (const auto* se = std::get_if<SExp>(&config.dist)) {
    const double D = se->d * k;
    if (const auto* rep = std::get_if<Replicated>(&config.scheme)) {
      return rep_sexp_metrics(k, rep->c, config.delta, D, se->mu, latency_q);
    }
    return coded_sexp_metrics(k, std::get<Coded>(config.scheme).n,
                              config.delta, D, se->mu, orientation);
  }
  if (config.delta > 0.0) {
    throw UnsupportedCombination(
        "no closed form for Pareto task times with delta > 0; "
        "use the simulation engine");
  }
  return zero_delay_metrics(k, config.scheme, config.dist);
}

}  // namespace slab::analytic
