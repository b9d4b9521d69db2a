#include "slab/dist.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace slab {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

Exp::Exp(double mu) : mu(mu) {
  require(std::isfinite(mu) && mu > 0.0, "Exp: mu must be finite and > 0");
}

SExp::SExp(double d, double mu) : d(d), mu(mu) {
  require(std::isfinite(d) && d >= 0.0, "SExp: d must be finite and >= 0");
  require(std::isfinite(mu) && mu > 0.0, "SExp: mu must be finite and > 0");
}

Pareto::Pareto(double lambda, double alpha) : lambda(lambda), alpha(alpha) {
  require(std::isfinite(lambda) && lambda > 0.0,
          "Pareto: lambda must be finite and > 0");
  require(std::isfinite(alpha) && alpha > 0.0,
          "Pareto: alpha must be finite and > 0");
}

double sample_at(const TaskDistribution& dist, double u) {
  return std::visit(
      [u](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Exp>) {
          return -std::log(u) / d.mu;
        } else if constexpr (std::is_same_v<T, SExp>) {
          return d.d - std::log(u) / d.mu;
        } else {
          return d.lambda * std::pow(u, -1.0 / d.alpha);
        }
      },
      dist);
}

double sample(const TaskDistribution& dist, RngStream& rng) {
  return sample_at(dist, rng.next_unit_open());
}

double cdf(const TaskDistribution& dist, double x) {
  return std::visit(
      [x](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Exp>) {
          return x <= 0.0 ? 0.0 : -std::expm1(-d.mu * x);
        } else if constexpr (std::is_same_v<T, SExp>) {
          return x <= d.d ? 0.0 : -std::expm1(-d.mu * (x - d.d));
        } else {
          return x <= d.lambda ? 0.0 : 1.0 - std::pow(d.lambda / x, d.alpha);
        }
      },
      dist);
}

double mean(const TaskDistribution& dist) {
  return std::visit(
      [](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Exp>) {
          return 1.0 / d.mu;
        } else if constexpr (std::is_same_v<T, SExp>) {
          return d.d + 1.0 / d.mu;
        } else {
          if (d.alpha <= 1.0) return std::numeric_limits<double>::infinity();
          return d.lambda * d.alpha / (d.alpha - 1.0);
        }
      },
      dist);
}

double support_min(const TaskDistribution& dist) {
  return std::visit(
      [](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Exp>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, SExp>) {
          return d.d;
        } else {
          return d.lambda;
        }
      },
      dist);
}

}  // namespace slab
