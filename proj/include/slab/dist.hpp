#pragma once

#include <variant>

#include "slab/rng.hpp"

namespace slab {

// Exp(mu): rate mu, support [0, inf).
struct Exp {
  double mu;
  explicit Exp(double mu);
};

// SExp(d, mu): deterministic shift d plus Exp(mu) noise, support [d, inf).
// d is the per-task shift; callers holding a job-level shift D pass d = D/k.
struct SExp {
  double d;
  double mu;
  SExp(double d, double mu);
};

// Pareto(lambda, alpha): scale lambda, tail index alpha, support [lambda, inf).
// Mean is finite only for alpha > 1.
struct Pareto {
  double lambda;
  double alpha;
  Pareto(double lambda, double alpha);
};

using TaskDistribution = std::variant<Exp, SExp, Pareto>;

// Inverse-survival transform at u in (0, 1]:
//   Exp: -ln(u)/mu,  SExp: d - ln(u)/mu,  Pareto: lambda * u^(-1/alpha).
double sample_at(const TaskDistribution& dist, double u);

// One draw using a uniform variate from the open interval (0,1).
double sample(const TaskDistribution& dist, RngStream& rng);

double cdf(const TaskDistribution& dist, double x);

// Expected value; +inf for Pareto with alpha <= 1.
double mean(const TaskDistribution& dist);

double support_min(const TaskDistribution& dist);

}  // namespace slab
