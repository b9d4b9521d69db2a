#pragma once

namespace slab::specfun {

// Harmonic number H_x for real x >= 0. Matches the partial sum 1 + 1/2 + ...
// + 1/x at integer x; H_0 = 0. Strictly increasing.
double harmonic(double x);

// B(q; m, 0) = integral of u^(m-1)/(1-u) over [0, q], for q in [0, 1), m > 0.
// Diverges as q -> 1.
double inc_beta_zero(double q, double m);

// Same quantity parameterized by p = 1 - q, so callers that know p exactly
// (e.g. p = exp(-mu*delta)) do not lose precision when q is close to 1.
double inc_beta_zero_1m(double one_minus_q, double m);

// Remainder term of the near-one expansion
//   B(q; m, 0) = -ln(1-q) - H_{m-1} + inc_beta_zero_tail(1-q, m),
// i.e. the integral of (1-u^(m-1))/(1-u) over [q, 1]. Tends to 0 as q -> 1
// and equals H_{m-1} at q = 0.
double inc_beta_zero_tail(double one_minus_q, double m);

// ln Gamma(x) for x > 0.
double ln_gamma(double x);

// Gamma(a)/Gamma(b), evaluated in log space; exact 1 when a == b.
double gamma_ratio(double a, double b);

}  // namespace slab::specfun
