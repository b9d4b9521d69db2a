#pragma once

#include <stdexcept>

#include "slab/model.hpp"

namespace slab::analytic {

// Requested metrics have no closed form (delayed Pareto); simulate instead.
struct UnsupportedCombination : std::domain_error {
  using std::domain_error::domain_error;
};

// The delayed coded latency expression fixes the orientation of its harmonic
// pair from the two boundary conditions (zero delay and large delay), which
// the simulator confirms. `alternate` flips that pair's sign and is kept only
// for audit.
enum class CodedLatencyOrientation { resolved, alternate };

// Replicated (k, c, delta) system, Exp(mu) tasks.
Metrics rep_exp_metrics(int k, int c, double delta, double mu);

// Replicated (k, c, delta) system, SExp(D/k, mu) tasks. D is the job-level
// shift. For delta <= D/k, cost_cancel is the delta -> (D/k)+ limit and is
// flagged extrapolated.
Metrics rep_sexp_metrics(int k, int c, double delta, double D, double mu,
                         QVariant latency_q = QVariant::plain);

// Coded (k, n, delta) system, Exp(mu) tasks.
Metrics coded_exp_metrics(
    int k, int n, double delta, double mu,
    CodedLatencyOrientation orientation = CodedLatencyOrientation::resolved);

// Coded (k, n, delta) system, SExp(D/k, mu) tasks.
Metrics coded_sexp_metrics(
    int k, int n, double delta, double D, double mu,
    CodedLatencyOrientation orientation = CodedLatencyOrientation::resolved);

// Exact zero-delay metrics. dist must be SExp or Pareto (Exp is accepted as
// the zero-shift SExp). Pareto: throws std::domain_error when a Gamma
// argument of the latency formula is non-positive; alpha <= 1 yields +inf
// cost sentinels.
Metrics zero_delay_metrics(int k, const Scheme& scheme,
                           const TaskDistribution& dist);

DelayIntermediates delay_intermediates(int k, double delta, double D,
                                       double mu);

enum class SchemeKind { replicated, coded };

// Lowest expected latency reachable at zero delay without exceeding the
// redundancy-free baseline cost k*E[X], for Pareto(lambda, alpha) tasks.
struct BaselineCostOptimum {
  double t_min = 0.0;       // expected latency at the chosen level
  int level = 0;            // c_max (replicated) or n_star (coded)
  bool feasible = false;    // true when a strict reduction is attainable
  double coded_bound = 0.0; // closed-form upper bound on t_min (coded only)
};

// Replicated: closed-form c_max; no replication helps for alpha >= 1.5.
// Coded: scans n upward from k while cost stays at or below baseline
// (cost monotonicity over the scanned range is asserted); n_max < k means
// "no cap".
BaselineCostOptimum pareto_min_latency_at_baseline_cost(int k, double lambda,
                                                        double alpha,
                                                        SchemeKind kind,
                                                        int n_max = -1);

// Dispatch on scheme and distribution. Throws UnsupportedCombination for
// Pareto with delta > 0.
Metrics metrics_for(
    const SystemConfig& config, QVariant latency_q = QVariant::plain,
    CodedLatencyOrientation orientation = CodedLatencyOrientation::resolved);

}  // namespace slab::analytic
