#pragma once

#include <optional>
#include <string>
#include <variant>

#include "slab/dist.hpp"

namespace slab {

// c fresh replicas per straggling task once the delay expires; c = 0 is the
// redundancy-free baseline.
struct Replicated {
  int c = 0;
};

// n total tasks after the delay expires (n - k parities); the job completes
// when any k of the launched tasks finish. Requires n >= k.
struct Coded {
  int n = 1;
};

using Scheme = std::variant<Replicated, Coded>;

struct SystemConfig {
  int k = 1;                         // tasks per job
  Scheme scheme = Replicated{0};
  double delta = 0.0;                // time redundancy is introduced
  TaskDistribution dist = Exp{1.0};  // per-task execution time law

  // Throws std::invalid_argument on a malformed configuration.
  void validate() const;
};

enum class Exactness { exact, approximation, extrapolated };
const char* to_string(Exactness e);

struct MetricValue {
  double value = 0.0;
  Exactness exactness = Exactness::exact;
};

// The delayed shifted-exponential latency formula admits two readings of the
// finished-by-delta fraction q: computed from the full delay (plain) or from
// the delay minus the per-task shift (shift_adjusted). Both are kept; the
// calibration suite measures which one tracks simulation.
enum class QVariant { plain, shift_adjusted };
const char* to_string(QVariant v);

struct Metrics {
  MetricValue latency;
  MetricValue cost_cancel;    // E[C^c], outstanding tasks cancelled
  MetricValue cost_nocancel;  // E[C], every launched task runs to completion
  std::optional<QVariant> latency_q_variant;
};

// Finished-by-delta fractions entering the delayed coded cost formulas.
// q uses the shift-adjusted delay (0 when delta <= shift); q_tilde and eta
// both use the plain delay. one_minus_* carry the exact complements.
struct DelayIntermediates {
  double q = 0.0;
  double q_tilde = 0.0;
  double eta = 0.0;
  double one_minus_q = 1.0;
  double one_minus_q_tilde = 1.0;
};

}  // namespace slab
