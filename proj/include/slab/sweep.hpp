#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slab/analytic.hpp"
#include "slab/model.hpp"
#include "slab/sim.hpp"

namespace slab::sweep {

enum class Axis { delta, replication_level, code_length, alpha };
const char* to_string(Axis a);

enum class Engine { analytic, simulate, both };
const char* to_string(Engine e);

struct SweepSpec {
  SystemConfig base;
  Axis axis = Axis::delta;
  std::vector<double> grid;  // integer-valued for the level axes
  Engine engine = Engine::analytic;
  std::uint64_t replications = 0;  // required when simulating
  std::uint64_t seed = 0;
  int parallelism = 1;

  void validate() const;  // std::invalid_argument on malformed specs
};

struct SweepRow {
  std::string axis_name;
  double axis_value = 0.0;
  std::string engine;  // "analytic" or "sim"
  double latency = 0.0, latency_se = 0.0;
  double cost_cancel = 0.0, cost_cancel_se = 0.0;
  double cost_nocancel = 0.0, cost_nocancel_se = 0.0;
  std::string flags;  // semicolon-joined annotations
};

struct SweepMetadata {
  SystemConfig base;
  std::uint64_t seed = 0;
  std::uint64_t replications = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // grid order; analytic row before sim row
  SweepMetadata meta;
};

// Latency/cost across the delay grid. Analytic rows are rejected for Pareto
// task times with any positive delay (no closed form).
SweepResult delta_sweep(const SweepSpec& spec);

// Zero-delay metrics across redundancy levels (c or n).
SweepResult level_sweep(const SweepSpec& spec);

struct ReductionRow {
  double alpha = 0.0;
  double baseline_latency = 0.0;  // no-redundancy expected latency
  double rep_t_min = 0.0;
  int rep_c_max = 0;
  double rep_reduction = 0.0;  // (T0 - T_min)/T0
  double coded_t_min = 0.0;
  int coded_n_star = 0;
  double coded_reduction = 0.0;
  double coded_bound = 0.0;  // closed-form upper bound on coded t_min
};

struct ReductionCurve {
  std::vector<ReductionRow> rows;
  int k = 0;
  double lambda = 0.0;
};

// Latency-reduction fractions achievable at baseline cost vs the tail index.
// The coded scan is capped at n = 3k.
ReductionCurve alpha_reduction_curve(int k, double lambda,
                                     const std::vector<double>& alpha_grid);

enum class CostField { cancel, nocancel };

// Rows not dominated in (latency, chosen cost); stable order, ties kept.
std::vector<SweepRow> pareto_frontier(const std::vector<SweepRow>& rows,
                                      CostField field = CostField::cancel);

}  // namespace slab::sweep
