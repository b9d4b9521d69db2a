#include "slab/sweep.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "slab/rng.hpp"

namespace slab::sweep {

namespace {

std::string metric_flags(const Metrics& m) {
  std::ostringstream os;
  os << "latency=" << to_string(m.latency.exactness)
     << ";cost_cancel=" << to_string(m.cost_cancel.exactness)
     << ";cost_nocancel=" << to_string(m.cost_nocancel.exactness);
  if (m.latency_q_variant) {
    os << ";latency_q=" << to_string(*m.latency_q_variant);
  }
  return os.str();
}

SweepRow analytic_row(const std::string& axis_name, double axis_value,
                      const Metrics& m) {
  SweepRow row;
  row.axis_name = axis_name;
  row.axis_value = axis_value;
  row.engine = "analytic";
  row.latency = m.latency.value;
  row.cost_cancel = m.cost_cancel.value;
  row.cost_nocancel = m.cost_nocancel.value;
  row.flags = metric_flags(m);
  return row;
}

SweepRow sim_row(const std::string& axis_name, double axis_value,
                 const SimEstimate& est) {
  SweepRow row;
  row.axis_name = axis_name;
  row.axis_value = axis_value;
  row.engine = "sim";
  row.latency = est.mean_latency;
  row.latency_se = est.se_latency;
  row.cost_cancel = est.mean_cost_cancel;
  row.cost_cancel_se = est.se_cost_cancel;
  row.cost_nocancel = est.mean_cost_nocancel;
  row.cost_nocancel_se = est.se_cost_nocancel;
  return row;
}

bool needs_sim(Engine e) { return e != Engine::analytic; }
bool needs_analytic(Engine e) { return e != Engine::simulate; }

}  // namespace

const char* to_string(Axis a) {
  switch (a) {
    case Axis::delta:
      return "delta";
    case Axis::replication_level:
      return "c";
    case Axis::code_length:
      return "n";
    case Axis::alpha:
      return "alpha";
  }
  return "unknown";
}

const char* to_string(Engine e) {
  switch (e) {
    case Engine::analytic:
      return "analytic";
    case Engine::simulate:
      return "sim";
    case Engine::both:
      return "both";
  }
  return "unknown";
}

void SweepSpec::validate() const {
  base.validate();
  if (grid.empty()) throw std::invalid_argument("sweep: grid must be nonempty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("sweep: grid must be strictly increasing");
    }
  }
  if (needs_sim(engine) && replications < 2) {
    throw std::invalid_argument(
        "sweep: simulating engines need replications >= 2");
  }
  switch (axis) {
    case Axis::delta:
      if (grid.front() < 0.0) {
        throw std::invalid_argument("sweep: delta grid must be >= 0");
      }
      break;
    case Axis::replication_level:
      for (double v : grid) {
        if (v < 0.0 || v != std::floor(v)) {
          throw std::invalid_argument(
              "sweep: replication levels must be nonnegative integers");
        }
      }
      break;
    case Axis::code_length:
      for (double v : grid) {
        if (v < base.k || v != std::floor(v)) {
          throw std::invalid_argument(
              "sweep: code lengths must be integers >= k");
        }
      }
      break;
    case Axis::alpha:
      for (double v : grid) {
        if (!(v > 1.0)) {
          throw std::invalid_argument("sweep: alpha grid must exceed 1");
        }
      }
      break;
  }
}

SweepResult delta_sweep(const SweepSpec& spec) {
  if (spec.axis != Axis::delta) {
    throw std::invalid_argument("delta_sweep: axis must be delta");
  }
  spec.validate();
  const bool pareto = std::holds_alternative<Pareto>(spec.base.dist);
  if (pareto && needs_analytic(spec.engine)) {
    for (double delta : spec.grid) {
      if (delta > 0.0) {
        throw analytic::UnsupportedCombination(
            "delta_sweep: no closed form for Pareto task times with "
            "delta > 0; use the simulation engine");
      }
    }
  }

  SweepResult out;
  out.meta = {spec.base, spec.seed, spec.replications};
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    SystemConfig config = spec.base;
    config.delta = spec.grid[i];
    if (needs_analytic(spec.engine)) {
      out.rows.push_back(
          analytic_row("delta", config.delta, analytic::metrics_for(config)));
    }
    if (needs_sim(spec.engine)) {
      const SimEstimate est =
          estimate(config, spec.replications, derive_seed(spec.seed, i),
                   spec.parallelism);
      out.rows.push_back(sim_row("delta", config.delta, est));
    }
  }
  return out;
}

SweepResult level_sweep(const SweepSpec& spec) {
  if (spec.axis != Axis::replication_level && spec.axis != Axis::code_length) {
    throw std::invalid_argument("level_sweep: axis must be c or n");
  }
  spec.validate();
  if (spec.base.delta != 0.0) {
    throw std::invalid_argument("level_sweep: requires delta = 0");
  }
  if (const auto* par = std::get_if<Pareto>(&spec.base.dist)) {
    if (needs_analytic(spec.engine) && par->alpha <= 1.0) {
      throw std::domain_error(
          "level_sweep: Pareto needs alpha > 1 for finite analytic cost");
    }
  }

  const char* axis_name = to_string(spec.axis);
  SweepResult out;
  out.meta = {spec.base, spec.seed, spec.replications};
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    const int level = static_cast<int>(spec.grid[i]);
    SystemConfig config = spec.base;
    config.scheme = spec.axis == Axis::replication_level
                        ? Scheme{Replicated{level}}
                        : Scheme{Coded{level}};
    config.validate();
    if (needs_analytic(spec.engine)) {
      const Metrics m =
          analytic::zero_delay_metrics(config.k, config.scheme, config.dist);
      out.rows.push_back(analytic_row(axis_name, spec.grid[i], m));
    }
    if (needs_sim(spec.engine)) {
      const SimEstimate est =
          estimate(config, spec.replications, derive_seed(spec.seed, i),
                   spec.parallelism);
      out.rows.push_back(sim_row(axis_name, spec.grid[i], est));
    }
  }
  return out;
}

ReductionCurve alpha_reduction_curve(int k, double lambda,
                                     const std::vector<double>& alpha_grid) {
  if (alpha_grid.empty()) {
    throw std::invalid_argument("alpha curve: grid must be nonempty");
  }
  for (double a : alpha_grid) {
    if (!(a > 1.0)) {
      throw std::invalid_argument("alpha curve: every alpha must exceed 1");
    }
  }
  ReductionCurve curve;
  curve.k = k;
  curve.lambda = lambda;
  for (double alpha : alpha_grid) {
    ReductionRow row;
    row.alpha = alpha;
    row.baseline_latency =
        analytic::zero_delay_metrics(k, Replicated{0}, Pareto{lambda, alpha})
            .latency.value;
    const auto rep = analytic::pareto_min_latency_at_baseline_cost(
        k, lambda, alpha, analytic::SchemeKind::replicated);
    row.rep_t_min = rep.t_min;
    row.rep_c_max = rep.level;
    row.rep_reduction =
        (row.baseline_latency - rep.t_min) / row.baseline_latency;
    const auto coded = analytic::pareto_min_latency_at_baseline_cost(
        k, lambda, alpha, analytic::SchemeKind::coded, 3 * k);
    row.coded_t_min = coded.t_min;
    row.coded_n_star = coded.level;
    row.coded_reduction =
        (row.baseline_latency - coded.t_min) / row.baseline_latency;
    row.coded_bound = coded.coded_bound;
    curve.rows.push_back(row);
  }
  return curve;
}

std::vector<SweepRow> pareto_frontier(const std::vector<SweepRow>& rows,
                                      CostField field) {
  auto cost_of = [field](const SweepRow& r) {
    return field == CostField::cancel ? r.cost_cancel : r.cost_nocancel;
  };
  std::vector<SweepRow> kept;
  for (const auto& candidate : rows) {
    bool dominated = false;
    for (const auto& other : rows) {
      const bool leq = other.latency <= candidate.latency &&
                       cost_of(other) <= cost_of(candidate);
      const bool strict = other.latency < candidate.latency ||
                          cost_of(other) < cost_of(candidate);
      if (leq && strict) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(candidate);
  }
  return kept;
}

}  // namespace slab::sweep
