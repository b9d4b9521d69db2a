#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "slab/model.hpp"

namespace slab {

enum class TaskKind { original, replica, parity };
const char* to_string(TaskKind k);

struct TaskRecord {
  TaskKind kind = TaskKind::original;
  int parent = -1;      // original-task index for replicas, -1 otherwise
  double start = 0.0;   // 0 for originals, delta for redundant tasks
  double own_finish = 0.0;  // start + sampled execution time
  double end = 0.0;     // min(own_finish, cancellation time)
  bool cancelled = false;
};

struct JobTrace {
  std::vector<TaskRecord> records;
  double job_completion = 0.0;
  double cost_cancel = 0.0;    // sum of (end - start)
  double cost_nocancel = 0.0;  // sum of (own_finish - start)
};

// One simulated job execution. Draw order is fixed: originals 0..k-1 first,
// then redundant tasks (replicas grouped by straggling original in index
// order, or parities in index order). A completion exactly at delta counts
// as completed before redundancy launches.
JobTrace run_once(const SystemConfig& config, RngStream& rng);

// Same semantics with caller-scripted draws, in the draw order above.
JobTrace run_once(const SystemConfig& config,
                  const std::function<double()>& draw);

struct SimEstimate {
  double mean_latency = 0.0;
  double se_latency = 0.0;
  double mean_cost_cancel = 0.0;
  double se_cost_cancel = 0.0;
  double mean_cost_nocancel = 0.0;
  double se_cost_nocancel = 0.0;
  std::uint64_t replications = 0;
  std::uint64_t master_seed = 0;

  bool operator==(const SimEstimate&) const = default;
};

// Called once per replication, in replication order.
using TraceSink = std::function<void(std::uint64_t replication, const JobTrace&)>;

// Means and standard errors over independent replications. Replication r
// draws from RngStream(master_seed, r), and accumulation is chunked in a
// fixed pattern, so the result is bitwise identical for any parallelism.
// Requires replications >= 2. A non-null sink forces sequential execution.
SimEstimate estimate(const SystemConfig& config, std::uint64_t replications,
                     std::uint64_t master_seed, int parallelism = 1,
                     const TraceSink& sink = nullptr);

}  // namespace slab
