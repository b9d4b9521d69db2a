#include "slab/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

namespace slab {

const char* to_string(TaskKind k) {
  switch (k) {
    case TaskKind::original:
      return "original";
    case TaskKind::replica:
      return "replica";
    case TaskKind::parity:
      return "parity";
  }
  return "unknown";
}

namespace {

JobTrace run_once_impl(const SystemConfig& config,
                       const std::function<double()>& draw) {
  const int k = config.k;
  const double delta = config.delta;

  JobTrace trace;
  trace.records.reserve(static_cast<std::size_t>(k));
  double max_original = 0.0;
  for (int i = 0; i < k; ++i) {
    TaskRecord rec;
    rec.kind = TaskKind::original;
    rec.start = 0.0;
    rec.own_finish = draw();
    trace.records.push_back(rec);
    max_original = std::max(max_original, rec.own_finish);
  }

  // All k originals done by delta (inclusive): no redundancy launches.
  if (max_original <= delta) {
    for (auto& rec : trace.records) rec.end = rec.own_finish;
    trace.job_completion = max_original;
  } else if (const auto* rep = std::get_if<Replicated>(&config.scheme)) {
    const int c = rep->c;
    // Each straggling original gets c fresh copies starting at delta.
    std::vector<int> first_replica(static_cast<std::size_t>(k), -1);
    for (int i = 0; i < k; ++i) {
      if (trace.records[static_cast<std::size_t>(i)].own_finish <= delta) {
        continue;
      }
      first_replica[static_cast<std::size_t>(i)] =
          static_cast<int>(trace.records.size());
      for (int j = 0; j < c; ++j) {
        TaskRecord rec;
        rec.kind = TaskKind::replica;
        rec.parent = i;
        rec.start = delta;
        rec.own_finish = delta + draw();
        trace.records.push_back(rec);
      }
    }
    // A task completes at the earliest finish among its copies; the copies
    // that lose are cancelled right then.
    double job = 0.0;
    for (int i = 0; i < k; ++i) {
      auto& orig = trace.records[static_cast<std::size_t>(i)];
      double group = orig.own_finish;
      const int base = first_replica[static_cast<std::size_t>(i)];
      if (base >= 0) {
        for (int j = 0; j < c; ++j) {
          group = std::min(
              group,
              trace.records[static_cast<std::size_t>(base + j)].own_finish);
        }
        orig.end = group;
        orig.cancelled = group < orig.own_finish;
        for (int j = 0; j < c; ++j) {
          auto& rec = trace.records[static_cast<std::size_t>(base + j)];
          rec.end = std::min(rec.own_finish, group);
          rec.cancelled = group < rec.own_finish;
        }
      } else {
        orig.end = orig.own_finish;
      }
      job = std::max(job, group);
    }
    trace.job_completion = job;
  } else {
    const int n = std::get<Coded>(config.scheme).n;
    for (int j = 0; j < n - k; ++j) {
      TaskRecord rec;
      rec.kind = TaskKind::parity;
      rec.start = delta;
      rec.own_finish = delta + draw();
      trace.records.push_back(rec);
    }
    // Job completes at the k-th task completion; everything still running
    // is cancelled then.
    std::vector<double> finishes;
    finishes.reserve(trace.records.size());
    for (const auto& rec : trace.records) finishes.push_back(rec.own_finish);
    std::nth_element(finishes.begin(), finishes.begin() + (k - 1),
                     finishes.end());
    const double job = finishes[static_cast<std::size_t>(k - 1)];
    for (auto& rec : trace.records) {
      if (rec.own_finish <= job) {
        rec.end = rec.own_finish;
      } else {
        rec.end = job;
        rec.cancelled = true;
      }
    }
    trace.job_completion = job;
  }

  for (const auto& rec : trace.records) {
    trace.cost_cancel += rec.end - rec.start;
    trace.cost_nocancel += rec.own_finish - rec.start;
  }
  return trace;
}

struct ChunkSums {
  double lat = 0.0, lat2 = 0.0;
  double cc = 0.0, cc2 = 0.0;
  double cn = 0.0, cn2 = 0.0;
};

// Fixed chunk size keeps the summation tree independent of parallelism.
constexpr std::uint64_t kChunkSize = 4096;

}  // namespace

JobTrace run_once(const SystemConfig& config,
                  const std::function<double()>& draw) {
  config.validate();
  return run_once_impl(config, draw);
}

JobTrace run_once(const SystemConfig& config, RngStream& rng) {
  config.validate();
  const TaskDistribution& dist = config.dist;
  return run_once_impl(config,
                       [&dist, &rng]() { return sample(dist, rng); });
}

SimEstimate estimate(const SystemConfig& config, std::uint64_t replications,
                     std::uint64_t master_seed, int parallelism,
                     const TraceSink& sink) {
  config.validate();
  if (replications < 2) {
    throw std::invalid_argument(
        "estimate: at least 2 replications are required for standard errors");
  }
  const TaskDistribution& dist = config.dist;
  const std::uint64_t n_chunks = (replications + kChunkSize - 1) / kChunkSize;
  std::vector<ChunkSums> partials(n_chunks);

  auto run_chunk = [&](std::uint64_t chunk) {
    ChunkSums sums;
    const std::uint64_t lo = chunk * kChunkSize;
    const std::uint64_t hi = std::min(lo + kChunkSize, replications);
    for (std::uint64_t rep = lo; rep < hi; ++rep) {
      RngStream rng(master_seed, rep);
      const JobTrace trace = run_once_impl(
          config, [&dist, &rng]() { return sample(dist, rng); });
      sums.lat += trace.job_completion;
      sums.lat2 += trace.job_completion * trace.job_completion;
      sums.cc += trace.cost_cancel;
      sums.cc2 += trace.cost_cancel * trace.cost_cancel;
      sums.cn += trace.cost_nocancel;
      sums.cn2 += trace.cost_nocancel * trace.cost_nocancel;
      if (sink) sink(rep, trace);
    }
    partials[chunk] = sums;
  };

  const int workers = sink ? 1 : std::max(1, std::min(parallelism, 256));
  if (workers == 1) {
    for (std::uint64_t chunk = 0; chunk < n_chunks; ++chunk) run_chunk(chunk);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::uint64_t chunk = next.fetch_add(1);
          if (chunk >= n_chunks) return;
          run_chunk(chunk);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  ChunkSums total;
  for (const auto& s : partials) {
    total.lat += s.lat;
    total.lat2 += s.lat2;
    total.cc += s.cc;
    total.cc2 += s.cc2;
    total.cn += s.cn;
    total.cn2 += s.cn2;
  }

  const double n = static_cast<double>(replications);
  auto finalize = [n](double sum, double sum2, double& mean, double& se) {
    mean = sum / n;
    const double var = std::max(0.0, (sum2 - sum * sum / n) / (n - 1.0));
    se = std::sqrt(var / n);
  };

  SimEstimate est;
  est.replications = replications;
  est.master_seed = master_seed;
  finalize(total.lat, total.lat2, est.mean_latency, est.se_latency);
  finalize(total.cc, total.cc2, est.mean_cost_cancel, est.se_cost_cancel);
  finalize(total.cn, total.cn2, est.mean_cost_nocancel, est.se_cost_nocancel);
  return est;
}

}  // namespace slab
