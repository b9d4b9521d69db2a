#include "slab/sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "slab/analytic.hpp"
#include "support/oracles.hpp"

using namespace slab;

namespace {

std::function<double()> scripted(std::vector<double> values) {
  auto queue = std::make_shared<std::deque<double>>(values.begin(),
                                                    values.end());
  return [queue]() {
    REQUIRE_FALSE(queue->empty());
    const double v = queue->front();
    queue->pop_front();
    return v;
  };
}

SystemConfig make_config(int k, Scheme scheme, double delta,
                         TaskDistribution dist = Exp{1.0}) {
  SystemConfig config;
  config.k = k;
  config.scheme = scheme;
  config.delta = delta;
  config.dist = dist;
  return config;
}

void check_trace_invariants(const SystemConfig& config,
                            const JobTrace& trace) {
  CHECK(trace.cost_cancel <= trace.cost_nocancel + 1e-12);
  CHECK(trace.job_completion >= support_min(config.dist));
  double cancelled_loss = 0.0;
  for (const auto& rec : trace.records) {
    CHECK(rec.end >= rec.start);
    CHECK(rec.end <= rec.own_finish);
    if (rec.kind == TaskKind::original) {
      CHECK(rec.start == 0.0);
    } else {
      CHECK(rec.start == config.delta);
    }
    if (rec.cancelled) {
      CHECK(rec.end < rec.own_finish);
      cancelled_loss += rec.own_finish - rec.end;
    } else {
      CHECK(rec.end == rec.own_finish);
    }
  }
  CHECK(trace.cost_nocancel - trace.cost_cancel ==
        doctest::Approx(cancelled_loss).epsilon(1e-9));
}

}  // namespace

TEST_CASE("hand-traced replicated run") {
  // k=1, c=1, delta=0: original takes 3, replica takes 1.
  const auto config = make_config(1, Replicated{1}, 0.0);
  const JobTrace trace = run_once(config, scripted({3.0, 1.0}));
  CHECK(trace.job_completion == 1.0);
  CHECK(trace.cost_cancel == 2.0);
  CHECK(trace.cost_nocancel == 4.0);
  REQUIRE(trace.records.size() == 2);
  CHECK(trace.records[0].kind == TaskKind::original);
  CHECK(trace.records[0].cancelled);
  CHECK(trace.records[0].end == 1.0);
  CHECK(trace.records[1].kind == TaskKind::replica);
  CHECK(trace.records[1].parent == 0);
  CHECK_FALSE(trace.records[1].cancelled);
}

TEST_CASE("hand-traced coded run") {
  // k=2, n=3, delta=1: originals (0.4, 5.0), parity 0.3.
  const auto config = make_config(2, Coded{3}, 1.0);
  const JobTrace trace = run_once(config, scripted({0.4, 5.0, 0.3}));
  CHECK(trace.job_completion == doctest::Approx(1.3).epsilon(1e-15));
  CHECK(trace.cost_cancel == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(trace.cost_nocancel == doctest::Approx(5.7).epsilon(1e-15));
  REQUIRE(trace.records.size() == 3);
  CHECK_FALSE(trace.records[0].cancelled);
  CHECK(trace.records[1].cancelled);
  CHECK(trace.records[1].end == doctest::Approx(1.3));
  CHECK(trace.records[2].kind == TaskKind::parity);
  CHECK_FALSE(trace.records[2].cancelled);
}

TEST_CASE("hand-traced replicated run with a finished task") {
  // k=2, c=1, delta=1: task 0 straggles (2.0), task 1 finished (0.5);
  // only task 0 gets a replica (0.3, so it finishes at 1.3).
  const auto config = make_config(2, Replicated{1}, 1.0);
  const JobTrace trace = run_once(config, scripted({2.0, 0.5, 0.3}));
  CHECK(trace.job_completion == doctest::Approx(1.3));
  REQUIRE(trace.records.size() == 3);
  CHECK(trace.records[1].end == 0.5);
  CHECK_FALSE(trace.records[1].cancelled);
  CHECK(trace.records[0].cancelled);
  CHECK(trace.cost_cancel == doctest::Approx(1.3 + 0.5 + 0.3));
  CHECK(trace.cost_nocancel == doctest::Approx(2.0 + 0.5 + 0.3));
}

TEST_CASE("completion exactly at delta pre-empts redundancy") {
  const auto rep = make_config(1, Replicated{2}, 0.5);
  const JobTrace t1 = run_once(rep, scripted({0.5}));
  CHECK(t1.records.size() == 1);
  CHECK(t1.job_completion == 0.5);

  const auto coded = make_config(2, Coded{4}, 0.5);
  const JobTrace t2 = run_once(coded, scripted({0.5, 0.2}));
  CHECK(t2.records.size() == 2);
  CHECK(t2.job_completion == 0.5);
  CHECK(t2.cost_cancel == t2.cost_nocancel);
}

TEST_CASE("redundancy-free schemes reproduce the plain job per draw") {
  for (const Scheme scheme : {Scheme{Replicated{0}}, Scheme{Coded{10}}}) {
    const auto config = make_config(10, scheme, 0.5, Pareto{1.0, 2.0});
    RngStream rng(77, 3);
    const JobTrace trace = run_once(config, rng);

    RngStream replay(77, 3);
    double max_x = 0.0, sum_x = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double x = sample(config.dist, replay);
      max_x = std::max(max_x, x);
      sum_x += x;
    }
    CHECK(trace.records.size() == 10);
    CHECK(trace.job_completion == max_x);
    CHECK(trace.cost_cancel == doctest::Approx(sum_x).epsilon(1e-15));
    CHECK(trace.cost_nocancel == doctest::Approx(sum_x).epsilon(1e-15));
    for (const auto& rec : trace.records) CHECK_FALSE(rec.cancelled);
  }
}

TEST_CASE("per-trace invariants over random configurations") {
  const std::vector<TaskDistribution> dists = {Exp{1.0}, SExp{0.1, 1.0},
                                               Pareto{1.0, 1.5}};
  const std::vector<Scheme> schemes = {Replicated{0}, Replicated{2},
                                       Coded{13}, Coded{20}};
  std::uint64_t stream = 0;
  for (const auto& dist : dists) {
    for (const auto& scheme : schemes) {
      for (double delta : {0.0, 0.3, 1.5, 4.0}) {
        const auto config = make_config(10, scheme, delta, dist);
        for (int rep = 0; rep < 50; ++rep) {
          RngStream rng(1234, stream++);
          const JobTrace trace = run_once(config, rng);
          check_trace_invariants(config, trace);

          // Scheme-specific completion definitions.
          if (std::holds_alternative<Coded>(scheme)) {
            std::vector<double> finishes;
            for (const auto& rec : trace.records) {
              finishes.push_back(rec.own_finish);
            }
            std::sort(finishes.begin(), finishes.end());
            CHECK(trace.job_completion == finishes[9]);
          } else {
            double job = 0.0;
            for (int i = 0; i < 10; ++i) {
              double group = trace.records[i].own_finish;
              for (const auto& rec : trace.records) {
                if (rec.kind == TaskKind::replica && rec.parent == i) {
                  group = std::min(group, rec.own_finish);
                }
              }
              job = std::max(job, group);
            }
            CHECK(trace.job_completion == doctest::Approx(job));
          }
        }
      }
    }
  }
}

TEST_CASE("coded jobs finishing by delta never launch parities") {
  const auto config = make_config(3, Coded{6}, 100.0);
  RngStream rng(5, 0);
  const JobTrace trace = run_once(config, rng);
  CHECK(trace.records.size() == 3);
  CHECK(trace.job_completion <= 100.0);
}

TEST_CASE("estimate requires at least two replications") {
  const auto config = make_config(4, Replicated{1}, 0.5);
  CHECK_THROWS_AS(estimate(config, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(estimate(config, 0, 1), std::invalid_argument);
}

TEST_CASE("estimate is bitwise deterministic across parallelism") {
  const auto config = make_config(10, Coded{15}, 1.0, SExp{0.1, 1.0});
  const SimEstimate base = estimate(config, 10000, 42, 1);
  CHECK(base == estimate(config, 10000, 42, 2));
  CHECK(base == estimate(config, 10000, 42, 3));
  CHECK(base == estimate(config, 10000, 42, 1));
  CHECK_FALSE(base == estimate(config, 10000, 43, 2));
}

TEST_CASE("estimate matches exact baselines within three standard errors") {
  // No redundancy: latency is the k-th order statistic mean H_k / mu.
  const auto base = make_config(10, Replicated{0}, 0.0);
  const SimEstimate est = estimate(base, 40000, 7, 2);
  CHECK(std::abs(est.mean_latency - oracle::harmonic_sum(10)) <=
        3.0 * est.se_latency);
  CHECK(std::abs(est.mean_cost_cancel - 10.0) <= 3.0 * est.se_cost_cancel);

  // Exponential cancellation cost is k/mu whatever the delay and scheme.
  const auto coded = make_config(10, Coded{15}, 1.0);
  const SimEstimate est2 = estimate(coded, 40000, 8, 2);
  CHECK(std::abs(est2.mean_cost_cancel - 10.0) <= 3.0 * est2.se_cost_cancel);

  // Cost without cancellation for coded tasks is exact in closed form.
  const Metrics m = analytic::coded_exp_metrics(10, 15, 1.0, 1.0);
  CHECK(std::abs(est2.mean_cost_nocancel - m.cost_nocancel.value) <=
        3.0 * est2.se_cost_nocancel);
}

TEST_CASE("trace sink sees replications in order") {
  const auto config = make_config(5, Replicated{1}, 0.5);
  std::vector<std::uint64_t> seen;
  const SimEstimate est = estimate(
      config, 5000, 3, 4,
      [&seen](std::uint64_t rep, const JobTrace&) { seen.push_back(rep); });
  CHECK(est.replications == 5000);
  REQUIRE(seen.size() == 5000);
  for (std::uint64_t i = 0; i < seen.size(); ++i) CHECK(seen[i] == i);
  // The sink forces sequential execution but must not change the estimate.
  CHECK(est == estimate(config, 5000, 3, 4));
}
