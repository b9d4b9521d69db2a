#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "slab/analytic.hpp"
#include "slab/calibrate.hpp"
#include "slab/config.hpp"
#include "slab/io.hpp"
#include "slab/model.hpp"
#include "slab/sim.hpp"
#include "slab/sweep.hpp"
#include "slab/version.hpp"

namespace {

using nlohmann::json;

struct ConfigFlags {
  std::string config_path;
  std::optional<int> k;
  std::optional<std::string> scheme;
  std::optional<int> c;
  std::optional<int> n;
  std::optional<double> delta;
  std::optional<std::string> dist;
  std::optional<double> mu;
  std::optional<double> D;
  std::optional<double> per_task_shift;
  std::optional<double> lambda;
  std::optional<double> alpha;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file");
  cmd->add_option("--k", f.k, "tasks per job");
  cmd->add_option("--scheme", f.scheme, "redundancy scheme: rep or coded");
  cmd->add_option("--c", f.c, "replicas per straggling task (rep)");
  cmd->add_option("--n", f.n, "total tasks after redundancy (coded)");
  cmd->add_option("--delta", f.delta, "time redundancy is introduced");
  cmd->add_option("--dist", f.dist, "task time law: exp, sexp or pareto");
  cmd->add_option("--mu", f.mu, "rate of the exponential part");
  cmd->add_option("--D", f.D, "job-level shift (sexp); divided by k");
  cmd->add_option("--per-task-shift", f.per_task_shift,
                  "per-task shift d (sexp); overrides --D");
  cmd->add_option("--lambda", f.lambda, "scale (pareto)");
  cmd->add_option("--alpha", f.alpha, "tail index (pareto)");
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

// Flags override config-file fields; both end up echoed into the manifest.
slab::SystemConfig resolve_config(const ConfigFlags& f, json* echo = nullptr) {
  json j = f.config_path.empty() ? json::object()
                                 : load_json_file(f.config_path);
  if (f.k) j["k"] = *f.k;
  if (f.scheme) j["scheme"] = *f.scheme;
  if (f.c) j["c"] = *f.c;
  if (f.n) j["n"] = *f.n;
  if (f.delta) j["delta"] = *f.delta;
  if (f.dist) {
    j["dist"] = json{{"type", *f.dist}};
  } else if (!j.contains("dist")) {
    j["dist"] = json::object();
  }
  if (f.mu) j["dist"]["mu"] = *f.mu;
  if (f.D) {
    j["dist"]["D"] = *f.D;
    j["dist"].erase("d");
  }
  if (f.per_task_shift) {
    j["dist"]["d"] = *f.per_task_shift;
    j["dist"].erase("D");
  }
  if (f.lambda) j["dist"]["lambda"] = *f.lambda;
  if (f.alpha) j["dist"]["alpha"] = *f.alpha;

  const slab::SystemConfig config = slab::config::config_from_json(j);
  if (echo) *echo = slab::config::config_to_json(config);
  return config;
}

std::string join_command(int argc, char** argv) {
  std::ostringstream os;
  for (int i = 0; i < argc; ++i) {
    if (i) os << ' ';
    const std::string arg = argv[i];
    if (arg.find(' ') != std::string::npos) {
      os << '"' << arg << '"';
    } else {
      os << arg;
    }
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << contents;
}

void write_manifest(const std::string& path, const std::string& command,
                    const json& resolved, std::uint64_t seed,
                    const std::vector<std::string>& outputs) {
  write_file(path, slab::config::make_manifest(command, resolved, seed, outputs)
                           .dump(2) +
                       "\n");
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> grid;
  grid.reserve(count);
  for (int i = 0; i < count; ++i) {
    grid.push_back(lo + (hi - lo) * i / (count - 1));
  }
  return grid;
}

void tag_rows(std::vector<slab::sweep::SweepRow>& rows,
              const std::string& family) {
  for (auto& row : rows) {
    row.flags = row.flags.empty() ? family : family + ";" + row.flags;
  }
}

// fig2 preset: delay sweeps for replicated c in {1,2} and a coded family,
// shifted-exponential task times.
slab::sweep::SweepResult preset_fig2(std::uint64_t reps, std::uint64_t seed,
                                     int parallelism) {
  slab::sweep::SweepResult all;
  slab::sweep::SweepSpec spec;
  spec.base.k = 10;
  spec.base.dist = slab::SExp{0.1, 1.0};  // D = 1
  spec.axis = slab::sweep::Axis::delta;
  spec.grid = linspace(0.0, 4.0, 20);
  spec.engine = slab::sweep::Engine::both;
  spec.replications = reps;
  spec.parallelism = parallelism;

  std::uint64_t family_index = 0;
  auto run_family = [&](const slab::Scheme& scheme, const std::string& tag) {
    spec.base.scheme = scheme;
    spec.seed = slab::derive_seed(seed, family_index++);
    auto result = slab::sweep::delta_sweep(spec);
    tag_rows(result.rows, tag);
    all.rows.insert(all.rows.end(), result.rows.begin(), result.rows.end());
  };
  for (int c : {1, 2}) {
    run_family(slab::Replicated{c}, "scheme=rep;c=" + std::to_string(c));
  }
  for (int n : {11, 12, 15, 20, 25, 30}) {
    run_family(slab::Coded{n}, "scheme=coded;n=" + std::to_string(n));
  }
  all.meta = {spec.base, seed, reps};
  return all;
}

// fig3 preset: zero-delay level sweeps across replication levels and code
// lengths, for a shifted-exponential and three Pareto tail indices.
slab::sweep::SweepResult preset_fig3() {
  slab::sweep::SweepResult all;
  slab::sweep::SweepSpec spec;
  spec.base.k = 10;
  spec.base.delta = 0.0;
  spec.engine = slab::sweep::Engine::analytic;

  auto run_family = [&](const slab::TaskDistribution& dist,
                        const std::string& dist_tag) {
    spec.base.dist = dist;
    spec.axis = slab::sweep::Axis::replication_level;
    spec.grid.clear();
    for (int c = 0; c <= 10; ++c) spec.grid.push_back(c);
    spec.base.scheme = slab::Replicated{0};
    auto rep_rows = slab::sweep::level_sweep(spec);
    tag_rows(rep_rows.rows, dist_tag + ";scheme=rep");
    all.rows.insert(all.rows.end(), rep_rows.rows.begin(),
                    rep_rows.rows.end());

    spec.axis = slab::sweep::Axis::code_length;
    spec.grid.clear();
    for (int n = 10; n <= 30; ++n) spec.grid.push_back(n);
    spec.base.scheme = slab::Coded{10};
    auto coded_rows = slab::sweep::level_sweep(spec);
    tag_rows(coded_rows.rows, dist_tag + ";scheme=coded");
    all.rows.insert(all.rows.end(), coded_rows.rows.begin(),
                    coded_rows.rows.end());
  };

  run_family(slab::SExp{0.1, 1.0}, "dist=sexp;D=1;mu=1");
  for (double alpha : {1.2, 2.0, 3.0}) {
    std::ostringstream tag;
    tag << "dist=pareto;lambda=1;alpha=" << alpha;
    run_family(slab::Pareto{1.0, alpha}, tag.str());
  }
  all.meta = {spec.base, 0, 0};
  return all;
}

slab::sweep::ReductionCurve preset_fig4() {
  std::vector<double> grid;
  for (int i = 0; i <= 36; ++i) grid.push_back(1.2 + 0.05 * i);
  return slab::sweep::alpha_reduction_curve(10, 1.0, grid);
}

int run_cli(int argc, char** argv) {
  CLI::App app{"closed-form and simulated latency/cost analysis of delayed "
               "replicated and coded redundancy for distributed jobs"};
  app.set_version_flag("--version", slab::kToolVersion);
  app.require_subcommand(1);

  // analytic
  auto* cmd_analytic = app.add_subcommand(
      "analytic", "evaluate the closed-form metrics for one configuration");
  ConfigFlags an_flags;
  add_config_flags(cmd_analytic, an_flags);
  std::string an_out;
  std::string an_latency_q = "plain";
  std::string an_orientation = "resolved";
  cmd_analytic->add_option("--out", an_out, "write JSON here (plus manifest)");
  cmd_analytic->add_option("--latency-q", an_latency_q,
                           "sexp replicated latency q: plain or "
                           "shift_adjusted");
  cmd_analytic->add_option("--coded-latency-orientation", an_orientation,
                           "resolved or alternate (audit)");

  // simulate
  auto* cmd_simulate = app.add_subcommand(
      "simulate", "Monte Carlo estimate for one configuration");
  ConfigFlags sim_flags;
  add_config_flags(cmd_simulate, sim_flags);
  std::uint64_t sim_reps = 0;
  std::uint64_t sim_seed = 1;
  int sim_parallel = 1;
  std::string sim_out, sim_trace_out;
  cmd_simulate->add_option("--reps", sim_reps, "replications (>= 2)")
      ->required();
  cmd_simulate->add_option("--seed", sim_seed, "master seed")
      ->envname("STRAGGLER_LAB_SEED");
  cmd_simulate->add_option("--parallel", sim_parallel,
                           "worker threads (result independent of this)");
  cmd_simulate->add_option("--out", sim_out, "write JSON here (plus manifest)");
  cmd_simulate->add_option("--trace-out", sim_trace_out,
                           "write per-task trace CSV here");

  // sweep
  auto* cmd_sweep = app.add_subcommand(
      "sweep", "evaluate a design-space sweep to CSV/JSON");
  std::string sweep_spec_path, sweep_preset, sweep_prefix = "sweep";
  std::uint64_t sweep_reps = 0;
  std::uint64_t sweep_seed = 1;
  int sweep_parallel = 1;
  cmd_sweep->add_option("--spec", sweep_spec_path, "sweep spec JSON file");
  cmd_sweep->add_option("--preset", sweep_preset,
                        "built-in preset: fig2, fig3 or fig4");
  cmd_sweep->add_option("--out-prefix", sweep_prefix,
                        "output prefix for .csv/.json/.manifest.json");
  cmd_sweep->add_option("--reps", sweep_reps, "override replications");
  cmd_sweep->add_option("--seed", sweep_seed, "master seed")
      ->envname("STRAGGLER_LAB_SEED");
  cmd_sweep->add_option("--parallel", sweep_parallel, "worker threads");

  // calibrate
  auto* cmd_calibrate = app.add_subcommand(
      "calibrate",
      "compare every closed form against the simulator and print a table");
  std::uint64_t cal_reps = 200000;
  std::uint64_t cal_seed = 1;
  int cal_parallel = 1;
  cmd_calibrate->add_option("--reps", cal_reps, "replications per cell");
  cmd_calibrate->add_option("--seed", cal_seed, "master seed")
      ->envname("STRAGGLER_LAB_SEED");
  cmd_calibrate->add_option("--parallel", cal_parallel, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command = join_command(argc, argv);

  if (app.got_subcommand(cmd_analytic)) {
    if (an_latency_q != "plain" && an_latency_q != "shift_adjusted") {
      throw std::invalid_argument("--latency-q must be plain or shift_adjusted");
    }
    if (an_orientation != "resolved" && an_orientation != "alternate") {
      throw std::invalid_argument(
          "--coded-latency-orientation must be resolved or alternate");
    }
    json echo;
    const slab::SystemConfig config = resolve_config(an_flags, &echo);
    const slab::Metrics metrics = slab::analytic::metrics_for(
        config,
        an_latency_q == "plain" ? slab::QVariant::plain
                                : slab::QVariant::shift_adjusted,
        an_orientation == "resolved"
            ? slab::analytic::CodedLatencyOrientation::resolved
            : slab::analytic::CodedLatencyOrientation::alternate);
    const std::string payload = slab::io::metrics_to_json(metrics).dump(2) + "\n";
    if (an_out.empty()) {
      std::cout << payload;
    } else {
      write_file(an_out, payload);
      write_manifest(an_out + ".manifest.json", command, echo, 0, {an_out});
    }
    return 0;
  }

  if (app.got_subcommand(cmd_simulate)) {
    if (sim_reps < 2) {
      throw std::invalid_argument("--reps must be >= 2");
    }
    json echo;
    const slab::SystemConfig config = resolve_config(sim_flags, &echo);

    std::ofstream trace_stream;
    slab::TraceSink sink;
    if (!sim_trace_out.empty()) {
      trace_stream.open(sim_trace_out, std::ios::binary);
      if (!trace_stream) {
        throw std::runtime_error("cannot write file: " + sim_trace_out);
      }
      slab::io::write_trace_csv_header(trace_stream);
      sink = [&trace_stream](std::uint64_t rep, const slab::JobTrace& trace) {
        slab::io::write_trace_csv_rows(trace_stream, rep, trace);
      };
    }
    const slab::SimEstimate est =
        slab::estimate(config, sim_reps, sim_seed, sim_parallel, sink);
    const std::string payload = slab::io::estimate_to_json(est).dump(2) + "\n";
    if (sim_out.empty()) {
      std::cout << payload;
    } else {
      write_file(sim_out, payload);
      std::vector<std::string> outputs{sim_out};
      if (!sim_trace_out.empty()) outputs.push_back(sim_trace_out);
      json resolved{{"config", echo},
                    {"replications", sim_reps},
                    {"parallel", sim_parallel}};
      write_manifest(sim_out + ".manifest.json", command, resolved, sim_seed,
                     outputs);
    }
    return 0;
  }

  if (app.got_subcommand(cmd_sweep)) {
    if (sweep_spec_path.empty() == sweep_preset.empty()) {
      throw std::invalid_argument(
          "sweep needs exactly one of --spec or --preset");
    }
    const std::string csv_path = sweep_prefix + ".csv";
    const std::string json_path = sweep_prefix + ".json";
    const std::string manifest_path = sweep_prefix + ".manifest.json";
    std::ostringstream csv;
    json payload;
    json resolved;

    if (!sweep_spec_path.empty()) {
      json spec_json = load_json_file(sweep_spec_path);
      if (sweep_reps > 0) spec_json["replications"] = sweep_reps;
      if (cmd_sweep->count("--seed") > 0 ||
          !spec_json.contains("seed")) {
        spec_json["seed"] = sweep_seed;
      }
      slab::sweep::SweepSpec spec =
          slab::config::sweep_spec_from_json(spec_json);
      spec.parallelism = sweep_parallel;
      const auto result = spec.axis == slab::sweep::Axis::delta
                              ? slab::sweep::delta_sweep(spec)
                              : slab::sweep::level_sweep(spec);
      slab::io::write_sweep_csv(csv, result);
      payload = slab::io::sweep_to_json(result);
      resolved = slab::config::sweep_spec_to_json(spec);
      sweep_seed = spec.seed;
    } else if (sweep_preset == "fig2") {
      const std::uint64_t reps = sweep_reps > 0 ? sweep_reps : 20000;
      const auto result = preset_fig2(reps, sweep_seed, sweep_parallel);
      slab::io::write_sweep_csv(csv, result);
      payload = slab::io::sweep_to_json(result);
      resolved = {{"preset", "fig2"}, {"replications", reps}};
    } else if (sweep_preset == "fig3") {
      const auto result = preset_fig3();
      slab::io::write_sweep_csv(csv, result);
      payload = slab::io::sweep_to_json(result);
      resolved = {{"preset", "fig3"}};
    } else if (sweep_preset == "fig4") {
      const auto curve = preset_fig4();
      slab::io::write_reduction_csv(csv, curve);
      payload = slab::io::reduction_to_json(curve);
      resolved = {{"preset", "fig4"}};
    } else {
      throw std::invalid_argument("unknown preset: " + sweep_preset);
    }

    write_file(csv_path, csv.str());
    write_file(json_path, payload.dump(2) + "\n");
    write_manifest(manifest_path, command, resolved, sweep_seed,
                   {csv_path, json_path});
    return 0;
  }

  // calibrate
  slab::calib::Settings settings;
  settings.replications = cal_reps;
  settings.seed = cal_seed;
  settings.parallelism = cal_parallel;
  const slab::calib::Report report = slab::calib::run(settings);
  slab::calib::print_table(std::cout, report);
  return report.all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
