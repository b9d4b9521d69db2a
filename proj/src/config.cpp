#include "slab/config.hpp"

#include <stdexcept>

#include "slab/version.hpp"

namespace slab::config {

namespace {

[[noreturn]] void missing(const std::string& field) {
  throw std::invalid_argument("config: missing required field \"" + field +
                              "\"");
}

double get_number(const nlohmann::json& j, const std::string& field) {
  if (!j.contains(field)) missing(field);
  if (!j[field].is_number()) {
    throw std::invalid_argument("config: field \"" + field +
                                "\" must be a number");
  }
  return j[field].get<double>();
}

int get_int(const nlohmann::json& j, const std::string& field) {
  if (!j.contains(field)) missing(field);
  if (!j[field].is_number_integer()) {
    throw std::invalid_argument("config: field \"" + field +
                                "\" must be an integer");
  }
  return j[field].get<int>();
}

std::string get_string(const nlohmann::json& j, const std::string& field) {
  if (!j.contains(field)) missing(field);
  if (!j[field].is_string()) {
    throw std::invalid_argument("config: field \"" + field +
                                "\" must be a string");
  }
  return j[field].get<std::string>();
}

}  // namespace

TaskDistribution dist_from_json(const nlohmann::json& j, int k) {
  if (!j.is_object()) {
    throw std::invalid_argument("config: \"dist\" must be an object");
  }
  const std::string type = get_string(j, "type");
  if (type == "exp") {
    return Exp{get_number(j, "mu")};
  }
  if (type == "sexp") {
    const bool has_job = j.contains("D");
    const bool has_task = j.contains("d");
    if (has_job && has_task) {
      throw std::invalid_argument(
          "config: sexp accepts either \"D\" (job-level) or \"d\" (per-task),"
          " not both");
    }
    if (!has_job && !has_task) missing("D");
    const double shift =
        has_job ? get_number(j, "D") / k : get_number(j, "d");
    return SExp{shift, get_number(j, "mu")};
  }
  if (type == "pareto") {
    return Pareto{get_number(j, "lambda"), get_number(j, "alpha")};
  }
  throw std::invalid_argument("config: unknown dist type \"" + type +
                              "\" (expected exp, sexp or pareto)");
}

nlohmann::json dist_to_json(const TaskDistribution& dist) {
  if (const auto* e = std::get_if<Exp>(&dist)) {
    return {{"type", "exp"}, {"mu", e->mu}};
  }
  if (const auto* se = std::get_if<SExp>(&dist)) {
    return {{"type", "sexp"}, {"d", se->d}, {"mu", se->mu}};
  }
  const auto& par = std::get<Pareto>(dist);
  return {{"type", "pareto"}, {"lambda", par.lambda}, {"alpha", par.alpha}};
}

SystemConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("config: expected a JSON object");
  }
  SystemConfig config;
  config.k = get_int(j, "k");
  if (config.k < 1) throw std::invalid_argument("config: k must be >= 1");
  const std::string scheme = get_string(j, "scheme");
  if (scheme == "rep") {
    config.scheme = Replicated{get_int(j, "c")};
  } else if (scheme == "coded") {
    config.scheme = Coded{get_int(j, "n")};
  } else {
    throw std::invalid_argument("config: scheme must be \"rep\" or \"coded\"");
  }
  config.delta = j.contains("delta") ? get_number(j, "delta") : 0.0;
  if (!j.contains("dist")) missing("dist");
  config.dist = dist_from_json(j["dist"], config.k);
  config.validate();
  return config;
}

nlohmann::json config_to_json(const SystemConfig& config) {
  nlohmann::json j{{"k", config.k},
                   {"delta", config.delta},
                   {"dist", dist_to_json(config.dist)}};
  if (const auto* rep = std::get_if<Replicated>(&config.scheme)) {
    j["scheme"] = "rep";
    j["c"] = rep->c;
  } else {
    j["scheme"] = "coded";
    j["n"] = std::get<Coded>(config.scheme).n;
  }
  return j;
}

sweep::SweepSpec sweep_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("sweep spec: expected a JSON object");
  }
  sweep::SweepSpec spec;
  if (!j.contains("base")) missing("base");
  spec.base = config_from_json(j["base"]);
  const std::string axis = get_string(j, "axis");
  if (axis == "delta") {
    spec.axis = sweep::Axis::delta;
  } else if (axis == "c") {
    spec.axis = sweep::Axis::replication_level;
  } else if (axis == "n") {
    spec.axis = sweep::Axis::code_length;
  } else {
    throw std::invalid_argument(
        "sweep spec: axis must be \"delta\", \"c\" or \"n\"");
  }
  if (!j.contains("grid") || !j["grid"].is_array()) missing("grid");
  for (const auto& v : j["grid"]) {
    if (!v.is_number()) {
      throw std::invalid_argument("sweep spec: grid entries must be numbers");
    }
    spec.grid.push_back(v.get<double>());
  }
  const std::string engine =
      j.contains("engine") ? get_string(j, "engine") : "analytic";
  if (engine == "analytic") {
    spec.engine = sweep::Engine::analytic;
  } else if (engine == "sim") {
    spec.engine = sweep::Engine::simulate;
  } else if (engine == "both") {
    spec.engine = sweep::Engine::both;
  } else {
    throw std::invalid_argument(
        "sweep spec: engine must be \"analytic\", \"sim\" or \"both\"");
  }
  if (j.contains("replications")) {
    spec.replications = j["replications"].get<std::uint64_t>();
  }
  if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  spec.validate();
  return spec;
}

nlohmann::json sweep_spec_to_json(const sweep::SweepSpec& spec) {
  return {{"base", config_to_json(spec.base)},
          {"axis", sweep::to_string(spec.axis)},
          {"grid", spec.grid},
          {"engine", sweep::to_string(spec.engine)},
          {"replications", spec.replications},
          {"seed", spec.seed}};
}

nlohmann::json make_manifest(const std::string& command,
                             const nlohmann::json& resolved,
                             std::uint64_t seed,
                             const std::vector<std::string>& outputs) {
  return {{"tool", kToolName},
          {"version", kToolVersion},
          {"command", command},
          {"resolved", resolved},
          {"seed", seed},
          {"outputs", outputs}};
}

}  // namespace slab::config
