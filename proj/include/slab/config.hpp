#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "slab/model.hpp"
#include "slab/sweep.hpp"

namespace slab::config {

// Distribution literal, e.g. {"type":"exp","mu":1.0},
// {"type":"sexp","D":1.0,"mu":1.0} or {"type":"sexp","d":0.1,"mu":1.0},
// {"type":"pareto","lambda":3.0,"alpha":2.0}. A job-level shift D is divided
// by k; a per-task shift d is taken as is (giving both is an error).
TaskDistribution dist_from_json(const nlohmann::json& j, int k);

// Echoes the resolved per-task parameterization.
nlohmann::json dist_to_json(const TaskDistribution& dist);

// {"k":10,"scheme":"rep","c":1,"delta":0.5,"dist":{...}} or
// {"k":10,"scheme":"coded","n":15,...}. Throws std::invalid_argument with a
// message naming the offending field.
SystemConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const SystemConfig& config);

// {"base":{...},"axis":"delta"|"c"|"n","grid":[...],
//  "engine":"analytic"|"sim"|"both","replications":N,"seed":N}
sweep::SweepSpec sweep_spec_from_json(const nlohmann::json& j);
nlohmann::json sweep_spec_to_json(const sweep::SweepSpec& spec);

nlohmann::json make_manifest(const std::string& command,
                             const nlohmann::json& resolved,
                             std::uint64_t seed,
                             const std::vector<std::string>& outputs);

}  // namespace slab::config
