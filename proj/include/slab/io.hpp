#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "slab/model.hpp"
#include "slab/sim.hpp"
#include "slab/sweep.hpp"

namespace slab::io {

// Shortest round-trip decimal form; locale-independent.
std::string format_double(double v);

// RFC-4180 quoting: wraps fields containing commas, quotes or newlines.
std::string csv_field(const std::string& s);

void write_sweep_csv(std::ostream& os, const sweep::SweepResult& result);
void write_reduction_csv(std::ostream& os, const sweep::ReductionCurve& curve);

// One row per task record: replication,kind,parent,start,own_finish,end,cancelled
void write_trace_csv_header(std::ostream& os);
void write_trace_csv_rows(std::ostream& os, std::uint64_t replication,
                          const JobTrace& trace);

nlohmann::json metrics_to_json(const Metrics& m);
nlohmann::json estimate_to_json(const SimEstimate& est);
nlohmann::json sweep_to_json(const sweep::SweepResult& result);
nlohmann::json reduction_to_json(const sweep::ReductionCurve& curve);

}  // namespace slab::io
