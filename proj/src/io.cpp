#include "slab/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "slab/config.hpp"
#include "slab/version.hpp"

namespace slab::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void write_sweep_csv(std::ostream& os, const sweep::SweepResult& result) {
  os << "axis_name,axis_value,engine,latency,latency_se,cost_cancel,"
        "cost_cancel_se,cost_nocancel,cost_nocancel_se,flags\n";
  for (const auto& row : result.rows) {
    os << csv_field(row.axis_name) << ',' << format_double(row.axis_value)
       << ',' << row.engine << ',' << format_double(row.latency) << ','
       << format_double(row.latency_se) << ','
       << format_double(row.cost_cancel) << ','
       << format_double(row.cost_cancel_se) << ','
       << format_double(row.cost_nocancel) << ','
       << format_double(row.cost_nocancel_se) << ',' << csv_field(row.flags)
       << '\n';
  }
}

void write_reduction_csv(std::ostream& os,
                         const sweep::ReductionCurve& curve) {
  os << "alpha,baseline_latency,rep_t_min,rep_c_max,rep_reduction,"
        "coded_t_min,coded_n_star,coded_reduction,coded_bound\n";
  for (const auto& row : curve.rows) {
    os << format_double(row.alpha) << ','
       << format_double(row.baseline_latency) << ','
       << format_double(row.rep_t_min) << ',' << row.rep_c_max << ','
       << format_double(row.rep_reduction) << ','
       << format_double(row.coded_t_min) << ',' << row.coded_n_star << ','
       << format_double(row.coded_reduction) << ','
       << format_double(row.coded_bound) << '\n';
  }
}

void write_trace_csv_header(std::ostream& os) {
  os << "replication,kind,parent,start,own_finish,end,cancelled\n";
}

void write_trace_csv_rows(std::ostream& os, std::uint64_t replication,
                          const JobTrace& trace) {
  for (const auto& rec : trace.records) {
    os << replication << ',' << to_string(rec.kind) << ',' << rec.parent
       << ',' << format_double(rec.start) << ','
       << format_double(rec.own_finish) << ',' << format_double(rec.end)
       << ',' << (rec.cancelled ? 1 : 0) << '\n';
  }
}

namespace {

nlohmann::json metric_value_to_json(const MetricValue& mv) {
  return {{"value", mv.value}, {"exactness", to_string(mv.exactness)}};
}

}  // namespace

nlohmann::json metrics_to_json(const Metrics& m) {
  nlohmann::json j{{"latency", metric_value_to_json(m.latency)},
                   {"cost_cancel", metric_value_to_json(m.cost_cancel)},
                   {"cost_nocancel", metric_value_to_json(m.cost_nocancel)}};
  if (m.latency_q_variant) {
    j["latency_q_variant"] = to_string(*m.latency_q_variant);
  }
  return j;
}

nlohmann::json estimate_to_json(const SimEstimate& est) {
  return {{"mean_latency", est.mean_latency},
          {"se_latency", est.se_latency},
          {"mean_cost_cancel", est.mean_cost_cancel},
          {"se_cost_cancel", est.se_cost_cancel},
          {"mean_cost_nocancel", est.mean_cost_nocancel},
          {"se_cost_nocancel", est.se_cost_nocancel},
          {"replications", est.replications},
          {"master_seed", est.master_seed}};
}

namespace {

nlohmann::json sweep_row_to_json(const sweep::SweepRow& row) {
  return {{"axis_name", row.axis_name},
          {"axis_value", row.axis_value},
          {"engine", row.engine},
          {"latency", row.latency},
          {"latency_se", row.latency_se},
          {"cost_cancel", row.cost_cancel},
          {"cost_cancel_se", row.cost_cancel_se},
          {"cost_nocancel", row.cost_nocancel},
          {"cost_nocancel_se", row.cost_nocancel_se},
          {"flags", row.flags}};
}

}  // namespace

nlohmann::json sweep_to_json(const sweep::SweepResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : result.rows) rows.push_back(sweep_row_to_json(row));
  return {{"metadata",
           {{"config", config::config_to_json(result.meta.base)},
            {"seed", result.meta.seed},
            {"replications", result.meta.replications},
            {"tool_version", kToolVersion}}},
          {"rows", rows}};
}

nlohmann::json reduction_to_json(const sweep::ReductionCurve& curve) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : curve.rows) {
    rows.push_back({{"alpha", row.alpha},
                    {"baseline_latency", row.baseline_latency},
                    {"rep_t_min", row.rep_t_min},
                    {"rep_c_max", row.rep_c_max},
                    {"rep_reduction", row.rep_reduction},
                    {"coded_t_min", row.coded_t_min},
                    {"coded_n_star", row.coded_n_star},
                    {"coded_reduction", row.coded_reduction},
                    {"coded_bound", row.coded_bound}});
  }
  return {{"metadata",
           {{"k", curve.k},
            {"lambda", curve.lambda},
            {"tool_version", kToolVersion}}},
          {"rows", rows}};
}

}  // namespace slab::io
