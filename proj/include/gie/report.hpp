#pragma once

#include <charconv>
#include <string>
#include <vector>

#include <json.hpp>

#include "gie/feasibility.hpp"

namespace gie::report {

using ojson = nlohmann::ordered_json;

/// Shortest round-trip decimal form; identical bytes for identical doubles.
inline std::string fmt(double x) {
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, r.ptr);
}

inline std::string csv_row(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

inline ojson to_json(const feasibility::ConstraintResult& c) {
  ojson j;
  j["name"] = c.name;
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  j["relation"] = std::string(1, c.relation);
  j["satisfied"] = c.satisfied;
  j["margin"] = c.margin;
  return j;
}

inline ojson to_json(const feasibility::FeasibilityReport& r) {
  ojson j;
  j["verdict"] = r.verdict == feasibility::Verdict::paradox_possible ? "paradox_possible"
                                                                     : "paradox_blocked";
  j["chain_ok"] = r.chain_ok;
  j["blocking_constraints"] = r.blocking_constraints;
  j["constraints"] = ojson::array();
  for (const auto& c : r.constraints) j["constraints"].push_back(to_json(c));
  return j;
}

inline std::string constants_csv(const std::vector<feasibility::DerivedConstant>& table) {
  std::string out = "name,derived,paper,rel_err\n";
  for (const auto& row : table)
    out += csv_row({row.name, fmt(row.derived), fmt(row.paper), fmt(row.rel_err)});
  return out;
}

inline ojson si_constants_json(const units::Constants& k) {
  ojson j;
  j["G"] = k.G;
  j["hbar"] = k.hbar;
  j["c"] = k.c;
  j["k_e"] = k.k_e;
  j["e"] = k.e;
  return j;
}

}  // namespace gie::report
