#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gie/feasibility.hpp"
#include "gie/report.hpp"
#include "gie/scenario.hpp"

namespace gie::sweep {

struct FeasibilityInputs {
  interferometry::InterferometerSetup setup;
  interferometry::AliceQuadrupole alice;
  std::optional<std::pair<double, double>> internal;
};

/// Builds the checker inputs from a Planck-unit scenario, validating the
/// required keys. A two-level probe needs E0 and E1; otherwise m stands in
/// for both levels.
inline FeasibilityInputs feasibility_inputs(const scenario::ScenarioConfig& c) {
  scenario::require_keys(c,
                         {{"d", c.d.has_value()},
                          {"D", c.D.has_value()},
                          {"tau_a", c.tau_a.has_value()},
                          {"tau_f", c.tau_f.has_value()},
                          {"T", c.T.has_value()},
                          {"sigma", c.sigma.has_value()},
                          {"delta_t", c.delta_t.has_value()},
                          {"Q0", c.Q0.has_value()},
                          {"delta_q", c.delta_q.has_value()},
                          {"m or E0/E1", c.m.has_value() || (c.E0.has_value() && c.E1.has_value())}},
                         "feasibility");
  double m = c.m.value_or(0.0);
  if (m <= 0.0 && c.E0) m = *c.E0;  // Planck units, c = 1
  FeasibilityInputs f{{m, *c.d, *c.D, *c.tau_a, *c.tau_f, c.sigma.value_or(1.0),
                       c.delta_t.value_or(0.0)},
                      {*c.Q0, *c.delta_q, *c.T},
                      std::nullopt};
  if (c.E0 && c.E1) f.internal = std::make_pair(*c.E0, *c.E1);
  return f;
}

struct Row {
  double value;
  feasibility::FeasibilityReport report;
};

/// One feasibility report per grid point of the swept scenario key, ordered
/// by parameter value. Sweeping "m" against an explicit excited level E1
/// pins the ground level to E0 = m c^2.
inline std::vector<Row> run(const scenario::ScenarioConfig& base, const std::string& param,
                            double lo, double hi, int points, const units::Constants& k) {
  if (points < 1 || !(hi >= lo)) throw ValidationError("sweep: empty range");
  std::vector<Row> rows;
  rows.reserve(points);
  for (int i = 0; i < points; ++i) {
    const double value = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
    scenario::ScenarioConfig cfg = base;
    scenario::detail::assign(cfg, param, value);
    if (param == "m" && cfg.E1 && !base.E0) cfg.E0 = value;  // E0 = m c^2, c = 1
    const auto f = feasibility_inputs(cfg);
    rows.push_back({value, feasibility::check_ftl_chain(f.setup, f.alice, f.internal, k)});
  }
  return rows;
}

inline std::string to_csv(const std::vector<Row>& rows) {
  if (rows.empty()) throw ValidationError("sweep: no rows");
  std::string csv = "value,verdict,chain_ok";
  for (const auto& c : rows.front().report.constraints) csv += ",ok_" + c.name;
  for (const auto& c : rows.front().report.constraints) csv += ",margin_" + c.name;
  csv += "\n";
  for (const auto& row : rows) {
    std::vector<std::string> cells{
        report::fmt(row.value),
        row.report.verdict == feasibility::Verdict::paradox_possible ? "possible" : "blocked",
        row.report.chain_ok ? "1" : "0"};
    for (const auto& c : row.report.constraints) cells.push_back(c.satisfied ? "1" : "0");
    for (const auto& c : row.report.constraints) cells.push_back(report::fmt(c.margin));
    csv += report::csv_row(cells);
  }
  return csv;
}

}  // namespace gie::sweep
