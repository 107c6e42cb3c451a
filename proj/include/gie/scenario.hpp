#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gie/errors.hpp"
#include "gie/units.hpp"

namespace gie::scenario {

enum class UnitMode { planck, si };

/// Flat scenario record shared by all subcommands; every physics key is
/// optional and each subcommand validates the subset it needs.
struct ScenarioConfig {
  UnitMode unit_mode = UnitMode::planck;
  std::optional<double> m, E0, E1;
  std::optional<double> d, D, tau_a, tau_f, T, sigma, delta_t;
  std::optional<double> Q0, delta_q;
  std::optional<double> m1, m2, q;
  std::optional<double> n_photons, omega, volume, omega1, omega2;
  std::optional<double> x0;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::uint64_t seed = 0;
};

namespace detail {

struct FieldRef {
  const char* key;
  std::optional<double> ScenarioConfig::* member;
  units::Dimension dim;
};

inline const std::vector<FieldRef>& fields() {
  using units::Dimension;
  static const units::Dimension mass = units::mass;
  static const units::Dimension len = units::length;
  static const units::Dimension tim = units::time;
  static const units::Dimension energy = units::energy;
  static const units::Dimension quad = units::quadrupole;
  static const units::Dimension freq = units::rate;
  static const units::Dimension vol = units::pow(units::length, 3);
  static const units::Dimension chg = units::charge;
  static const units::Dimension one = units::scalar;
  static const std::vector<FieldRef> f = {
      {"m", &ScenarioConfig::m, mass},
      {"E0", &ScenarioConfig::E0, energy},
      {"E1", &ScenarioConfig::E1, energy},
      {"d", &ScenarioConfig::d, len},
      {"D", &ScenarioConfig::D, len},
      {"tau_a", &ScenarioConfig::tau_a, tim},
      {"tau_f", &ScenarioConfig::tau_f, tim},
      {"T", &ScenarioConfig::T, tim},
      {"sigma", &ScenarioConfig::sigma, len},
      {"delta_t", &ScenarioConfig::delta_t, tim},
      {"Q0", &ScenarioConfig::Q0, quad},
      {"delta_q", &ScenarioConfig::delta_q, quad},
      {"m1", &ScenarioConfig::m1, mass},
      {"m2", &ScenarioConfig::m2, mass},
      {"q", &ScenarioConfig::q, chg},
      {"n_photons", &ScenarioConfig::n_photons, one},
      {"omega", &ScenarioConfig::omega, freq},
      {"volume", &ScenarioConfig::volume, vol},
      {"omega1", &ScenarioConfig::omega1, freq},
      {"omega2", &ScenarioConfig::omega2, freq},
      {"x0", &ScenarioConfig::x0, len},
  };
  return f;
}

inline void assign(ScenarioConfig& cfg, const std::string& key, double value) {
  for (const auto& f : fields()) {
    if (key == f.key) {
      cfg.*(f.member) = value;
      return;
    }
  }
  throw ValidationError("scenario: unknown key '" + key + "'");
}

inline void assign_string(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "unit_mode") {
    if (value == "planck")
      cfg.unit_mode = UnitMode::planck;
    else if (value == "si")
      cfg.unit_mode = UnitMode::si;
    else
      throw ValidationError("scenario: unit_mode must be 'planck' or 'si', got '" + value + "'");
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "format") {
    if (value != "csv" && value != "json")
      throw ValidationError("scenario: format must be 'csv' or 'json'");
    cfg.format = value;
  } else {
    throw ValidationError("scenario: unknown key '" + key + "'");
  }
}

}  // namespace detail

inline ScenarioConfig parse_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("scenario: JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("scenario: top level must be an object");
  ScenarioConfig cfg;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key == "seed") {
      if (!it.value().is_number_integer())
        throw ValidationError("scenario: seed must be an integer");
      cfg.seed = it.value().get<std::uint64_t>();
    } else if (it.value().is_string()) {
      detail::assign_string(cfg, key, it.value().get<std::string>());
    } else if (it.value().is_number()) {
      detail::assign(cfg, key, it.value().get<double>());
    } else {
      throw ValidationError("scenario: key '" + key + "' must be a number or string");
    }
  }
  return cfg;
}

/// Minimal TOML subset: `key = value` lines, `#` comments, and at most one
/// level of `[table]` headers (only `[scenario]` is recognized).
inline ScenarioConfig parse_toml(const std::string& text) {
  ScenarioConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool in_table = false;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ValidationError("scenario: line " + std::to_string(line_no) + ": bad table header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name != "scenario")
        throw ValidationError("scenario: line " + std::to_string(line_no) + ": unknown table '" +
                              name + "'");
      if (in_table)
        throw ValidationError("scenario: line " + std::to_string(line_no) +
                              ": only one table level is supported");
      in_table = true;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("scenario: line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ValidationError("scenario: line " + std::to_string(line_no) + ": empty key or value");
    if (value.front() == '"') {
      if (value.size() < 2 || value.back() != '"')
        throw ValidationError("scenario: line " + std::to_string(line_no) +
                              ": unterminated string");
      detail::assign_string(cfg, key, value.substr(1, value.size() - 2));
    } else if (key == "seed") {
      try {
        cfg.seed = std::stoull(value);
      } catch (...) {
        throw ValidationError("scenario: line " + std::to_string(line_no) + ": bad seed");
      }
    } else {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(value, &used);
      } catch (...) {
        throw ValidationError("scenario: line " + std::to_string(line_no) + ": bad number for '" +
                              key + "'");
      }
      if (used != value.size())
        throw ValidationError("scenario: line " + std::to_string(line_no) +
                              ": trailing characters after number for '" + key + "'");
      detail::assign(cfg, key, v);
    }
  }
  return cfg;
}

inline ScenarioConfig load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("scenario: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".toml") return parse_toml(text);
  return parse_json(text);
}

/// Rescales every dimensioned field into Planck units. A no-op for scenarios
/// already in Planck mode.
inline ScenarioConfig to_planck(const ScenarioConfig& cfg, const units::Constants& si) {
  if (cfg.unit_mode == UnitMode::planck) return cfg;
  ScenarioConfig out = cfg;
  out.unit_mode = UnitMode::planck;
  for (const auto& f : detail::fields()) {
    const auto& src = cfg.*(f.member);
    if (src) (out.*(f.member)) = units::to_planck({*src, f.dim}, si).value;
  }
  return out;
}

inline void require_keys(const ScenarioConfig& cfg,
                         const std::vector<std::pair<std::string, bool>>& present,
                         const std::string& subcommand) {
  std::string missing;
  for (const auto& [name, ok] : present) {
    if (!ok) missing += (missing.empty() ? "" : ", ") + name;
  }
  if (!missing.empty())
    throw ValidationError("scenario for '" + subcommand + "' is missing required keys: " + missing);
  (void)cfg;
}

}  // namespace gie::scenario
