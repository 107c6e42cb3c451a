#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "gie/scenario.hpp"
#include "gie/units.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out = fs::temp_directory_path() / ("gie_cli_out_" + std::to_string(counter++));
  const std::string cmd = std::string(GIE_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out);
  fs::remove(out);
  return r;
}

fs::path write_file(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream f(p, std::ios::binary);
  f << content;
  return p;
}

const char* kFeasibleScenario = R"({
  "unit_mode": "planck",
  "E0": 0.1, "E1": 2.0,
  "d": 0.999, "D": 1.0,
  "tau_a": 1e-6, "tau_f": 0.4, "T": 0.5,
  "sigma": 1.0, "delta_t": 0.001,
  "Q0": 0.1, "delta_q": 0.01
})";

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

// Small structural validator covering the subset of JSON Schema the shipped
// schema file uses: type, required, properties, additionalProperties, items,
// enum.
bool validate_schema(const json& value, const json& schema, std::string* why) {
  if (schema.contains("type")) {
    const std::string t = schema["type"];
    const bool ok = (t == "object" && value.is_object()) || (t == "array" && value.is_array()) ||
                    (t == "string" && value.is_string()) ||
                    (t == "number" && value.is_number()) ||
                    (t == "boolean" && value.is_boolean());
    if (!ok) {
      *why = "expected type " + t;
      return false;
    }
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& candidate : schema["enum"])
      if (candidate == value) found = true;
    if (!found) {
      *why = "value not in enum";
      return false;
    }
  }
  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema["required"])
        if (!value.contains(key.get<std::string>())) {
          *why = "missing required key " + key.get<std::string>();
          return false;
        }
    }
    const bool closed = schema.value("additionalProperties", json(true)) == json(false);
    for (auto it = value.begin(); it != value.end(); ++it) {
      const bool declared =
          schema.contains("properties") && schema["properties"].contains(it.key());
      if (!declared) {
        if (closed) {
          *why = "unexpected key " + it.key();
          return false;
        }
        continue;
      }
      if (!validate_schema(it.value(), schema["properties"][it.key()], why)) return false;
    }
  }
  if (value.is_array() && schema.contains("items")) {
    for (const auto& element : value)
      if (!validate_schema(element, schema["items"], why)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("identical invocations produce byte-identical output") {
  const auto a = run_cli("constants");
  const auto b = run_cli("constants");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);

  const auto t1 = run_cli("trajectory --samples 201 --seed 7");
  const auto t2 = run_cli("trajectory --samples 201 --seed 7");
  REQUIRE(t1.exit_code == 0);
  CHECK(t1.out == t2.out);
}

TEST_CASE("trajectory CSV has the requested shape and exact endpoints") {
  const auto r = run_cli("trajectory --samples 1001");
  REQUIRE(r.exit_code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 1002);  // header + samples
  CHECK(rows[0] == std::vector<std::string>{"t", "x", "v"});
  CHECK(rows[1][1] == "1");
  CHECK(rows.back()[1] == "0");
}

TEST_CASE("trajectory JSON summary") {
  const auto r = run_cli("trajectory --format json");
  REQUIRE(r.exit_code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["S"].get<double>() == Catch::Approx(80.0).epsilon(1e-9));
  CHECK(j["v_max"].get<double>() == Catch::Approx(1.464).margin(5e-4));
  CHECK(j["kappa"].get<double>() == Catch::Approx(1.155).margin(1e-3));
}

TEST_CASE("constants table stays inside its tolerances") {
  const auto r = run_cli("constants");
  REQUIRE(r.exit_code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() > 10);
  CHECK(rows[0] == std::vector<std::string>{"name", "derived", "paper", "rel_err"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][0] == "bohr_radius_equal_masses") continue;  // documented exception
    CHECK(std::stod(rows[i][3]) < 0.005);
  }
}

TEST_CASE("SI constants document") {
  const auto r = run_cli("constants --si");
  REQUIRE(r.exit_code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["G"].get<double>() == 6.67430e-11);
  CHECK(j["e"].get<double>() == 1.602176634e-19);
}

TEST_CASE("scenario validation failures exit with code 2") {
  const auto bad_key = write_file("gie_bad_key.json", R"({"unknown_knob": 1.0})");
  CHECK(run_cli("feasibility --scenario " + bad_key.string()).exit_code == 2);

  const auto bad_json = write_file("gie_bad_syntax.json", "{ not json");
  CHECK(run_cli("feasibility --scenario " + bad_json.string()).exit_code == 2);

  const auto missing = write_file("gie_missing.json", R"({"d": 1.0})");
  const auto r = run_cli("feasibility --scenario " + missing.string());
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("missing required keys") != std::string::npos);

  CHECK(run_cli("feasibility").exit_code == 2);
}

TEST_CASE("feasibility JSON validates against the shipped schema") {
  const auto scen = write_file("gie_feasible.json", kFeasibleScenario);
  const auto r = run_cli("feasibility --scenario " + scen.string());
  REQUIRE(r.exit_code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["verdict"] == "paradox_possible");

  const auto schema = json::parse(slurp(fs::path(GIE_CLI_PATH).parent_path().parent_path().parent_path() /
                                        "report.schema.json"));
  std::string why;
  const bool ok = validate_schema(j, schema, &why);
  INFO(why);
  CHECK(ok);
}

TEST_CASE("TOML subset scenarios parse to the same report") {
  const auto js = write_file("gie_scen.json", kFeasibleScenario);
  const auto toml = write_file("gie_scen.toml",
                               "# two-level probe\n"
                               "[scenario]\n"
                               "unit_mode = \"planck\"\n"
                               "E0 = 0.1\nE1 = 2.0\n"
                               "d = 0.999\nD = 1.0\n"
                               "tau_a = 1e-6\ntau_f = 0.4\nT = 0.5\n"
                               "sigma = 1.0\ndelta_t = 0.001\n"
                               "Q0 = 0.1\ndelta_q = 0.01\n");
  const auto a = run_cli("feasibility --scenario " + js.string());
  const auto b = run_cli("feasibility --scenario " + toml.string());
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(a.out == b.out);

  const auto bad = write_file("gie_scen_bad.toml", "[other]\nm = 1.0\n");
  CHECK(run_cli("feasibility --scenario " + bad.string()).exit_code == 2);
}

TEST_CASE("sweep with a single point matches the direct feasibility verdict") {
  const auto scen = write_file("gie_sweep_base.json", kFeasibleScenario);
  const auto direct = run_cli("feasibility --scenario " + scen.string());
  const auto swept =
      run_cli("sweep --scenario " + scen.string() + " --param d --min 0.999 --max 0.999 --points 1");
  REQUIRE(direct.exit_code == 0);
  REQUIRE(swept.exit_code == 0);
  const auto rows = parse_csv(swept.out);
  REQUIRE(rows.size() == 2);
  const auto j = json::parse(direct.out);
  const std::string want = j["verdict"] == "paradox_possible" ? "possible" : "blocked";
  CHECK(rows[1][1] == want);

  CHECK(run_cli("sweep --scenario " + scen.string() + " --param d --min 1 --max 2 --points 0")
            .exit_code == 2);
  CHECK(run_cli("sweep --scenario " + scen.string() + " --param nope --min 1 --max 2 --points 3")
            .exit_code == 2);
}

TEST_CASE("sweep rows are ordered and deterministic") {
  const auto scen = write_file("gie_sweep_m.json", R"({
    "unit_mode": "planck", "E1": 2.0, "m": 0.05,
    "d": 0.9, "D": 1.0, "tau_a": 1e-6, "tau_f": 0.4, "T": 0.5,
    "sigma": 1.0, "delta_t": 0.001, "Q0": 0.1, "delta_q": 0.01
  })");
  const std::string args =
      "sweep --scenario " + scen.string() + " --param m --min 0.01 --max 1.0 --points 25";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  const auto rows = parse_csv(a.out);
  REQUIRE(rows.size() == 26);
  double prev = -1.0;
  int flips = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double v = std::stod(rows[i][0]);
    CHECK(v > prev);
    prev = v;
    if (i > 1 && rows[i][1] != rows[i - 1][1]) ++flips;
  }
  CHECK(flips == 1);  // verdict flips once, at the mass threshold
}

TEST_CASE("SI-mode atom output is in SI units") {
  const auto scen = write_file("gie_atom_si.json", R"({
    "unit_mode": "si",
    "m1": 1.67262192369e-27, "m2": 9.1093837015e-31, "q": 1.602176634e-19
  })");
  const auto r = run_cli("atom --scenario " + scen.string());
  REQUIRE(r.exit_code == 0);
  const auto j = json::parse(r.out);
  const double er_joule = j["E_R"].get<double>();
  CHECK(er_joule / 1.602176634e-19 == Catch::Approx(13.598287).epsilon(1e-4));
  CHECK(j["a0"].get<double>() == Catch::Approx(5.2946541e-11).epsilon(1e-4));
}

TEST_CASE("phases JSON carries the four branch phases") {
  const auto r = run_cli("phases");
  REQUIRE(r.exit_code == 0);
  const auto j = json::parse(r.out);
  for (const char* key : {"Gamma", "gamma", "phi_pp", "phi_pm", "phi_mp", "phi_mm"})
    CHECK(j.contains(key));
  CHECK(j["phi_pp"].get<double>() - j["phi_pm"].get<double>() ==
        Catch::Approx(j["Gamma"].get<double>() + j["gamma"].get<double>()).margin(1e-12));
}

TEST_CASE("graviton selection table") {
  const auto r = run_cli("graviton");
  REQUIRE(r.exit_code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 17);  // header + 4x4 l pairs
  CHECK(rows[0] == std::vector<std::string>{"l_i", "l_f", "allowed"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const int li = std::stoi(rows[i][0]);
    const int lf = std::stoi(rows[i][1]);
    CHECK(rows[i][2] == (std::abs(li - lf) == 2 ? "1" : "0"));
  }
}

TEST_CASE("unknown subcommand fails with exit 2") {
  CHECK(run_cli("frobnicate").exit_code == 2);
}

TEST_CASE("selftest passes end to end") {
  const auto r = run_cli("selftest");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("checks passed") != std::string::npos);
}

TEST_CASE("rates JSON reports the occupation structure") {
  const auto scen = write_file("gie_rates.json", R"({
    "unit_mode": "si",
    "m1": 1.67262192369e-27, "m2": 9.1093837015e-31, "q": 1.602176634e-19,
    "n_photons": 10, "tau_f": 1e-6, "tau_a": 1e-9
  })");
  const auto r = run_cli("rates --scenario " + scen.string());
  REQUIRE(r.exit_code == 0);
  const auto j = json::parse(r.out);
  const double spo = j["gamma_spo"].get<double>();
  CHECK(j["gamma_emi"].get<double>() == Catch::Approx(11.0 * spo).epsilon(1e-12));
  CHECK(j["gamma_abs"].get<double>() == Catch::Approx(10.0 * spo).epsilon(1e-12));
  CHECK(j["einstein_a"].get<double>() == Catch::Approx(6.2649e8).epsilon(2e-3));
  CHECK(spo / j["einstein_a"].get<double>() == Catch::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("scenario unit conversion round-trips") {
  using gie::scenario::ScenarioConfig;
  ScenarioConfig cfg;
  cfg.unit_mode = gie::scenario::UnitMode::si;
  cfg.T = 1.0;      // second
  cfg.d = 1.0;      // metre
  cfg.m = 2.176434342051127e-8;  // one Planck mass
  const auto si = gie::units::Constants::codata2018();
  const auto planck_cfg = gie::scenario::to_planck(cfg, si);
  CHECK(*planck_cfg.m == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(*planck_cfg.T == Catch::Approx(1.0 / si.t_P).epsilon(1e-12));
  CHECK(*planck_cfg.d == Catch::Approx(1.0 / si.l_P).epsilon(1e-12));
}
