// gie: gravitational which-way feasibility toolkit.
//
// Subcommands expose each module: trajectory, visibility, phases, atom,
// rates, graviton, feasibility, constants, sweep, selftest. Outputs are
// deterministic for fixed inputs (byte-identical across runs).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gie/feasibility.hpp"
#include "gie/graviton.hpp"
#include "gie/interferometry.hpp"
#include "gie/oracles.hpp"
#include "gie/quasiatom.hpp"
#include "gie/radiative.hpp"
#include "gie/report.hpp"
#include "gie/scenario.hpp"
#include "gie/selftest.hpp"
#include "gie/sweep.hpp"
#include "gie/trajectory.hpp"
#include "gie/units.hpp"

namespace {

using gie::report::fmt;
using gie::report::ojson;
using gie::scenario::ScenarioConfig;
using gie::scenario::UnitMode;

struct CommonOpts {
  std::string scenario_path;
  std::string unit_mode;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 0;
  int samples = 1001;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--scenario", o.scenario_path, "Scenario file (.json or .toml)");
  cmd->add_option("--unit-mode", o.unit_mode, "planck or si (overrides scenario)");
  cmd->add_option("--out", o.out, "Output path (default stdout)");
  cmd->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", o.seed, "Deterministic seed");
  cmd->add_option("--samples", o.samples, "Sample count for CSV outputs");
}

/// Loads the scenario (if any), applies the unit-mode override, and converts
/// SI input to Planck units. Everything downstream computes with G=hbar=c=1.
struct ResolvedScenario {
  ScenarioConfig cfg;          // in Planck units
  UnitMode io_mode;            // unit system of input/output at the boundary
};

ResolvedScenario resolve_scenario(const CommonOpts& o) {
  ScenarioConfig cfg;
  if (!o.scenario_path.empty()) cfg = gie::scenario::load(o.scenario_path);
  if (!o.unit_mode.empty()) {
    if (o.unit_mode == "planck")
      cfg.unit_mode = UnitMode::planck;
    else if (o.unit_mode == "si")
      cfg.unit_mode = UnitMode::si;
    else
      throw gie::ValidationError("unit-mode must be 'planck' or 'si'");
  }
  if (o.seed != 0) cfg.seed = o.seed;
  ResolvedScenario r;
  r.io_mode = cfg.unit_mode;
  r.cfg = gie::scenario::to_planck(cfg, gie::units::Constants::codata2018());
  return r;
}

/// Converts a computed Planck-unit value back to the boundary unit system.
double emit(double planck_value, gie::units::Dimension dim, UnitMode mode) {
  if (mode == UnitMode::planck) return planck_value;
  return gie::units::from_planck({planck_value, dim}, gie::units::Constants::codata2018()).value;
}

void write_output(const CommonOpts& o, const std::string& text) {
  if (o.out.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw gie::ValidationError("cannot open output file '" + o.out + "'");
  f << text;
}

gie::interferometry::InterferometerSetup setup_from(const ScenarioConfig& c) {
  const auto planck = gie::units::Constants::planck();
  double m = c.m.value_or(0.0);
  if (m <= 0.0 && c.E0) m = *c.E0 / (planck.c * planck.c);
  gie::interferometry::InterferometerSetup s{m,
                                             c.d.value_or(0.0),
                                             c.D.value_or(0.0),
                                             c.tau_a.value_or(0.0),
                                             c.tau_f.value_or(0.0),
                                             c.sigma.value_or(1.0),
                                             c.delta_t.value_or(0.0)};
  return s;
}

int cmd_trajectory(const CommonOpts& o) {
  const auto r = resolve_scenario(o);
  const auto planck = gie::units::Constants::planck();
  const double x0 = r.cfg.x0.value_or(1.0);
  const double T = r.cfg.T.value_or(1.0);
  const double dq = r.cfg.delta_q.value_or(1.0);
  namespace tr = gie::trajectory;
  namespace un = gie::units;

  if (o.format == "json") {
    ojson j;
    j["S"] = tr::s_functional(tr::optimal_profile());
    j["E_min"] = emit(tr::min_radiated_energy(dq, T, planck), un::energy, r.io_mode);
    j["v_max"] = emit(tr::max_speed(x0, T), un::velocity, r.io_mode);
    j["kappa"] = tr::kappa();
    write_output(o, j.dump(2) + "\n");
    return 0;
  }
  const auto samp = tr::optimal_trajectory(x0, T, o.samples);
  std::string csv = "t,x,v\n";
  for (int i = 0; i < o.samples; ++i) {
    csv += gie::report::csv_row({fmt(emit(samp.times[i], un::time, r.io_mode)),
                                 fmt(emit(samp.positions[i], un::length, r.io_mode)),
                                 fmt(emit(samp.velocities[i], un::velocity, r.io_mode))});
  }
  write_output(o, csv);
  return 0;
}

int cmd_visibility(const CommonOpts& o) {
  if (o.samples < 2) throw gie::ValidationError("visibility: need --samples >= 2");
  const auto r = resolve_scenario(o);
  namespace in = gie::interferometry;
  namespace un = gie::units;
  const double m = r.cfg.m.value_or(1.0);
  const double d = r.cfg.d.value_or(0.2);
  const double sigma = r.cfg.sigma.value_or(3.0);
  const double tau_a = r.cfg.tau_a.value_or(1.0);
  const double tau_f = r.cfg.tau_f.value_or(0.5);
  const double tau_t = 2.0 * tau_a + tau_f;
  const double hbar = 1.0;

  std::string csv = "t,A,Re_overlap,Im_overlap\n";
  for (int i = 0; i < o.samples; ++i) {
    const double t = tau_t * i / (o.samples - 1);
    const double u = in::branch_separation(t, d, tau_a, tau_f);
    const double udot = in::branch_separation_rate(t, d, tau_a, tau_f);
    const double A = in::visibility(t, u, udot, m, sigma, hbar);
    const auto ov = in::overlap_integral(t, {u, udot, 0.0}, m, sigma, hbar, 4096);
    csv += gie::report::csv_row({fmt(emit(t, un::time, r.io_mode)), fmt(A), fmt(ov.real()),
                                 fmt(ov.imag())});
  }
  write_output(o, csv);
  return 0;
}

int cmd_phases(const CommonOpts& o) {
  const auto r = resolve_scenario(o);
  const auto planck = gie::units::Constants::planck();
  namespace in = gie::interferometry;
  ScenarioConfig c = r.cfg;
  if (!c.m && !c.E0) c.m = 1.0;
  if (!c.d) c.d = 0.5;
  if (!c.D) c.D = 50.0;
  if (!c.tau_a) c.tau_a = 0.2;
  if (!c.tau_f) c.tau_f = 10.0;
  if (!c.Q0) c.Q0 = 2.0;
  if (!c.delta_q) c.delta_q = 0.5;
  const auto setup = setup_from(c);
  const in::AliceQuadrupole alice{*c.Q0, *c.delta_q, c.T.value_or(1.0)};
  const auto p = in::gravitational_phases(setup, alice, planck);
  ojson j;
  j["Gamma"] = p.Gamma;
  j["gamma"] = p.gamma;
  j["phi_pp"] = p.phi_pp;
  j["phi_pm"] = p.phi_pm;
  j["phi_mp"] = p.phi_mp;
  j["phi_mm"] = p.phi_mm;
  write_output(o, j.dump(2) + "\n");
  return 0;
}

gie::quasiatom::QuasiatomParams atom_from(const ScenarioConfig& c, bool required) {
  const auto planck = gie::units::Constants::planck();
  if (required || c.m1 || c.m2 || c.q) {
    gie::scenario::require_keys(c,
                                {{"m1", c.m1.has_value()},
                                 {"m2", c.m2.has_value()},
                                 {"q", c.q.has_value()}},
                                "atom");
    return {*c.m1, *c.m2, *c.q};
  }
  // Demo point: the equal-mass quasiatom at its feasibility bounds.
  const double M = gie::quasiatom::total_mass_bound_planck();
  const double q = 19.0 * planck.e;
  return {M / 2.0, M / 2.0, q};
}

int cmd_atom(const CommonOpts& o) {
  const auto r = resolve_scenario(o);
  const auto planck = gie::units::Constants::planck();
  namespace un = gie::units;
  const auto params = atom_from(r.cfg, false);
  const auto lv = gie::quasiatom::energy_levels(params, planck);
  ojson j;
  j["M"] = emit(params.total_mass(), un::mass, r.io_mode);
  j["mu"] = emit(params.reduced_mass(), un::mass, r.io_mode);
  j["E_R"] = emit(params.rydberg(planck), un::energy, r.io_mode);
  j["a0"] = emit(params.bohr_radius(planck), un::length, r.io_mode);
  j["E0"] = emit(lv.E0, un::energy, r.io_mode);
  j["E1"] = emit(lv.E1, un::energy, r.io_mode);
  j["dipole_coeff"] = gie::quasiatom::dipole_coefficient();
  write_output(o, j.dump(2) + "\n");
  return 0;
}

int cmd_rates(const CommonOpts& o) {
  const auto r = resolve_scenario(o);
  const auto planck = gie::units::Constants::planck();
  namespace qa = gie::quasiatom;
  namespace ra = gie::radiative;
  namespace un = gie::units;
  const auto params = atom_from(r.cfg, false);
  const double n_photons = r.cfg.n_photons.value_or(0.0);
  const double omega = r.cfg.omega.value_or(0.75 * params.rydberg(planck) / planck.hbar);
  const double dipole_len = qa::dipole_coefficient() * params.bohr_radius(planck);
  const double gamma_spo = ra::spontaneous_rate_total(omega, dipole_len, params.q, planck);
  const auto rates = ra::transition_rates(n_photons, gamma_spo);
  const double tau_f = r.cfg.tau_f.value_or(1.0);
  const double tau_a = r.cfg.tau_a.value_or(1.0);
  const auto window = ra::stability_window(tau_f, tau_a, rates);
  ojson j;
  j["gamma_spo"] = emit(rates.gamma_spontaneous, un::rate, r.io_mode);
  j["gamma_emi"] = emit(rates.gamma_emission, un::rate, r.io_mode);
  j["gamma_abs"] = emit(rates.gamma_absorption, un::rate, r.io_mode);
  j["lifetime"] = emit(rates.lifetime, un::time, r.io_mode);
  j["einstein_a"] = emit(ra::einstein_a_rate(omega, dipole_len, params.q, planck), un::rate,
                         r.io_mode);
  j["stable"] = window.stable;
  j["margin_lifetime"] = window.margin_lifetime;
  j["margin_absorption"] = window.margin_absorption;
  write_output(o, j.dump(2) + "\n");
  return 0;
}

int cmd_graviton(const CommonOpts& o) {
  const auto r = resolve_scenario(o);
  const auto planck = gie::units::Constants::planck();
  namespace gw = gie::graviton;
  namespace qa = gie::quasiatom;

  if (o.format == "csv") {
    std::string csv = "l_i,l_f,allowed\n";
    for (int li = 0; li <= 3; ++li)
      for (int lf = 0; lf <= 3; ++lf)
        csv += gie::report::csv_row(
            {std::to_string(li), std::to_string(lf),
             gw::selection_rule(li, lf) == gw::Transition::allowed ? "1" : "0"});
    write_output(o, csv);
    return 0;
  }

  const auto params = atom_from(r.cfg, false);
  const double V = r.cfg.volume.value_or(1.0);
  const double er = params.rydberg(planck) / planck.hbar;
  const double w_ab = 0.75 * er;  // 1s -> 2s through two gravitons
  const double omega1 = r.cfg.omega1.value_or(0.4 * er);
  const double omega2 = r.cfg.omega2.value_or(w_ab - 0.4 * er);
  const auto ep = gw::plus_z();
  const double a0 = params.bohr_radius(planck);

  // Coherent sum over the truncated n <= 3 intermediate basis; channels
  // whose first matrix element vanishes are dropped and reported.
  const auto basis = gw::orbital_basis();
  std::vector<gw::Channel> channels;
  for (const auto& orb : basis) {
    if (orb == qa::k1s || orb == qa::k2s) continue;
    const auto q1 = gw::quadrupole_matrix_element_spherical(orb, qa::k1s, ep, a0);
    if (std::abs(q1) < 1e-12 * a0 * a0) continue;
    const auto q2 = gw::quadrupole_matrix_element_spherical(qa::k2s, orb, ep, a0);
    const double w_gb = er * (1.0 - 1.0 / (orb.n * orb.n));
    channels.push_back({q2, q1, w_gb});
  }
  gw::SecondOrderRate rate{0.0, false};
  if (!channels.empty() && std::abs(omega1 + omega2 - w_ab) <= 1e-9 * w_ab)
    rate = gw::second_order_rate(channels, omega1, omega2, w_ab, V, params.reduced_mass(),
                                 params.total_mass(), planck);
  ojson j;
  j["strain_omega1"] = gw::strain_amplitude(omega1, V, planck);
  j["beta"] = "1s";
  j["alpha"] = "2s";
  j["omega1"] = emit(omega1, gie::units::rate, r.io_mode);
  j["omega2"] = emit(omega2, gie::units::rate, r.io_mode);
  j["intermediate_basis_n_max"] = qa::kFirstClassMaxN;
  j["intermediate_states_considered"] = basis.size() - 2;
  j["intermediate_channels_coupled"] = channels.size();
  j["on_resonance"] = rate.on_resonance;
  j["rate"] = emit(rate.rate, gie::units::rate, r.io_mode);
  write_output(o, j.dump(2) + "\n");
  return 0;
}

int cmd_feasibility(const CommonOpts& o) {
  if (o.scenario_path.empty())
    throw gie::ValidationError("feasibility requires --scenario");
  const auto r = resolve_scenario(o);
  const auto planck = gie::units::Constants::planck();
  const auto f = gie::sweep::feasibility_inputs(r.cfg);
  const auto rep = gie::feasibility::check_ftl_chain(f.setup, f.alice, f.internal, planck);
  write_output(o, gie::report::to_json(rep).dump(2) + "\n");
  return 0;
}

int cmd_constants(const CommonOpts& o, bool si_doc) {
  const auto planck = gie::units::Constants::planck();
  if (si_doc) {
    write_output(o, gie::report::si_constants_json(gie::units::Constants::codata2018()).dump(2) +
                        "\n");
    return 0;
  }
  const auto table = gie::feasibility::derive_constants(planck);
  if (o.format == "json") {
    ojson arr = ojson::array();
    for (const auto& row : table) {
      ojson j;
      j["name"] = row.name;
      j["derived"] = row.derived;
      j["paper"] = row.paper;
      j["rel_err"] = row.rel_err;
      j["tolerance"] = row.tolerance;
      j["within_tolerance"] = row.within_tolerance;
      j["flagged"] = row.flagged;
      j["provenance"] = row.provenance;
      arr.push_back(j);
    }
    write_output(o, arr.dump(2) + "\n");
    return 0;
  }
  write_output(o, gie::report::constants_csv(table));
  return 0;
}

int cmd_sweep(const CommonOpts& o, const std::string& param, double lo, double hi, int points) {
  if (o.scenario_path.empty()) throw gie::ValidationError("sweep requires --scenario");
  const auto r = resolve_scenario(o);
  const auto rows =
      gie::sweep::run(r.cfg, param, lo, hi, points, gie::units::Constants::planck());
  write_output(o, gie::sweep::to_csv(rows));
  return 0;
}

int cmd_selftest(const CommonOpts& o) {
  const auto results = gie::selftest::run_all();
  std::string out;
  int failures = 0;
  for (const auto& res : results) {
    out += (res.pass ? "PASS " : "FAIL ") + res.name;
    if (!res.pass && !res.detail.empty()) out += " (" + res.detail + ")";
    out += "\n";
  }
  for (const auto& res : results)
    if (!res.pass) ++failures;
  out += "selftest: " + std::to_string(results.size() - failures) + "/" +
         std::to_string(results.size()) + " checks passed\n";
  write_output(o, out);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gravitational which-way feasibility toolkit"};
  app.require_subcommand(1);

  CommonOpts o_traj, o_vis, o_ph, o_atom, o_rates, o_gw, o_feas, o_const, o_sweep, o_self;
  auto* c_traj = app.add_subcommand("trajectory", "Optimal closing trajectory (CSV t,x,v)");
  add_common(c_traj, o_traj);
  auto* c_vis = app.add_subcommand("visibility", "Branch visibility A(t) and overlap (CSV)");
  add_common(c_vis, o_vis);
  auto* c_ph = app.add_subcommand("phases", "Gravitational phases (JSON)");
  add_common(c_ph, o_ph);
  auto* c_atom = app.add_subcommand("atom", "Quasiatom spectrum and dipole (JSON)");
  add_common(c_atom, o_atom);
  auto* c_rates = app.add_subcommand("rates", "Photon transition rates (JSON)");
  add_common(c_rates, o_rates);
  auto* c_gw = app.add_subcommand("graviton", "Selection rules (CSV) or rate report (JSON)");
  add_common(c_gw, o_gw);
  auto* c_feas = app.add_subcommand("feasibility", "Signaling inequality chain (JSON)");
  add_common(c_feas, o_feas);
  auto* c_const = app.add_subcommand("constants", "Derived-constant table (CSV name,derived,paper,rel_err)");
  add_common(c_const, o_const);
  bool si_doc = false;
  c_const->add_flag("--si", si_doc, "Emit the SI constants document instead");
  auto* c_sweep = app.add_subcommand("sweep", "Feasibility sweep over one scenario key (CSV)");
  add_common(c_sweep, o_sweep);
  std::string sweep_param;
  double sweep_min = 0.0, sweep_max = 0.0;
  int sweep_points = 0;
  c_sweep->add_option("--param", sweep_param, "Scenario key to sweep")->required();
  c_sweep->add_option("--min", sweep_min, "Range start")->required();
  c_sweep->add_option("--max", sweep_max, "Range end")->required();
  c_sweep->add_option("--points", sweep_points, "Grid points")->required();
  auto* c_self = app.add_subcommand("selftest", "Run the oracle suite (pass/fail per invariant)");
  add_common(c_self, o_self);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_traj->parsed()) return cmd_trajectory(o_traj);
    if (c_vis->parsed()) return cmd_visibility(o_vis);
    if (c_ph->parsed()) return cmd_phases(o_ph);
    if (c_atom->parsed()) return cmd_atom(o_atom);
    if (c_rates->parsed()) return cmd_rates(o_rates);
    if (c_gw->parsed()) return cmd_graviton(o_gw);
    if (c_feas->parsed()) return cmd_feasibility(o_feas);
    if (c_const->parsed()) return cmd_constants(o_const, si_doc);
    if (c_sweep->parsed()) return cmd_sweep(o_sweep, sweep_param, sweep_min, sweep_max,
                                            sweep_points);
    if (c_self->parsed()) return cmd_selftest(o_self);
  } catch (const gie::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const gie::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
