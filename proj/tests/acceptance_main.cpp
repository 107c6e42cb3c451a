// Acceptance gate: every numbered criterion below runs at its stated
// tolerance and prints exactly one PASS/FAIL line. Exit code is the number
// of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "gie/feasibility.hpp"
#include "gie/graviton.hpp"
#include "gie/interferometry.hpp"
#include "gie/oracles.hpp"
#include "gie/quasiatom.hpp"
#include "gie/radiative.hpp"
#include "gie/trajectory.hpp"
#include "gie/units.hpp"

using namespace gie;
using std::numbers::pi;

namespace {

struct Criterion {
  int number;
  std::string title;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void require_close(double got, double want, double rel_tol, double abs_tol,
                     const std::string& what) {
    const double err = std::abs(got - want);
    if (!(err <= std::max(abs_tol, rel_tol * std::abs(want)))) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%s: got %.12g, want %.12g", what.c_str(), got, want);
      failures.push_back(buf);
    }
  }
};

int run(Criterion& c, const std::function<void(Criterion&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  const double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (c.failures.empty()) {
    std::printf("PASS criterion %d: %s (%.1fs)\n", c.number, c.title.c_str(), dt);
    return 0;
  }
  std::printf("FAIL criterion %d: %s (%.1fs)\n", c.number, c.title.c_str(), dt);
  for (const auto& f : c.failures) std::printf("     - %s\n", f.c_str());
  return 1;
}

const units::Constants planck = units::Constants::planck();

void criterion1(Criterion& c) {
  namespace tr = gie::trajectory;
  const double s_opt = tr::s_functional(tr::optimal_profile());
  c.require_close(s_opt, 80.0, 1e-7, 0.0, "s_functional(xi_opt)");
  const auto [a_min, s_min] =
      quad::find_minimum([](double a) { return tr::s_closed_form(a); }, -8.0, 2.0);
  c.require_close(a_min, -10.0 / 3.0, 0.0, 1e-6, "minimizer a");
  (void)s_min;
  const auto brute = tr::brute_force_minimize(5, 32, 20240817);
  c.require_close(brute.s_best, 80.0, 0.0, 1e-4, "degree-5 brute force S");
}

void criterion2(Criterion& c) {
  namespace tr = gie::trajectory;
  c.require_close(tr::peak_speed_ratio(), 1.464, 0.0, 5e-4, "v_max T / x0");
  c.require_close(tr::subluminal_x0_ratio(), 0.683, 0.0, 5e-4, "subluminal x0/(cT)");
  c.require_close(tr::kappa(), 1.155, 0.0, 1e-3, "effective-time kappa");
}

void criterion3(Criterion& c) {
  namespace tr = gie::trajectory;
  const double dq = 0.37, T = 1.7;
  const double via_s = 4.0 * planck.G * dq * dq /
                       (5.0 * std::pow(planck.c, 5) * std::pow(T, 5)) * 80.0;
  c.require_close(tr::min_radiated_energy(dq, T, planck), via_s, 1e-9, 0.0,
                  "E_min = (4 G dQ^2 / 5 c^5 T^5) * 80");
  const double dq_bound = interferometry::graviton_emission_bound(T, planck);
  c.require_close(tr::min_radiated_energy(dq_bound, T, planck), 2.0 * pi * planck.hbar / T,
                  1e-12, 0.0, "energy at the one-graviton bound");
}

void criterion4(Criterion& c) {
  c.require_close(3.0 * std::sqrt(2.0 * pi) / 8.0, 0.93998560298662515, 1e-12, 0.0,
                  "Eq.6 coefficient 3 sqrt(2 pi)/8");
  const auto table = feasibility::derive_constants(planck);
  bool bohr_seen = false;
  for (const auto& row : table) {
    if (row.name == "bohr_radius_equal_masses") {
      bohr_seen = true;
      c.require(row.flagged, "Bohr-radius 0.356 row must be flagged, not matched");
      continue;
    }
    c.require(row.within_tolerance,
              row.name + ": rel_err " + std::to_string(row.rel_err) + " exceeds " +
                  std::to_string(row.tolerance));
  }
  c.require(bohr_seen, "Bohr-radius row present");
  for (const auto& [name, paper] :
       std::vector<std::pair<std::string, double>>{{"time_resolution_coeff", 0.143},
                                                   {"d_over_D_min", 5.848},
                                                   {"inverse_time_resolution_coeff", 6.993},
                                                   {"rydberg_fraction_min", 0.866},
                                                   {"total_mass_min_planck", 1.066},
                                                   {"charge_ratio_coeff", 13.4},
                                                   {"charge_ratio_equal_masses", 19.0},
                                                   {"mass_ratio_min", 1.95},
                                                   {"section4_mass_bound", 0.47}}) {
    bool found = false;
    for (const auto& row : table)
      if (row.name == name) {
        found = true;
        c.require(row.paper == paper, name + ": table row pins the printed value");
      }
    c.require(found, name + ": row present");
  }
}

void criterion5(Criterion& c) {
  namespace qa = gie::quasiatom;
  c.require_close(qa::radial_dipole_integral(), 64.0 * std::sqrt(24.0) / 243.0, 1e-10, 0.0,
                  "radial integral");
  c.require_close(qa::angular_dipole_factor(0, 0, 1, 0), 1.0 / std::sqrt(3.0), 1e-10, 0.0,
                  "angular factor");
  const auto vol = qa::volume_matrix_element(
      qa::k1s, qa::k2p0,
      [](double rho, double theta, double) { return qa::complex(rho * std::cos(theta), 0.0); });
  c.require_close(vol.real(), 128.0 * std::sqrt(2.0) / 243.0, 1e-8, 0.0,
                  "dipole coefficient by 3-D volume quadrature");
  c.require_close(128.0 * std::sqrt(2.0) / 243.0, 0.74493, 0.0, 1e-5,
                  "coefficient magnitude 0.74493 (printed truncation)");
}

void criterion6(Criterion& c) {
  namespace in = gie::interferometry;
  // Grid-solver oracle at hbar = m = sigma = 1 with the piecewise force.
  const auto profile = in::impulse_pair_profile(1.0, 1.0, 1.0);
  const oracles::Grid grid{-24.0, 26.0, 4096};
  for (int branch : {+1, -1}) {
    const auto cmp =
        oracles::compare_branch_with_solver(profile, branch, 1.0, 1.0, 2.0, grid, 2.5e-4);
    c.require(cmp.l2_error < 1e-4,
              "split-operator L2 error " + std::to_string(cmp.l2_error) + " (branch " +
                  std::to_string(branch) + ")");
  }
  // Analytic A(t) vs numeric overlap, no-spreading regime t << 2 m sigma^2.
  double worst_tight = 0.0, worst_spread = 0.0;
  for (const auto& [u, udot] : std::vector<std::pair<double, double>>{
           {0.3, 0.2}, {1.0, -0.4}, {0.05, 0.02}, {0.6, 0.0}}) {
    const double t_tight = 0.05, t_spread = 6.0;
    const double a_tight = in::visibility(t_tight, u, udot, 1.0, 1.0, 1.0);
    const double a_spread = in::visibility(t_spread, u, udot, 1.0, 1.0, 1.0);
    worst_tight = std::max(
        worst_tight,
        std::abs(std::abs(in::overlap_integral(t_tight, {u, udot, 0.0}, 1.0, 1.0, 1.0)) -
                 a_tight));
    worst_spread = std::max(
        worst_spread,
        std::abs(std::abs(in::overlap_integral(t_spread, {u, udot, 0.0}, 1.0, 1.0, 1.0)) -
                 a_spread));
  }
  c.require(worst_tight < 1e-8, "overlap oracle (no-spreading regime): " +
                                    std::to_string(worst_tight));
  // Recorded alongside: the agreement persists with spreading included.
  std::printf("     note: overlap-vs-A deviation %.2e (t << 2 m sigma^2), %.2e (spreading)\n",
              worst_tight, worst_spread);

  // Windowed-average slope against the linearized <A>, Richardson in dt.
  const double m = 1.0, tau_a = 1.0, tau_f = 0.5, sigma = 3.0, d = 0.2;
  const double tau_t = 2.0 * tau_a + tau_f;
  auto A_of_t = [&](double t) {
    return in::visibility(t, in::branch_separation(t, d, tau_a, tau_f),
                          in::branch_separation_rate(t, d, tau_a, tau_f), m, sigma, 1.0);
  };
  auto loss_rate = [&](double dt) {
    return (1.0 - quad::simpson(A_of_t, tau_t - dt, tau_t, 8000) / dt) / dt;
  };
  const double richardson = 2.0 * loss_rate(5e-4) - loss_rate(1e-3);
  const double slope_lin = 1.0 - in::averaged_visibility(m, d, sigma, tau_a, 1.0, 1.0).value;
  c.require_close(richardson, slope_lin, 0.05, 0.0, "<A> slope vs linearized formula");
}

void criterion7(Criterion& c) {
  namespace gw = gie::graviton;
  namespace qa = gie::quasiatom;
  c.require(std::abs(gw::quadrupole_matrix_element(qa::k1s, qa::k2p0, gw::plus_z())) < 1e-10,
            "<1s| e+ |2p0> vanishes");
  c.require(std::abs(gw::quadrupole_matrix_element(qa::k1s, qa::k2p0, gw::cross_z())) < 1e-10,
            "<1s| ex |2p0> vanishes");
  using gw::PhiIntegrand;
  c.require(std::abs(gw::phi_selection_integral(2, PhiIntegrand::cos2phi) -
                     gw::complex(pi, 0.0)) < 1e-12 &&
                std::abs(gw::phi_selection_integral(-2, PhiIntegrand::sin2phi) -
                         gw::complex(0.0, -pi)) < 1e-12 &&
                std::abs(gw::phi_selection_integral(1, PhiIntegrand::cos2phi)) < 1e-12,
            "phi integrals pi / -i pi / 0");
  for (int n = -3; n <= 3; ++n)
    for (auto which : {PhiIntegrand::cos2phi, PhiIntegrand::sin2phi})
      c.require(std::abs(gw::phi_selection_integral(n, which) -
                         gw::phi_selection_integral_quadrature(n, which)) < 1e-12,
                "phi integral quadrature n=" + std::to_string(n));
  bool table_ok = true;
  for (int li = 0; li <= 3; ++li)
    for (int lf = 0; lf <= 3; ++lf) {
      const bool allowed = gw::selection_rule(li, lf) == gw::Transition::allowed;
      if (allowed != (std::abs(li - lf) == 2)) table_ok = false;
    }
  c.require(table_ok, "delta-l = 2 selection table");
}

void criterion8(Criterion& c) {
  namespace gw = gie::graviton;
  const double w1 = 1.2, w2 = 1.8, w_ab = 3.0, w_gb = 1.9, w_ag = 1.1;
  const double q2 = 0.7, q1 = 1.3, mu = 0.25, M = 1.0, V = 1.0;
  const auto closed = gw::second_order_rate({{{q2, 0.0}, {q1, 0.0}, w_gb}}, w1, w2, w_ab, V, mu,
                                            M, planck);
  const double t = 1000.0 / w1;  // omega t = 10^3
  const auto a2 = oracles::dyson_second_order_amplitude(w1, w2, w_ag, w_gb, q2, q1, mu, M, V, t,
                                                        1600000, planck);
  const double rate_num = oracles::dyson_rate_estimate(a2, t);
  c.require_close(rate_num, closed.rate, 0.02, 0.0, "|a2|^2 (pi/2)/t^2 vs constant rate");
}

void criterion9(Criterion& c) {
  namespace fe = gie::feasibility;
  namespace in = gie::interferometry;
  const double dt_coeff = in::time_resolution_coefficient();

  // Sweep the probe mass (a two-level scenario with E1 fixed high).
  {
    const int n = 10000;
    const double lo = 0.01, hi = 1.5;
    const double step = (hi - lo) / (n - 1);
    double flip_at = -1.0;
    bool prev_possible = false;
    for (int i = 0; i < n; ++i) {
      const double m = lo + step * i;
      in::InterferometerSetup s{m, 0.9, 1.0, 1e-6, 0.4, 1.0, 1e-3};
      in::AliceQuadrupole a{0.1, 0.01, 0.5};
      const auto rep = fe::check_ftl_chain(s, a, std::make_pair(m, 2.0), planck);
      const bool possible = rep.verdict == fe::Verdict::paradox_possible;
      if (i == 0)
        prev_possible = possible;
      else if (possible != prev_possible) {
        flip_at = m;
        prev_possible = possible;
      }
    }
    c.require(flip_at > 0.0, "mass sweep has a verdict flip");
    c.require(std::abs(flip_at - dt_coeff) <= step,
              "mass flip within one grid step of the derived threshold");
    c.require(std::abs(flip_at - 0.143) <= step,
              "mass flip within one grid step of 0.143 m_P (got " + std::to_string(flip_at) +
                  ")");
  }

  // Sweep d/D for a rest-mass probe just under the mass bound: the phase
  // constraint (hence chain_ok) flips at d/D = 5.848 while geometry keeps
  // the verdict blocked beyond d = D.
  {
    const int n = 10000;
    const double lo = 1.0, hi = 10.0;
    const double step = (hi - lo) / (n - 1);
    const double m = dt_coeff * (1.0 - 1e-9);
    double flip_at = -1.0;
    bool prev_ok = false;
    for (int i = 0; i < n; ++i) {
      const double d = lo + step * i;
      in::InterferometerSetup s{m, d, 1.0, 1e-6, 0.4, 1.0, 1e-3};
      in::AliceQuadrupole a{0.1, 0.01, 0.5};
      const auto rep = fe::check_ftl_chain(s, a, std::nullopt, planck);
      if (i == 0)
        prev_ok = rep.chain_ok;
      else if (rep.chain_ok != prev_ok) {
        flip_at = d;
        prev_ok = rep.chain_ok;
      }
    }
    const double derived = std::sqrt(2.0 * pi) / (3.0 * m);
    c.require(flip_at > 0.0, "d/D sweep has a chain flip");
    c.require(std::abs(flip_at - derived) <= step,
              "d/D flip within one grid step of the derived threshold");
    c.require(std::abs(flip_at - 5.848) <= step,
              "d/D flip within one grid step of 5.848 (got " + std::to_string(flip_at) + ")");
  }

  // The two-level scenario with E0 below and E1 above the window.
  {
    in::InterferometerSetup s{0.1, 0.999, 1.0, 1e-6, 0.4, 1.0, 1e-3};
    in::AliceQuadrupole a{0.1, 0.01, 0.5};
    const auto rep = fe::check_ftl_chain(s, a, std::make_pair(0.1, 2.0), planck);
    c.require(rep.verdict == fe::Verdict::paradox_possible,
              "two-level scenario yields paradox_possible");
  }
}

void criterion10(Criterion& c) {
  namespace ra = gie::radiative;
  for (double n = 1.0; n <= 1e6; n *= 10.0) {
    const auto r = ra::transition_rates(n, 1.0);
    c.require(r.gamma_emission / r.gamma_absorption == (n + 1.0) / n,
              "(n+1)/n exact at n=" + std::to_string(n));
  }
  const auto si = units::Constants::codata2018();
  const quasiatom::QuasiatomParams hydrogen{1.67262192369e-27, 9.1093837015e-31, si.e};
  c.require_close(hydrogen.rydberg(si) / si.e, 13.6057, 1e-3, 0.0, "hydrogen Rydberg in eV");
}

}  // namespace

int main() {
  int failures = 0;
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria{
      {"variational minimum S = 80, a = -10/3, brute-force oracle", criterion1},
      {"kinematic constants 1.464 / 0.683 / 1.155", criterion2},
      {"radiated-energy identity and one-graviton bound", criterion3},
      {"Planck-limit chain constants vs printed roundings", criterion4},
      {"atomic integrals 64 sqrt(24)/243, 1/sqrt(3), 128 sqrt(2)/243", criterion5},
      {"wavepacket oracles: grid solver, overlap, windowed average", criterion6},
      {"graviton selection rules and phi integrals", criterion7},
      {"Dyson second-order oracle vs constant rate", criterion8},
      {"feasibility verdict flips at 0.143 m_P and d/D = 5.848", criterion9},
      {"photon-rate structure and hydrogen Rydberg", criterion10},
  };
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion c{static_cast<int>(i) + 1, criteria[i].first, {}};
    failures += run(c, criteria[i].second);
  }
  if (failures == 0)
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
  else
    std::printf("acceptance: %d of %zu criteria FAILED\n", failures, criteria.size());
  return failures;
}
