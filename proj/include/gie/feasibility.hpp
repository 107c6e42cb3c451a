#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "gie/errors.hpp"
#include "gie/interferometry.hpp"
#include "gie/quasiatom.hpp"
#include "gie/trajectory.hpp"
#include "gie/units.hpp"

namespace gie::feasibility {

using std::numbers::pi;

/// One inequality of the chain: satisfied iff (lhs relation rhs) holds
/// strictly; margin is the dimensionless ratio lhs/rhs.
struct ConstraintResult {
  std::string name;
  double lhs;
  double rhs;
  char relation;  // '<' or '>'
  bool satisfied;
  double margin;
};

enum class Verdict { paradox_possible, paradox_blocked };

struct FeasibilityReport {
  std::vector<ConstraintResult> constraints;
  Verdict verdict;
  std::vector<std::string> blocking_constraints;
  /// Conjunction of the signaling-chain constraints alone (everything except
  /// the d < D geometric sanity check); the d/D threshold of the chain lives
  /// in the regime the geometry check forbids, which is the point.
  bool chain_ok;
};

/// dQ = (2/3) M d^2 for a point mass split across +-d.
inline double quadrupole_from_split(double M, double d) {
  if (M < 0.0 || d < 0.0) throw ValidationError("quadrupole_from_split: M, d must be >= 0");
  return (2.0 / 3.0) * M * d * d;
}

namespace detail {

inline ConstraintResult make(const std::string& name, double lhs, char rel, double rhs) {
  ConstraintResult c;
  c.name = name;
  c.lhs = lhs;
  c.rhs = rhs;
  c.relation = rel;
  c.satisfied = rel == '<' ? lhs < rhs : lhs > rhs;
  c.margin = lhs / rhs;
  return c;
}

}  // namespace detail

/// Evaluates the full chain gating faster-than-light signaling. `internal`
/// carries (E0, E1) for a two-level probe; without it the probe is a fixed
/// mass and E0 = E1 = m c^2. All failures are reported, never thrown.
inline FeasibilityReport check_ftl_chain(const interferometry::InterferometerSetup& s,
                                         const interferometry::AliceQuadrupole& a,
                                         std::optional<std::pair<double, double>> internal,
                                         const units::Constants& k) {
  s.validate();
  a.validate();
  const double E0 = internal ? internal->first : s.m * k.c * k.c;
  const double E1 = internal ? internal->second : s.m * k.c * k.c;

  FeasibilityReport rep;
  rep.constraints.push_back(detail::make("signal_window_quadrupole", k.c * a.T, '<', s.D));
  rep.constraints.push_back(detail::make("signal_window_flight", k.c * s.tau_t(), '<', s.D));
  rep.constraints.push_back(detail::make("graviton_emission", a.delta_q, '<',
                                         interferometry::graviton_emission_bound(a.T, k)));
  const double kappa = trajectory::kappa();
  const double phase_lhs = E1 + kappa * (s.tau_a / s.tau_f) * E0;
  const double phase_rhs = std::sqrt(2.0 * pi) * s.D / (3.0 * s.d) * k.E_P;
  rep.constraints.push_back(detail::make("phase_distinguishability", phase_lhs, '>', phase_rhs));
  const double dt_coeff = interferometry::time_resolution_coefficient();
  rep.constraints.push_back(detail::make("time_resolution", E0, '<', dt_coeff * k.E_P));
  rep.constraints.push_back(detail::make("geometry", s.d, '<', s.D));

  rep.chain_ok = true;
  for (const auto& c : rep.constraints) {
    if (!c.satisfied) {
      rep.blocking_constraints.push_back(c.name);
      if (c.name != "geometry") rep.chain_ok = false;
    }
  }
  rep.verdict =
      rep.blocking_constraints.empty() ? Verdict::paradox_possible : Verdict::paradox_blocked;
  return rep;
}

/// One recomputed constant: `derived` from the symbolic chain, `paper` the
/// printed rounding, and the tolerance the acceptance gate holds it to.
struct DerivedConstant {
  std::string name;
  double derived;
  double paper;
  double rel_err;
  double tolerance;
  bool within_tolerance;
  bool flagged;  // excluded from the gate as a documented inconsistency
  std::string provenance;
};

namespace detail {

inline DerivedConstant row(std::string name, double derived, double paper, double tol,
                           std::string provenance, bool flagged = false) {
  DerivedConstant d;
  d.name = std::move(name);
  d.derived = derived;
  d.paper = paper;
  d.rel_err = std::abs(derived - paper) / std::abs(paper);
  d.tolerance = tol;
  d.flagged = flagged;
  d.within_tolerance = flagged || d.rel_err < tol;
  d.provenance = std::move(provenance);
  return d;
}

}  // namespace detail

/// Recomputes every rounded constant of the source analysis from its
/// symbolic chain. Tolerances: 0.2% where the paper prints >= 4 significant
/// figures, 0.5% for coarser roundings, and the documented Bohr-radius
/// inconsistency is flagged instead of matched.
inline std::vector<DerivedConstant> derive_constants(const units::Constants& k) {
  std::vector<DerivedConstant> t;
  const double sqrt2pi = std::sqrt(2.0 * pi);
  const double v = trajectory::peak_speed_ratio();
  const double kap = trajectory::kappa();
  const double dtc = interferometry::time_resolution_coefficient();
  const double x = quasiatom::rydberg_fraction_bound();
  const double y = quasiatom::total_mass_bound_planck();
  const double qc = quasiatom::charge_ratio_coefficient(k.fine_structure());
  const double slope = quasiatom::bohr_slope();

  t.push_back(detail::row("displacement_coeff_eq6", 3.0 * sqrt2pi / 8.0, 0.940, 2e-3,
                          "3 sqrt(2 pi)/8, the Planck-length displacement coefficient"));
  t.push_back(detail::row("graviton_bound_coeff", sqrt2pi / 8.0, 0.313, 2e-3,
                          "sqrt(2 pi)/8 in dQ < coeff m_P c^2 T^2"));
  t.push_back(detail::row("v_max_ratio", v, 1.464, 2e-3,
                          "peak |dx/dt| T / x0 of the optimal closing"));
  t.push_back(detail::row("subluminal_x0_ratio", 1.0 / v, 0.683, 2e-3,
                          "x(0) < ratio c T for subluminal closing"));
  t.push_back(detail::row("effective_time_kappa", kap, 1.155, 2e-3,
                          "2 integral of xi_opt; tau_e = tau_f + kappa tau_a"));
  t.push_back(detail::row("time_resolution_coeff", dtc, 0.143, 2e-3,
                          "v_max_ratio^2/15 in dt < coeff hbar/(m c^2)"));
  t.push_back(detail::row("d_over_D_min", sqrt2pi / (3.0 * dtc), 5.848, 2e-3,
                          "sqrt(2 pi)/(3 time_resolution_coeff)"));
  t.push_back(detail::row("inverse_time_resolution_coeff", 1.0 / dtc, 6.993, 2e-3,
                          "1/time_resolution_coeff in the energy squeeze"));
  t.push_back(detail::row("rydberg_fraction_min", x, 0.866, 2e-3,
                          "two-sided Planck-energy squeeze on E_R/(M c^2)"));
  t.push_back(detail::row("total_mass_min_planck", y, 1.066, 2e-3,
                          "E1 > sqrt(2 pi)/3 E_P with E_R at its fraction bound"));
  t.push_back(detail::row("charge_ratio_coeff", qc, 13.4, 5e-3,
                          "(2 x)^(1/4)/sqrt(alpha) in q > coeff e (M/mu)^(1/4)"));
  t.push_back(detail::row("charge_ratio_equal_masses", qc * std::sqrt(2.0), 19.0, 5e-3,
                          "charge coefficient at M/mu = 4"));
  t.push_back(detail::row("charge_sq_coeff", qc * qc, 179.6, 5e-3,
                          "square of the charge coefficient in the a0 bound"));
  t.push_back(detail::row("bohr_slope", slope, 0.71, 5e-3,
                          "a0 = slope l_P sqrt(M/mu) at the saturating point"));
  // The printed 1.95 squares the rounded 191.4 = 179.6 * 1.066 chain; the
  // fully unrounded chain gives (1/slope)^2 ~ 1.970. Recompute the printed
  // number from its own parent, keeping the unrounded value in view.
  t.push_back(detail::row("mass_ratio_min", std::pow(191.4 * k.fine_structure(), 2), 1.95, 5e-3,
                          "(191.4 alpha)^2 from the printed a0 chain; unrounded chain gives " +
                              std::to_string(1.0 / (slope * slope))));
  t.push_back(detail::row("section4_mass_bound", 3.0 * sqrt2pi / 16.0, 0.47, 5e-3,
                          "dQ = (2/3) M d^2 against the one-graviton bound at c T = d"));
  t.push_back(detail::row("bohr_radius_equal_masses", 2.0 * slope, 0.356, 5e-3,
                          "slope sqrt(M/mu) at M/mu = 4; the printed 0.356 equals "
                          "slope/sqrt(M/mu) instead and is inconsistent with the "
                          "slope form printed beside it",
                          /*flagged=*/true));
  return t;
}

}  // namespace gie::feasibility
