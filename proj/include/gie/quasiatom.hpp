#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "gie/errors.hpp"
#include "gie/interferometry.hpp"
#include "gie/quadrature.hpp"
#include "gie/units.hpp"

namespace gie::quasiatom {

using std::numbers::pi;
using complex = std::complex<double>;

/// (n, l, m) label of a hydrogenic eigenstate. n <= 3 is the first-class set
/// used by the transition machinery; higher n goes through the same generic
/// Laguerre recurrence but is exercised far less.
struct Orbital {
  int n;
  int l;
  int m;

  void validate() const {
    if (n < 1 || l < 0 || l >= n || std::abs(m) > l)
      throw ValidationError("Orbital: invalid quantum numbers n=" + std::to_string(n) +
                            " l=" + std::to_string(l) + " m=" + std::to_string(m));
  }
  friend bool operator==(const Orbital&, const Orbital&) = default;
};

inline constexpr Orbital k1s{1, 0, 0};
inline constexpr Orbital k2s{2, 0, 0};
inline constexpr Orbital k2p0{2, 1, 0};
inline constexpr int kFirstClassMaxN = 3;

/// Two point masses with opposite charges +-q bound by the Coulomb force.
struct QuasiatomParams {
  double m1;
  double m2;
  double q;

  void validate() const {
    if (!(m1 > 0.0 && m2 > 0.0 && q != 0.0))
      throw ValidationError("QuasiatomParams: masses must be > 0 and q nonzero");
  }

  double total_mass() const { return m1 + m2; }
  double reduced_mass() const { return m1 * m2 / (m1 + m2); }

  /// E_R = k_e^2 q^4 mu / (2 hbar^2).
  double rydberg(const units::Constants& k) const {
    const double mu = reduced_mass();
    return k.k_e * k.k_e * std::pow(q, 4) * mu / (2.0 * k.hbar * k.hbar);
  }

  /// a0 = hbar^2 / (k_e mu q^2).
  double bohr_radius(const units::Constants& k) const {
    return k.hbar * k.hbar / (k.k_e * reduced_mass() * q * q);
  }

  double ground_energy(const units::Constants& k) const {
    return total_mass() * k.c * k.c - rydberg(k);
  }
  double excited_energy(const units::Constants& k) const {
    return total_mass() * k.c * k.c - rydberg(k) / 4.0;
  }
};

struct EnergyLevels {
  double E0;  // n = 1 total energy, M c^2 - E_R
  double E1;  // n = 2 total energy, M c^2 - E_R / 4
};

inline EnergyLevels energy_levels(const QuasiatomParams& p, const units::Constants& k) {
  p.validate();
  return {p.ground_energy(k), p.excited_energy(k)};
}

/// Internal level energy -E_R / n^2 (binding only, no rest mass).
inline double internal_energy(int n, double rydberg) { return -rydberg / (n * n); }

// ---------------------------------------------------------------------------
// Wavefunctions. Radial parts are kept in Bohr units, rho = r / a, with
// R~_nl carrying a^(3/2): R_nl(r) = a^(-3/2) R~_nl(r/a).

inline double factorial(int n) { return std::tgamma(static_cast<double>(n) + 1.0); }

/// R~_nl(rho) = sqrt(4 (n-l-1)! / (n^4 (n+l)!)) e^(-rho/n) (2 rho/n)^l
///              L^{2l+1}_{n-l-1}(2 rho/n).
inline double radial_function_bohr(int n, int l, double rho) {
  if (rho < 0.0) throw ValidationError("radial_function_bohr: rho must be >= 0");
  const double norm = std::sqrt(4.0 * factorial(n - l - 1) / (std::pow(n, 4) * factorial(n + l)));
  const double x = 2.0 * rho / n;
  return norm * std::exp(-0.5 * x) * std::pow(x, l) *
         std::assoc_laguerre(static_cast<unsigned>(n - l - 1), static_cast<unsigned>(2 * l + 1),
                             x);
}

/// Y_l^m with the Condon-Shortley phase.
inline complex spherical_harmonic(int l, int m, double theta, double phi) {
  const int am = std::abs(m);
  const double leg = std::sph_legendre(static_cast<unsigned>(l), static_cast<unsigned>(am), theta);
  const complex e = std::exp(complex(0.0, m * phi));
  if (m >= 0) return leg * e;
  return ((am % 2) ? -1.0 : 1.0) * leg * e;
}

/// Full hydrogenic eigenfunction at (r, theta, phi) for Bohr radius a0.
inline complex wavefunction(const Orbital& o, double r, double theta, double phi, double a0) {
  o.validate();
  if (r < 0.0) throw ValidationError("wavefunction: r must be >= 0");
  if (!(a0 > 0.0)) throw ValidationError("wavefunction: a0 must be > 0");
  return std::pow(a0, -1.5) * radial_function_bohr(o.n, o.l, r / a0) *
         spherical_harmonic(o.l, o.m, theta, phi);
}

// ---------------------------------------------------------------------------
// Matrix elements.

/// Solid-angle integral of conj(Y_{lp,mp}) w(theta, phi) Y_{lm}: Gauss in
/// theta, trapezoid in phi (spectrally exact for the e^{i m phi} factors).
template <class W>
complex angular_matrix_element(int lp, int mp, int l, int m, W&& weight, int n_phi = 64) {
  const auto theta_rule = quad::gauss_rule<48>(0.0, pi);
  complex acc = 0.0;
  for (int i = 0; i < n_phi; ++i) {
    const double phi = 2.0 * pi * i / n_phi;
    for (const auto& [theta, wt] : theta_rule) {
      acc += wt * std::conj(spherical_harmonic(lp, mp, theta, phi)) * weight(theta, phi) *
             spherical_harmonic(l, m, theta, phi) * std::sin(theta);
    }
  }
  return acc * (2.0 * pi / n_phi);
}

/// <l'm'| r_hat . e_z |lm> = integral Y*_{l'm'} cos(theta) Y_{lm} dOmega.
inline double angular_dipole_factor(int lp, int mp, int l, int m) {
  if (lp < 0 || l < 0 || lp > 4 || l > 4 || std::abs(mp) > lp || std::abs(m) > l)
    throw ValidationError("angular_dipole_factor: unimplemented orbital pair");
  const complex v =
      angular_matrix_element(lp, mp, l, m, [](double theta, double) { return std::cos(theta); });
  return v.real();  // dipole angular factors in this set are real
}

/// Radial moment <a| rho^power |b> = integral R~_a rho^power R~_b rho^2 drho,
/// adaptive quadrature on [0, 40 max(n) ] where the integrand has fully
/// decayed (e^(-rho/n) tails).
inline double radial_matrix_element(const Orbital& a, const Orbital& b, int power = 1) {
  a.validate();
  b.validate();
  const double r_max = 40.0 * std::max(a.n, b.n);
  return quad::integrate(
      [&](double rho) {
        return radial_function_bohr(a.n, a.l, rho) * std::pow(rho, power) *
               radial_function_bohr(b.n, b.l, rho) * rho * rho;
      },
      0.0, r_max, 1e-12, 1e-15);
}

/// The 1s-2p0 radial dipole integral, 64 sqrt(24)/243 (~1.29027).
inline double radial_dipole_integral() { return radial_matrix_element(k1s, k2p0, 1); }

/// Gamma(5) cross-check for the radial integral, integral of x^4 e^-x = 24.
inline double gamma5_quadrature() {
  return quad::integrate([](double x) { return std::pow(x, 4) * std::exp(-x); }, 0.0, 120.0,
                         1e-13, 1e-16);
}

/// Closed-form 1s-2p0 dipole coefficient 128 sqrt(2) / 243 (~0.744934).
inline double dipole_coefficient() { return 128.0 * std::sqrt(2.0) / 243.0; }

/// <psi_100| H_int |psi_210> = -(128 sqrt(2)/243) q a0 E for a field E along z.
inline double dipole_matrix_element(double E_field, const QuasiatomParams& p,
                                    const units::Constants& k) {
  p.validate();
  return -dipole_coefficient() * p.q * p.bohr_radius(k) * E_field;
}

/// Independent 3-D volume quadrature of <bra| w |ket> over all space in Bohr
/// units (a0 = 1); w receives (rho, theta, phi). Product rule: composite
/// Gauss in rho (panels of width ~1 Bohr), Gauss in theta, trapezoid in phi.
template <class W>
complex volume_matrix_element(const Orbital& bra, const Orbital& ket, W&& weight,
                              int n_phi = 64) {
  bra.validate();
  ket.validate();
  const double r_max = 40.0 * std::max(bra.n, ket.n);
  const int panels = static_cast<int>(r_max / 2.5);
  const auto theta_rule = quad::gauss_rule<24>(0.0, pi);
  complex total = 0.0;
  for (int i = 0; i < n_phi; ++i) {
    const double phi = 2.0 * pi * i / n_phi;
    for (int s = 0; s < panels; ++s) {
      const auto rho_rule = quad::gauss_rule<16>(r_max * s / panels, r_max * (s + 1) / panels);
      for (const auto& [rho, wr] : rho_rule) {
        const double rad =
            radial_function_bohr(bra.n, bra.l, rho) * radial_function_bohr(ket.n, ket.l, rho);
        if (rad == 0.0) continue;
        for (const auto& [theta, wt] : theta_rule) {
          total += wr * wt * rad * std::conj(spherical_harmonic(bra.l, bra.m, theta, phi)) *
                   weight(rho, theta, phi) * spherical_harmonic(ket.l, ket.m, theta, phi) *
                   std::sin(theta) * rho * rho;
        }
      }
    }
  }
  return total * (2.0 * pi / n_phi);
}

/// Kinetic-energy integral in Rydberg units: <p^2/2mu> / E_R for an
/// eigenstate; equals 1/n^2 by the virial theorem.
inline double kinetic_virial_ratio(const Orbital& o) {
  o.validate();
  const double r_max = 40.0 * o.n;
  const double h = 1e-5;
  auto dR = [&](double rho) {
    return (radial_function_bohr(o.n, o.l, rho + h) - radial_function_bohr(o.n, o.l, rho - h)) /
           (2.0 * h);
  };
  const double grad_term = quad::integrate(
      [&](double rho) { return dR(rho) * dR(rho) * rho * rho; }, h, r_max, 1e-10, 1e-13);
  const double cent_term =
      o.l == 0 ? 0.0
               : quad::integrate(
                     [&](double rho) {
                       const double R = radial_function_bohr(o.n, o.l, rho);
                       return o.l * (o.l + 1) * R * R;
                     },
                     0.0, r_max, 1e-10, 1e-13);
  return grad_term + cent_term;
}

// ---------------------------------------------------------------------------
// The saturating Bohr-radius chain: E_R at its fraction bound of M c^2, the
// total mass at its Planck bound, and the charge at the equality point.

/// Lower bound on E_R / (M c^2) from squeezing the Planck energy between the
/// phase-distinguishability and time-resolution conditions.
inline double rydberg_fraction_bound() {
  const double k1 = 3.0 / (4.0 * std::sqrt(2.0 * pi));
  const double k2 = 1.0 / interferometry::time_resolution_coefficient();
  return (k2 - 4.0 * k1) / (k2 - k1);
}

/// Lower bound on M / m_P given E_R at its fraction bound (~1.066).
inline double total_mass_bound_planck() {
  const double x = rydberg_fraction_bound();
  return (std::sqrt(2.0 * pi) / 3.0) / (1.0 - 0.25 * x);
}

/// q / e > coeff (M/mu)^(1/4); coeff = (2x)^(1/4) / sqrt(alpha) (~13.43).
inline double charge_ratio_coefficient(double alpha) {
  return std::pow(2.0 * rydberg_fraction_bound(), 0.25) / std::sqrt(alpha);
}

/// a0 = slope * l_P * sqrt(M/mu) at the saturating point; slope ~0.7125.
inline double bohr_slope() {
  const double x = rydberg_fraction_bound();
  const double y = total_mass_bound_planck();
  return 1.0 / (y * std::sqrt(2.0 * x));
}

struct BohrRadiusBound {
  double a0_over_lp;      // saturating a0 in Planck lengths
  double slope;           // a0 / (l_P sqrt(M/mu))
  double q_over_e_coeff;  // ~13.43 (paper prints 13.4)
  double charge_sq_coeff; // ~180.3 (paper prints 179.6 = 13.4^2)
};

inline BohrRadiusBound bohr_radius_bound(double mass_ratio, const units::Constants& k) {
  if (!(mass_ratio >= 4.0 - 1e-12))
    throw ValidationError("bohr_radius_bound: M/mu is at least 4");
  BohrRadiusBound b;
  b.slope = bohr_slope();
  b.a0_over_lp = b.slope * std::sqrt(mass_ratio);
  b.q_over_e_coeff = charge_ratio_coefficient(k.fine_structure());
  b.charge_sq_coeff = b.q_over_e_coeff * b.q_over_e_coeff;
  return b;
}

}  // namespace gie::quasiatom
