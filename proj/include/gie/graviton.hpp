#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "gie/errors.hpp"
#include "gie/quadrature.hpp"
#include "gie/quasiatom.hpp"
#include "gie/units.hpp"

namespace gie::graviton {

using std::numbers::pi;
using complex = std::complex<double>;
using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;
using CMat3 = std::array<std::array<complex, 3>, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline Vec3 normalized(Vec3 v) {
  const double n = std::sqrt(dot(v, v));
  if (!(n > 0.0)) throw ValidationError("normalized: zero vector");
  return {v[0] / n, v[1] / n, v[2] / n};
}

/// Transverse-traceless polarization tensor for a wave along k_hat:
/// e+ = u (x) u - v (x) v, ex = u (x) v + v (x) u, normalized e_ij e_ij = 2.
struct GwPolarization {
  Mat3 e;
  Vec3 k_hat;
  char kind;  // '+' or 'x'
};

inline GwPolarization make_polarization(Vec3 k_hat, char kind) {
  if (kind != '+' && kind != 'x') throw ValidationError("make_polarization: kind must be + or x");
  const Vec3 k = normalized(k_hat);
  // Helper chosen so that propagation along z gives the textbook frame
  // u = x, v = y (e+ = diag(1, -1, 0), ex_xy = 1).
  const Vec3 helper = std::abs(k[1]) < 0.9 ? Vec3{0.0, 1.0, 0.0} : Vec3{0.0, 0.0, 1.0};
  const Vec3 u = normalized(cross(helper, k));
  const Vec3 v = cross(k, u);
  GwPolarization p;
  p.k_hat = k;
  p.kind = kind;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      p.e[i][j] = kind == '+' ? u[i] * u[j] - v[i] * v[j] : u[i] * v[j] + v[i] * u[j];
  return p;
}

/// For propagation along z this gives the textbook e+ = diag(1,-1,0).
inline GwPolarization plus_z() {
  GwPolarization p = make_polarization({0.0, 0.0, 1.0}, '+');
  return p;
}
inline GwPolarization cross_z() { return make_polarization({0.0, 0.0, 1.0}, 'x'); }

/// Strain of one graviton quantum in volume V: h = sqrt(16 pi G hbar/(V w c^2)).
inline double strain_amplitude(double omega, double V, const units::Constants& k) {
  if (!(omega > 0.0 && V > 0.0)) throw ValidationError("strain_amplitude: omega, V must be > 0");
  return std::sqrt(16.0 * pi * k.G * k.hbar / (V * omega * k.c * k.c));
}

// ---------------------------------------------------------------------------
// Rank-2 spherical unit tensors: Y_2^m(r_hat) is proportional to
// Y^m_ij r^i r^j, and r_i r_j - delta_ij/3 expands over conj(Y^m_ij) Y_2^m
// with fixed coefficients.

inline CMat3 spherical_unit_tensor(int m) {
  const complex I{0.0, 1.0};
  switch (m) {
    case 2:
      return {{{1.0, I, 0.0}, {I, -1.0, 0.0}, {0.0, 0.0, 0.0}}};
    case -2:
      return {{{1.0, -I, 0.0}, {-I, -1.0, 0.0}, {0.0, 0.0, 0.0}}};
    case 1:
      return {{{0.0, 0.0, 1.0}, {0.0, 0.0, I}, {1.0, I, 0.0}}};
    case -1:
      return {{{0.0, 0.0, 1.0}, {0.0, 0.0, -I}, {1.0, -I, 0.0}}};
    case 0:
      return {{{-1.0, 0.0, 0.0}, {0.0, -1.0, 0.0}, {0.0, 0.0, 2.0}}};
    default:
      throw ValidationError("spherical_unit_tensor: m must be in [-2, 2]");
  }
}

/// Coefficient c_m in r_i r_j - delta_ij/3 = sum_m c_m conj(Y^m)_ij Y_2^m.
inline complex spherical_tensor_coefficient(int m) {
  const double c2 = std::sqrt(2.0 * pi / 15.0);
  switch (m) {
    case 2:
    case -2:
      return c2;
    case 1:
      return -c2;
    case -1:
      return c2;
    case 0:
      return std::sqrt(4.0 * pi / 45.0);  // = 1/(6 sqrt(5/(16 pi)))
    default:
      throw ValidationError("spherical_tensor_coefficient: m must be in [-2, 2]");
  }
}

/// Left side of the decomposition identity at direction (theta, phi).
inline Mat3 traceless_direction_tensor(double theta, double phi) {
  const Vec3 r{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
               std::cos(theta)};
  Mat3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = r[i] * r[j] - (i == j ? 1.0 / 3.0 : 0.0);
  return t;
}

/// Right side of the decomposition identity, sum_m c_m conj(Y^m)_ij Y_2^m.
inline CMat3 spherical_tensor_expansion(double theta, double phi) {
  CMat3 out{};
  for (int m = -2; m <= 2; ++m) {
    const CMat3 Y = spherical_unit_tensor(m);
    const complex c = spherical_tensor_coefficient(m) *
                      quasiatom::spherical_harmonic(2, m, theta, phi);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out[i][j] += c * std::conj(Y[i][j]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Quadrupole matrix elements <bra| e_ij x^i x^j |ket| in units of a0^2.

/// Direct 3-D quadrature path: e_ij x_i x_j = rho^2 (r_hat . e r_hat).
/// Result scales with a0^2 (length squared).
inline complex quadrupole_matrix_element_quadrature(const quasiatom::Orbital& bra,
                                                    const quasiatom::Orbital& ket,
                                                    const GwPolarization& pol,
                                                    double a0 = 1.0) {
  return a0 * a0 *
         quasiatom::volume_matrix_element(bra, ket, [&](double rho, double theta, double phi) {
           const Vec3 r{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                        std::cos(theta)};
           double quad_form = 0.0;
           for (int i = 0; i < 3; ++i)
             for (int j = 0; j < 3; ++j) quad_form += r[i] * pol.e[i][j] * r[j];
           return complex(rho * rho * quad_form, 0.0);
         });
}

/// Spherical-tensor path: since e is traceless,
/// e_ij x_i x_j = rho^2 sum_m c_m (e . conj(Y^m)) Y_2^m, so the element
/// factorizes into radial <bra|rho^2|ket> pieces times Gaunt integrals.
inline complex quadrupole_matrix_element_spherical(const quasiatom::Orbital& bra,
                                                   const quasiatom::Orbital& ket,
                                                   const GwPolarization& pol,
                                                   double a0 = 1.0) {
  const double radial = quasiatom::radial_matrix_element(bra, ket, 2);
  complex total = 0.0;
  for (int m = -2; m <= 2; ++m) {
    const CMat3 Y = spherical_unit_tensor(m);
    complex contraction = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) contraction += pol.e[i][j] * std::conj(Y[i][j]);
    if (std::abs(contraction) < 1e-15) continue;
    const complex gaunt = quasiatom::angular_matrix_element(
        bra.l, bra.m, ket.l, ket.m,
        [m](double theta, double phi) { return quasiatom::spherical_harmonic(2, m, theta, phi); });
    total += spherical_tensor_coefficient(m) * contraction * gaunt;
  }
  return a0 * a0 * radial * total;
}

/// <bra| e_ij x^i x^j |ket> for Bohr radius a0 (length^2); the two
/// integration paths agree to ~1e-8 and the quadrature one is the value.
inline complex quadrupole_matrix_element(const quasiatom::Orbital& bra,
                                         const quasiatom::Orbital& ket,
                                         const GwPolarization& pol, double a0 = 1.0) {
  return quadrupole_matrix_element_quadrature(bra, ket, pol, a0);
}

// ---------------------------------------------------------------------------
// Selection rules.

enum class PhiIntegrand { cos2phi, sin2phi };

/// integral over [0, 2pi] of e^{i n phi} cos(2 phi) = pi for n = +-2, else 0;
/// the sin variant gives +i pi (n = 2) and -i pi (n = -2).
inline complex phi_selection_integral(int n, PhiIntegrand which) {
  if (which == PhiIntegrand::cos2phi) return (n == 2 || n == -2) ? complex(pi, 0.0) : 0.0;
  if (n == 2) return complex(0.0, pi);
  if (n == -2) return complex(0.0, -pi);
  return 0.0;
}

/// Quadrature oracle for the same integral.
inline complex phi_selection_integral_quadrature(int n, PhiIntegrand which, int n_pts = 4096) {
  complex acc = 0.0;
  for (int i = 0; i < n_pts; ++i) {
    const double phi = 2.0 * pi * i / n_pts;
    const double trig = which == PhiIntegrand::cos2phi ? std::cos(2.0 * phi) : std::sin(2.0 * phi);
    acc += std::exp(complex(0.0, n * phi)) * trig;
  }
  return acc * (2.0 * pi / n_pts);
}

enum class Transition { allowed, forbidden };

/// Single-graviton (quadrupole) rule: allowed iff |delta l| = 2.
inline Transition selection_rule(int l_initial, int l_final) {
  if (l_initial < 0 || l_final < 0) throw ValidationError("selection_rule: l must be >= 0");
  return std::abs(l_initial - l_final) == 2 ? Transition::allowed : Transition::forbidden;
}

/// Annotation for the rule table; the 1s-2p pair is the one the protocol
/// exploits.
inline std::string selection_note(int l_initial, int l_final) {
  const int lo = std::min(l_initial, l_final), hi = std::max(l_initial, l_final);
  if (lo == 0 && hi == 1) return "electromagnetically allowed but gravitationally forbidden";
  return selection_rule(l_initial, l_final) == Transition::allowed ? "quadrupole allowed"
                                                                   : "quadrupole forbidden";
}

// ---------------------------------------------------------------------------
// Perturbative amplitudes. Energies enter through omega_ab = (E_a - E_b)/hbar
// with internal levels E_n = -E_R / n^2.

/// (e^{i eps t} - 1)/eps with the L'Hopital limit i t at eps -> 0.
inline complex phase_factor_over(double eps, double t) {
  if (std::abs(eps * t) < 1e-8) {
    const complex it{0.0, t};
    return it * (1.0 + complex(0.0, 0.5 * eps * t) - eps * t * eps * t / 6.0);
  }
  return (std::exp(complex(0.0, eps * t)) - 1.0) / eps;
}

/// First-order amplitude for the classical sin(w t) drive of the appendix:
/// a1 = (i mu/(M c)) sqrt(pi G w^3/(V hbar)) <a|e x x|b>
///      [ (e^{i(w_ab+w)t}-1)/(w_ab+w) - (e^{i(w_ab-w)t}-1)/(w_ab-w) ].
inline complex first_order_amplitude(complex mat_elem_len2, double omega_ab, double omega,
                                     double t, double V, double mu, double M,
                                     const units::Constants& k) {
  if (!(omega > 0.0 && V > 0.0 && t >= 0.0))
    throw ValidationError("first_order_amplitude: omega, V must be > 0 and t >= 0");
  const complex I{0.0, 1.0};
  const complex pref =
      I * mu / (M * k.c) * std::sqrt(pi * k.G * std::pow(omega, 3) / (V * k.hbar));
  const complex bracket =
      phase_factor_over(omega_ab + omega, t) - phase_factor_over(omega_ab - omega, t);
  return pref * mat_elem_len2 * bracket;
}

/// Quantized-drive variant (single e^{-i w t} emission term), kept as a
/// separately labeled path; prefactor matches the quantized matrix element.
inline complex first_order_amplitude_quantized(complex mat_elem_len2, double omega_ab,
                                               double omega, double t, double V, double mu,
                                               double M, const units::Constants& k) {
  if (!(omega > 0.0 && V > 0.0 && t >= 0.0))
    throw ValidationError("first_order_amplitude_quantized: omega, V must be > 0 and t >= 0");
  const complex pref = -mu / (M * k.c) * std::sqrt(pi * k.G * std::pow(omega, 3) / (V * k.hbar));
  return pref * mat_elem_len2 * phase_factor_over(omega_ab + omega, t);
}

/// One intermediate channel of a second-order (two-graviton) transition.
struct Channel {
  complex q2_alpha_gamma;  // <alpha| e2 x x |gamma>, units length^2
  complex q1_gamma_beta;   // <gamma| e1 x x |beta>, units length^2
  double omega_gamma_beta; // (E_gamma - E_beta)/hbar
};

struct SecondOrderRate {
  double rate;
  bool on_resonance;
};

/// Constant transition rate on the resonance surface w1 + w2 = w_ab, with
/// the single-final-state convention (the level delta taken as unit weight):
///   Gamma = (pi/2) (mu^2 pi G/(hbar V M^2 c^2))^2 w1^3 w2^3
///           | sum_gamma Q2 Q1 / (w_gb - w1) |^2.
/// Off the surface the rate is zero; a drive hitting an intermediate
/// resonance w_gb = w1 is rejected (no i-epsilon prescription is supplied).
inline SecondOrderRate second_order_rate(const std::vector<Channel>& channels, double omega1,
                                         double omega2, double omega_ab, double V, double mu,
                                         double M, const units::Constants& k) {
  if (!(omega1 > 0.0 && omega2 > 0.0 && V > 0.0))
    throw ValidationError("second_order_rate: omegas, V must be > 0");
  if (std::abs(omega1 + omega2 - omega_ab) > 1e-9 * std::abs(omega_ab))
    return {0.0, false};
  complex s = 0.0;
  for (const auto& ch : channels) {
    const double det = ch.omega_gamma_beta - omega1;
    if (std::abs(det) <= 1e-9 * std::abs(omega1))
      throw ValidationError("second_order_rate: drive resonant with intermediate level; "
                            "detune omega1 away from omega_gamma_beta");
    s += ch.q2_alpha_gamma * ch.q1_gamma_beta / det;
  }
  const double pref = mu * mu * pi * k.G / (k.hbar * V * M * M * k.c * k.c);
  const double rate =
      0.5 * pi * pref * pref * std::pow(omega1, 3) * std::pow(omega2, 3) * std::norm(s);
  return {rate, true};
}

/// The closed form as printed in the source derivation, which evaluates the
/// generic rate at the nominal point w1 = |w_beta_gamma|, w2 = |w_gamma_alpha|
/// and replaces the detuning denominator by w_gamma_beta.
inline double second_order_rate_nominal(complex q2, complex q1, double omega_beta_gamma,
                                        double omega_gamma_alpha, double omega_gamma_beta,
                                        double V, double mu, double M,
                                        const units::Constants& k) {
  if (omega_gamma_beta == 0.0)
    throw ValidationError("second_order_rate_nominal: omega_gamma_beta must be nonzero");
  const double pref = mu * mu * pi * k.G / (k.hbar * V * M * M * k.c * k.c);
  return 0.5 * pi * pref * pref *
         std::abs(std::pow(omega_beta_gamma, 3) * std::pow(omega_gamma_alpha, 3)) *
         std::norm(q2 * q1 / omega_gamma_beta);
}

/// Density-of-states variant for a user-supplied rho(omega_alpha): the level
/// delta integrates against the final-state distribution.
inline double second_order_rate_with_dos(const std::vector<Channel>& channels, double omega1,
                                         double omega2, double V, double mu, double M,
                                         double rho_final, const units::Constants& k) {
  if (rho_final < 0.0) throw ValidationError("second_order_rate_with_dos: rho must be >= 0");
  complex s = 0.0;
  for (const auto& ch : channels) {
    const double det = ch.omega_gamma_beta - omega1;
    if (std::abs(det) <= 1e-9 * std::abs(omega1))
      throw ValidationError("second_order_rate_with_dos: intermediate resonance");
    s += ch.q2_alpha_gamma * ch.q1_gamma_beta / det;
  }
  const double pref = mu * mu * pi * k.G / (k.hbar * V * M * M * k.c * k.c);
  return 2.0 * pi * pref * pref * std::pow(omega1, 3) * std::pow(omega2, 3) * std::norm(s) *
         rho_final;
}

/// All orbitals with n <= n_max, the truncated intermediate-state basis.
inline std::vector<quasiatom::Orbital> orbital_basis(int n_max = quasiatom::kFirstClassMaxN) {
  std::vector<quasiatom::Orbital> basis;
  for (int n = 1; n <= n_max; ++n)
    for (int l = 0; l < n; ++l)
      for (int m = -l; m <= l; ++m) basis.push_back({n, l, m});
  return basis;
}

}  // namespace gie::graviton
