#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "gie/errors.hpp"
#include "gie/interferometry.hpp"
#include "gie/units.hpp"

namespace gie::radiative {

using std::numbers::pi;

/// Photon occupation factors: emission grows with (n+1), absorption with n.
struct OccupationFactors {
  double emission;    // n + 1
  double absorption;  // n
};

inline OccupationFactors rate_ratios(double n_photons) {
  if (n_photons < 0.0) throw ValidationError("rate_ratios: n must be >= 0");
  return {n_photons + 1.0, n_photons};
}

/// Total spontaneous rate with this paper's prefactor convention,
/// Gamma = w^3 q^2 |<f|r|i>|^2 / (2 pi eps0 hbar c^3) = 2 k_e w^3 q^2 r^2 /
/// (hbar c^3).
inline double spontaneous_rate_total(double omega, double dipole_length, double q,
                                     const units::Constants& k) {
  if (!(omega > 0.0)) throw ValidationError("spontaneous_rate_total: omega must be > 0");
  return 2.0 * k.k_e * std::pow(omega, 3) * q * q * dipole_length * dipole_length /
         (k.hbar * std::pow(k.c, 3));
}

/// Standard Einstein A coefficient, w^3 q^2 r^2 / (3 pi eps0 hbar c^3); kept
/// as a cross-oracle for the convention above (ratio exactly 3/2).
inline double einstein_a_rate(double omega, double dipole_length, double q,
                              const units::Constants& k) {
  if (!(omega > 0.0)) throw ValidationError("einstein_a_rate: omega must be > 0");
  return (4.0 / 3.0) * k.k_e * std::pow(omega, 3) * q * q * dipole_length * dipole_length /
         (k.hbar * std::pow(k.c, 3));
}

/// Single-mode golden-rule coefficient of the energy delta function, written
/// verbatim with the w_fi^2 prefactor: pi q^2 w_fi^2 (occupation)
/// |eps . p_fi|^2 / (eps0 mu^2 w_k V). Off resonance the delta has no
/// support, so the rate is zero (reported through `on_resonance`).
struct ModeRate {
  double value;
  bool on_resonance;
};

inline ModeRate mode_rate_verbatim(double omega_fi, double omega_k, double occupation,
                                   double eps_dot_p_sq, double q, double mu, double V,
                                   const units::Constants& k, double resonance_tol = 1e-9) {
  if (!(omega_k > 0.0 && V > 0.0)) throw ValidationError("mode_rate_verbatim: omega_k, V > 0");
  const double eps0 = 1.0 / (4.0 * pi * k.k_e);
  const bool resonant = std::abs(std::abs(omega_fi) - omega_k) <= resonance_tol * omega_k;
  if (!resonant) return {0.0, false};
  const double v = pi * q * q * omega_fi * omega_fi * occupation * eps_dot_p_sq /
                   (eps0 * mu * mu * omega_k * V);
  return {v, true};
}

struct TransitionRates {
  double gamma_emission;
  double gamma_absorption;
  double gamma_spontaneous;
  double lifetime;  // of the emission channel, 1/gamma_emission
};

/// Rates at photon occupation n, scaled from the spontaneous rate:
/// emission (n+1) Gamma_spo, absorption n Gamma_spo.
inline TransitionRates transition_rates(double n_photons, double gamma_spontaneous) {
  if (gamma_spontaneous < 0.0) throw ValidationError("transition_rates: negative rate");
  const auto f = rate_ratios(n_photons);
  TransitionRates r;
  r.gamma_spontaneous = gamma_spontaneous;
  r.gamma_emission = f.emission * gamma_spontaneous;
  r.gamma_absorption = f.absorption * gamma_spontaneous;
  r.lifetime = r.gamma_emission > 0.0 ? 1.0 / r.gamma_emission
                                      : std::numeric_limits<double>::infinity();
  return r;
}

/// tau = 1 / Gamma.
inline double lifetime(double rate) {
  if (!(rate > 0.0)) throw ValidationError("lifetime: rate must be > 0");
  return 1.0 / rate;
}

struct StabilityWindow {
  bool stable;
  double margin_lifetime;    // (1/gamma_spo) / tau_f, want > 1
  double margin_absorption;  // tau_a / (1/gamma_abs), want > 1
};

/// The excited state must outlast the free flight (spontaneous lifetime >
/// tau_f) while the pump absorbs within the acceleration phase (absorption
/// time < tau_a). Strict inequalities; equality fails with unit margin.
inline StabilityWindow stability_window(double tau_f, double tau_a, const TransitionRates& r) {
  const double inf = std::numeric_limits<double>::infinity();
  StabilityWindow w;
  if (r.gamma_spontaneous == 0.0) {
    w.stable = true;
    w.margin_lifetime = inf;
    w.margin_absorption = inf;
    return w;
  }
  w.margin_lifetime = 1.0 / (r.gamma_spontaneous * tau_f);
  w.margin_absorption = r.gamma_absorption > 0.0 ? tau_a * r.gamma_absorption : 0.0;
  w.stable = w.margin_lifetime > 1.0 && w.margin_absorption > 1.0;
  return w;
}

inline StabilityWindow stability_window(const interferometry::InterferometerSetup& setup,
                                        const TransitionRates& rates) {
  return stability_window(setup.tau_f, setup.tau_a, rates);
}

/// Sum over two orthonormal polarizations transverse to k_hat of
/// |eps_lambda . v|^2; rotation of the basis about k_hat leaves it invariant.
inline double polarization_sum(const std::array<double, 3>& k_hat,
                               const std::array<double, 3>& v, double basis_angle = 0.0) {
  auto dot = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  };
  const double kn = std::sqrt(dot(k_hat, k_hat));
  std::array<double, 3> k{k_hat[0] / kn, k_hat[1] / kn, k_hat[2] / kn};
  std::array<double, 3> helper = std::abs(k[0]) < 0.9 ? std::array<double, 3>{1.0, 0.0, 0.0}
                                                      : std::array<double, 3>{0.0, 1.0, 0.0};
  std::array<double, 3> e1{k[1] * helper[2] - k[2] * helper[1],
                           k[2] * helper[0] - k[0] * helper[2],
                           k[0] * helper[1] - k[1] * helper[0]};
  const double n1 = std::sqrt(dot(e1, e1));
  for (auto& c : e1) c /= n1;
  std::array<double, 3> e2{k[1] * e1[2] - k[2] * e1[1], k[2] * e1[0] - k[0] * e1[2],
                           k[0] * e1[1] - k[1] * e1[0]};
  const double ca = std::cos(basis_angle), sa = std::sin(basis_angle);
  std::array<double, 3> f1, f2;
  for (int i = 0; i < 3; ++i) {
    f1[i] = ca * e1[i] + sa * e2[i];
    f2[i] = -sa * e1[i] + ca * e2[i];
  }
  const double d1 = dot(f1, v), d2 = dot(f2, v);
  return d1 * d1 + d2 * d2;
}

}  // namespace gie::radiative
