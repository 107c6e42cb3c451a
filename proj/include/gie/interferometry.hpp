#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "gie/errors.hpp"
#include "gie/quadrature.hpp"
#include "gie/trajectory.hpp"
#include "gie/units.hpp"

namespace gie::interferometry {

using std::numbers::pi;

/// Alice's side: mean quadrupole Q0, branch split dQ (Q+- = Q0 +- dQ),
/// closed over time T.
struct AliceQuadrupole {
  double Q0;
  double delta_q;
  double T;

  void validate() const {
    if (!(T > 0.0)) throw ValidationError("AliceQuadrupole: T must be > 0");
  }
  /// |dQ| > Q0 is permitted but flagged: the split exceeds the mean.
  bool unphysical_split() const { return std::abs(delta_q) > Q0; }
};

/// Bob's Stern-Gerlach interferometer geometry and timing.
struct InterferometerSetup {
  double m;       // particle mass
  double d;       // arm half-separation
  double D;       // Alice-Bob distance
  double tau_a;   // acceleration phase
  double tau_f;   // free flight
  double sigma;   // wavepacket width
  double delta_t; // measurement window

  double tau_t() const { return tau_f + 2.0 * tau_a; }

  void validate() const {
    if (!(m > 0.0 && d > 0.0 && D > 0.0 && tau_a > 0.0 && tau_f > 0.0 && sigma > 0.0 &&
          delta_t >= 0.0))
      throw ValidationError("InterferometerSetup: all parameters must be positive");
  }
};

struct PotentialPair {
  double exact;       // -G Q / (D + dx)^3, with the Phi_0 reference at 0
  double linearized;  // -G Q / D^3 + 3 G dx Q / D^4
};

/// Newtonian potential of the quadrupole Q at distance D + dx.
inline PotentialPair quadrupole_potential(double Q, double D, double dx,
                                          const units::Constants& k) {
  if (!(D + dx > 0.0)) throw ValidationError("quadrupole_potential: D + dx must be > 0");
  PotentialPair out;
  out.exact = -k.G * Q / std::pow(D + dx, 3);
  out.linearized = -k.G * Q / std::pow(D, 3) + 3.0 * k.G * dx * Q / std::pow(D, 4);
  return out;
}

/// Which-way displacement of a free test particle after flight tau_f:
/// delta = 3 G tau_f^2 dQ / D^4.
inline double test_particle_displacement(double delta_q, double D, double tau_f,
                                         const units::Constants& k) {
  if (!(D > 0.0 && tau_f > 0.0))
    throw ValidationError("test_particle_displacement: D, tau_f must be > 0");
  return 3.0 * k.G * tau_f * tau_f * delta_q / std::pow(D, 4);
}

/// Largest branch split that still radiates less than one graviton 2 pi hbar/T
/// when closed optimally: dQ_max = sqrt(2 pi)/8 m_P c^2 T^2.
inline double graviton_emission_bound(double T, const units::Constants& k) {
  if (!(T > 0.0)) throw ValidationError("graviton_emission_bound: T must be > 0");
  return std::sqrt(2.0 * pi) / 8.0 * k.m_P * k.c * k.c * T * T;
}

struct PhaseSet {
  double phi_pp, phi_pm, phi_mp, phi_mm;
  double Gamma;  // mean-quadrupole phase
  double gamma;  // which-way phase
};

/// Gamma = 6 G m tau_e d Q0 / (hbar D^4), gamma likewise with dQ; the four
/// branch phases are phi0 +- Gamma/2 +- gamma/2 with the common offset phi0
/// taken from the monopole-like -G Q0 / D^3 term.
inline PhaseSet gravitational_phases(const InterferometerSetup& s, const AliceQuadrupole& a,
                                     const units::Constants& k) {
  s.validate();
  a.validate();
  const double tau_e = trajectory::effective_time(s.tau_f, s.tau_a);
  const double base = 6.0 * k.G * s.m * tau_e * s.d / (k.hbar * std::pow(s.D, 4));
  PhaseSet p;
  p.Gamma = base * a.Q0;
  p.gamma = base * a.delta_q;
  const double phi0 = -s.m * tau_e * k.G * a.Q0 / (k.hbar * std::pow(s.D, 3));
  p.phi_pp = phi0 + 0.5 * p.Gamma + 0.5 * p.gamma;
  p.phi_pm = phi0 - 0.5 * p.Gamma - 0.5 * p.gamma;
  p.phi_mp = phi0 + 0.5 * p.Gamma - 0.5 * p.gamma;
  p.phi_mm = phi0 - 0.5 * p.Gamma + 0.5 * p.gamma;
  return p;
}

/// Mass for which gamma reaches pi/2 (perfect distinguishability),
/// m = pi hbar D^4 / (12 G tau_e dQ d).
inline double mass_for_perfect_distinguishability(const InterferometerSetup& s,
                                                  const AliceQuadrupole& a,
                                                  const units::Constants& k) {
  const double tau_e = trajectory::effective_time(s.tau_f, s.tau_a);
  return pi * k.hbar * std::pow(s.D, 4) / (12.0 * k.G * tau_e * a.delta_q * s.d);
}

// ---------------------------------------------------------------------------
// Force profiles and the classical branch path u(t), m u'' = F.

struct ForceProfile {
  std::function<double(double)> F;  // force on [0, tau_a]
  double tau_a;
  double m;
  double d;           // target displacement at tau_a
  bool analytic = false;  // canonical profile: u(t) known in closed form
  std::function<double(double)> u_exact;
  std::function<double(double)> udot_exact;
};

/// Opening profile taken from the radiation-optimal closing shape reversed in
/// time and scaled to displacement d: u(t) = d xi_opt(1 - t/tau_a).
inline ForceProfile canonical_profile(double m, double d, double tau_a) {
  if (!(m > 0.0 && d > 0.0 && tau_a > 0.0))
    throw ValidationError("canonical_profile: m, d, tau_a must be > 0");
  ForceProfile p;
  p.tau_a = tau_a;
  p.m = m;
  p.d = d;
  p.analytic = true;
  p.u_exact = [=](double t) { return d * trajectory::optimal_profile().xi(1.0 - t / tau_a); };
  p.udot_exact = [=](double t) {
    return -d / tau_a * trajectory::optimal_profile().xi_dot(1.0 - t / tau_a);
  };
  // F = m u''; the second derivative of the sqrt form has integrable
  // endpoint singularities, so evaluate it from P directly.
  p.F = [=](double t) {
    const double tau = std::clamp(1.0 - t / tau_a, 1e-12, 1.0 - 1e-12);
    const auto& prof = trajectory::optimal_profile();
    const Poly& P = prof.polynomial();
    const Poly Pd = P.derivative();
    const Poly Pdd = Pd.derivative();
    const double val = P(tau);
    const double xidd =
        (2.0 * val * Pdd(tau) - Pd(tau) * Pd(tau)) / (4.0 * std::pow(val, 1.5));
    return m * d / (tau_a * tau_a) * xidd;
  };
  return p;
}

/// +F0 for the first half, -F0 for the second, F0 = 4 m d / tau_a^2.
inline ForceProfile impulse_pair_profile(double m, double d, double tau_a) {
  if (!(m > 0.0 && d > 0.0 && tau_a > 0.0))
    throw ValidationError("impulse_pair_profile: m, d, tau_a must be > 0");
  const double F0 = 4.0 * m * d / (tau_a * tau_a);
  ForceProfile p;
  p.tau_a = tau_a;
  p.m = m;
  p.d = d;
  p.F = [=](double t) { return t < 0.5 * tau_a ? F0 : -F0; };
  return p;
}

struct ClassicalPath {
  std::vector<double> times;
  std::vector<double> u;
  std::vector<double> udot;
};

/// Integrates m u'' = F(t) with u(0) = u'(0) = 0 (RK4 on the phase-space
/// pair; exact for piecewise-constant F with aligned steps), or samples the
/// closed form for the canonical profile. Verifies u(tau_a) = d and
/// u'(tau_a) = 0 to 1e-8 d.
inline ClassicalPath classical_path(const ForceProfile& p, int n_samples = 2001) {
  if (n_samples < 2) throw ValidationError("classical_path: need n_samples >= 2");
  ClassicalPath out;
  out.times.resize(n_samples);
  out.u.resize(n_samples);
  out.udot.resize(n_samples);
  const double h = p.tau_a / (n_samples - 1);
  if (p.analytic) {
    for (int i = 0; i < n_samples; ++i) {
      const double t = i * h;
      out.times[i] = t;
      out.u[i] = p.u_exact(t);
      out.udot[i] = p.udot_exact(t);
    }
  } else {
    double u = 0.0, v = 0.0;
    out.times[0] = 0.0;
    out.u[0] = 0.0;
    out.udot[0] = 0.0;
    for (int i = 1; i < n_samples; ++i) {
      const double t = (i - 1) * h;
      // Force samples stay inside the half-open step [t, t+h) so that force
      // jumps aligned with the grid (impulse profiles) integrate exactly.
      const double a1 = p.F(t) / p.m;
      const double k1u = v, k1v = a1;
      const double a2 = p.F(t + 0.5 * h) / p.m;
      const double k2u = v + 0.5 * h * k1v, k2v = a2;
      const double k3u = v + 0.5 * h * k2v, k3v = a2;
      const double a4 = p.F(t + h * (1.0 - 1e-9)) / p.m;
      const double k4u = v + h * k3v, k4v = a4;
      u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
      v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
      out.times[i] = i * h;
      out.u[i] = u;
      out.udot[i] = v;
    }
  }
  const double tol = 1e-8 * p.d;
  const double vel_tol = 1e-6 * p.d / p.tau_a;
  if (std::abs(out.u.back() - p.d) > tol || std::abs(out.udot.back()) > vel_tol)
    throw NumericError("classical_path: endpoint tolerance not met, u(tau_a)=" +
                       std::to_string(out.u.back()));
  return out;
}

// ---------------------------------------------------------------------------
// Wavepacket branches and visibility.

struct PathPoint {
  double u = 0.0;
  double udot = 0.0;
  double alpha0 = 0.0;  // -(m / 2 hbar) * integral of udot^2 up to t
};

/// Free Gaussian solution with spreading factor beta = 1 + i hbar t/(2 m s^2).
inline std::complex<double> free_gaussian(double t, double x, double m, double sigma,
                                          double hbar) {
  const std::complex<double> beta{1.0, hbar * t / (2.0 * m * sigma * sigma)};
  const double norm = std::pow(2.0 * pi * sigma * sigma, -0.25);
  return norm / std::sqrt(beta) * std::exp(-x * x / (4.0 * sigma * sigma * beta));
}

/// psi_branch(t, x) = e^{i alpha0} e^{branch i alpha x} psi_f(t, x - branch u)
/// with alpha = m udot / hbar.
inline std::complex<double> wavepacket(double t, double x, int branch, const PathPoint& path,
                                       double m, double sigma, double hbar) {
  if (!(sigma > 0.0 && m > 0.0)) throw ValidationError("wavepacket: m, sigma must be > 0");
  if (branch != 1 && branch != -1) throw ValidationError("wavepacket: branch must be +-1");
  const double alpha = m * path.udot / hbar;
  const std::complex<double> phase =
      std::exp(std::complex<double>(0.0, path.alpha0 + branch * alpha * x));
  return phase * free_gaussian(t, x - branch * path.u, m, sigma, hbar);
}

/// Inter-branch visibility A(t) = exp(-(u - t udot)^2/(2 s^2)
///                                    - 2 (m s udot / hbar)^2).
inline double visibility(double t, double u, double udot, double m, double sigma, double hbar) {
  if (!(sigma > 0.0)) throw ValidationError("visibility: sigma must be > 0");
  const double q1 = (u - t * udot) / sigma;
  const double q2 = m * sigma * udot / hbar;
  return std::exp(-0.5 * q1 * q1 - 2.0 * q2 * q2);
}

/// Brute-force overlap <psi_+|psi_-> by Simpson quadrature over the support.
inline std::complex<double> overlap_integral(double t, const PathPoint& path, double m,
                                             double sigma, double hbar, int n = 8192) {
  const double spread = sigma * std::sqrt(1.0 + std::pow(hbar * t / (2.0 * m * sigma * sigma), 2));
  const double L = std::abs(path.u) + 14.0 * spread;
  auto f_re = [&](double x) {
    const auto v = std::conj(wavepacket(t, x, +1, path, m, sigma, hbar)) *
                   wavepacket(t, x, -1, path, m, sigma, hbar);
    return v.real();
  };
  auto f_im = [&](double x) {
    const auto v = std::conj(wavepacket(t, x, +1, path, m, sigma, hbar)) *
                   wavepacket(t, x, -1, path, m, sigma, hbar);
    return v.imag();
  };
  return {quad::simpson(f_re, -L, L, n), quad::simpson(f_im, -L, L, n)};
}

enum class Branch { Q_plus, Q_minus };

/// <O>_{Q+} = 1 + A, <O>_{Q-} = 1 + A cos(2 gamma).
inline double expectation_O(Branch b, double A, double gamma) {
  if (!(A >= 0.0 && A <= 1.0)) throw ValidationError("expectation_O: A must lie in [0,1]");
  return b == Branch::Q_plus ? 1.0 + A : 1.0 + A * std::cos(2.0 * gamma);
}

struct AveragedVisibility {
  double value;
  bool within_linear_regime;  // delta_t << tau_a assumption
};

/// <A> ~ 1 - (15 m d^2 dt / (2 hbar tau_a^2)) (hbar tau_a/(2 m s^2)
///        + 2 m s^2/(hbar tau_a))  for measurement window dt before tau_t.
inline AveragedVisibility averaged_visibility(double m, double d, double sigma, double tau_a,
                                              double delta_t, double hbar) {
  if (!(m > 0.0 && sigma > 0.0 && tau_a > 0.0) || delta_t < 0.0)
    throw ValidationError("averaged_visibility: bad parameters");
  const double paren =
      hbar * tau_a / (2.0 * m * sigma * sigma) + 2.0 * m * sigma * sigma / (hbar * tau_a);
  const double value = 1.0 - 15.0 * m * d * d * delta_t / (2.0 * hbar * tau_a * tau_a) * paren;
  return {value, delta_t < 0.1 * tau_a};
}

/// sigma* = sqrt(hbar tau_a / (2 m)), minimizing the averaged-visibility loss.
inline double optimal_sigma(double m, double tau_a, double hbar) {
  if (!(m > 0.0 && tau_a > 0.0)) throw ValidationError("optimal_sigma: m, tau_a must be > 0");
  return std::sqrt(hbar * tau_a / (2.0 * m));
}

/// Coefficient of hbar/(m c^2) in the time-resolution bound, recomputed from
/// the subluminal speed ratio: peak_speed_ratio^2 / 15 (~0.1429).
inline double time_resolution_coefficient() {
  const double v = trajectory::peak_speed_ratio();
  return v * v / 15.0;
}

/// dt_max = (v_ratio^2 / 15) hbar / (m c^2).
inline double time_resolution_bound(double m, const units::Constants& k) {
  if (!(m > 0.0)) throw ValidationError("time_resolution_bound: m must be > 0");
  return time_resolution_coefficient() * k.hbar / (m * k.c * k.c);
}

/// Full branch separation u(t) over one interferometer cycle with canonical
/// opening/closing legs: 0 -> d in tau_a, hold d over tau_f, d -> 0 in tau_a.
inline double branch_separation(double t, double d, double tau_a, double tau_f) {
  const auto& prof = trajectory::optimal_profile();
  if (t <= 0.0) return 0.0;
  if (t < tau_a) return d * prof.xi(1.0 - t / tau_a);
  if (t <= tau_a + tau_f) return d;
  if (t < 2.0 * tau_a + tau_f) return d * prof.xi((t - tau_a - tau_f) / tau_a);
  return 0.0;
}

inline double branch_separation_rate(double t, double d, double tau_a, double tau_f) {
  const auto& prof = trajectory::optimal_profile();
  if (t <= 0.0) return 0.0;
  if (t < tau_a) return -d / tau_a * prof.xi_dot(1.0 - t / tau_a);
  if (t <= tau_a + tau_f) return 0.0;
  if (t < 2.0 * tau_a + tau_f) return d / tau_a * prof.xi_dot((t - tau_a - tau_f) / tau_a);
  return 0.0;
}

}  // namespace gie::interferometry
