#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include <fftw3.h>

#include "gie/errors.hpp"
#include "gie/interferometry.hpp"

namespace gie::oracles {

using std::numbers::pi;
using complex = std::complex<double>;

/// Uniform spatial grid for the 1-D solver.
struct Grid {
  double x_min;
  double x_max;
  int n;  // power of two keeps the FFT fast

  double dx() const { return (x_max - x_min) / n; }
  double x(int i) const { return x_min + i * dx(); }

  /// FFT wavenumber of bin i with the usual wrap-around layout.
  double k(int i) const {
    const double dk = 2.0 * pi / (x_max - x_min);
    return (i <= n / 2 ? i : i - n) * dk;
  }
};

/// Second-order Strang split-operator integrator for
/// i hbar psi_t = -(hbar^2/2m) psi_xx - branch * F(t) x psi.
/// Independent of the closed-form branch solution it is used to check.
class SplitOperatorSolver {
public:
  SplitOperatorSolver(Grid grid, double m, double hbar)
      : grid_(grid), m_(m), hbar_(hbar), buf_(grid.n) {
    plan_fwd_ = fftw_plan_dft_1d(grid_.n, reinterpret_cast<fftw_complex*>(buf_.data()),
                                 reinterpret_cast<fftw_complex*>(buf_.data()), FFTW_FORWARD,
                                 FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_1d(grid_.n, reinterpret_cast<fftw_complex*>(buf_.data()),
                                 reinterpret_cast<fftw_complex*>(buf_.data()), FFTW_BACKWARD,
                                 FFTW_ESTIMATE);
  }
  ~SplitOperatorSolver() {
    fftw_destroy_plan(plan_fwd_);
    fftw_destroy_plan(plan_bwd_);
  }
  SplitOperatorSolver(const SplitOperatorSolver&) = delete;
  SplitOperatorSolver& operator=(const SplitOperatorSolver&) = delete;

  /// Evolves psi in place from t0 over n_steps of dt with the potential
  /// V(t, x) = -branch * F(t) * x, F sampled at the step midpoint.
  void evolve(std::vector<complex>& psi, const std::function<double(double)>& force, int branch,
              double t0, double dt, int n_steps) {
    if (static_cast<int>(psi.size()) != grid_.n)
      throw ValidationError("SplitOperatorSolver: psi size mismatch");
    std::vector<complex> kin_phase(grid_.n);
    for (int i = 0; i < grid_.n; ++i) {
      const double k = grid_.k(i);
      kin_phase[i] = std::exp(complex(0.0, -hbar_ * k * k * dt / (2.0 * m_)));
    }
    for (int s = 0; s < n_steps; ++s) {
      const double t_mid = t0 + (s + 0.5) * dt;
      const double f = force(t_mid);
      for (int i = 0; i < grid_.n; ++i) {
        const double V = -branch * f * grid_.x(i);
        psi[i] *= std::exp(complex(0.0, -V * dt / (2.0 * hbar_)));
      }
      buf_ = psi;
      fftw_execute(plan_fwd_);
      for (int i = 0; i < grid_.n; ++i) buf_[i] *= kin_phase[i];
      fftw_execute(plan_bwd_);
      const double inv_n = 1.0 / grid_.n;
      for (int i = 0; i < grid_.n; ++i) psi[i] = buf_[i] * inv_n;
      for (int i = 0; i < grid_.n; ++i) {
        const double V = -branch * f * grid_.x(i);
        psi[i] *= std::exp(complex(0.0, -V * dt / (2.0 * hbar_)));
      }
    }
  }

  const Grid& grid() const { return grid_; }

private:
  Grid grid_;
  double m_, hbar_;
  std::vector<complex> buf_;
  fftw_plan plan_fwd_;
  fftw_plan plan_bwd_;
};

/// L2 distance between grid functions, sqrt(sum |a-b|^2 dx).
inline double l2_distance(const std::vector<complex>& a, const std::vector<complex>& b,
                          double dx) {
  if (a.size() != b.size()) throw ValidationError("l2_distance: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::norm(a[i] - b[i]);
  return std::sqrt(acc * dx);
}

inline double l2_norm(const std::vector<complex>& a, double dx) {
  double acc = 0.0;
  for (const auto& v : a) acc += std::norm(v);
  return std::sqrt(acc * dx);
}

/// Runs one branch of the toy interferometer through the grid solver and
/// compares with the closed-form wavepacket at the final time.
struct PdeComparison {
  double l2_error;
  double norm_drift;  // |1 - ||psi_num|||
};

inline PdeComparison compare_branch_with_solver(const interferometry::ForceProfile& profile,
                                                int branch, double sigma, double hbar,
                                                double t_final, const Grid& grid, double dt) {
  SplitOperatorSolver solver(grid, profile.m, hbar);
  std::vector<complex> psi(grid.n);
  for (int i = 0; i < grid.n; ++i)
    psi[i] = interferometry::free_gaussian(0.0, grid.x(i), profile.m, sigma, hbar);

  const int n_steps = static_cast<int>(std::round(t_final / dt));
  auto force_of_t = [&](double t) { return t <= profile.tau_a ? profile.F(t) : 0.0; };
  solver.evolve(psi, force_of_t, branch, 0.0, t_final / n_steps, n_steps);

  // Classical path quantities at t_final for the analytic form.
  const auto path = interferometry::classical_path(profile, 4001);
  double u, udot;
  if (t_final >= profile.tau_a) {
    u = path.u.back() + path.udot.back() * (t_final - profile.tau_a);
    udot = path.udot.back();
  } else {
    const int idx = static_cast<int>(t_final / profile.tau_a * (path.u.size() - 1));
    u = path.u[idx];
    udot = path.udot[idx];
  }
  // alpha0 = -(m / 2 hbar) * integral of udot^2.
  double alpha0 = 0.0;
  {
    const double h = profile.tau_a / (path.u.size() - 1);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < path.u.size(); ++i)
      acc += 0.5 * h * (path.udot[i] * path.udot[i] + path.udot[i + 1] * path.udot[i + 1]);
    if (t_final > profile.tau_a)
      acc += path.udot.back() * path.udot.back() * (t_final - profile.tau_a);
    alpha0 = -profile.m / (2.0 * hbar) * acc;
  }

  std::vector<complex> psi_exact(grid.n);
  const interferometry::PathPoint pp{u, udot, alpha0};
  for (int i = 0; i < grid.n; ++i)
    psi_exact[i] =
        interferometry::wavepacket(t_final, grid.x(i), branch, pp, profile.m, sigma, hbar);

  PdeComparison out;
  out.l2_error = l2_distance(psi, psi_exact, grid.dx());
  out.norm_drift = std::abs(1.0 - l2_norm(psi, grid.dx()));
  return out;
}

/// Numeric second-order Dyson amplitude for a single intermediate channel:
/// outer time integral by composite Simpson, inner integral in elementary
/// closed form (it is just sin against a complex exponential).
inline complex dyson_second_order_amplitude(double w1, double w2, double w_ag, double w_gb,
                                            double q2_len2, double q1_len2, double mu, double M,
                                            double V, double t, int n_steps,
                                            const units::Constants& k) {
  const complex I{0.0, 1.0};
  auto inner = [&](double tp) {
    const double ap = w_gb + w1;
    const double am = w_gb - w1;
    const complex ea = (std::exp(I * ap * tp) - 1.0) / ap;
    const complex eb = (std::exp(I * am * tp) - 1.0) / am;
    return -0.5 * (ea - eb);
  };
  auto integrand = [&](double tp) { return std::sin(w2 * tp) * std::exp(I * w_ag * tp) * inner(tp); };
  if (n_steps % 2) ++n_steps;
  const double h = t / n_steps;
  complex acc = integrand(0.0) + integrand(t);
  for (int i = 1; i < n_steps; ++i) acc += integrand(i * h) * (i % 2 ? 4.0 : 2.0);
  acc *= h / 3.0;
  const double pref = 4.0 * mu * mu * pi * k.G / (k.hbar * V * M * M * k.c * k.c) *
                      std::sqrt(std::pow(w1, 3) * std::pow(w2, 3));
  return -pref * q2_len2 * q1_len2 * acc;
}

/// Golden-rule normalization of the numeric amplitude on the resonance
/// surface: (pi/2) |a2(t)|^2 / t^2 tends to the constant closed-form rate.
inline double dyson_rate_estimate(complex a2, double t) { return 0.5 * pi * std::norm(a2) / (t * t); }

}  // namespace gie::oracles
