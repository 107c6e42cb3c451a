#pragma once

#include <cmath>
#include <string>

#include "gie/errors.hpp"

namespace gie::units {

/// Exponent vector over (mass, length, time, charge). Integer exponents are
/// enough for every formula in this library; anything needing fractional
/// powers is evaluated on raw values with an explicit cast at the call site.
struct Dimension {
  int mass = 0;
  int length = 0;
  int time = 0;
  int charge = 0;

  friend constexpr bool operator==(const Dimension&, const Dimension&) = default;
};

constexpr Dimension operator*(Dimension a, Dimension b) {
  return {a.mass + b.mass, a.length + b.length, a.time + b.time, a.charge + b.charge};
}

constexpr Dimension operator/(Dimension a, Dimension b) {
  return {a.mass - b.mass, a.length - b.length, a.time - b.time, a.charge - b.charge};
}

constexpr Dimension pow(Dimension d, int n) {
  return {d.mass * n, d.length * n, d.time * n, d.charge * n};
}

inline constexpr Dimension scalar{};
inline constexpr Dimension mass{1, 0, 0, 0};
inline constexpr Dimension length{0, 1, 0, 0};
inline constexpr Dimension time{0, 0, 1, 0};
inline constexpr Dimension charge{0, 0, 0, 1};
inline constexpr Dimension velocity = length / time;
inline constexpr Dimension energy{1, 2, -2, 0};
inline constexpr Dimension action{1, 2, -1, 0};
inline constexpr Dimension rate{0, 0, -1, 0};
inline constexpr Dimension quadrupole = mass * pow(length, 2);

inline std::string to_string(Dimension d) {
  auto part = [](const char* sym, int e) {
    if (e == 0) return std::string{};
    return std::string(" ") + sym + "^" + std::to_string(e);
  };
  std::string s = part("M", d.mass) + part("L", d.length) + part("T", d.time) + part("Q", d.charge);
  return s.empty() ? std::string("1") : s;
}

/// A value with a dimension vector. Addition requires identical dimensions;
/// multiplication adds exponent vectors.
struct Quantity {
  double value = 0.0;
  Dimension dim{};

  friend Quantity operator*(Quantity a, Quantity b) { return {a.value * b.value, a.dim * b.dim}; }
  friend Quantity operator/(Quantity a, Quantity b) { return {a.value / b.value, a.dim / b.dim}; }
  friend Quantity operator*(double s, Quantity a) { return {s * a.value, a.dim}; }
  friend Quantity operator*(Quantity a, double s) { return {s * a.value, a.dim}; }
  friend Quantity operator/(Quantity a, double s) { return {a.value / s, a.dim}; }

  friend Quantity operator+(Quantity a, Quantity b) {
    if (a.dim != b.dim)
      throw ValidationError("dimension mismatch in addition: " + to_string(a.dim) + " vs " +
                            to_string(b.dim));
    return {a.value + b.value, a.dim};
  }
  friend Quantity operator-(Quantity a, Quantity b) {
    if (a.dim != b.dim)
      throw ValidationError("dimension mismatch in subtraction: " + to_string(a.dim) + " vs " +
                            to_string(b.dim));
    return {a.value - b.value, a.dim};
  }
};

inline Quantity pow(Quantity q, int n) { return {std::pow(q.value, n), pow(q.dim, n)}; }

inline bool dim_check(const Quantity& a, const Quantity& b) { return a.dim == b.dim; }

/// Fundamental constants plus the Planck scales derived from them.
/// E_P = m_P c^2 and l_P = c t_P hold exactly in this representation.
struct Constants {
  double G;
  double hbar;
  double c;
  double k_e;
  double e;

  double m_P;
  double l_P;
  double t_P;
  double E_P;
  double q_P;  // sqrt(hbar c / k_e); unit charge of the k_e = 1 system

  static Constants from_base(double G_, double hbar_, double c_, double k_e_, double e_) {
    Constants k{};
    k.G = G_;
    k.hbar = hbar_;
    k.c = c_;
    k.k_e = k_e_;
    k.e = e_;
    k.m_P = std::sqrt(hbar_ * c_ / G_);
    k.l_P = std::sqrt(hbar_ * G_ / (c_ * c_ * c_));
    k.t_P = k.l_P / c_;
    k.E_P = k.m_P * c_ * c_;
    k.q_P = std::sqrt(hbar_ * c_ / k_e_);
    return k;
  }

  /// CODATA 2018 values, the single source of truth for SI mode.
  static Constants codata2018() {
    return from_base(6.67430e-11, 1.054571817e-34, 299792458.0, 8.9875517923e9,
                     1.602176634e-19);
  }

  /// Natural units G = hbar = c = k_e = 1. The elementary charge keeps its
  /// physical size through the fine-structure constant: e = sqrt(alpha).
  static Constants planck() {
    const Constants si = codata2018();
    return from_base(1.0, 1.0, 1.0, 1.0, std::sqrt(si.fine_structure()));
  }

  double fine_structure() const { return k_e * e * e / (hbar * c); }

  /// The Planck-scale value carrying the given dimension,
  /// m_P^a l_P^b t_P^c q_P^d.
  double planck_unit(Dimension d) const {
    return std::pow(m_P, d.mass) * std::pow(l_P, d.length) * std::pow(t_P, d.time) *
           std::pow(q_P, d.charge);
  }
};

inline Quantity to_planck(const Quantity& q, const Constants& k) {
  if (!std::isfinite(q.value)) throw ValidationError("to_planck: non-finite input");
  return {q.value / k.planck_unit(q.dim), q.dim};
}

inline Quantity from_planck(const Quantity& q, const Constants& k) {
  if (!std::isfinite(q.value)) throw ValidationError("from_planck: non-finite input");
  return {q.value * k.planck_unit(q.dim), q.dim};
}

}  // namespace gie::units
