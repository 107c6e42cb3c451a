#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "gie/errors.hpp"

namespace gie::quad {

struct Result {
  double value;
  double error_estimate;
};

/// Adaptive Gauss-Kronrod on [a, b]. Throws NumericError (carrying the
/// achieved estimate in the message) if the requested tolerance is missed.
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-10, double abs_tol = 1e-14,
                 unsigned max_depth = 15) {
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      std::forward<F>(f), a, b, max_depth, rel_tol, &err);
  const double bound = std::max(abs_tol, rel_tol * std::abs(v));
  if (!(err <= std::max(bound * 10.0, 1e-12)))
    throw NumericError("quadrature did not converge: estimate " + std::to_string(v) +
                       ", error " + std::to_string(err));
  return v;
}

/// Fixed-order Gauss-Legendre, for smooth integrands with known scale.
template <unsigned N, class F>
double gauss(F&& f, double a, double b) {
  return boost::math::quadrature::gauss<double, N>::integrate(std::forward<F>(f), a, b);
}

/// Gauss-Legendre nodes and weights mapped to [a, b] (N even), for callers
/// that accumulate complex or vector-valued integrands in a single pass.
template <unsigned N>
std::array<std::pair<double, double>, N> gauss_rule(double a, double b) {
  static_assert(N % 2 == 0);
  const auto& xs = boost::math::quadrature::gauss<double, N>::abscissa();
  const auto& ws = boost::math::quadrature::gauss<double, N>::weights();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  std::array<std::pair<double, double>, N> rule;
  for (unsigned i = 0; i < N / 2; ++i) {
    rule[2 * i] = {mid - half * xs[i], ws[i] * half};
    rule[2 * i + 1] = {mid + half * xs[i], ws[i] * half};
  }
  return rule;
}

/// Composite Simpson with n subintervals (n forced even).
template <class F>
double simpson(F&& f, double a, double b, int n) {
  if (n < 2) n = 2;
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Root of f on a bracketing interval [a, b], toms748 refined to ~1e-15.
template <class F>
double find_root(F&& f, double a, double b) {
  boost::uintmax_t it = 200;
  auto r = boost::math::tools::toms748_solve(
      std::forward<F>(f), a, b,
      boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 3), it);
  return 0.5 * (r.first + r.second);
}

/// Minimum of f on [a, b] by Brent's method; returns (x_min, f_min).
template <class F>
std::pair<double, double> find_minimum(F&& f, double a, double b) {
  boost::uintmax_t it = 500;
  return boost::math::tools::brent_find_minima(std::forward<F>(f), a, b,
                                               std::numeric_limits<double>::digits - 3, it);
}

/// Fornberg finite-difference weights for the m-th derivative at x0 given
/// arbitrary nodes. Exact for polynomials of degree <= nodes.size()-1.
inline std::vector<double> fd_weights(double x0, const std::vector<double>& x, int m) {
  const int n = static_cast<int>(x.size()) - 1;
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 0; --k)
        c[j][k] = (c4 * c[j][k] - (k > 0 ? k * c[j][k - 1] : 0.0)) / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n + 1);
  for (int i = 0; i <= n; ++i) w[i] = c[i][m];
  return w;
}

/// m-th derivative of f at x using an 8-node stencil of spacing h clamped to
/// [lo, hi]; exact for polynomials through degree 7.
template <class F>
double fd_derivative(F&& f, double x, int m, double h, double lo, double hi) {
  constexpr int kNodes = 8;
  double start = x - 3.5 * h;
  if (start < lo) start = lo;
  if (start + (kNodes - 1) * h > hi) start = hi - (kNodes - 1) * h;
  std::vector<double> nodes(kNodes);
  for (int i = 0; i < kNodes; ++i) nodes[i] = start + i * h;
  const std::vector<double> w = fd_weights(x, nodes, m);
  double acc = 0.0;
  for (int i = 0; i < kNodes; ++i) acc += w[i] * f(nodes[i]);
  return acc;
}

/// Deterministic splitmix64 stream; used instead of std:: distributions so
/// that seeded runs are bit-identical across standard libraries.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
  std::uint64_t state_;
};

}  // namespace gie::quad
