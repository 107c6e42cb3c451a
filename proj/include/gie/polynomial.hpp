#pragma once

#include <initializer_list>
#include <vector>

namespace gie {

/// Dense polynomial with real coefficients, c[0] + c[1] x + c[2] x^2 + ...
class Poly {
public:
  Poly() = default;
  explicit Poly(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<double> coeffs) : c_(coeffs) { trim(); }

  double operator()(double x) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly{};
    std::vector<double> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
    return Poly(std::move(d));
  }

  /// Exact integral over [0, 1]: sum c_k / (k + 1).
  double integral01() const {
    double acc = 0.0;
    for (std::size_t k = c_.size(); k-- > 0;) acc += c_[k] / static_cast<double>(k + 1);
    return acc;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.c_.empty() || b.c_.empty()) return Poly{};
    std::vector<double> p(a.c_.size() + b.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) p[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(p));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<double> p(std::max(a.c_.size(), b.c_.size()), 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) p[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) p[i] += b.c_[i];
    return Poly(std::move(p));
  }

  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<double> p(std::max(a.c_.size(), b.c_.size()), 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) p[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) p[i] -= b.c_[i];
    return Poly(std::move(p));
  }

  friend Poly operator*(double s, const Poly& a) {
    std::vector<double> p = a.c_;
    for (double& v : p) v *= s;
    return Poly(std::move(p));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<double>& coeffs() const { return c_; }

private:
  void trim() {
    while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
  }
  std::vector<double> c_;
};

}  // namespace gie
