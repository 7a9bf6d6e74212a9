#pragma once

#include "hnvol/rational.hpp"

#include <utility>
#include <vector>

namespace hnvol {

/// Dense univariate polynomial with exact rational coefficients, lowest
/// degree first. Always trimmed: the zero polynomial has no coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(const Rational& v) { return Poly({v}); }
  /// v * x^k
  static Poly monomial(const Rational& v, std::size_t k) {
    std::vector<Rational> c(k + 1);
    c[k] = v;
    return Poly(std::move(c));
  }
  /// alpha * x + beta
  static Poly linear(const Rational& alpha, const Rational& beta) { return Poly({beta, alpha}); }

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Rational& s) {
    for (auto& v : c_) v *= s;
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
  }
  Poly pow(unsigned k) const {
    Poly out = constant(1);
    for (unsigned i = 0; i < k; ++i) out = out * *this;
    return out;
  }

  /// Antiderivative vanishing at 0.
  Poly antiderivative() const {
    std::vector<Rational> c(c_.size() + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) c[i + 1] = c_[i] / Rational(i + 1);
    return Poly(std::move(c));
  }
  Rational integrate(const Rational& lo, const Rational& hi) const {
    const Poly a = antiderivative();
    return a(hi) - a(lo);
  }

  /// x -> p(alpha * x + beta)
  Poly compose_affine(const Rational& alpha, const Rational& beta) const {
    Poly out;
    const Poly inner = linear(alpha, beta);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) out = out * inner + constant(*it);
    return out;
  }
  /// x -> p(q(x))
  Poly compose(const Poly& q) const {
    Poly out;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) out = out * q + constant(*it);
    return out;
  }

  std::vector<double> to_double() const {
    std::vector<double> out;
    out.reserve(c_.size());
    for (const auto& v : c_) out.push_back(hnvol::to_double(v));
    return out;
  }

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace hnvol
