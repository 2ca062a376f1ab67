#pragma once

#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rfsym/rational.hpp"

namespace rfsym {

/// Dense univariate polynomial with exact rational coefficients.
/// Coefficient i multiplies y^i; the representation is kept trimmed so that
/// the leading coefficient is nonzero (the zero polynomial has no
/// coefficients).
class UniPoly {
public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  UniPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

  static UniPoly constant(const Rational& a) { return UniPoly({a}); }
  static UniPoly monomial(const Rational& a, int deg) {
    std::vector<Rational> c(static_cast<size_t>(deg) + 1, Rational(0));
    c.back() = a;
    return UniPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  /// Degree of the zero polynomial is -1 by convention.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rational(0);
  }

  Rational eval(const Rational& y) const {
    Rational r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * y + *it;
    return r;
  }

  std::vector<double> double_coeffs() const {
    std::vector<double> d(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) d[i] = c_[i].to_double();
    return d;
  }

  UniPoly operator-() const {
    std::vector<Rational> c(c_);
    for (auto& x : c) x = -x;
    return UniPoly(std::move(c));
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return UniPoly(std::move(c));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(c));
  }

  friend UniPoly operator*(const Rational& s, const UniPoly& p) {
    std::vector<Rational> c(p.c_);
    for (auto& x : c) x *= s;
    return UniPoly(std::move(c));
  }

  UniPoly pow(int e) const {
    if (e < 0) throw std::domain_error("UniPoly: negative power");
    UniPoly r = constant(Rational(1));
    UniPoly b = *this;
    while (e > 0) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<Rational> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = Rational(long(i)) * c_[i];
    return UniPoly(std::move(c));
  }

  /// Antiderivative with zero constant term.
  UniPoly antiderivative() const {
    if (is_zero()) return UniPoly();
    std::vector<Rational> c(c_.size() + 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) c[i + 1] = c_[i] / Rational(long(i + 1));
    return UniPoly(std::move(c));
  }

  /// Substitute y -> s*y.
  UniPoly scale_arg(const Rational& s) const {
    std::vector<Rational> c(c_);
    Rational p(1);
    for (size_t i = 0; i < c.size(); ++i) {
      c[i] *= p;
      p *= s;
    }
    return UniPoly(std::move(c));
  }

  /// True when only even powers carry nonzero coefficients.
  bool is_even() const {
    for (size_t i = 1; i < c_.size(); i += 2)
      if (!c_[i].is_zero()) return false;
    return true;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<Rational> c_;
};

/// Exact definite integral of p over [lo, hi].
inline Rational poly_integrate(const UniPoly& p, const Rational& lo, const Rational& hi) {
  UniPoly q = p.antiderivative();
  return q.eval(hi) - q.eval(lo);
}

/// Expanded product of powers of factor polynomials.
inline UniPoly poly_from_factors(const std::vector<std::pair<UniPoly, int>>& factors) {
  UniPoly r = UniPoly::constant(Rational(1));
  for (const auto& [f, e] : factors) r = r * f.pow(e);
  return r;
}

}  // namespace rfsym
