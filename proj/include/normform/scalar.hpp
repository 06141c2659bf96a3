#pragma once

#include <ostream>
#include <string>

#include "normform/rational.hpp"

namespace normform {

/// Gaussian rational re + i·im; the coefficient field of every series.
struct Gaussian {
  Rational re;
  Rational im;

  Gaussian() = default;
  Gaussian(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Gaussian(std::int64_t r) : re(r) {}         // NOLINT(google-explicit-constructor)
  Gaussian(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static Gaussian i() { return {Rational(0), Rational(1)}; }

  [[nodiscard]] bool is_zero() const { return re.is_zero() && im.is_zero(); }
  [[nodiscard]] bool is_real() const { return im.is_zero(); }
  [[nodiscard]] Gaussian conj() const { return {re, -im}; }
  /// |z|^2, always a nonnegative rational.
  [[nodiscard]] Rational norm2() const { return re * re + im * im; }

  Gaussian& operator+=(const Gaussian& o) {
    re += o.re;
    if (!o.im.is_zero()) im += o.im;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o) {
    re -= o.re;
    if (!o.im.is_zero()) im -= o.im;
    return *this;
  }
  Gaussian& operator*=(const Gaussian& o);
  Gaussian& operator/=(const Gaussian& o);
  Gaussian& operator*=(const Rational& r) {
    re *= r;
    if (!im.is_zero()) im *= r;
    return *this;
  }

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend Gaussian operator*(Gaussian a, const Rational& b) { return a *= b; }
  Gaussian operator-() const { return {-re, -im}; }

  friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }

  [[nodiscard]] std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const Gaussian& g) { return os << g.str(); }
};

inline Gaussian conj(const Gaussian& g) { return g.conj(); }

}  // namespace normform
