#pragma once

#include <cmath>
#include <ostream>

#include "smtkit/algebra/numeric.hpp"

namespace smtkit {

/// Minimal complex type usable with both built-in floating types and
/// mpfr_float (std::complex is unspecified for non-fundamental scalars).
template <typename Scalar>
struct Complex {
  Scalar re{0};
  Scalar im{0};

  Complex() = default;
  Complex(Scalar r) : re(std::move(r)), im(0) {}  // NOLINT(implicit)
  Complex(Scalar r, Scalar i) : re(std::move(r)), im(std::move(i)) {}

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    Scalar r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    Scalar den = o.re * o.re + o.im * o.im;
    Scalar r = (re * o.re + im * o.im) / den;
    im = (im * o.re - re * o.im) / den;
    re = std::move(r);
    return *this;
  }
  Complex operator-() const { return {-re, -im}; }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }

  friend std::ostream& operator<<(std::ostream& os, const Complex& z) {
    return os << '(' << z.re << (z.im < 0 ? "" : "+") << z.im << "i)";
  }
};

template <typename Scalar>
Scalar norm_sq(const Complex<Scalar>& z) {
  return z.re * z.re + z.im * z.im;
}

template <typename Scalar>
Scalar abs(const Complex<Scalar>& z) {
  using std::sqrt;
  return sqrt(norm_sq(z));
}

/// log|z|, computed without forming |z| first.
template <typename Scalar>
Scalar log_abs(const Complex<Scalar>& z) {
  using std::log;
  return log(norm_sq(z)) / 2;
}

template <typename Scalar>
Scalar arg(const Complex<Scalar>& z) {
  using std::atan2;
  return atan2(z.im, z.re);
}

template <typename Scalar>
Complex<Scalar> exp(const Complex<Scalar>& z) {
  using std::cos;
  using std::exp;
  using std::sin;
  Scalar m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

template <typename Scalar>
Complex<Scalar> polar(const Scalar& radius, const Scalar& angle) {
  using std::cos;
  using std::sin;
  return {radius * cos(angle), radius * sin(angle)};
}

template <typename Scalar>
Scalar pi_constant() {
  using std::atan;
  return atan(Scalar(1)) * 4;
}

template <typename To, typename From>
Complex<To> complex_cast(const Complex<From>& z) {
  return {static_cast<To>(z.re), static_cast<To>(z.im)};
}

using ComplexValue = Complex<Real>;

}  // namespace smtkit
