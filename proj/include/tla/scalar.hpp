#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

namespace tla {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Gaussian rational: re + im*i with exact rational parts. Field operations
// only; there is no ordering beyond what the real-part accessors expose.
struct Scalar {
  Rat re{0};
  Rat im{0};

  Scalar() = default;
  Scalar(long v) : re(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rat r) : re(std::move(r)) {}
  Scalar(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static Scalar i() { return Scalar(Rat(0), Rat(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  Scalar conj() const { return Scalar(re, -im); }
  // |z|^2 as a rational; zero iff z = 0.
  Rat norm2() const { return re * re + im * im; }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    return Scalar(a.re + b.re, a.im + b.im);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    return Scalar(a.re - b.re, a.im - b.im);
  }
  friend Scalar operator-(const Scalar& a) { return Scalar(-a.re, -a.im); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    return Scalar(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { *this = *this + b; return *this; }
  Scalar& operator-=(const Scalar& b) { *this = *this - b; return *this; }
  Scalar& operator*=(const Scalar& b) { *this = *this * b; return *this; }
  Scalar& operator/=(const Scalar& b) { *this = *this / b; return *this; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  // Total order used only for canonical printing / map keys.
  friend bool operator<(const Scalar& a, const Scalar& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  }

  Scalar inverse() const;

  // Canonical form "p/q+r/s*i" with integer shortcuts ("3", "-1/2*i", ...).
  std::string str() const;
};

// Exact square root of a non-negative rational; nullopt when numerator or
// denominator is not a perfect square.
std::optional<Rat> rational_sqrt(const Rat& q);

std::string rat_str(const Rat& q);

}  // namespace tla
