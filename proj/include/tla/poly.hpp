#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tla/scalar.hpp"

namespace tla {

// Monomial in chart coordinates x1,x2,... and formal partition symbols
// rho1,rho2,... Chart exponents are integers (negative powers model functions
// like 1/x on boxes that avoid 0); partition exponents are non-negative.
// Canonical form: trailing zero exponents trimmed, so contexts of different
// variable counts mix freely (x1 means the same variable everywhere).
struct Monomial {
  std::vector<int32_t> x;    // exponent of x_{mu+1} at position mu
  std::vector<int32_t> rho;  // exponent of rho_{k+1} at position k

  void canonicalize();
  int32_t x_exp(size_t mu) const { return mu < x.size() ? x[mu] : 0; }
  int32_t rho_exp(size_t k) const { return k < rho.size() ? rho[k] : 0; }
  bool is_one() const { return x.empty() && rho.empty(); }
  // Total degree in the chart variables (partition symbols are constants for
  // every differential/integral operator, so they never count).
  int64_t x_degree() const;
  bool has_negative_x() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.x == b.x && a.rho == b.rho;
  }
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.rho < b.rho;
  }
};

// Exact function element on a chart: finite Scalar combination of monomials.
// Closed under +, -, *, d/dx; division is not defined.
class PolyFn {
 public:
  PolyFn() = default;
  PolyFn(long v) { *this = constant(Scalar(v)); }  // NOLINT
  PolyFn(const Scalar& c) { *this = constant(c); }  // NOLINT

  static PolyFn constant(const Scalar& c);
  static PolyFn x(size_t mu, int32_t exp = 1);    // x_{mu+1}^exp
  static PolyFn rho(size_t k, int32_t exp = 1);   // rho_{k+1}^exp

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_term() const;
  bool has_rho() const;
  bool has_negative_exponent() const;
  size_t num_x_vars() const;    // 1 + largest chart variable index used
  size_t num_rho_vars() const;  // 1 + largest partition symbol index used

  const std::map<Monomial, Scalar>& terms() const { return terms_; }
  void add_term(const Monomial& m, const Scalar& c);

  friend PolyFn operator+(const PolyFn& a, const PolyFn& b);
  friend PolyFn operator-(const PolyFn& a, const PolyFn& b);
  friend PolyFn operator-(const PolyFn& a);
  friend PolyFn operator*(const PolyFn& a, const PolyFn& b);
  friend PolyFn operator*(const Scalar& c, const PolyFn& a);
  PolyFn& operator+=(const PolyFn& b) { *this = *this + b; return *this; }
  PolyFn& operator-=(const PolyFn& b) { *this = *this - b; return *this; }
  PolyFn& operator*=(const PolyFn& b) { *this = *this * b; return *this; }
  friend bool operator==(const PolyFn& a, const PolyFn& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const PolyFn& a, const PolyFn& b) { return !(a == b); }
  // Map-key / sorting order only.
  friend bool operator<(const PolyFn& a, const PolyFn& b) {
    return a.terms_ < b.terms_;
  }

  PolyFn pow(uint32_t e) const;
  PolyFn derivative_x(size_t mu) const;

  // Substitute x_{mu+1} := value. The variable must appear with non-negative
  // exponents only (throws otherwise); other variables are untouched.
  PolyFn substitute_x(size_t mu, const PolyFn& value) const;
  // Substitute rho_{k+1} := value.
  PolyFn substitute_rho(size_t k, const PolyFn& value) const;

  // Evaluate at a rational chart point. Requires a rho-free element; negative
  // exponents need a non-zero coordinate value.
  Scalar eval(const std::vector<Scalar>& point) const;

  std::string str() const;

 private:
  std::map<Monomial, Scalar> terms_;  // invariant: no zero coefficients
};

}  // namespace tla
