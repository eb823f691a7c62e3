#include "tla/lie_algebra.hpp"

#include <stdexcept>

namespace tla {

LieAlgebra::LieAlgebra(std::string name, size_t n,
                       std::vector<std::vector<std::vector<Scalar>>> c)
    : name_(std::move(name)), n_(n), c_(std::move(c)) {
  if (c_.size() != n_)
    throw std::domain_error("LieAlgebra: structure tensor shape");
  for (const auto& plane : c_) {
    if (plane.size() != n_)
      throw std::domain_error("LieAlgebra: structure tensor shape");
    for (const auto& row : plane)
      if (row.size() != n_)
        throw std::domain_error("LieAlgebra: structure tensor shape");
  }
  for (size_t a = 0; a < n_; ++a)
    for (size_t b = 0; b < n_; ++b)
      for (size_t k = 0; k < n_; ++k)
        if (c_[a][b][k] != -c_[b][a][k])
          throw std::domain_error("LieAlgebra: bracket not antisymmetric");
  // Jacobi: [[a,b],c] + [[b,c],a] + [[c,a],b] = 0 on basis triples.
  for (size_t a = 0; a < n_; ++a)
    for (size_t b = 0; b < n_; ++b)
      for (size_t d = 0; d < n_; ++d)
        for (size_t k = 0; k < n_; ++k) {
          Scalar sum(0);
          for (size_t e = 0; e < n_; ++e)
            sum += c_[a][b][e] * c_[e][d][k] + c_[b][d][e] * c_[e][a][k] +
                   c_[d][a][e] * c_[e][b][k];
          if (!sum.is_zero())
            throw std::domain_error("LieAlgebra: Jacobi identity fails");
        }
}

ScalarMat LieAlgebra::ad(size_t a) const {
  ScalarMat m(n_, n_);
  for (size_t b = 0; b < n_; ++b)
    for (size_t k = 0; k < n_; ++k) m.at(k, b) = c_[a][b][k];
  return m;
}

Scalar LieAlgebra::trace_ad(size_t a) const {
  Scalar t(0);
  for (size_t b = 0; b < n_; ++b) t += c_[a][b][b];
  return t;
}

bool LieAlgebra::is_unimodular() const {
  for (size_t a = 0; a < n_; ++a)
    if (!trace_ad(a).is_zero()) return false;
  return true;
}

bool LieAlgebra::is_abelian() const {
  for (size_t a = 0; a < n_; ++a)
    for (size_t b = 0; b < n_; ++b)
      for (size_t k = 0; k < n_; ++k)
        if (!c_[a][b][k].is_zero()) return false;
  return true;
}

ScalarMat LieAlgebra::killing_form() const {
  ScalarMat k(n_, n_);
  for (size_t a = 0; a < n_; ++a) {
    ScalarMat ada = ad(a);
    for (size_t b = 0; b < n_; ++b) {
      ScalarMat adb = ad(b);
      Scalar t(0);
      for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j) t += ada.at(i, j) * adb.at(j, i);
      k.at(a, b) = t;
    }
  }
  return k;
}

namespace {

std::vector<std::vector<std::vector<Scalar>>> zero_tensor(size_t n) {
  return std::vector<std::vector<std::vector<Scalar>>>(
      n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n)));
}

// Sets [E_a, E_b] += coeff E_c together with the antisymmetric mirror
// (0-based indices).
void set_bracket(std::vector<std::vector<std::vector<Scalar>>>& t, size_t a,
                 size_t b, size_t c, const Scalar& coeff) {
  t[a][b][c] += coeff;
  t[b][a][c] -= coeff;
}

}  // namespace

LieAlgebra abelian_algebra(size_t n) {
  return LieAlgebra("abelian" + std::to_string(n), n, zero_tensor(n));
}

LieAlgebra sl2_algebra() {
  auto t = zero_tensor(3);
  set_bracket(t, 0, 1, 1, Scalar(2));   // [H,E] = 2E
  set_bracket(t, 0, 2, 2, Scalar(-2));  // [H,F] = -2F
  set_bracket(t, 1, 2, 0, Scalar(1));   // [E,F] = H
  return LieAlgebra("sl2", 3, std::move(t));
}

LieAlgebra heis3_algebra() {
  auto t = zero_tensor(3);
  set_bracket(t, 0, 1, 2, Scalar(1));  // [e1,e2] = e3
  return LieAlgebra("heis3", 3, std::move(t));
}

LieAlgebra aff1_algebra() {
  auto t = zero_tensor(2);
  set_bracket(t, 0, 1, 0, Scalar(1));  // [e1,e2] = e1
  return LieAlgebra("aff1", 2, std::move(t));
}

size_t matrix_basis_index(size_t p, size_t row, size_t col) {
  return row * p + col;
}

LieAlgebra matrix_algebra(size_t p) {
  size_t n = p * p;
  auto t = zero_tensor(n);
  // [E_{ab}, E_{cd}] = delta_{bc} E_{ad} - delta_{da} E_{cb}
  for (size_t a = 0; a < p; ++a)
    for (size_t b = 0; b < p; ++b)
      for (size_t c = 0; c < p; ++c)
        for (size_t d = 0; d < p; ++d) {
          size_t lhs = matrix_basis_index(p, a, b);
          size_t rhs = matrix_basis_index(p, c, d);
          if (b == c) t[lhs][rhs][matrix_basis_index(p, a, d)] += Scalar(1);
          if (d == a) t[lhs][rhs][matrix_basis_index(p, c, b)] -= Scalar(1);
        }
  return LieAlgebra("gl" + std::to_string(p), n, std::move(t));
}

bool check_automorphism(const LieAlgebra& L, const PolyMat& G) {
  size_t n = L.dim();
  if (G.rows() != n || G.cols() != n) return false;
  for (size_t a = 0; a < n; ++a)
    for (size_t b = a + 1; b < n; ++b) {
      std::vector<PolyFn> u(n, PolyFn(0L)), v(n, PolyFn(0L));
      for (size_t i = 0; i < n; ++i) {
        u[i] = G.at(i, a);
        v[i] = G.at(i, b);
      }
      std::vector<PolyFn> lhs = L.bracket(u, v);
      // G [E_a, E_b]
      std::vector<PolyFn> rhs(n, PolyFn(0L));
      for (size_t k = 0; k < n; ++k) {
        const Scalar& cabk = L.c(a, b, k);
        if (cabk.is_zero()) continue;
        for (size_t i = 0; i < n; ++i)
          rhs[i] += Scalar(cabk) * G.at(i, k);
      }
      for (size_t i = 0; i < n; ++i)
        if (lhs[i] != rhs[i]) return false;
    }
  return true;
}

}  // namespace tla
