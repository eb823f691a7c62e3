#pragma once

#include <string>
#include <vector>

#include "tla/linalg.hpp"
#include "tla/scalar.hpp"

namespace tla {

// Finite-dimensional complex Lie algebra given by structure constants in a
// fixed basis E_1..E_n: [E_a, E_b] = sum_c C(a,b,c) E_c. Antisymmetry and the
// Jacobi identity are validated at construction.
class LieAlgebra {
 public:
  LieAlgebra(std::string name, size_t n,
             std::vector<std::vector<std::vector<Scalar>>> c);

  const std::string& name() const { return name_; }
  size_t dim() const { return n_; }
  const Scalar& c(size_t a, size_t b, size_t cc) const { return c_[a][b][cc]; }

  // Coordinates of [u, v]; Coeff is Scalar or PolyFn.
  template <typename Coeff>
  std::vector<Coeff> bracket(const std::vector<Coeff>& u,
                             const std::vector<Coeff>& v) const {
    std::vector<Coeff> w(n_, Coeff(0));
    for (size_t a = 0; a < n_; ++a)
      for (size_t b = 0; b < n_; ++b) {
        for (size_t k = 0; k < n_; ++k) {
          const Scalar& cabk = c_[a][b][k];
          if (cabk.is_zero()) continue;
          w[k] = w[k] + Coeff(cabk) * (u[a] * v[b]);
        }
      }
    return w;
  }

  // ad_{E_a} as a matrix: (ad_a)_{c,b} = C(a,b,c).
  ScalarMat ad(size_t a) const;
  // Matrix (C_a)_{b,c} = C(a,b,c) row b, col c equals ad_a transposed; the
  // trace is what unimodularity measures.
  Scalar trace_ad(size_t a) const;
  bool is_unimodular() const;
  bool is_abelian() const;
  // Killing pairing k(E_a, E_b) = tr(ad_a ad_b).
  ScalarMat killing_form() const;

 private:
  std::string name_;
  size_t n_;
  std::vector<std::vector<std::vector<Scalar>>> c_;  // c_[a][b][k]
};

// Named fixtures used across tests and scenarios.
LieAlgebra abelian_algebra(size_t n);
LieAlgebra sl2_algebra();      // basis H, E, F
LieAlgebra heis3_algebra();    // [e1,e2] = e3
LieAlgebra aff1_algebra();     // [e1,e2] = e1 (not unimodular)
// Full p x p matrix algebra under the commutator; basis E_{ab} (unit at row a,
// col b) with flat index (a-1)*p + (b-1).
LieAlgebra matrix_algebra(size_t p);

size_t matrix_basis_index(size_t p, size_t row, size_t col);

// [G u, G v] = G [u, v] for all basis pairs, as polynomial identities.
bool check_automorphism(const LieAlgebra& L, const PolyMat& G);

}  // namespace tla
