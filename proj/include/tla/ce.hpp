#pragma once

#include <vector>

#include "tla/form.hpp"
#include "tla/lie_algebra.hpp"
#include "tla/linalg.hpp"

namespace tla {

// Constant-coefficient generator-coframe complex of a Lie algebra, with
// values either trivial (scalars) or in the algebra itself (adjoint action);
// ValueKind selects the representation. Elements of degree q are enumerated
// as (ascending leg set J, value basis index a).
struct CeBasisElement {
  uint32_t mask;
  size_t value;  // 0 for scalar values
};

std::vector<CeBasisElement> ce_basis(const LieAlgebra& L, size_t q,
                                     ValueKind rep);

// Degree-q basis element as a chartless form (m = 0).
TlaForm ce_basis_form(const LieAlgebra& L, const CeBasisElement& e,
                      ValueKind rep);

// Coordinates of a constant pure-generator form in the degree-q basis; throws
// if the form has dx legs, non-constant coefficients, or mixed degrees.
std::vector<Scalar> ce_coords(const LieAlgebra& L, const TlaForm& f, size_t q);

// Matrix of the inner differential C^q -> C^{q+1} in these bases.
ScalarMat ce_matrix(const LieAlgebra& L, size_t q, ValueKind rep);

struct CohomologyLevel {
  size_t q = 0;
  size_t dim_cocycles = 0;
  size_t dim_coboundaries = 0;  // dimension of the image from degree q-1
  size_t dim = 0;               // cocycles modulo coboundaries
  // Chosen representatives, as coordinate vectors in the degree-q basis:
  // kernel columns surviving pivot selection in echelon form of
  // [coboundaries | cocycles].
  std::vector<std::vector<Scalar>> representatives;
};

class CeCohomology {
 public:
  CeCohomology(const LieAlgebra& L, ValueKind rep);

  const LieAlgebra& algebra() const { return L_; }
  ValueKind rep() const { return rep_; }
  const std::vector<CohomologyLevel>& levels() const { return levels_; }
  const CohomologyLevel& level(size_t q) const { return levels_.at(q); }
  std::vector<size_t> dims() const;

  TlaForm representative_form(size_t q, size_t i) const;

  // Class coordinates of a cocycle with respect to the chosen
  // representatives: solves [coboundary basis | representatives] c = v and
  // returns the representative block of c. Throws if v is not a cocycle.
  std::vector<Scalar> project(size_t q, const std::vector<Scalar>& v) const;

 private:
  LieAlgebra L_;  // owned copy; callers may pass temporaries
  ValueKind rep_;
  std::vector<CohomologyLevel> levels_;
  // Per degree: solver matrix [coboundary basis | representatives] and the
  // differential (for the cocycle precondition).
  std::vector<ScalarMat> solver_;
  std::vector<ScalarMat> diff_;
};

}  // namespace tla
