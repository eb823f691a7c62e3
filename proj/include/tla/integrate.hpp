#pragma once

#include <utility>
#include <vector>

#include "tla/form.hpp"
#include "tla/metric.hpp"

namespace tla {

// Rational integration box, one closed interval per chart coordinate.
struct Box {
  std::vector<std::pair<Rat, Rat>> iv;
  size_t dim() const { return iv.size(); }
};

// Exact integral of a polynomial over the box. Rejects partition symbols,
// negative exponents, and variables beyond the box dimension.
Scalar integrate_poly_box(const PolyFn& w, const Box& box);

// Integral over the algebroid of a scalar-valued form: inner integration
// followed by exact base integration of the coordinate top part. Zero unless
// a bidegree-(m, n) component exists.
Scalar integrate(const TlaForm& f, const ScalarMat& h, const Box& box);

// De Rham contraction K with d K + K d = id - (evaluation at center) on the
// coordinate factor; generator legs are inert. On a centered monomial,
//   K(x^alpha dx^{mu_1..mu_r}) =
//     sum_k (-1)^{k-1} 1/(|alpha|+r) x^{mu_k} x^alpha dx^{..no mu_k..}.
// A nonzero center shifts coordinates before and after. Rejects negative
// exponents.
TlaForm poincare_homotopy(const TlaForm& f, const std::vector<Rat>& center);

// Scalar product (f1, f2) = integral of <f1, star f2>, pairing algebra
// values through h (scalar values by plain product).
Scalar star_inner_product(const TlaForm& f1, const TlaForm& f2,
                          const ScalarMat& g, const ScalarMat& h,
                          const PolyMat& A, const Box& box);

// The same number by direct component contraction in the mixed basis:
//   (-1)^n Int_box sqrt|g| sum over components
//     det(ginv[I',I]) det(hinv[J',J]) h_ab f1^a_{IJ} f2^b_{I'J'}.
Scalar star_inner_product_components(const TlaForm& f1, const TlaForm& f2,
                                     const ScalarMat& g, const ScalarMat& h,
                                     const PolyMat& A, const Box& box);

}  // namespace tla
