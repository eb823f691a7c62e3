#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tla/gluing.hpp"
#include "tla/section.hpp"

namespace tla {

// Group-valued transition data: an invertible rep_dim x rep_dim matrix of
// functions per ordered pair on a 1-simplex, with g(j,i) the explicitly
// supplied inverse of g(i,j). Inverses are data, not computed, so everything
// stays inside the function ring.
struct TransitionFamily {
  size_t rep_dim = 0;
  std::map<std::pair<size_t, size_t>, PolyMat> g;

  const PolyMat& at(size_t i, size_t j) const;
};

// Both orientations present with product = identity on every 1-simplex;
// cocycle g(i,k) = g(i,j) g(j,k) on every listed 2-simplex. Throws naming
// the offending pair or triple.
void validate_transitions(const Nerve& nerve, const TransitionFamily& tf);

// Gluing generated by conjugation. The algebra is realized by constant
// commutator-closed matrices, one per generator; alpha(i,j) expresses
// gamma -> g_ij gamma g_ij^{-1} in that basis, chi(i,j) expresses the
// logarithmic derivative g_ij d(g_ij^{-1}). Throws when either leaves the
// span of the realization, and asserts the cocycle relations of the result.
GluingData atiyah_gluing(const LieAlgebra& L,
                         const std::vector<ScalarMat>& basis_matrices,
                         const Nerve& nerve, const TransitionFamily& tf);

// Elementary-matrix realization of the p x p matrix algebra, ordered to
// match matrix_basis_index.
std::vector<ScalarMat> matrix_realization(size_t p);

// The Killing pairing as the inner metric, constant across charts; requires
// nondegeneracy and invariance alpha^T k alpha = k under every transition.
ScalarMat killing_inner_metric(const GluingData& gd);

// tr(E_ab E_cd) = delta_bc delta_ad on the p x p matrix algebra.
ScalarMat trace_inner_metric(size_t p);

// Row vector of the trace functional in the elementary basis.
PolyMat trace_row(size_t p);

// Maximal-inner-degree extraction composed with the trace on the value; the
// scalar results must agree across charts (conjugation dies under trace).
InnerIntegrateResult inner_integrate_trace(const GluingData& gd,
                                           const LocalFamily& fam,
                                           const MetricTriple& t, size_t p);

// X + gamma -> X + tr(gamma): morphism onto the rank-one abelian model.
TlaSection det_projection(size_t p, const TlaSection& s);

struct SlSplit {
  PolyFn trace_part;   // tr(gamma)
  TlaSection sl_part;  // X + (gamma - tr(gamma)/p * identity), traceless
};
SlSplit sl_splitting(size_t p, const TlaSection& s);

}  // namespace tla
