#pragma once

#include <map>
#include <vector>

#include "tla/ce.hpp"
#include "tla/gluing.hpp"

namespace tla {

// Formal partition-of-unity reduction on a simplex: rho_k restricts to zero
// on the intersection unless sigma together with k is a listed simplex, and
// the surviving symbols obey sum = 1, eliminated through the largest
// surviving index. Components of cochains are stored in this reduced ring.
PolyFn reduce_rho(const GluingData& gd, const std::vector<size_t>& sigma,
                  const PolyFn& f);
TlaForm reduce_rho_form(const GluingData& gd,
                        const std::vector<size_t>& sigma, const TlaForm& f);

// Degree-p assignment of forms to the listed p-simplices, each expressed in
// the trivialization of its smallest chart. Absent components are zero;
// index permutations are handled by the antisymmetry convention on access.
struct CechCochain {
  size_t p = 0;
  ValueKind kind = ValueKind::kAlgebra;
  std::map<std::vector<size_t>, TlaForm> comps;

  bool is_zero() const;
};

TlaForm zero_form(const GluingData& gd, ValueKind kind);

// Component for an arbitrary index tuple: sign of sorting, zero on repeated
// indices and unlisted simplices.
TlaForm cochain_component(const GluingData& gd, const CechCochain& c,
                          std::vector<size_t> idx);

// Reduced-ring equality, componentwise over the listed p-simplices.
bool cochain_equal(const GluingData& gd, const CechCochain& a,
                   const CechCochain& b);

// The degree -1 coboundary: a family becomes the 0-cochain of its locals.
// Its Čech differential vanishes exactly when the family is global.
CechCochain cochain_from_family(const GluingData& gd, ValueKind kind,
                                const LocalFamily& fam);

// Čech differential into degree p + 1:
//   (delta c)_sigma = sum_{k=0..p+1} (-1)^{k+1}
//                     transport(c_{sigma minus position k}),
// each face component transported from its own trivialization to sigma's.
// Squares to zero and commutes with the chartwise total differential.
CechCochain cech_delta(const GluingData& gd, const CechCochain& c);

// Chartwise total differential of every component.
CechCochain cochain_total_diff(const GluingData& gd, const CechCochain& c);

// Contracting homotopy through the formal partition of unity: for closed c
// of degree p >= 1,
//   tau_sigma = - sum_k transport(rho_k c_{k sigma}),
// omitting unlisted extensions; then delta(tau) = c in the reduced ring.
// Throws (naming a simplex) when the input is not closed.
CechCochain delta_homotopy(const GluingData& gd, const CechCochain& c);

struct SpectralPage {
  size_t page = 1;
  // dims[p][q], p = 0..nerve dimension, q = 0..n.
  std::vector<std::vector<size_t>> dims;
};

// First page: per p-simplex the constant-coefficient cohomology of the
// generator complex with algebra values, assembled as a product over the
// listed simplices.
SpectralPage e1_page(const GluingData& gd);

// Action of the trivialization change on degree-q classes: transport the
// representative from chart j to chart i, keep the pure-generator part,
// evaluate coefficients at the point, and project onto class coordinates.
std::vector<Scalar> induced_restriction(const GluingData& gd,
                                        const CeCohomology& ce, size_t q,
                                        size_t i, size_t j,
                                        const std::vector<Scalar>& cocycle,
                                        const std::vector<Scalar>& point);

// Second page: cohomology of the Čech differential induced on first-page
// classes, by exact rank computation.
SpectralPage e2_page(const GluingData& gd);

// Single-chart coordinate cohomology dimensions (1, 0, ..., 0) up to qmax,
// certified by checking the contraction identity d K + K d = id - eval(0)
// on a deterministic family of monomial forms.
std::vector<size_t> chart_de_rham_cohomology(size_t m, size_t qmax);

}  // namespace tla
