#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tla/form.hpp"
#include "tla/integrate.hpp"
#include "tla/lie_algebra.hpp"
#include "tla/metric.hpp"

namespace tla {

// Combinatorial cover data. All charts share one ambient coordinate system;
// a chart is an index with an optional integration box, and intersections
// are recorded as nerve simplices (ascending index tuples) with at least one
// rational sample point each. Charts themselves are the 0-simplices.
struct Nerve {
  size_t m = 0;
  size_t num_charts = 0;
  std::vector<std::optional<Box>> boxes;  // per chart
  std::vector<std::vector<size_t>> simplices;  // p >= 1 only, ascending
  std::map<std::vector<size_t>, std::vector<std::vector<Scalar>>> samples;

  bool has_simplex(const std::vector<size_t>& s) const;
  // Listed p-simplices in ascending lexicographic order (p = 0: all charts).
  std::vector<std::vector<size_t>> simplices_of_dim(size_t p) const;
  size_t max_dim() const;
  const std::vector<Scalar>& sample_point(const std::vector<size_t>& s) const;
  // Ascending tuples, in-range indices, downward closure, samples with m
  // real coordinates for every simplex and chart. Throws on violation.
  void validate() const;
};

// Transition data between trivializations: per ordered chart pair (i, j) on
// a 1-simplex, the automorphism matrix alpha(i,j) = G^i_j (column a holds
// the image of generator a) and the shift chi(i,j), an n x m matrix whose
// row a gives the coordinate 1-form component chi^a_mu dx^mu.
struct GluingData {
  LieAlgebra algebra;
  Nerve nerve;
  std::map<std::pair<size_t, size_t>, PolyMat> alpha_off;
  std::map<std::pair<size_t, size_t>, PolyMat> chi_off;

  GluingData(LieAlgebra l, Nerve nv) : algebra(std::move(l)),
                                       nerve(std::move(nv)) {}

  PolyMat alpha(size_t i, size_t j) const;  // identity on the diagonal
  PolyMat chi(size_t i, size_t j) const;    // zero on the diagonal
};

// Load-time checks: data present for both orientations of every 1-simplex,
// alpha(i,j) alpha(j,i) = Id, alpha(i,j) chi(j,i) + chi(i,j) = 0, every
// alpha an automorphism with determinant nonvanishing at sample points.
// Throws with the offending pair on violation.
void validate_gluing(const GluingData& gd);

struct CheckReport {
  struct Item {
    std::vector<size_t> simplex;
    std::string what;
  };
  std::vector<Item> violations;
  bool ok() const { return violations.empty(); }
  std::string str() const;
};

// Triangle relations alpha(i,k) = alpha(i,j) alpha(j,k) and
// chi(i,k) = alpha(i,j) chi(j,k) + chi(i,j) on every permutation of every
// listed 2-simplex, plus the pair relations and the automorphism property on
// every 1-simplex.
CheckReport verify_cocycles(const GluingData& gd);

// Change of trivialization j -> i on forms over the intersection: each
// generator leg b is substituted by
//   sum_a alpha(j,i)(b,a) theta^a + sum_mu chi(j,i)(b,mu) dx^mu,
// coordinate legs and coefficients are untouched, and an algebra value is
// mapped by alpha(i,j). Composes along triangles and inverts with the
// reversed pair. Theta-basis input; i == j is the identity.
TlaForm apply_alpha_hat(const GluingData& gd, size_t i, size_t j,
                        const TlaForm& f);

// A family of local forms, one per chart, each in its own trivialization.
using LocalFamily = std::vector<TlaForm>;

// A family is a global form iff apply_alpha_hat(i, j, f_j) = f_i on every
// 1-simplex; reports each failing ordered pair.
CheckReport check_global_form(const GluingData& gd, const LocalFamily& fam);

// Extends a form on the root chart to a family along a breadth-first
// spanning tree of the listed 1-simplices; unreachable charts get zero.
// The result is global exactly when the off-tree pairs also agree, which
// the cocycle relations guarantee on triangle-closed nerves.
LocalFamily propagate_family(const GluingData& gd, size_t root,
                             const TlaForm& f);

// Chartwise total differential of a global family; the output family is
// global again (checked). Throws if the input is not global.
LocalFamily global_total_diff(const GluingData& gd, const LocalFamily& fam);

// Connection gluing A_i = alpha(i,j) A_j + chi(i,j) on every ordered pair.
CheckReport check_connection(const GluingData& gd,
                             const std::vector<PolyMat>& A);

// Global metric triple: one base metric in the shared coordinates, a
// per-chart inner metric with h_j = alpha(i,j)^T h_i alpha(i,j), and a
// connection family.
struct MetricTriple {
  ScalarMat g;
  std::vector<ScalarMat> h;
  std::vector<PolyMat> A;
};

CheckReport check_metric_triple(const GluingData& gd, const MetricTriple& t);

// Per-chart blocks induced by a triple, and the inverse reconstruction.
// metric_to_triple solves for the unique connection with
// h(A(X), eta) = -gmix(X, eta) per chart, requires the recovered base metric
// to be constant and chart-independent, and checks the triple's transition
// relations. Throws on violation.
std::vector<MetricBlocks> triple_to_metric(const GluingData& gd,
                                           const MetricTriple& t);
MetricTriple metric_to_triple(const GluingData& gd,
                              const std::vector<MetricBlocks>& md);

// Connection family recovered blockwise; throws when the result does not
// satisfy the connection gluing (inconsistent blocks).
std::vector<PolyMat> metric_connection(const GluingData& gd,
                                       const std::vector<MetricBlocks>& md);

// det(alpha(i,j)) evaluated at every sample point of every 1-simplex: true
// iff all values are real and strictly positive. A zero value (not an
// automorphism there) throws.
bool check_inner_orientable(const GluingData& gd);

struct InnerIntegrateResult {
  LocalFamily parts;    // per chart, pure coordinate forms
  CheckReport report;   // gluing of the parts
};

// Chartwise maximal-inner-degree extraction of a global family; the parts
// must glue by plain value conjugation (algebra values) or equality (scalar
// values). Requires an inner-orientable cover.
InnerIntegrateResult global_inner_integrate(const GluingData& gd,
                                            const LocalFamily& fam,
                                            const MetricTriple& t);

}  // namespace tla
