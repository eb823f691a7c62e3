#pragma once

#include "tla/form.hpp"
#include "tla/linalg.hpp"

namespace tla {

// Per-chart metric blocks of a combined metric on the algebroid:
//   g_loc(X, Y)   base x base block (m x m, symmetric),
//   gmix(X, eta)  base x inner block (m x n),
//   h(gamma, eta) inner block (n x n, constant symmetric).
// For the metric induced by a triple (g, h, A) these are
//   g_loc = g + A^T h A,  gmix = -A^T h,  h = h.
struct MetricBlocks {
  PolyMat g_loc;  // m x m
  PolyMat gmix;   // m x n
  ScalarMat h;    // n x n
};

// Chart-level triple data: constant base metric, constant inner metric, and
// connection coefficients A (n x m, A^a = sum_mu A(a,mu) dx^mu).
struct ChartTriple {
  ScalarMat g;
  ScalarMat h;
  PolyMat A;
};

// sqrt(|det M|) as an exact scalar. Requires real entries, nonzero
// determinant, and |det| a square of a rational; throws otherwise. `what`
// names the offender in the error message.
Scalar sqrt_abs_det(const ScalarMat& m, const char* what);

// Global inner volume element (-1)^n sqrt|h| ell^1 ^ ... ^ ell^n, expanded
// into the theta basis of a chart with `m` coordinates.
TlaForm volume_form(size_t m, const ScalarMat& h, const PolyMat& A);

// Coefficient of E_1 ^ ... ^ E_n in the dual volume section
// epsilon = (-1)^n sqrt|h|^{-1} E_1 ^ ... ^ E_n.
Scalar epsilon_coefficient(const ScalarMat& h);

// Contraction of the full block of n generator legs against epsilon; each
// leg contracts with a factor -1 (normalized so i_epsilon(volume form) = 1).
// Components with fewer than n generator legs vanish. Theta-basis input.
TlaForm i_epsilon(const TlaForm& f, const ScalarMat& h);

// Coefficient of sqrt|h| theta^1 ^ ... ^ theta^n: the maximal-inner-degree
// part, a pure coordinate form. Independent of any connection choice.
TlaForm inner_integrate(const TlaForm& f, const ScalarMat& h);

// Hodge star for constant block metrics, mapping degree p to m + n - p. On
// mixed-basis components,
//   star(w dx^I ^ ell^J) = (-1)^{s(m-r)} sqrt|g| sqrt|h| *
//     sum_{|K|=r,|L|=s} sgn(K,K^c) sgn(L,L^c)
//       det(ginv[I,K]) det(hinv[J,L]) w dx^{K^c} ^ ell^{L^c},
// summing over increasing index sets; satisfies star(star(w)) =
// (-1)^{(m+n-p)p} w. Input in either basis; the result uses the same basis.
TlaForm hodge_star(const TlaForm& f, const ScalarMat& g, const ScalarMat& h,
                   const PolyMat& A);

// Unique connection coefficients with h(A(X), eta) = -gmix(X, eta):
// A = -hinv gmix^T. Throws on degenerate h.
PolyMat metric_connection_coeffs(const ScalarMat& h, const PolyMat& gmix);

MetricBlocks blocks_from_triple(const ChartTriple& t);
// Inverts blocks_from_triple: A by the solve above, then g = g_loc - A^T h A,
// which must come out constant. Round trip is the identity.
ChartTriple triple_from_blocks(const MetricBlocks& md);

}  // namespace tla
