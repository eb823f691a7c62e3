#include "tla/metric.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace tla {

namespace {

void require_real_symmetric(const ScalarMat& m, const char* what) {
  if (m.rows() != m.cols())
    throw std::domain_error(std::string(what) + ": not square");
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      if (!m.at(i, j).is_real())
        throw std::domain_error(std::string(what) + ": non-real entry");
      if (!(m.at(i, j) == m.at(j, i)))
        throw std::domain_error(std::string(what) + ": not symmetric");
    }
}

ScalarMat require_inverse(const ScalarMat& m, const char* what) {
  std::optional<ScalarMat> inv = inverse(m);
  if (!inv) throw std::domain_error(std::string(what) + ": degenerate");
  return *inv;
}

// Increasing index subsets of {0..n-1} of size k, as bitmasks in ascending
// mask order.
std::vector<uint32_t> subsets_of_size(size_t n, size_t k) {
  std::vector<uint32_t> out;
  for (uint32_t mask = 0; mask < (1u << n); ++mask)
    if (static_cast<size_t>(std::popcount(mask)) == k) out.push_back(mask);
  return out;
}

}  // namespace

Scalar sqrt_abs_det(const ScalarMat& m, const char* what) {
  require_real_symmetric(m, what);
  Scalar det = m.det_laplace();
  if (det.is_zero())
    throw std::domain_error(std::string(what) + ": degenerate");
  Rat ad = det.re < 0 ? Rat(-det.re) : det.re;
  std::optional<Rat> root = rational_sqrt(ad);
  if (!root)
    throw std::domain_error(std::string(what) +
                            ": |det| is not a rational square; rescale the "
                            "metric (h -> c*h scales det by c^n) so the "
                            "determinant becomes one");
  return Scalar(*root);
}

TlaForm volume_form(size_t m, const ScalarMat& h, const PolyMat& A) {
  size_t n = h.rows();
  Scalar coeff = sqrt_abs_det(h, "volume_form inner metric");
  if (n % 2 == 1) coeff = -coeff;
  TlaForm ell(m, n, ValueKind::kScalar, InnerBasis::kEll);
  uint32_t full = n == 0 ? 0u : ((1u << n) - 1);
  ell.add(LegKey{0, full}, {PolyFn::constant(coeff)});
  return from_mixed_basis(ell, A);
}

Scalar epsilon_coefficient(const ScalarMat& h) {
  Scalar root = sqrt_abs_det(h, "epsilon inner metric");
  Scalar c = root.inverse();
  return h.rows() % 2 == 1 ? -c : c;
}

TlaForm i_epsilon(const TlaForm& f, const ScalarMat& h) {
  if (f.basis() != InnerBasis::kTheta)
    throw std::domain_error("i_epsilon: theta-basis input required");
  size_t n = f.n();
  // epsilon's own (-1)^n against the -1 per contracted leg.
  Scalar factor = epsilon_coefficient(h);
  if (n % 2 == 1) factor = -factor;
  uint32_t full = n == 0 ? 0u : ((1u << n) - 1);
  TlaForm out(f.m(), n, f.kind(), InnerBasis::kTheta);
  for (const auto& [key, c] : f.comps()) {
    if (key.th != full) continue;
    std::vector<PolyFn> v;
    v.reserve(c.size());
    for (const PolyFn& p : c) v.push_back(factor * p);
    out.add(LegKey{key.dx, 0}, v);
  }
  return out;
}

TlaForm inner_integrate(const TlaForm& f, const ScalarMat& h) {
  if (f.basis() != InnerBasis::kTheta)
    throw std::domain_error("inner_integrate: theta-basis input required");
  size_t n = f.n();
  Scalar root = sqrt_abs_det(h, "inner_integrate inner metric");
  Scalar factor = root.inverse();
  uint32_t full = n == 0 ? 0u : ((1u << n) - 1);
  TlaForm out(f.m(), n, f.kind(), InnerBasis::kTheta);
  for (const auto& [key, c] : f.comps()) {
    if (key.th != full) continue;
    std::vector<PolyFn> v;
    v.reserve(c.size());
    for (const PolyFn& p : c) v.push_back(factor * p);
    out.add(LegKey{key.dx, 0}, v);
  }
  return out;
}

TlaForm hodge_star(const TlaForm& f, const ScalarMat& g, const ScalarMat& h,
                   const PolyMat& A) {
  size_t m = g.rows(), n = h.rows();
  if (f.m() != m || f.n() != n)
    throw std::domain_error("hodge_star: shape mismatch");
  Scalar rootg = sqrt_abs_det(g, "hodge_star base metric");
  Scalar rooth = sqrt_abs_det(h, "hodge_star inner metric");
  ScalarMat ginv = require_inverse(g, "hodge_star base metric");
  ScalarMat hinv = require_inverse(h, "hodge_star inner metric");

  InnerBasis in_basis = f.basis();
  TlaForm fm = in_basis == InnerBasis::kEll ? f : to_mixed_basis(f, A);

  uint32_t full_m = m == 0 ? 0u : ((1u << m) - 1);
  uint32_t full_n = n == 0 ? 0u : ((1u << n) - 1);
  TlaForm out(m, n, f.kind(), InnerBasis::kEll);
  for (const auto& [key, w] : fm.comps()) {
    std::vector<size_t> listI = mask_to_list(key.dx);
    std::vector<size_t> listJ = mask_to_list(key.th);
    size_t r = listI.size(), s = listJ.size();
    Scalar factor = rootg * rooth;
    if ((s * (m - r)) % 2 == 1) factor = -factor;
    for (uint32_t K : subsets_of_size(m, r)) {
      Scalar mg = submatrix(ginv, listI, mask_to_list(K)).det_laplace();
      if (mg.is_zero()) continue;
      int sgn_k = merge_sign(K, full_m & ~K);
      for (uint32_t L : subsets_of_size(n, s)) {
        Scalar mh = submatrix(hinv, listJ, mask_to_list(L)).det_laplace();
        if (mh.is_zero()) continue;
        int sgn_l = merge_sign(L, full_n & ~L);
        Scalar c = factor * mg * mh;
        if (sgn_k * sgn_l < 0) c = -c;
        out.add_scaled(LegKey{full_m & ~K, full_n & ~L}, c, w);
      }
    }
  }
  return in_basis == InnerBasis::kEll ? out : from_mixed_basis(out, A);
}

PolyMat metric_connection_coeffs(const ScalarMat& h, const PolyMat& gmix) {
  ScalarMat hinv = require_inverse(h, "metric_connection inner metric");
  if (gmix.cols() != h.rows())
    throw std::domain_error("metric_connection: shape mismatch");
  PolyMat a = to_poly(hinv) * gmix.transpose();
  PolyMat out(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) out.at(i, j) = -a.at(i, j);
  return out;
}

MetricBlocks blocks_from_triple(const ChartTriple& t) {
  PolyMat a = t.A;
  PolyMat at = a.transpose();
  PolyMat hp = to_poly(t.h);
  MetricBlocks md;
  md.g_loc = to_poly(t.g) + at * hp * a;
  PolyMat gm = at * hp;
  md.gmix = PolyMat(gm.rows(), gm.cols());
  for (size_t i = 0; i < gm.rows(); ++i)
    for (size_t j = 0; j < gm.cols(); ++j) md.gmix.at(i, j) = -gm.at(i, j);
  md.h = t.h;
  return md;
}

ChartTriple triple_from_blocks(const MetricBlocks& md) {
  ChartTriple t;
  t.h = md.h;
  t.A = metric_connection_coeffs(md.h, md.gmix);
  PolyMat g = md.g_loc - t.A.transpose() * to_poly(md.h) * t.A;
  std::optional<ScalarMat> gc = to_scalar(g);
  if (!gc)
    throw std::domain_error(
        "triple_from_blocks: base block minus connection part is not "
        "constant");
  t.g = *gc;
  return t;
}

}  // namespace tla
