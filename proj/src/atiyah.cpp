#include "tla/atiyah.hpp"

#include <stdexcept>
#include <string>

namespace tla {

namespace {

std::string pair_str(size_t i, size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

PolyMat poly_derivative(const PolyMat& m, size_t mu) {
  PolyMat d(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      d.at(i, j) = m.at(i, j).derivative_x(mu);
  return d;
}

std::vector<PolyFn> vec_rowmajor(const PolyMat& m) {
  std::vector<PolyFn> v;
  v.reserve(m.rows() * m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
  return v;
}

}  // namespace

const PolyMat& TransitionFamily::at(size_t i, size_t j) const {
  auto it = g.find({i, j});
  if (it == g.end())
    throw std::domain_error("transitions: no matrix for pair " +
                            pair_str(i, j));
  return it->second;
}

void validate_transitions(const Nerve& nerve, const TransitionFamily& tf) {
  PolyMat id = PolyMat::identity(tf.rep_dim);
  for (const auto& [pr, mat] : tf.g) {
    std::vector<size_t> s{std::min(pr.first, pr.second),
                          std::max(pr.first, pr.second)};
    if (pr.first == pr.second || !nerve.has_simplex(s))
      throw std::domain_error("transitions: matrix on a pair that is not a "
                              "1-simplex");
    if (mat.rows() != tf.rep_dim || mat.cols() != tf.rep_dim)
      throw std::domain_error("transitions: shape mismatch at " +
                              pair_str(pr.first, pr.second));
  }
  for (const auto& s : nerve.simplices_of_dim(1)) {
    size_t i = s[0], j = s[1];
    if (!(tf.at(i, j) * tf.at(j, i) == id) ||
        !(tf.at(j, i) * tf.at(i, j) == id))
      throw std::domain_error("transitions: supplied inverse fails at " +
                              pair_str(i, j));
  }
  for (const auto& s : nerve.simplices_of_dim(2)) {
    size_t i = s[0], j = s[1], k = s[2];
    if (!(tf.at(i, k) == tf.at(i, j) * tf.at(j, k)))
      throw std::domain_error("transitions: cocycle fails at (" +
                              std::to_string(i) + "," + std::to_string(j) +
                              "," + std::to_string(k) + ")");
  }
}

GluingData atiyah_gluing(const LieAlgebra& L,
                         const std::vector<ScalarMat>& basis_matrices,
                         const Nerve& nerve, const TransitionFamily& tf) {
  validate_transitions(nerve, tf);
  size_t n = L.dim(), p = tf.rep_dim, m = nerve.m;
  if (basis_matrices.size() != n)
    throw std::domain_error("atiyah_gluing: one basis matrix per generator "
                            "required");
  for (const ScalarMat& b : basis_matrices)
    if (b.rows() != p || b.cols() != p)
      throw std::domain_error("atiyah_gluing: basis matrix shape mismatch");
  // The realization must reproduce the structure constants.
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      ScalarMat lhs = basis_matrices[a] * basis_matrices[b] -
                      basis_matrices[b] * basis_matrices[a];
      ScalarMat rhs(p, p);
      for (size_t k = 0; k < n; ++k) {
        if (L.c(a, b, k).is_zero()) continue;
        for (size_t r = 0; r < p; ++r)
          for (size_t cc = 0; cc < p; ++cc)
            rhs.at(r, cc) += L.c(a, b, k) * basis_matrices[k].at(r, cc);
      }
      if (!(lhs == rhs))
        throw std::domain_error("atiyah_gluing: basis matrices do not "
                                "realize the brackets");
    }
  // Left inverse of the column-stacked realization, for re-expressing
  // conjugations in generator coordinates.
  ScalarMat bmat(p * p, n);
  for (size_t a = 0; a < n; ++a)
    for (size_t r = 0; r < p; ++r)
      for (size_t cc = 0; cc < p; ++cc)
        bmat.at(r * p + cc, a) = basis_matrices[a].at(r, cc);
  std::optional<ScalarMat> btb_inv = inverse(bmat.transpose() * bmat);
  if (!btb_inv)
    throw std::domain_error("atiyah_gluing: basis matrices are dependent");
  PolyMat pinv = to_poly(*btb_inv * bmat.transpose());
  PolyMat bpoly = to_poly(bmat);

  auto in_span_coords = [&](const PolyMat& mat, const char* what) {
    PolyMat v(p * p, 1);
    std::vector<PolyFn> flat = vec_rowmajor(mat);
    for (size_t r = 0; r < flat.size(); ++r) v.at(r, 0) = flat[r];
    PolyMat coords = pinv * v;
    if (!(bpoly * coords == v))
      throw std::domain_error(std::string("atiyah_gluing: ") + what +
                              " leaves the realization span");
    return coords;
  };

  GluingData gd(L, nerve);
  for (const auto& s : nerve.simplices_of_dim(1)) {
    for (auto [i, j] : {std::pair{s[0], s[1]}, std::pair{s[1], s[0]}}) {
      PolyMat gij = tf.at(i, j);
      PolyMat gji = tf.at(j, i);
      PolyMat alpha(n, n);
      for (size_t a = 0; a < n; ++a) {
        PolyMat conj = gij * to_poly(basis_matrices[a]) * gji;
        PolyMat coords = in_span_coords(conj, "conjugation");
        for (size_t k = 0; k < n; ++k) alpha.at(k, a) = coords.at(k, 0);
      }
      PolyMat chi(n, m);
      for (size_t mu = 0; mu < m; ++mu) {
        PolyMat w = gij * poly_derivative(gji, mu);
        PolyMat coords = in_span_coords(w, "logarithmic derivative");
        for (size_t k = 0; k < n; ++k) chi.at(k, mu) = coords.at(k, 0);
      }
      gd.alpha_off[{i, j}] = std::move(alpha);
      gd.chi_off[{i, j}] = std::move(chi);
    }
  }
  validate_gluing(gd);
  CheckReport rep = verify_cocycles(gd);
  if (!rep.ok())
    throw std::logic_error("atiyah_gluing: generated data fails cocycles: " +
                           rep.str());
  return gd;
}

std::vector<ScalarMat> matrix_realization(size_t p) {
  std::vector<ScalarMat> basis(p * p, ScalarMat(p, p));
  for (size_t r = 0; r < p; ++r)
    for (size_t c = 0; c < p; ++c)
      basis[matrix_basis_index(p, r, c)].at(r, c) = Scalar(1);
  return basis;
}

ScalarMat killing_inner_metric(const GluingData& gd) {
  ScalarMat k = gd.algebra.killing_form();
  if (k.det_laplace().is_zero())
    throw std::domain_error("killing_inner_metric: degenerate Killing "
                            "pairing");
  PolyMat kp = to_poly(k);
  for (const auto& s : gd.nerve.simplices_of_dim(1)) {
    for (auto [i, j] : {std::pair{s[0], s[1]}, std::pair{s[1], s[0]}}) {
      PolyMat g = gd.alpha(i, j);
      if (!(g.transpose() * kp * g == kp))
        throw std::domain_error("killing_inner_metric: transition " +
                                pair_str(i, j) + " does not preserve the "
                                "pairing");
    }
  }
  return k;
}

ScalarMat trace_inner_metric(size_t p) {
  ScalarMat h(p * p, p * p);
  for (size_t a = 0; a < p; ++a)
    for (size_t b = 0; b < p; ++b)
      h.at(matrix_basis_index(p, a, b), matrix_basis_index(p, b, a)) =
          Scalar(1);
  return h;
}

PolyMat trace_row(size_t p) {
  PolyMat t(1, p * p);
  for (size_t a = 0; a < p; ++a)
    t.at(0, matrix_basis_index(p, a, a)) = PolyFn(1);
  return t;
}

InnerIntegrateResult inner_integrate_trace(const GluingData& gd,
                                           const LocalFamily& fam,
                                           const MetricTriple& t, size_t p) {
  if (!check_inner_orientable(gd))
    throw std::domain_error("inner_integrate_trace: cover is not inner "
                            "orientable");
  if (fam.size() != gd.nerve.num_charts)
    throw std::domain_error("inner_integrate_trace: one local form per "
                            "chart required");
  PolyMat tr = trace_row(p);
  InnerIntegrateResult res;
  for (size_t i = 0; i < fam.size(); ++i)
    res.parts.push_back(
        map_value(inner_integrate(fam[i], t.h[i]), tr, ValueKind::kScalar));
  for (const auto& s : gd.nerve.simplices_of_dim(1)) {
    if (!(res.parts[s[0]] == res.parts[s[1]]))
      res.report.violations.push_back(
          {s, "traced inner-integrated parts differ"});
  }
  return res;
}

TlaSection det_projection(size_t p, const TlaSection& s) {
  PolyFn tr;
  for (size_t a = 0; a < p; ++a) tr += s.gamma.at(matrix_basis_index(p, a, a));
  TlaSection out;
  out.X = s.X;
  out.gamma = {tr};
  return out;
}

SlSplit sl_splitting(size_t p, const TlaSection& s) {
  SlSplit out;
  for (size_t a = 0; a < p; ++a)
    out.trace_part += s.gamma.at(matrix_basis_index(p, a, a));
  out.sl_part.X = s.X;
  out.sl_part.gamma = s.gamma;
  PolyFn share = Scalar(Rat(1, static_cast<long>(p))) * out.trace_part;
  for (size_t a = 0; a < p; ++a)
    out.sl_part.gamma[matrix_basis_index(p, a, a)] -= share;
  return out;
}

}  // namespace tla
