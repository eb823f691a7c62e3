#include "tla/ce.hpp"

#include <bit>
#include <stdexcept>

namespace tla {

namespace {

size_t value_dim(const LieAlgebra& L, ValueKind rep) {
  return rep == ValueKind::kScalar ? 1 : L.dim();
}

TlaForm form_from_coords(const LieAlgebra& L, size_t q, ValueKind rep,
                         const std::vector<Scalar>& coords) {
  std::vector<CeBasisElement> basis = ce_basis(L, q, rep);
  if (coords.size() != basis.size())
    throw std::domain_error("form_from_coords: size mismatch");
  TlaForm f(0, L.dim(), rep);
  for (size_t i = 0; i < basis.size(); ++i) {
    if (coords[i].is_zero()) continue;
    std::vector<PolyFn> v(value_dim(L, rep), PolyFn(0));
    v[basis[i].value] = PolyFn::constant(coords[i]);
    f.add(LegKey{0, basis[i].mask}, v);
  }
  return f;
}

}  // namespace

std::vector<CeBasisElement> ce_basis(const LieAlgebra& L, size_t q,
                                     ValueKind rep) {
  size_t n = L.dim();
  size_t vdim = value_dim(L, rep);
  std::vector<CeBasisElement> out;
  if (q > n) return out;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<size_t>(std::popcount(mask)) != q) continue;
    for (size_t v = 0; v < vdim; ++v) out.push_back({mask, v});
  }
  return out;
}

TlaForm ce_basis_form(const LieAlgebra& L, const CeBasisElement& e,
                      ValueKind rep) {
  TlaForm f(0, L.dim(), rep);
  std::vector<PolyFn> v(value_dim(L, rep), PolyFn(0));
  v.at(e.value) = PolyFn(1);
  f.add(LegKey{0, e.mask}, v);
  return f;
}

std::vector<Scalar> ce_coords(const LieAlgebra& L, const TlaForm& f,
                              size_t q) {
  std::vector<CeBasisElement> basis = ce_basis(L, q, f.kind());
  std::vector<Scalar> coords(basis.size(), Scalar(0));
  for (const auto& [key, c] : f.comps()) {
    if (key.dx != 0)
      throw std::domain_error("ce_coords: form has coordinate legs");
    if (static_cast<size_t>(std::popcount(key.th)) != q)
      throw std::domain_error("ce_coords: degree mismatch");
    for (size_t v = 0; v < c.size(); ++v) {
      if (c[v].is_zero()) continue;
      if (!c[v].is_constant())
        throw std::domain_error("ce_coords: non-constant coefficient");
      // Basis order: masks ascending, value index inner.
      size_t pos = 0;
      while (pos < basis.size() &&
             (basis[pos].mask != key.th || basis[pos].value != v))
        ++pos;
      if (pos == basis.size())
        throw std::domain_error("ce_coords: component outside basis");
      coords[pos] = c[v].constant_term();
    }
  }
  return coords;
}

ScalarMat ce_matrix(const LieAlgebra& L, size_t q, ValueKind rep) {
  std::vector<CeBasisElement> dom = ce_basis(L, q, rep);
  std::vector<CeBasisElement> cod = ce_basis(L, q + 1, rep);
  ScalarMat d(cod.size(), dom.size());
  for (size_t j = 0; j < dom.size(); ++j) {
    TlaForm df = inner_diff(L, ce_basis_form(L, dom[j], rep));
    std::vector<Scalar> col = ce_coords(L, df, q + 1);
    for (size_t i = 0; i < cod.size(); ++i) d.at(i, j) = col[i];
  }
  return d;
}

CeCohomology::CeCohomology(const LieAlgebra& L, ValueKind rep)
    : L_(L), rep_(rep) {
  size_t n = L.dim();
  levels_.resize(n + 1);
  diff_.resize(n + 1);
  solver_.resize(n + 1);
  for (size_t q = 0; q <= n; ++q) diff_[q] = ce_matrix(L, q, rep);
  for (size_t q = 0; q <= n; ++q) {
    CohomologyLevel& lv = levels_[q];
    lv.q = q;
    size_t dim_cq = ce_basis(L, q, rep).size();

    std::vector<std::vector<Scalar>> kernel = kernel_basis(diff_[q]);
    lv.dim_cocycles = kernel.size();

    // Independent spanning columns of the previous differential's image.
    std::vector<std::vector<Scalar>> image;
    if (q > 0) {
      const ScalarMat& prev = diff_[q - 1];
      RrefResult rr = rref(prev);
      for (size_t col : rr.pivots) {
        std::vector<Scalar> v(prev.rows(), Scalar(0));
        for (size_t i = 0; i < prev.rows(); ++i) v[i] = prev.at(i, col);
        image.push_back(std::move(v));
      }
    }
    lv.dim_coboundaries = image.size();

    // Kernel vectors whose columns pick up new pivots after the image block
    // extend the coboundaries to a basis of the cocycles; they represent a
    // basis of the quotient.
    ScalarMat bz(dim_cq, image.size() + kernel.size());
    for (size_t j = 0; j < image.size(); ++j)
      for (size_t i = 0; i < dim_cq; ++i) bz.at(i, j) = image[j][i];
    for (size_t j = 0; j < kernel.size(); ++j)
      for (size_t i = 0; i < dim_cq; ++i)
        bz.at(i, image.size() + j) = kernel[j][i];
    RrefResult rr = rref(bz);
    for (size_t col : rr.pivots) {
      if (col < image.size()) continue;
      lv.representatives.push_back(kernel[col - image.size()]);
    }
    lv.dim = lv.representatives.size();

    ScalarMat sv(dim_cq, image.size() + lv.dim);
    for (size_t j = 0; j < image.size(); ++j)
      for (size_t i = 0; i < dim_cq; ++i) sv.at(i, j) = image[j][i];
    for (size_t j = 0; j < lv.dim; ++j)
      for (size_t i = 0; i < dim_cq; ++i)
        sv.at(i, image.size() + j) = lv.representatives[j][i];
    solver_[q] = std::move(sv);
  }
}

std::vector<size_t> CeCohomology::dims() const {
  std::vector<size_t> d;
  d.reserve(levels_.size());
  for (const CohomologyLevel& lv : levels_) d.push_back(lv.dim);
  return d;
}

TlaForm CeCohomology::representative_form(size_t q, size_t i) const {
  return form_from_coords(L_, q, rep_, levels_.at(q).representatives.at(i));
}

std::vector<Scalar> CeCohomology::project(size_t q,
                                          const std::vector<Scalar>& v) const {
  const ScalarMat& d = diff_.at(q);
  if (v.size() != d.cols())
    throw std::domain_error("CeCohomology::project: size mismatch");
  std::vector<Scalar> dv = d * v;
  for (const Scalar& s : dv)
    if (!s.is_zero())
      throw std::domain_error("CeCohomology::project: not a cocycle");
  std::optional<std::vector<Scalar>> c = solve(solver_.at(q), v);
  if (!c)
    throw std::domain_error("CeCohomology::project: decomposition failed");
  size_t nb = levels_.at(q).dim_coboundaries;
  return std::vector<Scalar>(c->begin() + static_cast<long>(nb), c->end());
}

}  // namespace tla
