#include "tla/integrate.hpp"

#include <bit>
#include <stdexcept>

namespace tla {

namespace {

Rat rat_pow(const Rat& b, uint32_t e) {
  Rat r(1);
  for (uint32_t k = 0; k < e; ++k) r *= b;
  return r;
}

TlaForm contraction_at_origin(const TlaForm& f) {
  TlaForm out(f.m(), f.n(), f.kind(), f.basis());
  for (const auto& [key, c] : f.comps()) {
    std::vector<size_t> legs = mask_to_list(key.dx);
    size_t r = legs.size();
    for (size_t v = 0; v < c.size(); ++v) {
      for (const auto& [mono, coeff] : c[v].terms()) {
        if (mono.has_negative_x())
          throw std::domain_error("poincare_homotopy: negative exponent");
        int64_t weight = mono.x_degree() + static_cast<int64_t>(r);
        if (weight == 0) continue;  // constant 0-form part
        Scalar scaled = coeff * Scalar(Rat(1, weight));
        for (size_t k = 0; k < r; ++k) {
          Monomial mm = mono;
          if (mm.x.size() <= legs[k]) mm.x.resize(legs[k] + 1, 0);
          mm.x[legs[k]] += 1;
          mm.canonicalize();
          std::vector<PolyFn> vec(c.size(), PolyFn(0));
          PolyFn term;
          term.add_term(mm, k % 2 == 0 ? scaled : -scaled);
          vec[v] = term;
          out.add(LegKey{key.dx & ~(1u << legs[k]), key.th}, vec);
        }
      }
    }
  }
  return out;
}

}  // namespace

Scalar integrate_poly_box(const PolyFn& w, const Box& box) {
  Scalar total(0);
  for (const auto& [mono, coeff] : w.terms()) {
    if (!mono.rho.empty())
      throw std::domain_error("integrate: partition symbols in integrand");
    if (mono.has_negative_x())
      throw std::domain_error("integrate: negative exponent in integrand");
    if (mono.x.size() > box.dim())
      throw std::domain_error("integrate: variable beyond box dimension");
    Rat factor(1);
    for (size_t mu = 0; mu < box.dim(); ++mu) {
      uint32_t e = static_cast<uint32_t>(mono.x_exp(mu));
      factor *= (rat_pow(box.iv[mu].second, e + 1) -
                 rat_pow(box.iv[mu].first, e + 1)) /
                Rat(e + 1);
    }
    total += coeff * Scalar(factor);
  }
  return total;
}

Scalar integrate(const TlaForm& f, const ScalarMat& h, const Box& box) {
  if (f.kind() != ValueKind::kScalar)
    throw std::domain_error("integrate: scalar-valued form required");
  if (box.dim() != f.m())
    throw std::domain_error("integrate: box dimension mismatch");
  TlaForm inner = inner_integrate(f, h);
  uint32_t full = f.m() == 0 ? 0u : ((1u << f.m()) - 1);
  std::vector<PolyFn> top = inner.component(LegKey{full, 0});
  return integrate_poly_box(top.at(0), box);
}

TlaForm poincare_homotopy(const TlaForm& f, const std::vector<Rat>& center) {
  bool centered = true;
  for (const Rat& c : center)
    if (c != 0) centered = false;
  if (centered) return contraction_at_origin(f);
  auto shift = [&](int dir) {
    return [&, dir](const PolyFn& p) {
      PolyFn out = p;
      for (size_t mu = 0; mu < center.size(); ++mu) {
        if (center[mu] == 0) continue;
        Scalar c(dir > 0 ? center[mu] : Rat(-center[mu]));
        out = out.substitute_x(mu, PolyFn::x(mu) + PolyFn::constant(c));
      }
      return out;
    };
  };
  return contraction_at_origin(f.map_coeffs(shift(+1))).map_coeffs(shift(-1));
}

Scalar star_inner_product(const TlaForm& f1, const TlaForm& f2,
                          const ScalarMat& g, const ScalarMat& h,
                          const PolyMat& A, const Box& box) {
  if (f1.kind() != f2.kind())
    throw std::domain_error("star_inner_product: value kind mismatch");
  TlaForm sf2 = hodge_star(f2, g, h, A);
  TlaForm paired = f1.kind() == ValueKind::kAlgebra ? h_pairing(h, f1, sf2)
                                                    : wedge(f1, sf2);
  return integrate(paired, h, box);
}

Scalar star_inner_product_components(const TlaForm& f1, const TlaForm& f2,
                                     const ScalarMat& g, const ScalarMat& h,
                                     const PolyMat& A, const Box& box) {
  if (f1.kind() != f2.kind())
    throw std::domain_error("star_inner_product: value kind mismatch");
  ScalarMat ginv = *inverse(g);
  ScalarMat hinv = *inverse(h);
  Scalar rootg = sqrt_abs_det(g, "star_inner_product base metric");
  TlaForm a = f1.basis() == InnerBasis::kEll ? f1 : to_mixed_basis(f1, A);
  TlaForm b = f2.basis() == InnerBasis::kEll ? f2 : to_mixed_basis(f2, A);
  PolyFn total;
  for (const auto& [ka, ca] : a.comps()) {
    std::vector<size_t> listI = mask_to_list(ka.dx);
    std::vector<size_t> listJ = mask_to_list(ka.th);
    for (const auto& [kb, cb] : b.comps()) {
      if (std::popcount(kb.dx) != std::popcount(ka.dx)) continue;
      if (std::popcount(kb.th) != std::popcount(ka.th)) continue;
      Scalar mg =
          submatrix(ginv, mask_to_list(kb.dx), listI).det_laplace();
      Scalar mh =
          submatrix(hinv, mask_to_list(kb.th), listJ).det_laplace();
      Scalar minors = mg * mh;
      if (minors.is_zero()) continue;
      PolyFn pair;
      if (f1.kind() == ValueKind::kAlgebra) {
        for (size_t x = 0; x < ca.size(); ++x)
          for (size_t y = 0; y < cb.size(); ++y) {
            if (h.at(x, y).is_zero()) continue;
            pair += h.at(x, y) * (ca[x] * cb[y]);
          }
      } else {
        pair = ca[0] * cb[0];
      }
      total += minors * pair;
    }
  }
  Scalar factor = rootg;
  if (g.rows() != box.dim())
    throw std::domain_error("star_inner_product: box dimension mismatch");
  if (h.rows() % 2 == 1) factor = -factor;
  return factor * integrate_poly_box(total, box);
}

}  // namespace tla
