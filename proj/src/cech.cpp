#include "tla/cech.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <stdexcept>

#include "tla/integrate.hpp"

namespace tla {

namespace {

std::string simplex_str(const std::vector<size_t>& s) {
  std::string out = "(";
  for (size_t k = 0; k < s.size(); ++k)
    out += (k ? "," : "") + std::to_string(s[k]);
  return out + ")";
}

std::vector<size_t> sorted_union(const std::vector<size_t>& sigma, size_t k) {
  std::vector<size_t> s = sigma;
  s.insert(std::lower_bound(s.begin(), s.end(), k), k);
  return s;
}

// Simplices surviving on sigma: k with sigma u {k} listed (members included).
std::vector<size_t> surviving_rho(const GluingData& gd,
                                  const std::vector<size_t>& sigma) {
  std::vector<size_t> s;
  for (size_t k = 0; k < gd.nerve.num_charts; ++k) {
    if (std::binary_search(sigma.begin(), sigma.end(), k)) {
      s.push_back(k);
      continue;
    }
    if (gd.nerve.has_simplex(sorted_union(sigma, k))) s.push_back(k);
  }
  return s;
}

TlaForm form_from_ce_coords(const LieAlgebra& L, size_t m, size_t q,
                            ValueKind rep,
                            const std::vector<Scalar>& coords) {
  std::vector<CeBasisElement> basis = ce_basis(L, q, rep);
  if (coords.size() != basis.size())
    throw std::domain_error("induced_restriction: coordinate size mismatch");
  size_t vdim = rep == ValueKind::kScalar ? 1 : L.dim();
  TlaForm f(m, L.dim(), rep);
  for (size_t i = 0; i < basis.size(); ++i) {
    if (coords[i].is_zero()) continue;
    std::vector<PolyFn> v(vdim, PolyFn(0));
    v[basis[i].value] = PolyFn::constant(coords[i]);
    f.add(LegKey{0, basis[i].mask}, v);
  }
  return f;
}

}  // namespace

PolyFn reduce_rho(const GluingData& gd, const std::vector<size_t>& sigma,
                  const PolyFn& f) {
  if (!f.has_rho()) return f;
  std::vector<size_t> survive = surviving_rho(gd, sigma);
  PolyFn out = f;
  for (size_t k = 0; k < gd.nerve.num_charts; ++k) {
    if (std::binary_search(survive.begin(), survive.end(), k)) continue;
    out = out.substitute_rho(k, PolyFn(0));
  }
  if (survive.empty()) return out;
  size_t j0 = survive.back();
  PolyFn rest(1);
  for (size_t k : survive)
    if (k != j0) rest -= PolyFn::rho(k);
  return out.substitute_rho(j0, rest);
}

TlaForm reduce_rho_form(const GluingData& gd,
                        const std::vector<size_t>& sigma, const TlaForm& f) {
  return f.map_coeffs(
      [&](const PolyFn& p) { return reduce_rho(gd, sigma, p); });
}

bool CechCochain::is_zero() const {
  for (const auto& [s, f] : comps)
    if (!f.is_zero()) return false;
  return true;
}

TlaForm zero_form(const GluingData& gd, ValueKind kind) {
  return TlaForm(gd.nerve.m, gd.algebra.dim(), kind);
}

TlaForm cochain_component(const GluingData& gd, const CechCochain& c,
                          std::vector<size_t> idx) {
  int sign = 1;
  for (size_t a = 0; a + 1 < idx.size(); ++a)
    for (size_t b = 0; b + 1 < idx.size() - a; ++b) {
      if (idx[b] == idx[b + 1]) return zero_form(gd, c.kind);
      if (idx[b] > idx[b + 1]) {
        std::swap(idx[b], idx[b + 1]);
        sign = -sign;
      }
    }
  if (!gd.nerve.has_simplex(idx)) return zero_form(gd, c.kind);
  auto it = c.comps.find(idx);
  if (it == c.comps.end()) return zero_form(gd, c.kind);
  return sign > 0 ? it->second : -it->second;
}

bool cochain_equal(const GluingData& gd, const CechCochain& a,
                   const CechCochain& b) {
  if (a.p != b.p || a.kind != b.kind) return false;
  for (const auto& s : gd.nerve.simplices_of_dim(a.p)) {
    TlaForm fa = reduce_rho_form(gd, s, cochain_component(gd, a, s));
    TlaForm fb = reduce_rho_form(gd, s, cochain_component(gd, b, s));
    if (!(fa == fb)) return false;
  }
  return true;
}

CechCochain cochain_from_family(const GluingData& gd, ValueKind kind,
                                const LocalFamily& fam) {
  if (fam.size() != gd.nerve.num_charts)
    throw std::domain_error("cochain_from_family: one form per chart "
                            "required");
  CechCochain c;
  c.p = 0;
  c.kind = kind;
  for (size_t i = 0; i < fam.size(); ++i) {
    if (fam[i].kind() != kind)
      throw std::domain_error("cochain_from_family: value kind mismatch");
    if (!fam[i].is_zero()) c.comps[{i}] = fam[i];
  }
  return c;
}

CechCochain cech_delta(const GluingData& gd, const CechCochain& c) {
  CechCochain out;
  out.p = c.p + 1;
  out.kind = c.kind;
  for (const auto& sigma : gd.nerve.simplices_of_dim(out.p)) {
    TlaForm acc = zero_form(gd, c.kind);
    for (size_t k = 0; k < sigma.size(); ++k) {
      std::vector<size_t> face = sigma;
      face.erase(face.begin() + static_cast<long>(k));
      auto it = c.comps.find(face);
      if (it == c.comps.end()) continue;
      TlaForm moved = apply_alpha_hat(gd, sigma[0], face[0], it->second);
      acc = k % 2 == 0 ? acc - moved : acc + moved;
    }
    acc = reduce_rho_form(gd, sigma, acc);
    if (!acc.is_zero()) out.comps[sigma] = acc;
  }
  return out;
}

CechCochain cochain_total_diff(const GluingData& gd, const CechCochain& c) {
  CechCochain out;
  out.p = c.p;
  out.kind = c.kind;
  for (const auto& [s, f] : c.comps) {
    TlaForm df = total_diff(gd.algebra, f);
    if (!df.is_zero()) out.comps[s] = df;
  }
  return out;
}

CechCochain delta_homotopy(const GluingData& gd, const CechCochain& c) {
  if (c.p == 0)
    throw std::domain_error("delta_homotopy: degree must be positive");
  CechCochain closed = cech_delta(gd, c);
  for (const auto& [s, f] : closed.comps)
    if (!f.is_zero())
      throw std::domain_error("delta_homotopy: input is not closed at "
                              "simplex " + simplex_str(s));
  CechCochain out;
  out.p = c.p - 1;
  out.kind = c.kind;
  for (const auto& sigma : gd.nerve.simplices_of_dim(out.p)) {
    TlaForm acc = zero_form(gd, c.kind);
    for (size_t k = 0; k < gd.nerve.num_charts; ++k) {
      if (std::binary_search(sigma.begin(), sigma.end(), k)) continue;
      if (!gd.nerve.has_simplex(sorted_union(sigma, k))) continue;
      std::vector<size_t> idx;
      idx.push_back(k);
      idx.insert(idx.end(), sigma.begin(), sigma.end());
      TlaForm f = cochain_component(gd, c, idx);
      if (f.is_zero()) continue;
      PolyFn rk = PolyFn::rho(k);
      f = f.map_coeffs([&](const PolyFn& w) { return rk * w; });
      acc = acc + apply_alpha_hat(gd, sigma[0], std::min(k, sigma[0]), f);
    }
    acc = reduce_rho_form(gd, sigma, -acc);
    if (!acc.is_zero()) out.comps[sigma] = acc;
  }
  return out;
}

SpectralPage e1_page(const GluingData& gd) {
  CeCohomology ce(gd.algebra, ValueKind::kAlgebra);
  std::vector<size_t> hdims = ce.dims();
  SpectralPage page;
  page.page = 1;
  size_t maxp = gd.nerve.max_dim();
  for (size_t p = 0; p <= maxp; ++p) {
    size_t count = gd.nerve.simplices_of_dim(p).size();
    std::vector<size_t> row;
    row.reserve(hdims.size());
    for (size_t q = 0; q < hdims.size(); ++q) row.push_back(count * hdims[q]);
    page.dims.push_back(std::move(row));
  }
  return page;
}

std::vector<Scalar> induced_restriction(const GluingData& gd,
                                        const CeCohomology& ce, size_t q,
                                        size_t i, size_t j,
                                        const std::vector<Scalar>& cocycle,
                                        const std::vector<Scalar>& point) {
  const LieAlgebra& L = ce.algebra();
  TlaForm f =
      form_from_ce_coords(L, gd.nerve.m, q, ce.rep(), cocycle);
  f = apply_alpha_hat(gd, i, j, f);
  std::vector<CeBasisElement> basis = ce_basis(L, q, ce.rep());
  std::vector<Scalar> coords(basis.size(), Scalar(0));
  for (const auto& [key, c] : f.comps()) {
    if (key.dx != 0) continue;  // positive coordinate degree dies on classes
    for (size_t v = 0; v < c.size(); ++v) {
      if (c[v].is_zero()) continue;
      size_t pos = 0;
      while (pos < basis.size() &&
             (basis[pos].mask != key.th || basis[pos].value != v))
        ++pos;
      if (pos == basis.size())
        throw std::domain_error("induced_restriction: component outside "
                                "basis");
      coords[pos] = c[v].eval(point);
    }
  }
  return ce.project(q, coords);
}

SpectralPage e2_page(const GluingData& gd) {
  CeCohomology ce(gd.algebra, ValueKind::kAlgebra);
  std::vector<size_t> hdims = ce.dims();
  size_t maxp = gd.nerve.max_dim();
  SpectralPage page;
  page.page = 2;
  page.dims.assign(maxp + 1, std::vector<size_t>(hdims.size(), 0));
  for (size_t q = 0; q < hdims.size(); ++q) {
    size_t hd = hdims[q];
    if (hd == 0) continue;
    // One block column per p-simplex and class; the differential's block at
    // (sigma, face) is (-1)^{k+1} times the induced restriction matrix.
    std::vector<size_t> ranks(maxp + 2, 0);
    std::vector<size_t> cols(maxp + 1, 0);
    for (size_t p = 0; p <= maxp; ++p) {
      std::vector<std::vector<size_t>> dom = gd.nerve.simplices_of_dim(p);
      std::vector<std::vector<size_t>> cod = gd.nerve.simplices_of_dim(p + 1);
      cols[p] = dom.size() * hd;
      if (cod.empty()) {
        ranks[p + 1] = 0;
        continue;
      }
      ScalarMat d(cod.size() * hd, dom.size() * hd);
      for (size_t si = 0; si < cod.size(); ++si) {
        const auto& sigma = cod[si];
        for (size_t k = 0; k < sigma.size(); ++k) {
          std::vector<size_t> face = sigma;
          face.erase(face.begin() + static_cast<long>(k));
          size_t fi = static_cast<size_t>(
              std::find(dom.begin(), dom.end(), face) - dom.begin());
          for (size_t t = 0; t < hd; ++t) {
            std::vector<Scalar> img =
                sigma[0] == face[0]
                    ? [&] {
                        std::vector<Scalar> e(hd, Scalar(0));
                        e[t] = Scalar(1);
                        return e;
                      }()
                    : induced_restriction(gd, ce, q, sigma[0], face[0],
                                          ce.level(q).representatives[t],
                                          gd.nerve.sample_point(sigma));
            for (size_t r = 0; r < hd; ++r) {
              Scalar v = k % 2 == 0 ? -img[r] : img[r];
              d.at(si * hd + r, fi * hd + t) += v;
            }
          }
        }
      }
      ranks[p + 1] = rank(d);
    }
    for (size_t p = 0; p <= maxp; ++p)
      page.dims[p][q] = cols[p] - ranks[p + 1] - ranks[p];
  }
  return page;
}

std::vector<size_t> chart_de_rham_cohomology(size_t m, size_t qmax) {
  // Certify the contraction identity on every monomial form with exponents
  // summing to at most 2 over the first min(m, 2) variables.
  size_t mv = std::min<size_t>(m, 2);
  std::vector<std::vector<int32_t>> exps;
  std::vector<int32_t> cur(mv, 0);
  std::function<void(size_t, int32_t)> gen = [&](size_t pos, int32_t left) {
    if (pos == mv) {
      exps.push_back(cur);
      return;
    }
    for (int32_t e = 0; e <= left; ++e) {
      cur[pos] = e;
      gen(pos + 1, left - e);
    }
    cur[pos] = 0;
  };
  gen(0, 2);
  std::vector<Rat> origin(m, Rat(0));
  for (uint32_t mask = 0; mask < (1u << m); ++mask) {
    for (const auto& e : exps) {
      TlaForm f(m, 0, ValueKind::kScalar);
      Monomial mono;
      mono.x.assign(e.begin(), e.end());
      mono.canonicalize();
      PolyFn w;
      w.add_term(mono, Scalar(1));
      f.add(LegKey{mask, 0}, {w});
      TlaForm lhs = de_rham_d(poincare_homotopy(f, origin)) +
                    poincare_homotopy(de_rham_d(f), origin);
      TlaForm rhs = f;
      if (mask == 0) {
        TlaForm ev(m, 0, ValueKind::kScalar);
        std::vector<Scalar> zero(m, Scalar(0));
        ev.add(LegKey{0, 0}, {PolyFn::constant(w.eval(zero))});
        rhs = rhs - ev;
      }
      if (!(lhs == rhs))
        throw std::logic_error("chart_de_rham_cohomology: contraction "
                               "identity failed");
    }
  }
  std::vector<size_t> dims(qmax + 1, 0);
  if (!dims.empty()) dims[0] = 1;
  return dims;
}

}  // namespace tla
