#include "tla/form.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace tla {

std::vector<size_t> mask_to_list(uint32_t mask) {
  std::vector<size_t> out;
  for (size_t i = 0; mask >> i; ++i)
    if ((mask >> i) & 1u) out.push_back(i);
  return out;
}

int merge_sign(uint32_t a, uint32_t b) {
  if (a & b) return 0;
  // Inversions between blocks: pairs (x in a, y in b) with y < x.
  int parity = 0;
  for (size_t y = 0; b >> y; ++y)
    if ((b >> y) & 1u) parity ^= std::popcount(a >> (y + 1)) & 1;
  return parity ? -1 : 1;
}

int sort_sign(const std::vector<size_t>& legs, uint32_t& mask) {
  mask = 0;
  int parity = 0;
  for (size_t i = 0; i < legs.size(); ++i) {
    for (size_t j = i + 1; j < legs.size(); ++j) {
      if (legs[i] == legs[j]) return 0;
      if (legs[i] > legs[j]) parity ^= 1;
    }
    mask |= 1u << legs[i];
  }
  return parity ? -1 : 1;
}

namespace {

bool all_zero(const std::vector<PolyFn>& v) {
  for (const PolyFn& p : v)
    if (!p.is_zero()) return false;
  return true;
}

void check_compatible(const TlaForm& a, const TlaForm& b) {
  if (a.m() != b.m() || a.n() != b.n() || a.basis() != b.basis())
    throw std::domain_error("TlaForm: incompatible operands");
}

}  // namespace

void TlaForm::add(LegKey key, const std::vector<PolyFn>& coeffs) {
  if (coeffs.size() != value_size())
    throw std::domain_error("TlaForm: wrong value arity");
  if (all_zero(coeffs)) return;
  auto [it, inserted] = comps_.try_emplace(key, coeffs);
  if (!inserted) {
    for (size_t i = 0; i < coeffs.size(); ++i) it->second[i] += coeffs[i];
    if (all_zero(it->second)) comps_.erase(it);
  }
}

void TlaForm::add_scaled(LegKey key, const Scalar& s,
                         const std::vector<PolyFn>& coeffs) {
  if (s.is_zero()) return;
  std::vector<PolyFn> scaled;
  scaled.reserve(coeffs.size());
  for (const PolyFn& p : coeffs) scaled.push_back(s * p);
  add(key, scaled);
}

std::vector<PolyFn> TlaForm::component(LegKey key) const {
  auto it = comps_.find(key);
  if (it != comps_.end()) return it->second;
  return std::vector<PolyFn>(value_size());
}

std::set<std::pair<size_t, size_t>> TlaForm::degrees() const {
  std::set<std::pair<size_t, size_t>> out;
  for (const auto& [key, c] : comps_)
    out.insert({std::popcount(key.dx), std::popcount(key.th)});
  return out;
}

bool TlaForm::homogeneous_degree(size_t& out) const {
  bool first = true;
  for (const auto& [key, c] : comps_) {
    size_t d = std::popcount(key.dx) + std::popcount(key.th);
    if (first) {
      out = d;
      first = false;
    } else if (out != d) {
      return false;
    }
  }
  if (first) out = 0;
  return true;
}

std::string TlaForm::str() const {
  if (comps_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : comps_) {
    if (!first) os << "  +  ";
    first = false;
    os << "(";
    for (size_t i = 0; i < c.size(); ++i) {
      if (i) os << "; ";
      os << c[i].str();
    }
    os << ")";
    const char* inner = basis_ == InnerBasis::kTheta ? "th" : "l";
    for (size_t mu : mask_to_list(key.dx)) os << " dx" << (mu + 1);
    for (size_t a : mask_to_list(key.th)) os << " " << inner << (a + 1);
  }
  return os.str();
}

TlaForm operator+(const TlaForm& a, const TlaForm& b) {
  check_compatible(a, b);
  if (a.kind() != b.kind())
    throw std::domain_error("TlaForm: mixed value kinds in sum");
  TlaForm r = a;
  for (const auto& [key, c] : b.comps()) r.add(key, c);
  return r;
}

TlaForm operator-(const TlaForm& a, const TlaForm& b) {
  return a + (Scalar(-1) * b);
}

TlaForm operator-(const TlaForm& a) { return Scalar(-1) * a; }

TlaForm operator*(const Scalar& c, const TlaForm& a) {
  TlaForm r(a.m(), a.n(), a.kind(), a.basis());
  for (const auto& [key, v] : a.comps()) r.add_scaled(key, c, v);
  return r;
}

TlaForm operator*(const PolyFn& f, const TlaForm& a) {
  TlaForm r(a.m(), a.n(), a.kind(), a.basis());
  if (f.is_zero()) return r;
  for (const auto& [key, v] : a.comps()) {
    std::vector<PolyFn> scaled;
    scaled.reserve(v.size());
    for (const PolyFn& p : v) scaled.push_back(f * p);
    r.add(key, scaled);
  }
  return r;
}

bool operator==(const TlaForm& a, const TlaForm& b) {
  return a.m() == b.m() && a.n() == b.n() && a.kind() == b.kind() &&
         a.basis() == b.basis() && a.comps() == b.comps();
}

TlaForm wedge(const TlaForm& a, const TlaForm& b) {
  check_compatible(a, b);
  if (a.kind() == ValueKind::kAlgebra && b.kind() == ValueKind::kAlgebra)
    throw std::domain_error("TlaForm: wedge of two algebra-valued forms");
  ValueKind kind = (a.kind() == ValueKind::kAlgebra || b.kind() == ValueKind::kAlgebra)
                       ? ValueKind::kAlgebra
                       : ValueKind::kScalar;
  TlaForm r(a.m(), a.n(), kind, a.basis());
  for (const auto& [ka, ca] : a.comps()) {
    int sa = std::popcount(ka.th);
    for (const auto& [kb, cb] : b.comps()) {
      // dx^I1 th^J1 ^ dx^I2 th^J2: move dx^I2 past th^J1, then merge blocks.
      int sign = ((sa * std::popcount(kb.dx)) % 2) ? -1 : 1;
      int sdx = merge_sign(ka.dx, kb.dx);
      int sth = merge_sign(ka.th, kb.th);
      if (sdx == 0 || sth == 0) continue;
      sign *= sdx * sth;
      LegKey key{ka.dx | kb.dx, ka.th | kb.th};
      // Exactly one operand carries the value vector.
      std::vector<PolyFn> val;
      if (a.kind() == ValueKind::kAlgebra) {
        val.reserve(ca.size());
        for (const PolyFn& p : ca) val.push_back(p * cb[0]);
      } else {
        val.reserve(cb.size());
        for (const PolyFn& p : cb) val.push_back(ca[0] * p);
      }
      r.add_scaled(key, Scalar(sign), val);
    }
  }
  return r;
}

TlaForm de_rham_d(const TlaForm& f) {
  TlaForm r(f.m(), f.n(), f.kind(), f.basis());
  for (const auto& [key, c] : f.comps()) {
    for (size_t mu = 0; mu < f.m(); ++mu) {
      uint32_t bit = 1u << mu;
      if (key.dx & bit) continue;
      int sign = merge_sign(bit, key.dx);
      std::vector<PolyFn> dc;
      dc.reserve(c.size());
      bool nonzero = false;
      for (const PolyFn& p : c) {
        dc.push_back(p.derivative_x(mu));
        nonzero = nonzero || !dc.back().is_zero();
      }
      if (!nonzero) continue;
      r.add_scaled(LegKey{key.dx | bit, key.th}, Scalar(sign), dc);
    }
  }
  return r;
}

TlaForm inner_diff(const LieAlgebra& L, const TlaForm& f) {
  if (f.basis() != InnerBasis::kTheta)
    throw std::domain_error("inner_diff: needs theta-basis components");
  size_t n = f.n();
  TlaForm r(f.m(), n, f.kind(), f.basis());
  for (const auto& [key, c] : f.comps()) {
    int twist = (std::popcount(key.dx) % 2) ? -1 : 1;
    std::vector<size_t> J = mask_to_list(key.th);
    // Coframe rule applied at each leg position with derivation signs.
    for (size_t kpos = 0; kpos < J.size(); ++kpos) {
      int pos_sign = (kpos % 2) ? -1 : 1;
      for (size_t a = 0; a < n; ++a) {
        for (size_t b = a + 1; b < n; ++b) {
          const Scalar& cab = L.c(a, b, J[kpos]);
          if (cab.is_zero()) continue;
          std::vector<size_t> legs;
          legs.reserve(J.size() + 1);
          for (size_t i = 0; i < J.size(); ++i) {
            if (i == kpos) {
              legs.push_back(a);
              legs.push_back(b);
            } else {
              legs.push_back(J[i]);
            }
          }
          uint32_t mask = 0;
          int ssign = sort_sign(legs, mask);
          if (ssign == 0) continue;
          Scalar coeff = Scalar(twist * pos_sign * ssign) * (-cab);
          r.add_scaled(LegKey{key.dx, mask}, coeff, c);
        }
      }
    }
    // Adjoint action term for algebra values: theta^a in front, [E_a, value].
    if (f.kind() == ValueKind::kAlgebra) {
      for (size_t a = 0; a < n; ++a) {
        uint32_t bit = 1u << a;
        if (key.th & bit) continue;
        int msign = merge_sign(bit, key.th);
        std::vector<PolyFn> adv(n);
        bool nonzero = false;
        for (size_t k = 0; k < n; ++k) {
          for (size_t b = 0; b < n; ++b) {
            const Scalar& cabk = L.c(a, b, k);
            if (cabk.is_zero()) continue;
            adv[k] += cabk * c[b];
          }
          nonzero = nonzero || !adv[k].is_zero();
        }
        if (!nonzero) continue;
        r.add_scaled(LegKey{key.dx, key.th | bit}, Scalar(twist * msign), adv);
      }
    }
  }
  return r;
}

TlaForm total_diff(const LieAlgebra& L, const TlaForm& f) {
  return de_rham_d(f) + inner_diff(L, f);
}

std::vector<PolyFn> evaluate(const TlaForm& f,
                             const std::vector<TlaSection>& sections) {
  if (f.basis() != InnerBasis::kTheta)
    throw std::domain_error("evaluate: needs theta-basis components");
  size_t q = sections.size();
  std::vector<PolyFn> out(f.value_size());
  for (const auto& [key, c] : f.comps()) {
    std::vector<size_t> I = mask_to_list(key.dx);
    std::vector<size_t> J = mask_to_list(key.th);
    if (I.size() + J.size() != q) continue;  // only the matching degree
    PolyMat eval(q, q);
    for (size_t col = 0; col < q; ++col) {
      const TlaSection& s = sections[col];
      for (size_t row = 0; row < I.size(); ++row)
        eval.at(row, col) = s.X[I[row]];
      for (size_t row = 0; row < J.size(); ++row)
        eval.at(I.size() + row, col) = s.gamma[J[row]];
    }
    PolyFn det = eval.det_laplace();
    if (det.is_zero()) continue;
    for (size_t i = 0; i < out.size(); ++i) out[i] += c[i] * det;
  }
  return out;
}

TlaForm substitute_inner_legs(const TlaForm& f,
                              const std::vector<TlaForm>& leg_images,
                              InnerBasis target_basis) {
  TlaForm r(f.m(), f.n(), f.kind(), target_basis);
  for (const auto& [key, c] : f.comps()) {
    TlaForm acc(f.m(), f.n(), f.kind(), target_basis);
    acc.add(LegKey{key.dx, 0}, c);
    for (size_t a : mask_to_list(key.th)) acc = wedge(acc, leg_images[a]);
    r = r + acc;
  }
  return r;
}

namespace {

// Images leg a -> A^a - (opposite leg a), expressed in target basis.
std::vector<TlaForm> coframe_shift_images(size_t m, size_t n, const PolyMat& A,
                                          InnerBasis target) {
  std::vector<TlaForm> images;
  images.reserve(n);
  for (size_t a = 0; a < n; ++a) {
    TlaForm im(m, n, ValueKind::kScalar, target);
    for (size_t mu = 0; mu < m; ++mu)
      im.add(LegKey{1u << mu, 0}, {A.at(a, mu)});
    im.add_scaled(LegKey{0, 1u << a}, Scalar(-1), {PolyFn(1L)});
    images.push_back(std::move(im));
  }
  return images;
}

}  // namespace

TlaForm to_mixed_basis(const TlaForm& f, const PolyMat& A) {
  if (f.basis() != InnerBasis::kTheta)
    throw std::domain_error("to_mixed_basis: already in connection coframe");
  return substitute_inner_legs(
      f, coframe_shift_images(f.m(), f.n(), A, InnerBasis::kEll),
      InnerBasis::kEll);
}

TlaForm from_mixed_basis(const TlaForm& f, const PolyMat& A) {
  if (f.basis() != InnerBasis::kEll)
    throw std::domain_error("from_mixed_basis: already in generator coframe");
  return substitute_inner_legs(
      f, coframe_shift_images(f.m(), f.n(), A, InnerBasis::kTheta),
      InnerBasis::kTheta);
}

TlaForm h_pairing(const ScalarMat& h, const TlaForm& a, const TlaForm& b) {
  check_compatible(a, b);
  if (a.kind() != ValueKind::kAlgebra || b.kind() != ValueKind::kAlgebra)
    throw std::domain_error("h_pairing: needs algebra-valued operands");
  size_t n = a.n();
  TlaForm r(a.m(), n, ValueKind::kScalar, a.basis());
  for (const auto& [ka, ca] : a.comps()) {
    int sa = std::popcount(ka.th);
    for (const auto& [kb, cb] : b.comps()) {
      int sign = ((sa * std::popcount(kb.dx)) % 2) ? -1 : 1;
      int sdx = merge_sign(ka.dx, kb.dx);
      int sth = merge_sign(ka.th, kb.th);
      if (sdx == 0 || sth == 0) continue;
      sign *= sdx * sth;
      PolyFn paired;
      for (size_t x = 0; x < n; ++x) {
        for (size_t y = 0; y < n; ++y) {
          if (h.at(x, y).is_zero()) continue;
          paired += h.at(x, y) * (ca[x] * cb[y]);
        }
      }
      if (paired.is_zero()) continue;
      r.add_scaled(LegKey{ka.dx | kb.dx, ka.th | kb.th}, Scalar(sign),
                   {paired});
    }
  }
  return r;
}

TlaForm map_value(const TlaForm& f, const PolyMat& M, ValueKind out_kind) {
  if (M.cols() != f.value_size())
    throw std::domain_error("map_value: shape mismatch");
  size_t out_size = out_kind == ValueKind::kScalar ? 1 : f.n();
  if (M.rows() != out_size)
    throw std::domain_error("map_value: output size mismatch");
  TlaForm r(f.m(), f.n(), out_kind, f.basis());
  for (const auto& [key, c] : f.comps()) {
    std::vector<PolyFn> v(out_size, PolyFn(0));
    for (size_t i = 0; i < out_size; ++i)
      for (size_t j = 0; j < c.size(); ++j) {
        if (M.at(i, j).is_zero() || c[j].is_zero()) continue;
        v[i] += M.at(i, j) * c[j];
      }
    r.add(key, v);
  }
  return r;
}

}  // namespace tla

