#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tla/lie_algebra.hpp"
#include "tla/linalg.hpp"
#include "tla/poly.hpp"
#include "tla/section.hpp"

namespace tla {

enum class ValueKind { kScalar, kAlgebra };
// Which coframe the inner legs of a component refer to: the generator coframe
// theta^a, or the connection-shifted coframe ell^a = A^a - theta^a.
enum class InnerBasis { kTheta, kEll };

// Leg sets are bitmasks over ascending indices; a component (I, J) denotes
// the monomial coeff * dx^I ^ theta^J (dx legs first, both ascending).
struct LegKey {
  uint32_t dx = 0;
  uint32_t th = 0;
  auto operator<=>(const LegKey&) const = default;
};

std::vector<size_t> mask_to_list(uint32_t mask);
// Sign of merging two ascending leg blocks into one ascending block; 0 when
// they overlap.
int merge_sign(uint32_t a, uint32_t b);
// Sign of sorting an arbitrary leg list ascending; 0 on repeats. Fills mask.
int sort_sign(const std::vector<size_t>& legs, uint32_t& mask);

// Differential form on one chart of a locally trivialized algebroid, with
// exact function coefficients. Values are either scalars (coefficient vector
// of size 1) or inner-algebra vectors (size n). Components of several degrees
// may coexist; all operations act componentwise in degree.
class TlaForm {
 public:
  TlaForm() = default;
  TlaForm(size_t m, size_t n, ValueKind kind,
          InnerBasis basis = InnerBasis::kTheta)
      : m_(m), n_(n), kind_(kind), basis_(basis) {}

  size_t m() const { return m_; }
  size_t n() const { return n_; }
  ValueKind kind() const { return kind_; }
  InnerBasis basis() const { return basis_; }
  size_t value_size() const { return kind_ == ValueKind::kScalar ? 1 : n_; }

  bool is_zero() const { return comps_.empty(); }
  const std::map<LegKey, std::vector<PolyFn>>& comps() const { return comps_; }

  // Adds coeffs * dx^I ^ theta^J; drops zero coefficient vectors.
  void add(LegKey key, const std::vector<PolyFn>& coeffs);
  void add_scaled(LegKey key, const Scalar& s,
                  const std::vector<PolyFn>& coeffs);
  // Component accessor (zero vector when absent).
  std::vector<PolyFn> component(LegKey key) const;

  std::set<std::pair<size_t, size_t>> degrees() const;  // (r, s) pairs present
  bool homogeneous_degree(size_t& out) const;  // total degree if homogeneous

  // Applies f to every coefficient (used for rho reduction and evaluation
  // shifts); drops components that become zero.
  template <typename Fn>
  TlaForm map_coeffs(Fn&& f) const {
    TlaForm r(m_, n_, kind_, basis_);
    for (const auto& [key, c] : comps_) {
      std::vector<PolyFn> v;
      v.reserve(c.size());
      for (const PolyFn& p : c) v.push_back(f(p));
      r.add(key, v);
    }
    return r;
  }

  std::string str() const;

 private:
  size_t m_ = 0, n_ = 0;
  ValueKind kind_ = ValueKind::kScalar;
  InnerBasis basis_ = InnerBasis::kTheta;
  std::map<LegKey, std::vector<PolyFn>> comps_;
};

TlaForm operator+(const TlaForm& a, const TlaForm& b);
TlaForm operator-(const TlaForm& a, const TlaForm& b);
TlaForm operator-(const TlaForm& a);
TlaForm operator*(const Scalar& c, const TlaForm& a);
TlaForm operator*(const PolyFn& f, const TlaForm& a);
bool operator==(const TlaForm& a, const TlaForm& b);

// Exterior product. At most one operand may be algebra-valued; the value
// rides along. Operands must share (m, n, basis).
TlaForm wedge(const TlaForm& a, const TlaForm& b);

// Coordinate differential d: inserts dx legs, acts on coefficients only.
TlaForm de_rham_d(const TlaForm& f);

// Inner (generator-direction) differential: the coframe rule
// theta^c -> -1/2 C^c_ab theta^a ^ theta^b extended as a graded derivation,
// plus, for algebra values, the term theta^a ^ (.) twisted into [E_a, value];
// carries the (-1)^{#dx legs} bicomplex sign so that it anticommutes with d.
// Requires theta-basis components.
TlaForm inner_diff(const LieAlgebra& L, const TlaForm& f);

// Full differential: de_rham_d + inner_diff. Squares to zero.
TlaForm total_diff(const LieAlgebra& L, const TlaForm& f);

// Multilinear evaluation of the degree-|sections| part on local sections;
// each leg pairs as dx^mu(X+gamma) = X^mu, theta^a(X+gamma) = gamma^a, with
// the determinant convention. Result has value_size entries.
std::vector<PolyFn> evaluate(const TlaForm& f,
                             const std::vector<TlaSection>& sections);

// Replaces every inner leg a by the degree-1 scalar form leg_images[a]
// (expressed in target_basis) and retags the result. Used for coframe
// changes and transition-twisted pullbacks.
TlaForm substitute_inner_legs(const TlaForm& f,
                              const std::vector<TlaForm>& leg_images,
                              InnerBasis target_basis);

// Coframe change theta <-> ell for connection coefficients A (n x m,
// A^a = sum_mu A(a,mu) dx^mu): both directions substitute leg a by
// A^a - (other-basis leg a).
TlaForm to_mixed_basis(const TlaForm& f, const PolyMat& A);
TlaForm from_mixed_basis(const TlaForm& f, const PolyMat& A);

// Graded pairing of two algebra-valued forms through a constant symmetric
// inner product h: on decomposable components equals h_ab fa fb *
// (legs of a) ^ (legs of b); this is the shuffle-sum extension evaluated in
// the determinant convention. Result is scalar-valued.
TlaForm h_pairing(const ScalarMat& h, const TlaForm& a, const TlaForm& b);

// Applies a linear map to the value vector of every component; legs are
// untouched. M must have f.value_size() columns, and as many rows as the
// output value size (1 for scalar output, n for algebra output). Used for
// transition conjugation and for trace functionals.
TlaForm map_value(const TlaForm& f, const PolyMat& M, ValueKind out_kind);

}  // namespace tla
