#pragma once

// Fixture builders shared by the unit and acceptance suites: small nerves,
// the four reference gluings, and random generators with the shapes the
// property checks need.

#include <utility>
#include <vector>

#include "tla/atiyah.hpp"
#include "tla/form.hpp"
#include "tla/gluing.hpp"
#include "tla/integrate.hpp"
#include "tla/lie_algebra.hpp"
#include "tla/linalg.hpp"
#include "tla/random_gen.hpp"

namespace tla::testutil {

inline std::vector<LieAlgebra> fixture_algebras() {
  std::vector<LieAlgebra> out;
  out.push_back(abelian_algebra(2));
  out.push_back(sl2_algebra());
  out.push_back(heis3_algebra());
  out.push_back(aff1_algebra());
  out.push_back(matrix_algebra(2));
  return out;
}

inline Box unit_box(size_t m) {
  Box b;
  for (size_t mu = 0; mu < m; ++mu) b.iv.push_back({Rat(0), Rat(1)});
  return b;
}

inline std::vector<std::vector<Scalar>> pts(
    std::initializer_list<std::vector<Scalar>> l) {
  return std::vector<std::vector<Scalar>>(l);
}

inline Nerve single_chart_nerve(size_t m) {
  Nerve nv;
  nv.m = m;
  nv.num_charts = 1;
  nv.boxes.push_back(unit_box(m));
  nv.samples[{0}] = pts({std::vector<Scalar>(m, Scalar(Rat(1, 2)))});
  return nv;
}

// Two charts over one interval coordinate, overlapping in the middle.
inline Nerve interval_nerve() {
  Nerve nv;
  nv.m = 1;
  nv.num_charts = 2;
  Box b0, b1;
  b0.iv.push_back({Rat(0), Rat(1)});
  b1.iv.push_back({Rat(1, 2), Rat(3, 2)});
  nv.boxes = {b0, b1};
  nv.simplices = {{0, 1}};
  nv.samples[{0}] = pts({{Scalar(Rat(1, 2))}});
  nv.samples[{1}] = pts({{Scalar(1)}});
  nv.samples[{0, 1}] = pts({{Scalar(Rat(3, 4))}});
  return nv;
}

// Three charts with pairwise overlaps and no triple overlap.
inline Nerve circle_nerve() {
  Nerve nv;
  nv.m = 1;
  nv.num_charts = 3;
  for (size_t i = 0; i < 3; ++i) nv.boxes.push_back(unit_box(1));
  nv.simplices = {{0, 1}, {0, 2}, {1, 2}};
  std::vector<Scalar> p{Scalar(Rat(1, 2))};
  for (size_t i = 0; i < 3; ++i) nv.samples[{i}] = pts({p});
  nv.samples[{0, 1}] = pts({p});
  nv.samples[{0, 2}] = pts({p});
  nv.samples[{1, 2}] = pts({p});
  return nv;
}

// Three charts including the triple overlap, over a box avoiding x = 0 so
// Laurent transition units stay invertible.
inline Nerve disk_nerve() {
  Nerve nv;
  nv.m = 1;
  nv.num_charts = 3;
  Box b;
  b.iv.push_back({Rat(1), Rat(2)});
  for (size_t i = 0; i < 3; ++i) nv.boxes.push_back(b);
  nv.simplices = {{0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};
  std::vector<Scalar> p{Scalar(Rat(3, 2))};
  for (size_t i = 0; i < 3; ++i) nv.samples[{i}] = pts({p});
  nv.samples[{0, 1}] = pts({p});
  nv.samples[{0, 2}] = pts({p});
  nv.samples[{1, 2}] = pts({p});
  nv.samples[{0, 1, 2}] = pts({p});
  return nv;
}

inline PolyMat identity_poly(size_t n) {
  PolyMat id(n, n);
  for (size_t a = 0; a < n; ++a) id.at(a, a) = PolyFn(1);
  return id;
}

inline GluingData trivial_gluing(LieAlgebra L, Nerve nv) {
  size_t n = L.dim(), m = nv.m;
  GluingData gd(std::move(L), std::move(nv));
  for (const auto& s : gd.nerve.simplices_of_dim(1)) {
    for (auto [i, j] : {std::pair<size_t, size_t>{s[0], s[1]}, {s[1], s[0]}}) {
      gd.alpha_off[{i, j}] = identity_poly(n);
      gd.chi_off[{i, j}] = PolyMat(n, m);
    }
  }
  validate_gluing(gd);
  return gd;
}

// Abelian n = 1 over the interval nerve with the additive shift chi = x dx.
inline GluingData abelian_chi_gluing() {
  GluingData gd(abelian_algebra(1), interval_nerve());
  gd.alpha_off[{0, 1}] = identity_poly(1);
  gd.alpha_off[{1, 0}] = identity_poly(1);
  PolyMat c01(1, 1), c10(1, 1);
  c01.at(0, 0) = PolyFn::x(0);
  c10.at(0, 0) = -PolyFn::x(0);
  gd.chi_off[{0, 1}] = c01;
  gd.chi_off[{1, 0}] = c10;
  validate_gluing(gd);
  return gd;
}

// sl2 over the interval nerve glued by the constant inner automorphism
// Ad(diag(2, 1/2)): H -> H, E -> 4E, F -> F/4.
inline GluingData constant_ad_sl2_gluing() {
  GluingData gd(sl2_algebra(), interval_nerve());
  PolyMat a01(3, 3), a10(3, 3);
  a01.at(0, 0) = PolyFn(1);
  a01.at(1, 1) = PolyFn(4);
  a01.at(2, 2) = PolyFn(Scalar(Rat(1, 4)));
  a10.at(0, 0) = PolyFn(1);
  a10.at(1, 1) = PolyFn(Scalar(Rat(1, 4)));
  a10.at(2, 2) = PolyFn(4);
  gd.alpha_off[{0, 1}] = a01;
  gd.alpha_off[{1, 0}] = a10;
  gd.chi_off[{0, 1}] = PolyMat(3, 1);
  gd.chi_off[{1, 0}] = PolyMat(3, 1);
  validate_gluing(gd);
  return gd;
}

// Rank-one transition units x, x^2, x^3 on the disk nerve; the generated
// shifts are the logarithmic derivatives -1/x, -2/x, -3/x.
inline TransitionFamily laurent_unit_transitions() {
  TransitionFamily tf;
  tf.rep_dim = 1;
  auto unit = [](int32_t e) {
    PolyMat g(1, 1);
    g.at(0, 0) = PolyFn::x(0, e);
    return g;
  };
  tf.g[{0, 1}] = unit(1);
  tf.g[{1, 0}] = unit(-1);
  tf.g[{1, 2}] = unit(2);
  tf.g[{2, 1}] = unit(-2);
  tf.g[{0, 2}] = unit(3);
  tf.g[{2, 0}] = unit(-3);
  return tf;
}

inline GluingData atiyah_p1_gluing() {
  std::vector<ScalarMat> basis{ScalarMat(1, 1)};
  basis[0].at(0, 0) = Scalar(1);
  return atiyah_gluing(abelian_algebra(1), basis, disk_nerve(),
                       laurent_unit_transitions());
}

// gl2 adjoint gluing over the interval nerve from the unipotent transition
// [[1, x], [0, 1]].
inline GluingData endo_p2_gluing() {
  TransitionFamily tf;
  tf.rep_dim = 2;
  PolyMat g(2, 2), gi(2, 2);
  g.at(0, 0) = PolyFn(1);
  g.at(0, 1) = PolyFn::x(0);
  g.at(1, 1) = PolyFn(1);
  gi.at(0, 0) = PolyFn(1);
  gi.at(0, 1) = -PolyFn::x(0);
  gi.at(1, 1) = PolyFn(1);
  tf.g[{0, 1}] = g;
  tf.g[{1, 0}] = gi;
  return atiyah_gluing(matrix_algebra(2), matrix_realization(2),
                       interval_nerve(), tf);
}

// The four reference gluings of the transition-commutation checks.
inline std::vector<GluingData> reference_gluings() {
  std::vector<GluingData> out;
  out.push_back(trivial_gluing(sl2_algebra(), interval_nerve()));
  out.push_back(abelian_chi_gluing());
  out.push_back(constant_ad_sl2_gluing());
  out.push_back(atiyah_p1_gluing());
  return out;
}

// Random invertible matrix with entries in a small rational range.
inline ScalarMat random_invertible(Rng& rng, size_t n) {
  for (;;) {
    ScalarMat b(n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) b.at(i, j) = Scalar(rng.rat(2));
    if (!b.det_laplace().is_zero()) return b;
  }
}

// Positive-definite matrix with |det| a perfect rational square: B^T B for
// invertible B.
inline ScalarMat random_spd(Rng& rng, size_t n) {
  ScalarMat b = random_invertible(rng, n);
  ScalarMat bt(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) bt.at(i, j) = b.at(j, i);
  return bt * b;
}

inline PolyMat random_connection(Rng& rng, size_t n, size_t m) {
  PolyMat a(n, m);
  for (size_t i = 0; i < n; ++i)
    for (size_t mu = 0; mu < m; ++mu) a.at(i, mu) = rng.poly(m, 2, 2);
  return a;
}

// Scalar polynomial that vanishes on the whole boundary of the unit box:
// a random polynomial times prod_mu x_mu (1 - x_mu).
inline PolyFn boundary_vanishing_poly(Rng& rng, size_t m) {
  PolyFn f = rng.poly(m, 1, 2);
  for (size_t mu = 0; mu < m; ++mu)
    f *= PolyFn::x(mu) * (PolyFn(1) - PolyFn::x(mu));
  return f;
}

inline TlaForm boundary_vanishing_form(Rng& rng, size_t m, size_t n,
                                       ValueKind kind, size_t degree) {
  TlaForm f = rng.form(m, n, kind, degree);
  TlaForm out(m, n, kind);
  for (const auto& [key, c] : f.comps()) {
    std::vector<PolyFn> v = c;
    for (PolyFn& p : v) {
      for (size_t mu = 0; mu < m; ++mu)
        p *= PolyFn::x(mu) * (PolyFn(1) - PolyFn::x(mu));
    }
    out.add(key, v);
  }
  return out;
}

}  // namespace tla::testutil
