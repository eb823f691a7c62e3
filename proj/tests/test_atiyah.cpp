#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "tla/atiyah.hpp"
#include "tla/integrate.hpp"
#include "tla/random_gen.hpp"

using namespace tla;
using namespace tla::testutil;
using doctest::Contains;

namespace {

ScalarMat elem(size_t p, size_t r, size_t c) {
  ScalarMat e(p, p);
  e.at(r, c) = Scalar(1);
  return e;
}

// [[1, t], [0, 1]] and its inverse [[1, -t], [0, 1]].
PolyMat unipotent(const PolyFn& t) {
  PolyMat g(2, 2);
  g.at(0, 0) = PolyFn(1);
  g.at(0, 1) = t;
  g.at(1, 1) = PolyFn(1);
  return g;
}

TransitionFamily unipotent_transitions(const PolyFn& t) {
  TransitionFamily tf;
  tf.rep_dim = 2;
  tf.g[{0, 1}] = unipotent(t);
  tf.g[{1, 0}] = unipotent(-t);
  return tf;
}

ScalarMat half_killing_sl2() {
  ScalarMat k = sl2_algebra().killing_form();
  ScalarMat h(3, 3);
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) h.at(i, j) = Scalar(Rat(1, 2)) * k.at(i, j);
  return h;
}

ScalarMat identity_metric(size_t n) {
  ScalarMat h(n, n);
  for (size_t i = 0; i < n; ++i) h.at(i, i) = Scalar(1);
  return h;
}

}  // namespace

TEST_CASE("transition family validation") {
  Nerve iv = interval_nerve();

  TransitionFamily ok = unipotent_transitions(PolyFn::x(0));
  validate_transitions(iv, ok);

  // a matrix keyed off the listed 1-simplices is rejected
  TransitionFamily stray = ok;
  stray.g[{0, 0}] = identity_poly(2);
  CHECK_THROWS_WITH_AS(validate_transitions(iv, stray),
                       Contains("not a 1-simplex"), std::domain_error);
  TransitionFamily off = ok;
  off.g[{0, 2}] = identity_poly(2);
  off.g[{2, 0}] = identity_poly(2);
  CHECK_THROWS_WITH_AS(validate_transitions(iv, off),
                       Contains("not a 1-simplex"), std::domain_error);

  // rep dimension must match every stored matrix
  TransitionFamily thin = ok;
  thin.rep_dim = 1;
  CHECK_THROWS_WITH_AS(validate_transitions(iv, thin),
                       Contains("shape mismatch"), std::domain_error);

  // both orientations are data; the reverse one cannot be omitted
  TransitionFamily half;
  half.rep_dim = 2;
  half.g[{0, 1}] = unipotent(PolyFn::x(0));
  CHECK_THROWS_WITH_AS(validate_transitions(iv, half),
                       Contains("no matrix for pair (1,0)"),
                       std::domain_error);

  // the supplied inverse is checked as a polynomial identity
  TransitionFamily wrong;
  wrong.rep_dim = 1;
  PolyMat gx(1, 1);
  gx.at(0, 0) = PolyFn::x(0);
  wrong.g[{0, 1}] = gx;
  wrong.g[{1, 0}] = gx;
  CHECK_THROWS_WITH_AS(validate_transitions(iv, wrong),
                       Contains("supplied inverse fails at (0,1)"),
                       std::domain_error);

  // triangle consistency on listed 2-simplices
  TransitionFamily broken = laurent_unit_transitions();
  PolyMat u4(1, 1), u4i(1, 1);
  u4.at(0, 0) = PolyFn::x(0, 4);
  u4i.at(0, 0) = PolyFn::x(0, -4);
  broken.g[{0, 2}] = u4;
  broken.g[{2, 0}] = u4i;
  CHECK_THROWS_WITH_AS(validate_transitions(disk_nerve(), broken),
                       Contains("cocycle fails at (0,1,2)"),
                       std::domain_error);
  validate_transitions(disk_nerve(), laurent_unit_transitions());
}

TEST_CASE("gluing generated by transition conjugation") {
  // constant transitions: conjugation only, all shifts vanish
  TransitionFamily cf = unipotent_transitions(PolyFn(1));
  GluingData cgd = atiyah_gluing(matrix_algebra(2), matrix_realization(2),
                                 interval_nerve(), cf);
  CHECK(cgd.chi(0, 1) == PolyMat(4, 1));
  CHECK(cgd.chi(1, 0) == PolyMat(4, 1));
  for (size_t r = 0; r < 4; ++r)
    for (size_t c = 0; c < 4; ++c) CHECK(cgd.alpha(0, 1).at(r, c).is_constant());
  // g E_11 g^{-1} = E_11 - E_12 for g = [[1,1],[0,1]]
  CHECK(cgd.alpha(0, 1).at(0, 0) == PolyFn(1));
  CHECK(cgd.alpha(0, 1).at(1, 0) == PolyFn(-1));

  // unipotent x-dependent transition: the shift is the logarithmic derivative
  GluingData egd = endo_p2_gluing();
  CHECK(egd.alpha(0, 1).at(1, 0) == -PolyFn::x(0));
  PolyMat echi(4, 1);
  echi.at(1, 0) = PolyFn(-1);  // g d(g^{-1})/dx = -E_12
  CHECK(egd.chi(0, 1) == echi);
  CHECK(verify_cocycles(egd).ok());

  // rank-one units x, x^2, x^3: alpha trivial, shifts -1/x, -2/x, -3/x
  GluingData lgd = atiyah_p1_gluing();
  CHECK(lgd.alpha(0, 1) == identity_poly(1));
  CHECK(lgd.alpha(1, 2) == identity_poly(1));
  CHECK(lgd.chi(0, 1).at(0, 0) == PolyFn(-1) * PolyFn::x(0, -1));
  CHECK(lgd.chi(1, 2).at(0, 0) == PolyFn(-2) * PolyFn::x(0, -1));
  CHECK(lgd.chi(0, 2).at(0, 0) == PolyFn(-3) * PolyFn::x(0, -1));
  // additivity of logarithmic derivatives along the triangle
  CHECK(lgd.chi(0, 2) == lgd.alpha(0, 1) * lgd.chi(1, 2) + lgd.chi(0, 1));
  CHECK(verify_cocycles(lgd).ok());

  // perturbing one transition matrix is caught before any gluing is built
  TransitionFamily bad = laurent_unit_transitions();
  PolyMat u4(1, 1), u4i(1, 1);
  u4.at(0, 0) = PolyFn::x(0, 4);
  u4i.at(0, 0) = PolyFn::x(0, -4);
  bad.g[{0, 2}] = u4;
  bad.g[{2, 0}] = u4i;
  std::vector<ScalarMat> unit{elem(1, 0, 0)};
  CHECK_THROWS_WITH_AS(
      atiyah_gluing(abelian_algebra(1), unit, disk_nerve(), bad),
      Contains("cocycle"), std::domain_error);

  // realization sanity: count, shape, brackets, independence
  TransitionFamily idtf = unipotent_transitions(PolyFn(0));
  CHECK_THROWS_WITH_AS(
      atiyah_gluing(abelian_algebra(2), {elem(2, 0, 0)}, interval_nerve(),
                    idtf),
      Contains("one basis matrix per generator"), std::domain_error);
  CHECK_THROWS_WITH_AS(
      atiyah_gluing(abelian_algebra(1), {elem(1, 0, 0)}, interval_nerve(),
                    idtf),
      Contains("shape mismatch"), std::domain_error);
  CHECK_THROWS_WITH_AS(
      atiyah_gluing(abelian_algebra(2), {elem(2, 0, 0), elem(2, 0, 1)},
                    interval_nerve(), idtf),
      Contains("do not realize the brackets"), std::domain_error);
  CHECK_THROWS_WITH_AS(
      atiyah_gluing(abelian_algebra(2), {elem(2, 0, 0), elem(2, 0, 0)},
                    interval_nerve(), idtf),
      Contains("dependent"), std::domain_error);

  // conjugation must stay inside the realized span
  TransitionFamily ux = unipotent_transitions(PolyFn::x(0));
  CHECK_THROWS_WITH_AS(
      atiyah_gluing(abelian_algebra(1), {elem(2, 0, 0)}, interval_nerve(), ux),
      Contains("conjugation leaves the realization span"), std::domain_error);
  // identity realization: conjugation fixed, the shift escapes the span
  ScalarMat id2 = identity_metric(2);
  CHECK_THROWS_WITH_AS(
      atiyah_gluing(abelian_algebra(1), {id2}, interval_nerve(), ux),
      Contains("logarithmic derivative leaves the realization span"),
      std::domain_error);
}

TEST_CASE("killing pairing as the inner metric") {
  ScalarMat k = killing_inner_metric(constant_ad_sl2_gluing());
  ScalarMat expect(3, 3);
  expect.at(0, 0) = Scalar(8);
  expect.at(1, 2) = Scalar(4);
  expect.at(2, 1) = Scalar(4);
  CHECK(k == expect);

  // the shared constant matrix closes a metric triple over the cover
  GluingData gd = constant_ad_sl2_gluing();
  ScalarMat hk = half_killing_sl2();
  CHECK(sqrt_abs_det(hk, "h") == Scalar(4));
  MetricTriple t;
  t.g = identity_metric(1);
  t.h = {killing_inner_metric(gd), killing_inner_metric(gd)};
  t.A = {PolyMat(3, 1), PolyMat(3, 1)};
  CHECK(check_metric_triple(gd, t).ok());

  // nilpotent and centered algebras have degenerate pairings
  CHECK_THROWS_WITH_AS(
      killing_inner_metric(trivial_gluing(heis3_algebra(), interval_nerve())),
      Contains("degenerate"), std::domain_error);
  CHECK_THROWS_WITH_AS(killing_inner_metric(endo_p2_gluing()),
                       Contains("degenerate"), std::domain_error);

  // a transition that is no automorphism breaks invariance (unvalidated data)
  GluingData fake(sl2_algebra(), interval_nerve());
  PolyMat a(3, 3), ai(3, 3);
  a.at(0, 0) = PolyFn(1);
  a.at(1, 1) = PolyFn(2);
  a.at(2, 2) = PolyFn(1);
  ai.at(0, 0) = PolyFn(1);
  ai.at(1, 1) = PolyFn(Scalar(Rat(1, 2)));
  ai.at(2, 2) = PolyFn(1);
  fake.alpha_off[{0, 1}] = a;
  fake.alpha_off[{1, 0}] = ai;
  fake.chi_off[{0, 1}] = PolyMat(3, 1);
  fake.chi_off[{1, 0}] = PolyMat(3, 1);
  CHECK_THROWS_WITH_AS(killing_inner_metric(fake),
                       Contains("does not preserve the pairing"),
                       std::domain_error);
}

TEST_CASE("trace pairing on the matrix algebra") {
  CHECK(trace_inner_metric(1) == identity_metric(1));

  ScalarMat h2 = trace_inner_metric(2);
  CHECK(h2.at(0, 0) == Scalar(1));  // tr(E_11 E_11)
  CHECK(h2.at(1, 2) == Scalar(1));  // tr(E_12 E_21)
  CHECK(h2.at(2, 1) == Scalar(1));
  CHECK(h2.at(3, 3) == Scalar(1));
  CHECK(h2.at(0, 3) == Scalar(0));  // tr(E_11 E_22)
  CHECK(h2.at(0, 1) == Scalar(0));

  for (size_t p = 1; p <= 3; ++p)
    CHECK_FALSE(trace_inner_metric(p).det_laplace().is_zero());
  CHECK(sqrt_abs_det(trace_inner_metric(2), "h") == Scalar(1));

  // conjugation-generated transitions preserve the pairing symbolically
  GluingData egd = endo_p2_gluing();
  PolyMat hp = to_poly(h2);
  for (auto [i, j] : {std::pair<size_t, size_t>{0, 1}, {1, 0}}) {
    PolyMat g = egd.alpha(i, j);
    CHECK(g.transpose() * hp * g == hp);
  }
}

TEST_CASE("traced inner integration over the endomorphism model") {
  GluingData gd = endo_p2_gluing();
  ScalarMat h2 = trace_inner_metric(2);
  MetricTriple t;
  t.g = identity_metric(1);
  t.h = {h2, h2};
  t.A = {gd.chi(0, 1), PolyMat(4, 1)};  // A_0 = alpha(0,1) 0 + chi(0,1)
  CHECK(check_metric_triple(gd, t).ok());

  // identity value: the trace multiplies the inner volume coefficient by p
  TlaForm top(1, 4, ValueKind::kAlgebra);
  top.add(LegKey{0, 0b1111}, {PolyFn(1), PolyFn(0), PolyFn(0), PolyFn(1)});
  LocalFamily fam = propagate_family(gd, 0, top);
  CHECK(check_global_form(gd, fam).ok());
  InnerIntegrateResult res = inner_integrate_trace(gd, fam, t, 2);
  CHECK(res.report.ok());
  TlaForm two(1, 4, ValueKind::kScalar);
  two.add(LegKey{0, 0}, {PolyFn(2)});
  CHECK(res.parts[0] == two);
  CHECK(res.parts[1] == two);

  // traceless value: the traced parts vanish identically
  TlaForm sl(1, 4, ValueKind::kAlgebra);
  sl.add(LegKey{0, 0b1111}, {PolyFn(0), PolyFn(1), PolyFn(0), PolyFn(0)});
  InnerIntegrateResult zero =
      inner_integrate_trace(gd, propagate_family(gd, 0, sl), t, 2);
  CHECK(zero.report.ok());
  CHECK(zero.parts[0].is_zero());
  CHECK(zero.parts[1].is_zero());

  // parts that fail to glue are reported with their 1-simplex
  LocalFamily broken{top, TlaForm(1, 4, ValueKind::kAlgebra)};
  InnerIntegrateResult bad = inner_integrate_trace(gd, broken, t, 2);
  CHECK_FALSE(bad.report.ok());
  CHECK(bad.report.violations[0].simplex == std::vector<size_t>{0, 1});

  CHECK_THROWS_WITH_AS(inner_integrate_trace(gd, {top}, t, 2),
                       Contains("one local form per chart"),
                       std::domain_error);

  // a negative transition determinant defeats the orientation requirement
  GluingData neg(abelian_algebra(1), interval_nerve());
  PolyMat m1(1, 1);
  m1.at(0, 0) = PolyFn(-1);
  neg.alpha_off[{0, 1}] = m1;
  neg.alpha_off[{1, 0}] = m1;
  neg.chi_off[{0, 1}] = PolyMat(1, 1);
  neg.chi_off[{1, 0}] = PolyMat(1, 1);
  validate_gluing(neg);
  MetricTriple tn;
  tn.g = identity_metric(1);
  tn.h = {identity_metric(1), identity_metric(1)};
  tn.A = {PolyMat(1, 1), PolyMat(1, 1)};
  LocalFamily fz{TlaForm(1, 1, ValueKind::kAlgebra),
                 TlaForm(1, 1, ValueKind::kAlgebra)};
  CHECK_THROWS_WITH_AS(inner_integrate_trace(neg, fz, tn, 1),
                       Contains("orientable"), std::domain_error);
}

TEST_CASE("trace commutes the inner integral with the differential") {
  LieAlgebra m2 = matrix_algebra(2);
  ScalarMat h2 = trace_inner_metric(2);
  PolyMat tr = trace_row(2);
  Rng rng(31);
  for (size_t deg = 3; deg <= 5; ++deg) {
    for (int it = 0; it < 6; ++it) {
      TlaForm w = rng.form(1, 4, ValueKind::kAlgebra, deg);
      TlaForm lhs = map_value(inner_integrate(total_diff(m2, w), h2), tr,
                              ValueKind::kScalar);
      TlaForm rhs =
          de_rham_d(map_value(inner_integrate(w, h2), tr, ValueKind::kScalar));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("inner integration commutation characterizes unimodularity") {
  Rng rng(59);
  std::vector<LieAlgebra> unimodular;
  unimodular.push_back(abelian_algebra(2));
  unimodular.push_back(sl2_algebra());
  unimodular.push_back(heis3_algebra());
  unimodular.push_back(matrix_algebra(2));
  for (const LieAlgebra& L : unimodular) {
    CHECK(L.is_unimodular());
    size_t n = L.dim();
    ScalarMat h = identity_metric(n);
    for (size_t deg = 0; deg <= n + 1; ++deg) {
      for (int it = 0; it < 4; ++it) {
        TlaForm w = rng.form(1, n, ValueKind::kScalar, deg);
        CHECK(inner_integrate(total_diff(L, w), h) ==
              de_rham_d(inner_integrate(w, h)));
      }
    }
  }

  // the affine line fails already on the plain first-generator leg
  LieAlgebra aff = aff1_algebra();
  CHECK_FALSE(aff.is_unimodular());
  TlaForm w(1, 2, ValueKind::kScalar);
  w.add(LegKey{0, 0b01}, {PolyFn(1)});
  ScalarMat h = identity_metric(2);
  CHECK_FALSE(inner_integrate(total_diff(aff, w), h) ==
              de_rham_d(inner_integrate(w, h)));
}

TEST_CASE("coupling of a differential with a closed form vanishes") {
  Rng rng(71);
  Box box = unit_box(1);

  LieAlgebra m2 = matrix_algebra(2);
  ScalarMat h2 = trace_inner_metric(2);
  for (auto [dw, db] : {std::pair<size_t, size_t>{0, 3}, {1, 2}, {2, 1},
                        {3, 0}}) {
    for (int it = 0; it < 3; ++it) {
      TlaForm w = boundary_vanishing_form(rng, 1, 4, ValueKind::kAlgebra, dw);
      TlaForm eta = total_diff(m2, rng.form(1, 4, ValueKind::kAlgebra, db));
      CHECK(integrate(h_pairing(h2, total_diff(m2, w), eta), h2, box) ==
            Scalar(0));
    }
  }

  LieAlgebra sl2 = sl2_algebra();
  ScalarMat hk = half_killing_sl2();
  for (auto [dw, db] : {std::pair<size_t, size_t>{0, 2}, {1, 1}, {2, 0}}) {
    for (int it = 0; it < 3; ++it) {
      TlaForm w = boundary_vanishing_form(rng, 1, 3, ValueKind::kAlgebra, dw);
      TlaForm eta = total_diff(sl2, rng.form(1, 3, ValueKind::kAlgebra, db));
      CHECK(integrate(h_pairing(hk, total_diff(sl2, w), eta), hk, box) ==
            Scalar(0));
    }
  }
}

TEST_CASE("determinant projection and trace splitting") {
  // identity value traces to p, traceless values to zero
  TlaSection unit;
  unit.X = {PolyFn::x(0)};
  unit.gamma = {PolyFn(1), PolyFn(0), PolyFn(0), PolyFn(1)};
  TlaSection du = det_projection(2, unit);
  CHECK(du.X == unit.X);
  CHECK(du.gamma == std::vector<PolyFn>{PolyFn(2)});

  TlaSection off;
  off.X = {PolyFn(0)};
  off.gamma = {PolyFn(0), PolyFn::x(0), PolyFn(0), PolyFn(0)};
  CHECK(det_projection(2, off).gamma == std::vector<PolyFn>{PolyFn(0)});

  // bracket morphism onto the rank-one abelian model
  LieAlgebra m2 = matrix_algebra(2);
  LieAlgebra ab1 = abelian_algebra(1);
  Rng rng(83);
  for (int it = 0; it < 15; ++it) {
    TlaSection s1 = rng.section(1, 4);
    TlaSection s2 = rng.section(1, 4);
    TlaSection lhs = det_projection(2, tla_bracket(m2, s1, s2));
    TlaSection rhs =
        tla_bracket(ab1, det_projection(2, s1), det_projection(2, s2));
    CHECK(lhs.X == rhs.X);
    CHECK(lhs.gamma == rhs.gamma);
  }

  // splitting goldens and exact reassembly
  SlSplit su = sl_splitting(2, unit);
  CHECK(su.trace_part == PolyFn(2));
  for (const PolyFn& g : su.sl_part.gamma) CHECK(g.is_zero());

  SlSplit so = sl_splitting(2, off);
  CHECK(so.trace_part.is_zero());
  CHECK(so.sl_part.gamma == off.gamma);

  for (int it = 0; it < 10; ++it) {
    TlaSection s = rng.section(1, 4);
    SlSplit sp = sl_splitting(2, s);
    PolyFn resid;
    for (size_t a = 0; a < 2; ++a)
      resid += sp.sl_part.gamma[matrix_basis_index(2, a, a)];
    CHECK(resid.is_zero());
    PolyFn share = Scalar(Rat(1, 2)) * sp.trace_part;
    std::vector<PolyFn> back = sp.sl_part.gamma;
    for (size_t a = 0; a < 2; ++a)
      back[matrix_basis_index(2, a, a)] += share;
    CHECK(back == s.gamma);
    CHECK(sp.sl_part.X == s.X);
  }
}
