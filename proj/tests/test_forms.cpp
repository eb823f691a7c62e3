#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "tla/form.hpp"
#include "tla/lie_algebra.hpp"
#include "tla/random_gen.hpp"
#include "tla/section.hpp"

using namespace tla;

namespace {

TlaForm scalar_form(size_t m, size_t n, LegKey key, PolyFn coeff) {
  TlaForm f(m, n, ValueKind::kScalar);
  f.add(key, {std::move(coeff)});
  return f;
}

TlaForm algebra_form(size_t m, size_t n, LegKey key, size_t slot,
                     PolyFn coeff) {
  TlaForm f(m, n, ValueKind::kAlgebra);
  std::vector<PolyFn> v(n);
  v[slot] = std::move(coeff);
  f.add(key, v);
  return f;
}

}  // namespace

TEST_CASE("form component bookkeeping") {
  TlaForm f(2, 2, ValueKind::kScalar);
  CHECK(f.is_zero());
  f.add({0b01, 0}, {PolyFn::x(0)});
  f.add({0b01, 0}, {PolyFn::x(0)});
  CHECK(f.component({0b01, 0})[0] == Scalar(2) * PolyFn::x(0));
  f.add_scaled({0b01, 0}, Scalar(-2), {PolyFn::x(0)});
  CHECK(f.is_zero());  // cancelled back to zero, component dropped

  f.add({0b01, 0b10}, {PolyFn(1)});
  f.add({0, 0}, {PolyFn(5)});
  CHECK(f.degrees() == std::set<std::pair<size_t, size_t>>{{0, 0}, {1, 1}});
  size_t deg = 99;
  CHECK_FALSE(f.homogeneous_degree(deg));
  TlaForm g = scalar_form(2, 2, {0b11, 0}, PolyFn(1));
  CHECK(g.homogeneous_degree(deg));
  CHECK(deg == 2);

  CHECK((f + g) - g == f);
  CHECK((Scalar(3) * f).component({0, 0})[0] == PolyFn(15));
  CHECK((PolyFn::x(1) * g).component({0b11, 0})[0] == PolyFn::x(1));
  CHECK(-(-f) == f);
}

TEST_CASE("wedge product goldens and graded ring laws") {
  size_t m = 2, n = 2;
  TlaForm dx1 = scalar_form(m, n, {0b01, 0}, PolyFn(1));
  TlaForm dx2 = scalar_form(m, n, {0b10, 0}, PolyFn(1));
  TlaForm th1 = scalar_form(m, n, {0, 0b01}, PolyFn(1));

  CHECK(wedge(dx1, dx2).component({0b11, 0})[0] == PolyFn(1));
  CHECK(wedge(dx2, dx1).component({0b11, 0})[0] == PolyFn(-1));
  CHECK(wedge(dx1, dx1).is_zero());
  // theta legs sort after dx legs
  CHECK(wedge(dx1, th1).component({0b01, 0b01})[0] == PolyFn(1));
  CHECK(wedge(th1, dx1).component({0b01, 0b01})[0] == PolyFn(-1));

  // coefficients multiply
  TlaForm a = scalar_form(m, n, {0b01, 0}, PolyFn::x(0));
  TlaForm b = scalar_form(m, n, {0, 0b10}, PolyFn::x(1));
  CHECK(wedge(a, b).component({0b01, 0b10})[0] ==
        PolyFn::x(0) * PolyFn::x(1));

  // algebra value rides along on either side; two algebra values reject
  TlaForm av = algebra_form(m, n, {0, 0b01}, 1, PolyFn(1));
  CHECK(wedge(av, dx1).kind() == ValueKind::kAlgebra);
  CHECK(wedge(av, dx1).component({0b01, 0b01})[1] == PolyFn(-1));
  CHECK(wedge(dx1, av).component({0b01, 0b01})[1] == PolyFn(1));
  CHECK_THROWS(wedge(av, av));

  Rng rng(11);
  for (int it = 0; it < 40; ++it) {
    size_t p = rng.below(4), q = rng.below(4), r = rng.below(3);
    TlaForm f = rng.form(m, n, ValueKind::kScalar, p);
    TlaForm g = rng.form(m, n, ValueKind::kScalar, q);
    TlaForm h = rng.form(m, n, ValueKind::kScalar, r);
    // graded commutativity and associativity
    Scalar sign(p * q % 2 ? -1 : 1);
    CHECK(wedge(f, g) == sign * wedge(g, f));
    CHECK(wedge(wedge(f, g), h) == wedge(f, wedge(g, h)));
    CHECK(wedge(f, g + h) == wedge(f, g) + wedge(f, h));
  }
}

TEST_CASE("coordinate differential") {
  size_t m = 2, n = 1;
  // d(x1^2 x2 dx2) = 2 x1 x2 dx1 ^ dx2
  TlaForm f = scalar_form(m, n, {0b10, 0},
                          PolyFn::x(0).pow(2) * PolyFn::x(1));
  TlaForm df = de_rham_d(f);
  CHECK(df.component({0b11, 0})[0] ==
        Scalar(2) * (PolyFn::x(0) * PolyFn::x(1)));

  // d(x1) = dx1, d over a theta leg keeps the dx-first sign
  CHECK(de_rham_d(scalar_form(m, n, {0, 0}, PolyFn::x(0)))
            .component({0b01, 0})[0] == PolyFn(1));
  CHECK(de_rham_d(scalar_form(m, n, {0, 0b1}, PolyFn::x(0)))
            .component({0b01, 0b1})[0] == PolyFn(1));
  // constants and bare generator legs are closed
  CHECK(de_rham_d(scalar_form(m, n, {0, 0b1}, PolyFn(3))).is_zero());

  Rng rng(12);
  for (int it = 0; it < 30; ++it) {
    size_t p = rng.below(4);
    for (ValueKind kind : {ValueKind::kScalar, ValueKind::kAlgebra}) {
      TlaForm g = rng.form(2, 3, kind, p);
      CHECK(de_rham_d(de_rham_d(g)).is_zero());
    }
  }
}

TEST_CASE("inner differential on forms over a chart") {
  LieAlgebra sl2 = sl2_algebra();  // H=0, E=1, F=2
  size_t m = 1, n = 3;

  // the dx-leg parity flips the coframe rule: s(dx1 ^ th^H) = dx1 ^ th^E ^ th^F
  TlaForm f = scalar_form(m, n, {0b1, 0b001}, PolyFn(1));
  TlaForm sf = inner_diff(sl2, f);
  CHECK(sf.component({0b1, 0b110})[0] == PolyFn(1));
  CHECK(sf.comps().size() == 1);

  // adjoint twist on a degree-0 algebra value: s'(H) = -2 th^E*E + 2 th^F*F
  TlaForm h0 = algebra_form(m, n, {0, 0}, 0, PolyFn(1));
  TlaForm sh = inner_diff(sl2, h0);
  CHECK(sh.component({0, 0b010}) ==
        std::vector<PolyFn>{PolyFn(0), PolyFn(-2), PolyFn(0)});
  CHECK(sh.component({0, 0b100}) ==
        std::vector<PolyFn>{PolyFn(0), PolyFn(0), PolyFn(2)});

  // ell-basis components are rejected
  TlaForm ell(m, n, ValueKind::kScalar, InnerBasis::kEll);
  ell.add({0, 0b1}, {PolyFn(1)});
  CHECK_THROWS(inner_diff(sl2, ell));
}

TEST_CASE("total differential squares to zero and satisfies Leibniz") {
  LieAlgebra sl2 = sl2_algebra();

  // hd(th^H) = -th^E ^ th^F
  TlaForm thH = scalar_form(1, 3, {0, 0b001}, PolyFn(1));
  TlaForm d1 = total_diff(sl2, thH);
  CHECK(d1.component({0, 0b110})[0] == PolyFn(-1));
  CHECK(d1.comps().size() == 1);

  // abelian inner part vanishes in both value kinds
  LieAlgebra ab = abelian_algebra(2);
  Rng rng(13);
  for (int it = 0; it < 20; ++it) {
    size_t p = rng.below(4);
    for (ValueKind kind : {ValueKind::kScalar, ValueKind::kAlgebra}) {
      TlaForm g = rng.form(2, 2, kind, p);
      CHECK(total_diff(ab, g) == de_rham_d(g));
    }
  }

  for (const LieAlgebra& L : testutil::fixture_algebras()) {
    CAPTURE(L.name());
    for (int it = 0; it < 25; ++it) {
      size_t p = rng.below(4);
      for (ValueKind kind : {ValueKind::kScalar, ValueKind::kAlgebra}) {
        TlaForm g = rng.form(2, L.dim(), kind, p);
        CHECK(total_diff(L, total_diff(L, g)).is_zero());
      }
    }
  }

  // hd(f ^ g) = hd f ^ g + (-1)^p f ^ hd g, f scalar of degree p
  for (int it = 0; it < 30; ++it) {
    size_t p = rng.below(4), q = rng.below(3);
    TlaForm f = rng.form(2, 3, ValueKind::kScalar, p);
    ValueKind gk = rng.chance(1, 2) ? ValueKind::kScalar : ValueKind::kAlgebra;
    TlaForm g = rng.form(2, 3, gk, q);
    TlaForm lhs = total_diff(sl2, wedge(f, g));
    TlaForm rhs = wedge(total_diff(sl2, f), g) +
                  Scalar(p % 2 ? -1 : 1) * wedge(f, total_diff(sl2, g));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("evaluation against local sections") {
  size_t m = 2, n = 1;
  // dx1 reads off the first anchor component
  TlaForm dx1 = scalar_form(m, n, {0b01, 0}, PolyFn(1));
  TlaSection s1{{PolyFn(1), PolyFn(0)}, {PolyFn::x(0)}};
  TlaSection s2{{PolyFn(0), PolyFn::x(1)}, {PolyFn(3)}};
  CHECK(evaluate(dx1, {s1}) == std::vector<PolyFn>{PolyFn(1)});
  CHECK(evaluate(dx1, {s2}) == std::vector<PolyFn>{PolyFn(0)});

  // determinant convention: (dx1 ^ th1)(s1, s2) = X1^1 g2^1 - X2^1 g1^1
  TlaForm mix = scalar_form(m, n, {0b01, 0b1}, PolyFn(1));
  CHECK(evaluate(mix, {s1, s2}) == std::vector<PolyFn>{PolyFn(3)});
  CHECK(evaluate(mix, {s2, s1}) == std::vector<PolyFn>{PolyFn(-3)});

  // only the degree-matching part contributes
  TlaForm sum = dx1 + scalar_form(m, n, {0, 0}, PolyFn(7));
  CHECK(evaluate(sum, {s1}) == std::vector<PolyFn>{PolyFn(1)});

  // algebra values scale by the evaluated legs
  TlaForm av = algebra_form(2, 3, {0b10, 0}, 1, PolyFn(1));
  TlaSection t{{PolyFn::x(0), PolyFn::x(0) * PolyFn::x(1)},
               {PolyFn(0), PolyFn(0), PolyFn(0)}};
  std::vector<PolyFn> got = evaluate(av, {t});
  CHECK(got[0].is_zero());
  CHECK(got[1] == PolyFn::x(0) * PolyFn::x(1));
  CHECK(got[2].is_zero());

  Rng rng(14);
  for (int it = 0; it < 25; ++it) {
    TlaForm f = rng.form(2, 2, ValueKind::kScalar, 2);
    TlaSection a = rng.section(2, 2), b = rng.section(2, 2);
    std::vector<PolyFn> ab = evaluate(f, {a, b});
    std::vector<PolyFn> ba = evaluate(f, {b, a});
    CHECK(ab[0] == PolyFn(-1) * ba[0]);
    CHECK(evaluate(f, {a, a}) == std::vector<PolyFn>{PolyFn()});
  }
}

TEST_CASE("section bracket") {
  LieAlgebra ab = abelian_algebra(1);
  // [d/dx + x, x^2] = 2x: the anchor differentiates the inner coefficient
  TlaSection s1{{PolyFn(1)}, {PolyFn::x(0)}};
  TlaSection s2{{PolyFn(0)}, {PolyFn::x(0).pow(2)}};
  TlaSection br = tla_bracket(ab, s1, s2);
  CHECK(br.X == std::vector<PolyFn>{PolyFn()});
  CHECK(br.gamma == std::vector<PolyFn>{Scalar(2) * PolyFn::x(0)});

  // vector-field commutator: [x d/dx, d/dx] = -d/dx
  TlaSection v1{{PolyFn::x(0)}, {PolyFn(0)}};
  TlaSection v2{{PolyFn(1)}, {PolyFn(0)}};
  CHECK(tla_bracket(ab, v1, v2).X == std::vector<PolyFn>{PolyFn(-1)});

  // pointwise fiber bracket: [H, E] = 2E
  LieAlgebra sl2 = sl2_algebra();
  TlaSection h{{PolyFn(0)}, {PolyFn(1), PolyFn(0), PolyFn(0)}};
  TlaSection e{{PolyFn(0)}, {PolyFn(0), PolyFn(1), PolyFn(0)}};
  TlaSection he = tla_bracket(sl2, h, e);
  CHECK(he.X == std::vector<PolyFn>{PolyFn()});
  CHECK(he.gamma ==
        std::vector<PolyFn>{PolyFn(0), PolyFn(2), PolyFn(0)});

  // coefficient rule: [x E, F] = x H + (no derivative term, X parts vanish)
  TlaSection xe{{PolyFn(0)}, {PolyFn(0), PolyFn::x(0), PolyFn(0)}};
  TlaSection f{{PolyFn(0)}, {PolyFn(0), PolyFn(0), PolyFn(1)}};
  CHECK(tla_bracket(sl2, xe, f).gamma ==
        std::vector<PolyFn>{PolyFn::x(0), PolyFn(0), PolyFn(0)});

  Rng rng(15);
  for (int it = 0; it < 15; ++it) {
    TlaSection a = rng.section(2, 3), b = rng.section(2, 3),
               c = rng.section(2, 3);
    TlaSection ab2 = tla_bracket(sl2, a, b);
    TlaSection ba = tla_bracket(sl2, b, a);
    for (size_t i = 0; i < 2; ++i) CHECK(ab2.X[i] == PolyFn(-1) * ba.X[i]);
    for (size_t i = 0; i < 3; ++i)
      CHECK(ab2.gamma[i] == PolyFn(-1) * ba.gamma[i]);
    // Jacobi: [[a,b],c] + [[b,c],a] + [[c,a],b] = 0
    TlaSection j1 = tla_bracket(sl2, ab2, c);
    TlaSection j2 = tla_bracket(sl2, tla_bracket(sl2, b, c), a);
    TlaSection j3 = tla_bracket(sl2, tla_bracket(sl2, c, a), b);
    for (size_t i = 0; i < 2; ++i)
      CHECK((j1.X[i] + j2.X[i] + j3.X[i]).is_zero());
    for (size_t i = 0; i < 3; ++i)
      CHECK((j1.gamma[i] + j2.gamma[i] + j3.gamma[i]).is_zero());
  }

  // bracket evaluated against a closed form agrees with the differential:
  // (hd w)(a, b) = a.(w(b)) - b.(w(a)) - w([a,b]) for a 1-form w
  auto directional = [](const TlaSection& s, const PolyFn& p) {
    PolyFn out;
    for (size_t mu = 0; mu < s.X.size(); ++mu)
      out += s.X[mu] * p.derivative_x(mu);
    return out;
  };
  for (int it = 0; it < 15; ++it) {
    TlaForm w = rng.form(2, 3, ValueKind::kScalar, 1);
    TlaSection a = rng.section(2, 3), b = rng.section(2, 3);
    PolyFn lhs = evaluate(total_diff(sl2, w), {a, b})[0];
    PolyFn rhs = directional(a, evaluate(w, {b})[0]) -
                 directional(b, evaluate(w, {a})[0]) -
                 evaluate(w, {tla_bracket(sl2, a, b)})[0];
    CHECK(lhs == rhs);
  }
}

TEST_CASE("inner leg substitution") {
  size_t m = 1, n = 2;
  LieAlgebra ab = abelian_algebra(2);
  TlaForm th12 = scalar_form(m, n, {0, 0b11}, PolyFn(1));

  // identity substitution
  std::vector<TlaForm> idimg;
  for (size_t a = 0; a < n; ++a)
    idimg.push_back(scalar_form(m, n, {0, 1u << a}, PolyFn(1)));
  CHECK(substitute_inner_legs(th12, idimg, InnerBasis::kTheta) == th12);

  // swapping the two legs flips the top component
  std::vector<TlaForm> swp = {idimg[1], idimg[0]};
  CHECK(substitute_inner_legs(th12, swp, InnerBasis::kTheta) ==
        Scalar(-1) * th12);

  // a dx-valued image moves inner degree to coordinate degree
  std::vector<TlaForm> todx = {scalar_form(m, n, {0b1, 0}, PolyFn::x(0)),
                               idimg[1]};
  TlaForm got = substitute_inner_legs(th12, todx, InnerBasis::kTheta);
  CHECK(got.component({0b1, 0b10})[0] == PolyFn::x(0));
  CHECK(got.comps().size() == 1);
  (void)ab;
}

TEST_CASE("mixed-coframe change") {
  size_t m = 1, n = 1;
  // A = 0: th -> -ell componentwise
  PolyMat a0(n, m);
  TlaForm th1 = scalar_form(m, n, {0, 0b1}, PolyFn(1));
  TlaForm t0 = to_mixed_basis(th1, a0);
  CHECK(t0.basis() == InnerBasis::kEll);
  CHECK(t0.component({0, 0b1})[0] == PolyFn(-1));

  // A^1 = x dx1: th^1 = x dx1 - ell^1
  PolyMat ax(n, m);
  ax.at(0, 0) = PolyFn::x(0);
  TlaForm tx = to_mixed_basis(th1, ax);
  CHECK(tx.component({0b1, 0})[0] == PolyFn::x(0));
  CHECK(tx.component({0, 0b1})[0] == PolyFn(-1));

  // and back: ell^1 = x dx1 - th^1 recovers th^1
  CHECK(from_mixed_basis(tx, ax) == th1);

  Rng rng(16);
  for (int it = 0; it < 20; ++it) {
    PolyMat A = testutil::random_connection(rng, 2, 2);
    size_t p = rng.below(4);
    for (ValueKind kind : {ValueKind::kScalar, ValueKind::kAlgebra}) {
      TlaForm f = rng.form(2, 2, kind, p);
      CHECK(from_mixed_basis(to_mixed_basis(f, A), A) == f);
    }
    // substitution respects the wedge
    TlaForm f = rng.form(2, 2, ValueKind::kScalar, rng.below(3));
    TlaForm g = rng.form(2, 2, ValueKind::kScalar, rng.below(3));
    CHECK(to_mixed_basis(wedge(f, g), A) ==
          wedge(to_mixed_basis(f, A), to_mixed_basis(g, A)));
  }
}

TEST_CASE("inner product pairing of algebra-valued forms") {
  LieAlgebra sl2 = sl2_algebra();
  size_t m = 1, n = 3;
  ScalarMat k = sl2.killing_form();

  // degree 0: plain inner product of values
  TlaForm vH = algebra_form(m, n, {0, 0}, 0, PolyFn(1));
  TlaForm vE = algebra_form(m, n, {0, 0}, 1, PolyFn(1));
  TlaForm vF = algebra_form(m, n, {0, 0}, 2, PolyFn(1));
  CHECK(h_pairing(k, vH, vH).component({0, 0})[0] == PolyFn(8));
  CHECK(h_pairing(k, vE, vF).component({0, 0})[0] == PolyFn(4));
  CHECK(h_pairing(k, vE, vE).is_zero());

  // legs wedge: <th^H * E, th^E * F> = k(E,F) th^H ^ th^E
  TlaForm a = algebra_form(m, n, {0, 0b001}, 1, PolyFn(1));
  TlaForm b = algebra_form(m, n, {0, 0b010}, 2, PolyFn(1));
  CHECK(h_pairing(k, a, b).component({0, 0b011})[0] == PolyFn(4));

  Rng rng(17);
  for (int it = 0; it < 25; ++it) {
    size_t p = rng.below(3), q = rng.below(3);
    TlaForm f = rng.form(2, 3, ValueKind::kAlgebra, p);
    TlaForm g = rng.form(2, 3, ValueKind::kAlgebra, q);
    // graded symmetry through the symmetric h
    Scalar sign(p * q % 2 ? -1 : 1);
    CHECK(h_pairing(k, f, g) == sign * h_pairing(k, g, f));
    // PolyFn-bilinearity in the first slot
    PolyFn c = rng.poly(2, 2, 3);
    CHECK(h_pairing(k, c * f, g) == c * h_pairing(k, f, g));
  }
}

TEST_CASE("value maps") {
  size_t m = 1, n = 4;
  // trace functional on 2x2 matrix values: picks slots (0,0) and (1,1)
  PolyMat tr(1, n);
  tr.at(0, matrix_basis_index(2, 0, 0)) = PolyFn(1);
  tr.at(0, matrix_basis_index(2, 1, 1)) = PolyFn(1);
  TlaForm idv(m, n, ValueKind::kAlgebra);
  idv.add({0b1, 0}, {PolyFn(1), PolyFn(0), PolyFn(0), PolyFn(1)});
  TlaForm traced = map_value(idv, tr, ValueKind::kScalar);
  CHECK(traced.kind() == ValueKind::kScalar);
  CHECK(traced.component({0b1, 0})[0] == PolyFn(2));

  // invertible algebra map round trip
  Rng rng(18);
  ScalarMat mmat = testutil::random_invertible(rng, 4);
  PolyMat mp(4, 4), mpinv(4, 4);
  ScalarMat minv = *inverse(mmat);
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) {
      mp.at(i, j) = PolyFn(mmat.at(i, j));
      mpinv.at(i, j) = PolyFn(minv.at(i, j));
    }
  for (int it = 0; it < 10; ++it) {
    TlaForm f = rng.form(1, 4, ValueKind::kAlgebra, rng.below(3));
    CHECK(map_value(map_value(f, mp, ValueKind::kAlgebra), mpinv,
                    ValueKind::kAlgebra) == f);
  }
}
