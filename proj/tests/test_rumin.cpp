#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qrumin/fixtures.hpp"
#include "qrumin/rumin.hpp"

using namespace qrumin;

namespace {

const std::vector<std::pair<int, int>> kAllBidegrees = {
    {0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2},
    {3, 0}, {2, 1}, {1, 2}, {3, 1}, {2, 2}, {3, 2}};

StructPtr random_structure(Fixtures& fx, int degree = 2) {
  return PHStructure::rescale(PHStructure::flat(), fx.conformal_factor(degree));
}

}  // namespace

TEST_CASE("realize/decompose round trip on every bidegree") {
  Fixtures fx(101);
  for (bool flat : {true, false}) {
    StructPtr S = flat ? PHStructure::flat() : random_structure(fx);
    for (auto [p, q] : kAllBidegrees) {
      PqForm w = fx.random_pqform(S, p, q, 2);
      CoordForm x = w.realize();
      PqSum back = decompose(S, x, p + q);
      INFO("bidegree ", p, ",", q);
      CHECK((back.at(p, q) - w).is_zero());
      for (const auto& kv : back.parts())
        if (kv.first != std::make_pair(p, q)) CHECK(kv.second.is_zero());
    }
  }
}

TEST_CASE("decompose rejects forms off the Rumin subspace") {
  StructPtr S = PHStructure::flat();
  // dtheta has a pure trace part and is killed by pi
  CHECK_THROWS_AS(decompose(S, S->dtheta(), 2), DecomposeError);
  CHECK(pi_project(S, S->dtheta()).is_zero());
}

TEST_CASE("gamma solves the defining wedge equation") {
  Fixtures fx(55);
  StructPtr S = random_structure(fx);
  // k = 2: theta ^ w ^ dtheta = theta ^ xi ^ dtheta^2
  CoordForm w;
  w.set(0b00110, fx.random_scalar(2, true));
  w.set(0b01001, fx.random_scalar(2, true));
  CoordForm g = gamma(S, w);
  CHECK(S->theta().wedge(w).wedge(S->dtheta()) ==
        g.wedge(S->dtheta().pow_wedge(2)));
  // gamma of a function and of a one-form vanish
  CHECK(gamma(S, CoordForm::function(fx.random_scalar(2, true))).is_zero());
  CHECK(gamma(S, CoordForm::basis(1)).is_zero());
  // k = 3: theta ^ w = theta ^ xi ^ dtheta and Gamma w = theta ^ xi
  CoordForm w3;
  w3.set(0b00111, fx.random_scalar(2, true));
  w3.set(0b11100, fx.random_scalar(2, true));
  CoordForm g3 = gamma(S, w3);
  CHECK(S->theta().wedge(w3) == g3.wedge(S->dtheta()));
  // theta ^ anything is annihilated: theta ^ w = 0 forces the unique xi = 0
  CoordForm xi = fx.random_scalar(1, true) * CoordForm::basis(2) +
                 fx.random_scalar(1, true) * CoordForm::basis(3);
  CoordForm txi = S->theta().wedge(xi);
  CHECK(gamma(S, txi.wedge(S->dtheta())).is_zero());
  CHECK(gamma(S, txi).is_zero());
  // theta ^ xi ^ dtheta lies in realize(R^4), so pi fixes it
  CHECK(pi_project(S, txi.wedge(S->dtheta())) == txi.wedge(S->dtheta()));
  CHECK_NOTHROW(decompose(S, txi.wedge(S->dtheta()), 4));
}

TEST_CASE("pi is idempotent and restricts to the identity on realize(R)") {
  Fixtures fx(77);
  StructPtr S = random_structure(fx);
  for (auto [p, q] : {std::pair{1, 1}, {0, 2}, {2, 1}, {3, 1}}) {
    PqForm w = fx.random_pqform(S, p, q, 2);
    CHECK(pi_project(S, w.realize()) == w.realize());
  }
  CoordForm junk;
  junk.set(0b00011, fx.random_scalar(2, true));
  junk.set(0b01100, fx.random_scalar(2, true));
  junk.set(0b01010, fx.random_scalar(2, true));
  CoordForm once = pi_project(S, junk);
  CHECK(pi_project(S, once) == once);
  // the image decomposes cleanly
  CHECK_NOTHROW(decompose(S, once, 2));
}

TEST_CASE("bigraded complex: all two-step composition sums vanish") {
  Fixtures fx(31);
  for (bool flat : {true, false}) {
    StructPtr S = flat ? PHStructure::flat() : random_structure(fx);
    for (auto [p, q] : kAllBidegrees) {
      PqForm w = fx.random_pqform(S, p, q, 2);
      PqSum dw = d_op(w);
      PqSum ddw(S);
      for (const auto& kv : dw.parts()) ddw = ddw + d_op(kv.second);
      INFO("source bidegree ", p, ",", q, " flat=", flat);
      CHECK(ddw.is_zero());
    }
  }
}

TEST_CASE("dbbar on functions matches frame differentiation at flat") {
  StructPtr S = PHStructure::flat();
  Scalar z1 = Scalar::var(Coord::x1) + Scalar::i() * Scalar::var(Coord::y1);
  Scalar f = z1 * z1.conj();
  PqForm w = PqForm::make(S, 0, 0, FrameTensor::scalar(f));
  PqForm r = dbbar(w).at(0, 1);
  CHECK(r.prim().at({0}) == z1);
  CHECK(r.prim().at({1}).is_zero());
}

TEST_CASE("hodge star is an involution matching the wedge formula") {
  Fixtures fx(11);
  StructPtr S = random_structure(fx);
  for (auto [p, q] : kAllBidegrees) {
    PqForm w = fx.random_pqform(S, p, q, 2);
    PqForm ss = hodge(hodge(w));
    CHECK((ss - w).is_zero());
  }
  // eqn path: star w = ((-1)^{(k)(k+1)/2} / (2-k)!) theta ^ J w ^ dtheta^{2-k}
  for (auto [p, q] : {std::pair{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}}) {
    PqForm w = fx.random_pqform(S, p, q, 2);
    int k = p + q;
    long fac = 1;
    for (int j = 2; j <= 2 - k; ++j) fac *= j;
    int sgn = ((k * (k + 1) / 2) % 2 == 0) ? 1 : -1;
    CoordForm rhs = Scalar::rational(sgn, fac) *
                    S->theta().wedge(J_op(w).realize()).wedge(
                        S->dtheta().pow_wedge(2 - k));
    INFO("bidegree ", p, ",", q);
    CHECK(hodge(w).realize() == rhs);
  }
}

TEST_CASE("adjoint frame formulas agree with the star-conjugated definitions") {
  Fixtures fx(13);
  for (bool flat : {true, false}) {
    StructPtr S = flat ? PHStructure::flat() : random_structure(fx);
    for (auto [p, q] : {std::pair{1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}}) {
      PqForm w = fx.random_pqform(S, p, q, 2);
      INFO("bidegree ", p, ",", q, " flat=", flat);
      CHECK((db_adj(w) - db_adj_star(w)).realize().is_zero());
      CHECK((dbbar_adj(w) - dbbar_adj_star(w)).realize().is_zero());
    }
  }
}

TEST_CASE("kohn laplacian basics") {
  Fixtures fx(17);
  StructPtr S = random_structure(fx, 2);
  PqForm c = PqForm::make(S, 0, 0, FrameTensor::scalar(Scalar::integer(3)));
  CHECK(kohn_laplacian(c).is_zero());
  // box_b (star conj w) = star conj (box_b w); the high-regime Laplacian is
  // defined through this identity, so check it as stated
  for (auto [p, q] : {std::pair{0, 1}, {1, 0}, {1, 1}}) {
    PqForm w = fx.random_pqform(S, p, q, 1);
    PqForm star_conj = hodge(w.conj());
    PqForm lhs = kohn_laplacian(star_conj);
    PqForm rhs = hodge(kohn_laplacian(w).conj());
    INFO("bidegree ", p, ",", q);
    CHECK((lhs - rhs).is_zero());
  }
  // constants: ker box = ker dbbar cap ker dbbar*
  CHECK(dbbar(c).is_zero());
  CHECK(dbbar_adj(c).is_zero());
}

TEST_CASE("J conjugates d into dbc") {
  Fixtures fx(23);
  StructPtr S = random_structure(fx);
  for (auto [p, q] : {std::pair{1, 0}, {0, 1}, {1, 1}, {2, 1}}) {
    PqForm w = fx.random_pqform(S, p, q, 2);
    PqSum lhs = dbc(w);
    PqSum rhs = J_op(d_op(J_inv(w)));
    INFO("bidegree ", p, ",", q);
    CHECK((lhs - rhs).realize().is_zero());
  }
  PqForm w11 = fx.random_pqform(S, 1, 1, 1);
  CHECK((J_op(J_op(w11)) - w11).is_zero());
}

TEST_CASE("rwedge closed forms match the projection path") {
  Fixtures fx(29);
  for (bool flat : {true, false}) {
    StructPtr S = flat ? PHStructure::flat() : random_structure(fx, 2);
    PqForm a = fx.random_pqform(S, 1, 1, 2);
    PqForm b = fx.random_pqform(S, 1, 1, 2);
    PqForm r = fx.random_pqform(S, 0, 1, 2);
    CHECK((rwedge_11_11(a, b) - rwedge(a, b)).realize().is_zero());
    CHECK((rwedge_11_01(a, r) - rwedge(a, r)).realize().is_zero());
  }
}

TEST_CASE("rwedge unit and Leibniz rule") {
  Fixtures fx(37);
  StructPtr S = random_structure(fx, 2);
  PqForm one = PqForm::make(S, 0, 0, FrameTensor::scalar(Scalar::one()));
  PqForm w = fx.random_pqform(S, 1, 1, 2);
  CHECK((rwedge(one, w).at(1, 1) - w).is_zero());
  for (auto [pa, qa, pb, qb] : {std::tuple{1, 0, 0, 1}, {1, 1, 0, 1}, {0, 1, 0, 1}}) {
    PqForm x = fx.random_pqform(S, pa, qa, 2);
    PqForm y = fx.random_pqform(S, pb, qb, 2);
    PqSum lhs = d_op(rwedge(x, y));
    PqSum rhs = rwedge(d_op(x), PqSum::of(y));
    PqSum rhs2 = rwedge(PqSum::of(x), d_op(y));
    if ((pa + qa) % 2 == 1) rhs2 = -rhs2;
    INFO("bidegrees ", pa, qa, " x ", pb, qb);
    CHECK((lhs - rhs - rhs2).realize().is_zero());
  }
}

TEST_CASE("conj maps bidegrees correctly") {
  Fixtures fx(41);
  StructPtr S = random_structure(fx);
  PqForm w = fx.random_pqform(S, 1, 1, 2);
  CHECK(w.conj().p() == 1);
  PqForm v = fx.random_pqform(S, 2, 2, 2);
  PqForm vc = v.conj();
  CHECK(vc.p() == 3);
  CHECK(vc.q() == 1);
  CHECK((vc.conj() - v).is_zero());
  PqForm l = lee_form(S);
  CHECK((l.conj() - l).is_zero());
}
