#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle_ball.hpp"
#include "qrumin/fixtures.hpp"
#include "qrumin/scalar.hpp"

using namespace qrumin;

namespace {
Scalar X1 = Scalar::var(Coord::x1);
Scalar Y1 = Scalar::var(Coord::y1);
Scalar Y2 = Scalar::var(Coord::y2);
Scalar T = Scalar::var(Coord::t);

UCtx ctx_of(const Scalar& ups) { return std::make_shared<UContext>(ups.num()); }
}  // namespace

TEST_CASE("additive identities and like-term collection") {
  CHECK(X1 + Scalar::zero() == X1);
  UCtx c = ctx_of(X1);
  Scalar u = Scalar::u(c);
  CHECK(Scalar::rational(1, 2) * u + Scalar::rational(1, 2) * u == u);
  Scalar inv_sigma = Scalar::sigma().inv();
  CHECK(X1 * inv_sigma + Y1 * inv_sigma == (X1 + Y1) * inv_sigma);
}

TEST_CASE("multiplicative canonicalization") {
  UCtx c = ctx_of(X1);
  CHECK(Scalar::u(c, 1) * Scalar::u(c, -1) == Scalar::one());
  CHECK(Scalar::i() * Scalar::i() == Scalar::integer(-1));
  Scalar xs = X1 * Scalar::sigma();
  CHECK(xs * xs == X1 * X1 * Scalar::sigma(2));
}

TEST_CASE("derivation") {
  UCtx c = ctx_of(X1);
  Scalar u = Scalar::u(c);
  CHECK(u.derive(Coord::x1) == u);  // Upsilon = x1
  CHECK(Scalar::sigma(2).derive(Coord::t) == Scalar::integer(-4) * T * Scalar::sigma());
  CHECK((X1 * X1 * Y2).derive(Coord::y2) == X1 * X1);
  CHECK(Scalar::u(nullptr ? c : c).derive(Coord::y2).is_zero());
}

TEST_CASE("derive on u requires a context") {
  Scalar plain = X1;
  CHECK_NOTHROW(plain.derive(Coord::x1));
  // u literal without context is rejected at construction
  CHECK_THROWS(Scalar::u(nullptr, 1));
}

TEST_CASE("is_zero as proof primitive") {
  UCtx c = ctx_of(X1);
  CHECK((Scalar::u(c) * Scalar::u(c, -1) - Scalar::one()).is_zero());
  CHECK(!(X1 - Y1).is_zero());
  // hand Leibniz: d/dt (u sigma) = u dUps/dt sigma - 2t u, with Ups = t
  UCtx ct = ctx_of(T);
  Scalar u = Scalar::u(ct);
  Scalar lhs = (u * Scalar::sigma()).derive(Coord::t);
  Scalar rhs = u * T.derive(Coord::t) * Scalar::sigma() - Scalar::integer(2) * T * u;
  CHECK((lhs - rhs).is_zero());
}

TEST_CASE("conjugation") {
  CHECK((Scalar::i() * X1).conj() == -Scalar::i() * X1);
  UCtx c = ctx_of(X1);
  CHECK(Scalar::u(c).conj() == Scalar::u(c));
  Fixtures fx(7);
  for (int k = 0; k < 10; ++k) {
    Scalar a = fx.random_scalar(3, true);
    CHECK(a.conj().conj() == a);
  }
}

TEST_CASE("trivial conformal factor collapses u") {
  UCtx c0 = ctx_of(Scalar::zero());
  CHECK(Scalar::u(c0, 3) == Scalar::one());
}

TEST_CASE("fractions reduce when division is exact") {
  Scalar d = X1 + Y1;
  Scalar n = d * d * X1;
  Scalar q = n / d;
  CHECK(q.is_polynomial());
  CHECK(q == d * X1);
  Scalar nonexact = X1 / d;
  CHECK(!nonexact.is_polynomial());
  CHECK(nonexact * d == X1);
}

TEST_CASE("ring axioms on randomized triples") {
  Fixtures fx(42);
  for (int k = 0; k < 12; ++k) {
    Scalar a = fx.random_scalar(2, true);
    Scalar b = fx.random_scalar(2, true);
    Scalar c = fx.random_scalar(2, true);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + b == b + a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("derivations commute") {
  Fixtures fx(5);
  for (int k = 0; k < 8; ++k) {
    Scalar a = fx.random_scalar(3, true);
    for (Coord c1 : {Coord::x1, Coord::t})
      for (Coord c2 : {Coord::y2, Coord::x1})
        CHECK(a.derive(c1).derive(c2) == a.derive(c2).derive(c1));
  }
}

TEST_CASE("parallel product kernel agrees with serial reference") {
  Fixtures fx(11);
  for (int k = 0; k < 6; ++k) {
    Scalar a = fx.random_scalar(4, true);
    Scalar b = fx.random_scalar(4, true);
    CHECK(poly::mul_parallel(a.num(), b.num()) == poly::mul_serial(a.num(), b.num()));
  }
}

TEST_CASE("ball integral matches slice-integration oracle") {
  // frozen values computed with the oracle
  CHECK(testing::oracle_integrate(Scalar::one()) == GRat(mpq_class(8, 15)));
  CHECK(integrate_ball(Scalar::one()).pi2 == GRat(mpq_class(8, 15)));
  CHECK(integrate_ball(X1).pi2.is_zero());
  CHECK(testing::oracle_integrate(X1 * X1) == GRat(mpq_class(8, 105)));
  CHECK(integrate_ball(X1 * X1).pi2 == GRat(mpq_class(8, 105)));

  Fixtures fx(3);
  for (int k = 0; k < 10; ++k) {
    Scalar p = fx.random_scalar(4, false) * Scalar::sigma(fx.pick(0, 6));
    CHECK(integrate_ball(p).pi2 == testing::oracle_integrate(p));
  }
}

TEST_CASE("ball integral is linear and kills odd terms") {
  Fixtures fx(9);
  Scalar a = fx.random_scalar(3, false);
  Scalar b = fx.random_scalar(3, false);
  CHECK(integrate_ball(a + b).pi2 == integrate_ball(a).pi2 + integrate_ball(b).pi2);
  CHECK(integrate_ball(X1 * Y2 * Y2).pi2.is_zero());
  CHECK_THROWS(integrate_ball(Scalar::u(ctx_of(X1))));
  CHECK_THROWS(integrate_ball(X1 / (X1 + Scalar::integer(1))));
}

TEST_CASE("exact Stokes on the ball") {
  Fixtures fx(21);
  for (int k = 0; k < 5; ++k) {
    Scalar p = fx.random_scalar(3, false) * Scalar::sigma(2 + fx.pick(0, 4));
    for (Coord c : kCoords) CHECK(integrate_ball(p.derive(c)).pi2.is_zero());
  }
}

TEST_CASE("sexpr round trip is bit-exact") {
  Fixtures fx(17);
  UCtx c = ctx_of(X1 * Y1);
  for (int k = 0; k < 10; ++k) {
    Scalar a = fx.random_scalar(3, true) * Scalar::u(c, fx.pick(-2, 2)) *
               Scalar::sigma(fx.pick(0, 3));
    if (k % 3 == 0) a = a / (X1 + Scalar::integer(2));
    std::string s = a.to_sexpr();
    Scalar back = Scalar::from_sexpr(s, c);
    CHECK(back == a);
    CHECK(back.to_sexpr() == s);
  }
  CHECK(Scalar::from_sexpr("(add (mul (rat 1 2) i (pow (var x1) 2)))", nullptr) ==
        Scalar::rational(1, 2) * Scalar::i() * X1 * X1);
}
