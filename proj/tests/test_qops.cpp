#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qrumin/fixtures.hpp"
#include "qrumin/frame_formulas.hpp"
#include "qrumin/qops.hpp"

using namespace qrumin;

namespace {
const std::vector<std::pair<int, int>> kAllBidegrees = {
    {0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2},
    {3, 0}, {2, 1}, {1, 2}, {3, 1}, {2, 2}, {3, 2}};
}

TEST_CASE("frame differentials match the projection-based operators") {
  Fixtures fx(301);
  for (bool flat : {true, false}) {
    StructPtr S = flat ? PHStructure::flat()
                       : PHStructure::rescale(PHStructure::flat(),
                                              fx.conformal_factor(2));
    for (auto [p, q] : kAllBidegrees) {
      PqForm w = fx.random_pqform(S, p, q, 2);
      INFO("bidegree ", p, ",", q, " flat=", flat);
      CHECK((db_frame(w) - db(w)).realize().is_zero());
      CHECK((dbbar_frame(w) - dbbar(w)).realize().is_zero());
      if (p + q == 2) CHECK((d0_frame(w) - d0(w)).realize().is_zero());
    }
  }
}

TEST_CASE("second-order operator D: definition vs frame display") {
  Fixtures fx(311);
  for (bool flat : {true, false}) {
    StructPtr S = flat ? PHStructure::flat()
                       : PHStructure::rescale(PHStructure::flat(),
                                              fx.conformal_factor(2));
    PqForm w = fx.random_pqform(S, 1, 1, 2);
    CHECK((op_D(w) - op_D_frame(w)).is_zero());
  }
}

TEST_CASE("D annihilates constant forms at the flat structure") {
  Fixtures fx(321);
  StructPtr S = PHStructure::flat();
  FrameTensor T(PqForm::expected_sig(1, 1));
  T.at({0, 0}) = Scalar::integer(2);
  T.at({1, 1}) = Scalar::integer(-2);
  T.at({0, 1}) = Scalar::i();
  T.at({1, 0}) = Scalar::integer(5);
  PqForm w = PqForm::make(S, 1, 1, T);
  CHECK(op_D(w).is_zero());
  CHECK(op_scriptD(w).is_zero());
}

TEST_CASE("scriptD: definition vs frame formula vs dbbar-D route") {
  Fixtures fx(331);
  for (bool flat : {true, false}) {
    StructPtr S = flat ? PHStructure::flat()
                       : PHStructure::rescale(PHStructure::flat(),
                                              fx.conformal_factor(2));
    PqForm w = fx.random_pqform(S, 1, 1, 2);
    PqForm a = op_scriptD(w);
    INFO("flat=", flat);
    CHECK((a - op_scriptD_frame(w)).is_zero());
    CHECK((a - op_scriptD_via_D(w)).is_zero());
  }
}

TEST_CASE("Q11d + i R11d = 2i scriptD") {
  Fixtures fx(341);
  StructPtr S =
      PHStructure::rescale(PHStructure::flat(), fx.conformal_factor(2));
  PqForm w = fx.random_pqform(S, 1, 1, 2);
  PqSum lhs = Q11d(w) + Scalar::i() * R11d(w);
  PqSum rhs = PqSum::of(Scalar::integer(2) * Scalar::i() * op_scriptD(w));
  CHECK((lhs - rhs).realize().is_zero());
}

TEST_CASE("R11d definition agrees with the d-star route") {
  Fixtures fx(351);
  for (bool flat : {true, false}) {
    StructPtr S = flat ? PHStructure::flat()
                       : PHStructure::rescale(PHStructure::flat(),
                                              fx.conformal_factor(2));
    PqForm w = fx.random_pqform(S, 1, 1, 2);
    INFO("flat=", flat);
    CHECK((R11d(w) - R11d_alt(w)).realize().is_zero());
  }
}

TEST_CASE("Q01 equals scriptD db modulo the exact lee correction") {
  Fixtures fx(361);
  StructPtr S =
      PHStructure::rescale(PHStructure::flat(), fx.conformal_factor(2));
  PqForm rho = fx.random_pqform(S, 0, 1, 2);
  PqForm witness = rwedge_11_01(lee_form(S), rho).at(1, 2);
  PqForm residual = Q01(rho) - op_scriptD(db(rho).at(1, 1)) + db(witness).at(2, 2);
  CHECK(residual.is_zero());
}

TEST_CASE("ker dbbar is inside ker L01") {
  Fixtures fx(371);
  StructPtr S =
      PHStructure::rescale(PHStructure::flat(), fx.conformal_factor(2));
  Scalar f = fx.random_scalar(3, true);
  PqForm f00 = PqForm::make(S, 0, 0, FrameTensor::scalar(f));
  PqForm closed = dbbar(f00).at(0, 1);
  CHECK(L01(closed).is_zero());
}

TEST_CASE("scalar operators: the two L00 routes agree and flat Q00 vanishes") {
  Fixtures fx(381);
  StructPtr flat = PHStructure::flat();
  CHECK(Q00scal(flat).is_zero());
  CHECK(QFH_frame(flat).is_zero());
  Scalar f = fx.random_scalar(2, true);
  CHECK((L00scal(flat, f) - L00scal_alt(flat, f)).is_zero());
  StructPtr S = PHStructure::rescale(flat, fx.conformal_factor(2));
  Scalar g = fx.random_scalar(2, true);
  CHECK((L00scal(S, g) - L00scal_alt(S, g)).is_zero());
}

TEST_CASE("CR pluriharmonic functions are killed by L00scal") {
  StructPtr S = PHStructure::flat();
  Scalar u = Scalar::var(Coord::x1);  // Re z^1
  PqForm u00 = PqForm::make(S, 0, 0, FrameTensor::scalar(u));
  CHECK(db(dbbar(u00).at(0, 1)).at(1, 1).is_zero());
  CHECK(L00scal(S, u).is_zero());
}

TEST_CASE("Fefferman-Hirachi scalar equals 8 star Q00scal") {
  Fixtures fx(391);
  Scalar t = Scalar::var(Coord::t), x1 = Scalar::var(Coord::x1);
  // include a torsion-rich factor off the kernel of L00scal so the check
  // compares genuinely nonzero scalars
  std::vector<Scalar> factors = {fx.conformal_factor(2),
                                 x1 * x1 * t * t + fx.conformal_factor(2)};
  for (const Scalar& ups : factors) {
    StructPtr S = PHStructure::rescale(PHStructure::flat(), ups);
    Scalar lhs = QFH_frame(S);
    Scalar rhs = Scalar::integer(8) * hodge(Q00scal(S)).prim().flat(0);
    CHECK((lhs - rhs).is_zero());
    CHECK((QFH_frame_divergence(S) - rhs).is_zero());
  }
  // witness that the second family is non-vacuous
  StructPtr W = PHStructure::rescale(PHStructure::flat(), x1 * x1 * t * t);
  CHECK(!Q00scal(W).is_zero());
}

TEST_CASE("transport preserves the abstract form") {
  Fixtures fx(401);
  StructPtr flat = PHStructure::flat();
  StructPtr S = PHStructure::rescale(flat, fx.conformal_factor(2));
  for (auto [p, q] : {std::pair{0, 1}, {1, 1}, {2, 1}, {2, 2}}) {
    PqForm w = fx.random_pqform(flat, p, q, 2);
    PqForm moved = transport(w, S);
    CHECK(moved.realize() == w.realize());
    PqForm back = transport(moved, flat);
    CHECK((back - w).is_zero());
  }
}
