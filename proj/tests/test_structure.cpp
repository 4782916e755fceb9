#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qrumin/fixtures.hpp"
#include "qrumin/structure.hpp"

using namespace qrumin;

namespace {

void check_residuals(const StructPtr& S) {
  for (const auto& [name, r] : S->structure_residuals()) {
    INFO("residual ", name, " = ", r.to_sexpr());
    CHECK(r.is_zero());
  }
}

Scalar ups_deriv(const StructPtr& flat, const Scalar& ups, int dir) {
  return flat->frame_deriv(ups, dir);
}

}  // namespace

TEST_CASE("flat Heisenberg model") {
  StructPtr S = PHStructure::flat();
  CHECK(S->torsion().is_zero());
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      CHECK(S->h(a, b) == (a == b ? Scalar::one() : Scalar::zero()));
  CHECK(S->schouten_tf().is_zero());
  CHECK(S->scalar_curv().is_zero());
  for (int a = 0; a < 2; ++a)
    for (int g = 0; g < 2; ++g)
      for (int d = 0; d < 5; ++d) CHECK(S->conn(a, g, d).is_zero());
  // T = d/dt and Z_alpha = d/dz^alpha + (i/2) zbar^alpha d/dt
  CHECK(S->frame(0).c[0] == Scalar::one());
  CHECK(S->frame(0).c[1].is_zero());
  Scalar z1bar = Scalar::var(Coord::x1) - Scalar::i() * Scalar::var(Coord::y1);
  CHECK(S->frame(1).c[0] == Scalar::rational(1, 2) * Scalar::i() * z1bar);
  CHECK(S->frame(1).c[1] == Scalar::one());
  check_residuals(S);
}

TEST_CASE("rescale by zero is the identity") {
  StructPtr S = PHStructure::rescale(PHStructure::flat(), Scalar::zero());
  CHECK(S->torsion().is_zero());
  CHECK(S->schouten().is_zero());
  CHECK(S->scalar_curv().is_zero());
  CHECK(S->theta() == PHStructure::flat()->theta());
}

TEST_CASE("rescale rejects bad conformal factors") {
  CHECK_THROWS(PHStructure::rescale(PHStructure::flat(), Scalar::i()));
  CHECK_THROWS(PHStructure::rescale(PHStructure::flat(),
                                    Scalar::var(Coord::x1) * Scalar::sigma()));
  CHECK_THROWS(PHStructure::rescale(PHStructure::flat(),
                                    Scalar::one() / (Scalar::one() + Scalar::var(Coord::x1))));
}

TEST_CASE("frozen torsion value for Upsilon = x1") {
  StructPtr S = PHStructure::rescale(PHStructure::flat(), Scalar::var(Coord::x1));
  // A_11 = -i/4: A = i Ups_{11} - i Ups_1 Ups_1 with Ups_1 = 1/2
  CHECK(S->torsion().at({0, 0}) == Scalar::rational(-1, 4) * Scalar::i());
  check_residuals(S);
}

TEST_CASE("structure equations hold exactly after random rescale") {
  Fixtures fx(1234);
  for (int k = 0; k < 3; ++k) {
    Scalar ups = fx.conformal_factor(3);
    StructPtr S = PHStructure::rescale(PHStructure::flat(), ups);
    check_residuals(S);
    // Schouten trace identity P = R/6
    CHECK(S->schouten_trace() == S->scalar_curv() / Scalar::integer(6));
  }
}

TEST_CASE("conformal transformation closed forms match the solver") {
  StructPtr flat = PHStructure::flat();
  Fixtures fx(77);
  for (int k = 0; k < 3; ++k) {
    Scalar ups = fx.conformal_factor(3);
    StructPtr S = PHStructure::rescale(flat, ups);

    // Ups_a = nabla_a Ups, Ups_{a b} = nabla_b nabla_a Ups at the base
    FrameTensor u0 = FrameTensor::scalar(ups);
    FrameTensor ua = flat->cov_hol(u0);             // (Hol)
    FrameTensor uab = flat->cov_hol(ua);            // (Hol,Hol): nabla_g nabla_a
    FrameTensor uabar = flat->cov_ahol(ua);         // (Hol,AHol): nabla_bbar nabla_a
    FrameTensor ubar = flat->cov_ahol(u0);          // (AHol)

    // |dUps|^2 = Ups_mu Ups^mu with flat h = id
    Scalar grad2;
    for (int m = 0; m < 2; ++m) grad2 += ua.at({m}) * ubar.at({m});

    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        Scalar expected = Scalar::rational(-1, 2) *
                              (uabar.at({a, b}) + uabar.at({b, a}).conj()) -
                          Scalar::rational(1, 2) * grad2 * flat->h(a, b);
        INFO("P hat component ", a, b);
        CHECK(S->schouten().at({a, b}) == expected);
      }
    for (int a = 0; a < 2; ++a)
      for (int g = 0; g < 2; ++g) {
        Scalar expected = Scalar::i() * uab.at({a, g}) -
                          Scalar::i() * ua.at({a}) * ua.at({g});
        INFO("A hat component ", a, g);
        CHECK(S->torsion().at({a, g}) == expected);
      }

    // nabla-hat on (T^{1,0})^* sections
    FrameTensor w({Idx::Hol});
    for (int a = 0; a < 2; ++a) w.at({a}) = fx.random_scalar(3, true);
    FrameTensor hat_hol = S->cov_hol(w);
    FrameTensor hat_ahol = S->cov_ahol(w);
    for (int a = 0; a < 2; ++a)
      for (int g = 0; g < 2; ++g) {
        Scalar rhs = flat->cov_hol(w).at({a, g}) - ua.at({g}) * w.at({a}) -
                     ua.at({a}) * w.at({g});
        CHECK(hat_hol.at({a, g}) == rhs);
      }
    Scalar upsw;  // Ups^mu w_mu
    for (int m = 0; m < 2; ++m) upsw += ubar.at({m}) * w.at({m});
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        Scalar rhs = flat->cov_ahol(w).at({a, b}) + upsw * flat->h(a, b);
        CHECK(hat_ahol.at({a, b}) == rhs);
      }
  }
}

TEST_CASE("metricity of the solved connection") {
  Fixtures fx(9);
  Scalar ups = fx.conformal_factor(2);
  StructPtr S = PHStructure::rescale(PHStructure::flat(), ups);
  FrameTensor h({Idx::Hol, Idx::AHol});
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) h.at({a, b}) = S->h(a, b);
  CHECK(S->cov_hol(h).is_zero());
  CHECK(S->cov_ahol(h).is_zero());
  CHECK(S->cov0(h).is_zero());
}

TEST_CASE("chained rescales compose the factors") {
  Fixtures fx(31);
  Scalar u1 = fx.conformal_factor(2), u2 = fx.conformal_factor(2);
  StructPtr S1 = PHStructure::rescale(PHStructure::flat(), u1);
  StructPtr S12 = PHStructure::rescale(S1, u2);
  StructPtr direct = PHStructure::rescale(PHStructure::flat(), u1 + u2);
  CHECK(S12->upsilon() == direct->upsilon());
  CHECK(S12->scalar_curv() == direct->scalar_curv());
}

TEST_CASE("frame expansion round trip") {
  Fixtures fx(55);
  StructPtr S = PHStructure::rescale(PHStructure::flat(), fx.conformal_factor(2));
  CoordForm w;
  w.set(0b00011, fx.random_scalar(2, true));
  w.set(0b10100, fx.random_scalar(2, true));
  CHECK(S->from_frame(S->to_frame(w)) == w);
  CHECK(S->to_frame(S->from_frame(w)) == w);
}
