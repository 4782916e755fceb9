#ifndef QRUMIN_FIXTURES_HPP
#define QRUMIN_FIXTURES_HPP

#include <cstdint>

#include "qrumin/pqform.hpp"
#include "qrumin/scalar.hpp"

namespace qrumin {

// Deterministic fixture generator (splitmix64); identical seeds reproduce
// identical fixtures on every platform.
class Fixtures {
 public:
  explicit Fixtures(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [lo, hi]
  int pick(int lo, int hi) {
    return lo + int(next() % std::uint64_t(hi - lo + 1));
  }

  GRat random_grat(bool complex_ok) {
    mpq_class re(pick(-9, 9), pick(1, 4));
    re.canonicalize();
    if (!complex_ok || pick(0, 1) == 0) return GRat(re);
    mpq_class im(pick(-9, 9), pick(1, 4));
    im.canonicalize();
    return GRat(re, im);
  }

  // random coordinate polynomial of total degree <= degree
  Scalar random_scalar(int degree, bool complex_ok) {
    Scalar s;
    int nterms = degree + 2;
    for (int k = 0; k < nterms; ++k) {
      Scalar term = Scalar::of(random_grat(complex_ok));
      int d = pick(0, degree);
      for (int j = 0; j < d; ++j) term *= Scalar::var(kCoords[pick(0, 4)]);
      s += term;
    }
    return s;
  }

  // real polynomial (registered as a conformal factor by callers)
  Scalar conformal_factor(int degree) {
    Scalar s;
    for (int k = 0; k < degree + 2; ++k) {
      mpq_class c(pick(-4, 4), pick(1, 3));
      c.canonicalize();
      Scalar term = Scalar::of(GRat(c));
      int d = pick(1, degree);
      for (int j = 0; j < d; ++j) term *= Scalar::var(kCoords[pick(0, 4)]);
      s += term;
    }
    return s;
  }

  // sigma^m * random polynomial: compactly supported in the open unit ball
  Scalar cutoff_function(int degree, int m, bool complex_ok = true) {
    return Scalar::sigma(m) * random_scalar(degree, complex_ok);
  }

  // random (p,q)-form with polynomial components; antisymmetrized and
  // trace-projected as the regime requires (2 holomorphic dimensions:
  // subtract (1/2) trace * h on the traced pair)
  PqForm random_pqform(const StructPtr& S, int p, int q, int degree,
                       int cutoff_exp = 0) {
    FrameTensor T(PqForm::expected_sig(p, q));
    for (std::size_t k = 0; k < T.size(); ++k) {
      Scalar c = random_scalar(degree, true);
      if (cutoff_exp > 0) c *= Scalar::sigma(cutoff_exp);
      T.flat(k) = c;
    }
    int nh = 0, na = 0;
    for (Idx i : T.sig()) (i == Idx::Hol ? nh : na)++;
    if (nh == 2 || na == 2) {
      Scalar c = T.at({0, 1}) - T.at({1, 0});
      T = FrameTensor(T.sig());
      T.at({0, 1}) = c;
      T.at({1, 0}) = -c;
    } else if (nh == 1 && na == 1) {
      Scalar tr;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) tr += S->hup(a, b) * T.at({a, b});
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          T.at({a, b}) -= Scalar::rational(1, 2) * tr * S->h(a, b);
    }
    return PqForm::make(S, p, q, T);
  }

 private:
  std::uint64_t state_;
};

}  // namespace qrumin

#endif
