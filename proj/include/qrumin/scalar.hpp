#ifndef QRUMIN_SCALAR_HPP
#define QRUMIN_SCALAR_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrumin/grat.hpp"

namespace qrumin {

// Real coordinates on the Heisenberg group H^2 ~ C^2 x R.
enum class Coord : int { x1 = 0, y1 = 1, x2 = 2, y2 = 3, t = 4 };
inline constexpr std::array<Coord, 5> kCoords = {Coord::x1, Coord::y1, Coord::x2,
                                                 Coord::y2, Coord::t};
inline const char* coord_name(Coord c) {
  static const char* names[5] = {"x1", "y1", "x2", "y2", "t"};
  return names[static_cast<int>(c)];
}

// Monomial key: coordinate exponents, u-exponent (Laurent), sigma-exponent.
struct Mono {
  std::array<int16_t, 5> e{0, 0, 0, 0, 0};
  int16_t ue = 0;
  int16_t se = 0;
  friend auto operator<=>(const Mono&, const Mono&) = default;
  Mono operator*(const Mono& o) const {
    Mono r;
    for (int i = 0; i < 5; ++i) r.e[i] = int16_t(e[i] + o.e[i]);
    r.ue = int16_t(ue + o.ue);
    r.se = int16_t(se + o.se);
    return r;
  }
  bool is_one() const { return *this == Mono{}; }
  int coord_degree() const {
    int d = 0;
    for (int i = 0; i < 5; ++i) d += e[i];
    return d;
  }
};

using Term = std::pair<Mono, GRat>;
// Canonical polynomial: terms sorted ascending by Mono, no zero coefficients.
using Poly = std::vector<Term>;

namespace poly {
Poly zero();
Poly one();
Poly add(const Poly& a, const Poly& b);
Poly neg(const Poly& a);
Poly mul(const Poly& a, const Poly& b);
Poly mul_serial(const Poly& a, const Poly& b);
Poly mul_parallel(const Poly& a, const Poly& b);
Poly scale(const Poly& a, const GRat& c);
bool try_div(const Poly& num, const Poly& den, Poly& quot);  // exact division
Poly conj(const Poly& a);
bool is_u_free(const Poly& a);
bool is_sigma_free(const Poly& a);
bool is_coord_poly(const Poly& a);  // u-free and sigma-free
Poly expand_sigma(const Poly& a);   // substitute sigma = 1 - |x|^2 - t^2
}  // namespace poly

// One conformal factor Upsilon per computation context; u = e^Upsilon with
// derivation du/dc = u * dUpsilon/dc.  Upsilon is a real coordinate polynomial.
class UContext {
 public:
  explicit UContext(Poly upsilon);
  const Poly& upsilon() const { return ups_; }
  const Poly& d_upsilon(Coord c) const { return dups_[static_cast<int>(c)]; }
  bool trivial() const { return ups_.empty(); }
  bool same_as(const UContext& o) const { return ups_ == o.ups_; }

 private:
  Poly ups_;
  std::array<Poly, 5> dups_;
};
using UCtx = std::shared_ptr<const UContext>;

// Element of the exact differential ring
//   Q(i)[x1,y1,x2,y2,t][sigma][u,u^-1] with an optional coordinate-polynomial
// denominator.  Values are immutable; all operations return new Scalars.
class Scalar {
 public:
  Scalar() = default;  // zero

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar::integer(1); }
  static Scalar integer(long n);
  static Scalar rational(long num, long den);
  static Scalar of(GRat c);
  static Scalar i();
  static Scalar var(Coord c);
  static Scalar sigma(int k = 1);
  static Scalar u(const UCtx& ctx, int k = 1);
  static Scalar from_poly(Poly p, UCtx ctx = nullptr);

  bool is_zero() const { return num_.empty(); }
  bool is_polynomial() const { return den_.size() == 1 && den_[0].first.is_one(); }
  bool u_free() const { return poly::is_u_free(num_); }
  bool sigma_free() const { return poly::is_sigma_free(num_) && poly::is_sigma_free(den_); }
  bool is_real() const;
  bool is_constant() const;
  GRat constant_value() const;  // requires is_constant()

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const UCtx& ctx() const { return ctx_; }

  Scalar conj() const;
  Scalar derive(Coord c) const;
  Scalar inv() const;  // may introduce a denominator; throws on zero

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { *this = *this + b; return *this; }
  Scalar& operator-=(const Scalar& b) { *this = *this - b; return *this; }
  Scalar& operator*=(const Scalar& b) { *this = *this * b; return *this; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::size_t term_count() const { return num_.size(); }

  // Canonical s-expression (ops: add/mul/pow/var/rat/i/u/sigma).
  std::string to_sexpr() const;
  static Scalar from_sexpr(const std::string& text, const UCtx& ctx = nullptr);

  // Floating-point evaluation (advisory numeric mode only); returns {re, im}.
  std::array<double, 2> eval(const std::array<double, 5>& pt) const;

 private:
  Scalar(Poly num, Poly den, UCtx ctx);
  void normalize();
  static UCtx merge_ctx(const Scalar& a, const Scalar& b);

  Poly num_;
  Poly den_ = poly::one();
  UCtx ctx_;
};

inline Scalar operator*(long n, const Scalar& a) { return Scalar::integer(n) * a; }

// Exact value q * pi^2 with Gaussian-rational q (rational for real integrands).
struct BallIntegral {
  GRat pi2;
  bool is_zero() const { return pi2.is_zero(); }
  friend bool operator==(const BallIntegral& a, const BallIntegral& b) {
    return a.pi2 == b.pi2;
  }
  friend BallIntegral operator+(const BallIntegral& a, const BallIntegral& b) {
    return BallIntegral{a.pi2 + b.pi2};
  }
  friend BallIntegral operator-(const BallIntegral& a, const BallIntegral& b) {
    return BallIntegral{a.pi2 - b.pi2};
  }
};

// Exact integral over the unit ball of R^5.  The integrand must be u-free and
// denominator-free; sigma powers are integrated in closed form.
BallIntegral integrate_ball(const Scalar& a);

}  // namespace qrumin

#endif
