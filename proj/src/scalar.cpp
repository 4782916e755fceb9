#include "qrumin/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qrumin {
namespace poly {

Poly zero() { return {}; }
Poly one() { return {{Mono{}, GRat(1)}}; }

static void push_term(Poly& out, const Mono& m, const GRat& c) {
  if (!c.is_zero()) out.emplace_back(m, c);
}

Poly add(const Poly& a, const Poly& b) {
  Poly out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      out.push_back(a[i++]);
    } else if (b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      GRat c = a[i].second + b[j].second;
      push_term(out, a[i].first, c);
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(b[j]);
  return out;
}

Poly neg(const Poly& a) {
  Poly out = a;
  for (auto& t : out) t.second = -t.second;
  return out;
}

Poly scale(const Poly& a, const GRat& c) {
  if (c.is_zero()) return {};
  Poly out = a;
  for (auto& t : out) t.second *= c;
  return out;
}

static Poly normalize_terms(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return x.first < y.first; });
  Poly out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
      if (out.back().second.is_zero()) out.pop_back();
    } else if (!t.second.is_zero()) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

Poly mul_serial(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Term> acc;
  acc.reserve(a.size() * b.size());
  for (const auto& ta : a)
    for (const auto& tb : b)
      acc.emplace_back(ta.first * tb.first, ta.second * tb.second);
  return normalize_terms(acc);
}

Poly mul_parallel(const Poly& a, const Poly& b) {
#ifdef _OPENMP
  if (a.empty() || b.empty()) return {};
  const Poly& big = a.size() >= b.size() ? a : b;
  const Poly& small = a.size() >= b.size() ? b : a;
  int nthreads = omp_get_max_threads();
  int chunks = std::min<int>(nthreads, int(big.size()));
  std::vector<Poly> partial(chunks);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < chunks; ++c) {
    std::size_t lo = big.size() * c / chunks;
    std::size_t hi = big.size() * (c + 1) / chunks;
    std::vector<Term> acc;
    acc.reserve((hi - lo) * small.size());
    for (std::size_t i = lo; i < hi; ++i)
      for (const auto& tb : small)
        acc.emplace_back(big[i].first * tb.first, big[i].second * tb.second);
    partial[c] = normalize_terms(acc);
  }
  Poly out = std::move(partial[0]);
  for (int c = 1; c < chunks; ++c) out = add(out, partial[c]);
  return out;
#else
  return mul_serial(a, b);
#endif
}

Poly mul(const Poly& a, const Poly& b) {
#ifdef _OPENMP
  if (a.size() * b.size() >= 65536 && omp_get_max_threads() > 1 &&
      !omp_in_parallel())
    return mul_parallel(a, b);
#endif
  return mul_serial(a, b);
}

// Leading-term exact division; succeeds iff num = quot*den in the free ring.
bool try_div(const Poly& num, const Poly& den, Poly& quot) {
  if (den.empty()) throw std::invalid_argument("division by zero polynomial");
  quot.clear();
  Poly rem = num;
  const Mono& dl = den.back().first;
  const GRat& dc = den.back().second;
  std::vector<Term> qterms;
  while (!rem.empty()) {
    const Mono& rl = rem.back().first;
    Mono qm;
    for (int i = 0; i < 5; ++i) {
      int d = rl.e[i] - dl.e[i];
      if (d < 0) return false;
      qm.e[i] = int16_t(d);
    }
    qm.ue = int16_t(rl.ue - dl.ue);
    int ds = rl.se - dl.se;
    if (ds < 0) return false;
    qm.se = int16_t(ds);
    GRat qc = rem.back().second / dc;
    qterms.emplace_back(qm, qc);
    rem = add(rem, neg(mul_serial(Poly{{qm, qc}}, den)));
  }
  quot = normalize_terms(qterms);
  return true;
}

Poly conj(const Poly& a) {
  Poly out = a;
  for (auto& t : out) t.second = t.second.conj();
  return out;
}

bool is_u_free(const Poly& a) {
  for (const auto& t : a)
    if (t.first.ue != 0) return false;
  return true;
}
bool is_sigma_free(const Poly& a) {
  for (const auto& t : a)
    if (t.first.se != 0) return false;
  return true;
}
bool is_coord_poly(const Poly& a) { return is_u_free(a) && is_sigma_free(a); }

Poly expand_sigma(const Poly& a) {
  // sigma = 1 - x1^2 - y1^2 - x2^2 - y2^2 - t^2
  Poly sig = one();
  for (int i = 0; i < 5; ++i) {
    Mono m;
    m.e[i] = 2;
    sig = add(sig, Poly{{m, GRat(-1)}});
  }
  std::map<int, Poly> sig_pow;
  sig_pow[0] = one();
  Poly out;
  std::vector<Term> acc;
  for (const auto& t : a) {
    int k = t.first.se;
    if (!sig_pow.count(k)) {
      int best = 0;
      for (auto& kv : sig_pow)
        if (kv.first <= k) best = kv.first;
      Poly p = sig_pow[best];
      for (int j = best; j < k; ++j) p = mul(p, sig);
      sig_pow[k] = p;
    }
    Mono base = t.first;
    base.se = 0;
    for (const auto& s : sig_pow[k])
      acc.emplace_back(base * s.first, t.second * s.second);
  }
  return normalize_terms(acc);
}

}  // namespace poly

UContext::UContext(Poly upsilon) : ups_(std::move(upsilon)) {
  if (!poly::is_coord_poly(ups_))
    throw std::invalid_argument("conformal factor must be a coordinate polynomial");
  if (ups_ != poly::conj(ups_))
    throw std::invalid_argument("conformal factor must be real");
  for (int c = 0; c < 5; ++c) {
    std::vector<Term> acc;
    for (const auto& t : ups_) {
      if (t.first.e[c] == 0) continue;
      Mono m = t.first;
      m.e[c] = int16_t(m.e[c] - 1);
      acc.emplace_back(m, t.second * GRat(t.first.e[c]));
    }
    std::sort(acc.begin(), acc.end(),
              [](const Term& x, const Term& y) { return x.first < y.first; });
    dups_[c] = acc;
  }
}

Scalar::Scalar(Poly num, Poly den, UCtx ctx)
    : num_(std::move(num)), den_(std::move(den)), ctx_(std::move(ctx)) {
  normalize();
}

void Scalar::normalize() {
  if (den_.empty()) throw std::invalid_argument("zero denominator");
  if (num_.empty()) {
    den_ = poly::one();
    ctx_.reset();
    return;
  }
  if (!(den_.size() == 1 && den_[0].first.is_one() && den_[0].second.is_one())) {
    if (!poly::is_u_free(den_))
      throw std::runtime_error("internal: u-bearing denominator");
    if (!poly::is_sigma_free(den_)) den_ = poly::expand_sigma(den_);
    // pull any common u/sigma monomial out of the fraction
    Poly quot;
    if (poly::try_div(num_, den_, quot)) {
      num_ = std::move(quot);
      den_ = poly::one();
    } else {
      GRat lead = den_.back().second;
      if (!lead.is_one()) {
        GRat inv_lead = GRat(1) / lead;
        den_ = poly::scale(den_, inv_lead);
        num_ = poly::scale(num_, inv_lead);
      }
    }
  }
  if (ctx_ && poly::is_u_free(num_)) ctx_.reset();
}

UCtx Scalar::merge_ctx(const Scalar& a, const Scalar& b) {
  if (!a.ctx_) return b.ctx_;
  if (!b.ctx_) return a.ctx_;
  if (a.ctx_ == b.ctx_ || a.ctx_->same_as(*b.ctx_)) return a.ctx_;
  throw std::invalid_argument("mixed conformal contexts");
}

Scalar Scalar::integer(long n) {
  Scalar s;
  if (n != 0) s.num_ = {{Mono{}, GRat(n)}};
  return s;
}
Scalar Scalar::rational(long num, long den) { return of(GRat::of(num, den)); }
Scalar Scalar::of(GRat c) {
  Scalar s;
  if (!c.is_zero()) s.num_ = {{Mono{}, std::move(c)}};
  return s;
}
Scalar Scalar::i() { return of(GRat::i()); }
Scalar Scalar::var(Coord c) {
  Mono m;
  m.e[static_cast<int>(c)] = 1;
  Scalar s;
  s.num_ = {{m, GRat(1)}};
  return s;
}
Scalar Scalar::sigma(int k) {
  if (k < 0) throw std::invalid_argument("negative sigma power");
  if (k == 0) return one();
  Mono m;
  m.se = int16_t(k);
  Scalar s;
  s.num_ = {{m, GRat(1)}};
  return s;
}
Scalar Scalar::u(const UCtx& ctx, int k) {
  if (!ctx) throw std::invalid_argument("u requires a registered conformal factor");
  if (k == 0 || ctx->trivial()) return one();
  Mono m;
  m.ue = int16_t(k);
  Scalar s;
  s.num_ = {{m, GRat(1)}};
  s.ctx_ = ctx;
  return s;
}
Scalar Scalar::from_poly(Poly p, UCtx ctx) {
  Scalar s;
  s.num_ = std::move(p);
  s.ctx_ = std::move(ctx);
  s.normalize();
  return s;
}

bool Scalar::is_real() const { return *this == this->conj(); }
bool Scalar::is_constant() const {
  return is_polynomial() && (num_.empty() || (num_.size() == 1 && num_[0].first.is_one()));
}
GRat Scalar::constant_value() const {
  if (!is_constant()) throw std::logic_error("not a constant");
  return num_.empty() ? GRat(0) : num_[0].second;
}

Scalar Scalar::conj() const {
  // Coordinates, u, sigma are real-valued; only coefficients conjugate.
  return Scalar(poly::conj(num_), poly::conj(den_), ctx_);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  UCtx ctx = Scalar::merge_ctx(a, b);
  if (a.den_ == b.den_)
    return Scalar(poly::add(a.num_, b.num_), a.den_, ctx);
  return Scalar(poly::add(poly::mul(a.num_, b.den_), poly::mul(b.num_, a.den_)),
                poly::mul(a.den_, b.den_), ctx);
}
Scalar operator-(const Scalar& a) { return Scalar(poly::neg(a.num_), a.den_, a.ctx_); }
Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
Scalar operator*(const Scalar& a, const Scalar& b) {
  UCtx ctx = Scalar::merge_ctx(a, b);
  return Scalar(poly::mul(a.num_, b.num_), poly::mul(a.den_, b.den_), ctx);
}

Scalar Scalar::inv() const {
  if (is_zero()) throw std::invalid_argument("inverting zero");
  // A single-term numerator inverts within the Laurent ring when possible.
  if (num_.size() == 1 && num_[0].first.se == 0) {
    Mono m = num_[0].first;
    bool pure_coord_unit = true;
    for (int i = 0; i < 5; ++i)
      if (m.e[i] != 0) pure_coord_unit = false;
    if (pure_coord_unit) {
      Mono inv_m;
      inv_m.ue = int16_t(-m.ue);
      Poly n = poly::scale(den_, GRat(1) / num_[0].second);
      return Scalar(poly::mul(n, Poly{{inv_m, GRat(1)}}), poly::one(), ctx_);
    }
  }
  if (!u_free())
    throw std::runtime_error("cannot invert a u-bearing polynomial");
  return Scalar(den_, poly::is_sigma_free(num_) ? num_ : poly::expand_sigma(num_), ctx_);
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return poly::mul(a.num_, b.den_) == poly::mul(b.num_, a.den_);
}

Scalar Scalar::derive(Coord c) const {
  const int ci = static_cast<int>(c);
  auto derive_poly = [&](const Poly& p) {
    std::vector<Term> acc;
    for (const auto& t : p) {
      const Mono& m = t.first;
      if (m.e[ci] != 0) {  // d/dc of the coordinate power
        Mono r = m;
        r.e[ci] = int16_t(r.e[ci] - 1);
        acc.emplace_back(r, t.second * GRat(m.e[ci]));
      }
      if (m.ue != 0) {  // d(u^k) = k u^k dUpsilon
        if (!ctx_) throw std::logic_error("deriving u without a registered factor");
        for (const auto& dt : ctx_->d_upsilon(c))
          acc.emplace_back(m * dt.first, t.second * dt.second * GRat(m.ue));
      }
      if (m.se != 0) {  // d(sigma^k) = -2c k sigma^(k-1)
        Mono r = m;
        r.se = int16_t(r.se - 1);
        r.e[ci] = int16_t(r.e[ci] + 1);
        acc.emplace_back(r, t.second * GRat(-2 * int(m.se)));
      }
    }
    std::sort(acc.begin(), acc.end(),
              [](const Term& x, const Term& y) { return x.first < y.first; });
    Poly out;
    for (auto& t : acc) {
      if (!out.empty() && out.back().first == t.first) {
        out.back().second += t.second;
        if (out.back().second.is_zero()) out.pop_back();
      } else if (!t.second.is_zero()) {
        out.push_back(std::move(t));
      }
    }
    return out;
  };
  Poly dn = derive_poly(num_);
  if (is_polynomial()) return Scalar(std::move(dn), poly::one(), ctx_);
  Poly dd = derive_poly(den_);
  // (n/d)' = (n'd - nd')/d^2
  return Scalar(poly::add(poly::mul(dn, den_), poly::neg(poly::mul(num_, dd))),
                poly::mul(den_, den_), ctx_);
}

namespace {

// integral over B^5 of x1^a y1^b x2^c y2^d t^e * sigma^s, as q*pi^2:
//   all exponents even:  prod Gamma(k_i + 1/2) * Gamma(s+1) / Gamma(K + s + 7/2)
// expressed through (2k)!/(4^k k!) = Gamma(k+1/2)/sqrt(pi).
mpq_class monomial_ball_integral(const Mono& m) {
  for (int i = 0; i < 5; ++i)
    if (m.e[i] % 2 != 0) return mpq_class(0);
  mpz_class num = 1, den = 1;
  long K = 0;
  for (int i = 0; i < 5; ++i) {
    long k = m.e[i] / 2;
    K += k;
    mpz_class f2k, fk, p4;
    mpz_fac_ui(f2k.get_mpz_t(), 2 * k);
    mpz_fac_ui(fk.get_mpz_t(), k);
    mpz_ui_pow_ui(p4.get_mpz_t(), 4, k);
    num *= f2k;
    den *= p4 * fk;
  }
  long s = m.se;
  mpz_class fs;
  mpz_fac_ui(fs.get_mpz_t(), s);
  num *= fs;
  // Gamma(M + 3/2)/sqrt(pi) with M = K + s + 2 accounts for Gamma(K+s+7/2).
  long M = K + s + 2;
  mpz_class f2m, fm, p4m;
  mpz_fac_ui(f2m.get_mpz_t(), 2 * M + 2);
  mpz_fac_ui(fm.get_mpz_t(), M + 1);
  mpz_ui_pow_ui(p4m.get_mpz_t(), 4, M + 1);
  // Gamma(M+5/2... ) -- use Gamma(n+1/2) = (2n)!/(4^n n!) sqrt(pi) at n=M+1,
  // since K + s + 7/2 = (M+1) + 3/2 and Gamma(z+1) = z Gamma(z) handled by n.
  num *= p4m * fm;
  den *= f2m;
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

BallIntegral integrate_ball(const Scalar& a) {
  if (!a.u_free()) throw std::invalid_argument("integrand contains u");
  if (!a.is_polynomial()) throw std::invalid_argument("integrand has a denominator");
  GRat total;
  for (const auto& t : a.num()) {
    mpq_class v = monomial_ball_integral(t.first);
    if (v == 0) continue;
    total += t.second * GRat(v);
  }
  return BallIntegral{total};
}

std::array<double, 2> Scalar::eval(const std::array<double, 5>& pt) const {
  double sig = 1.0;
  for (int i = 0; i < 5; ++i) sig -= pt[i] * pt[i];
  double uval = 1.0;
  if (ctx_) {
    double ups = 0;
    for (const auto& t : ctx_->upsilon()) {
      double v = t.second.re().get_d();
      for (int i = 0; i < 5; ++i) v *= std::pow(pt[i], t.first.e[i]);
      ups += v;
    }
    uval = std::exp(ups);
  }
  auto eval_poly = [&](const Poly& p) {
    double re = 0, im = 0;
    for (const auto& t : p) {
      double v = 1.0;
      for (int i = 0; i < 5; ++i) v *= std::pow(pt[i], t.first.e[i]);
      v *= std::pow(uval, t.first.ue) * std::pow(sig, t.first.se);
      re += t.second.re().get_d() * v;
      im += t.second.im().get_d() * v;
    }
    return std::array<double, 2>{re, im};
  };
  auto n = eval_poly(num_), d = eval_poly(den_);
  double nn = d[0] * d[0] + d[1] * d[1];
  return {(n[0] * d[0] + n[1] * d[1]) / nn, (n[1] * d[0] - n[0] * d[1]) / nn};
}

}  // namespace qrumin
