#ifndef QRUMIN_TESTS_ORACLE_BALL_HPP
#define QRUMIN_TESTS_ORACLE_BALL_HPP

// Independent oracle for exact monomial integrals over unit balls, via
// iterated one-dimensional slice integration.  Values are q * pi^k.
// Kept free of the production integrate_ball code path.

#include <array>
#include <stdexcept>

#include "qrumin/scalar.hpp"

namespace qrumin::testing {

struct PiVal {
  mpq_class q;
  int k = 0;  // power of pi
  PiVal operator*(const PiVal& o) const { return {q * o.q, k + o.k}; }
};

inline mpz_class fact(unsigned long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

// int_{-1}^{1} c^a (1-c^2)^{h/2} dc for a, h >= 0.
inline PiVal wallis(int a, int h) {
  if (a % 2 == 1) return {mpq_class(0), 0};
  if (h % 2 == 0) {
    // binomial expansion of (1-c^2)^{h/2}
    int j = h / 2;
    mpq_class total(0);
    mpz_class binom;
    for (int m = 0; m <= j; ++m) {
      mpz_bin_uiui(binom.get_mpz_t(), j, m);
      mpq_class term(2 * ((m % 2 == 0) ? binom : -binom), a + 2 * m + 1);
      term.canonicalize();
      total += term;
    }
    return {total, 0};
  }
  // c = sin(phi): pi * (2p)! (2q)! / (4^{p+q} p! q! (p+q)!)
  int p = a / 2, qq = (h + 1) / 2;
  mpz_class p4;
  mpz_ui_pow_ui(p4.get_mpz_t(), 4, p + qq);
  mpq_class v(fact(2 * p) * fact(2 * qq), p4 * fact(p) * fact(qq) * fact(p + qq));
  v.canonicalize();
  return {v, 1};
}

// int over the unit n-ball of prod x_i^{a_i}.
inline PiVal ball_monomial(const std::vector<int>& a) {
  int n = int(a.size());
  if (n == 0) return {mpq_class(1), 0};
  int d_rest = 0;
  for (int i = 0; i + 1 < n; ++i) d_rest += a[i];
  PiVal slice = wallis(a[n - 1], (n - 1) + d_rest);
  std::vector<int> rest(a.begin(), a.end() - 1);
  return slice * ball_monomial(rest);
}

// Oracle integral of a u-free polynomial Scalar over the unit 5-ball,
// expanding sigma powers binomially into the slice recursion.
inline GRat oracle_integrate(const Scalar& s) {
  if (!s.is_polynomial() || !s.u_free())
    throw std::invalid_argument("oracle: polynomial u-free input required");
  Poly p = poly::expand_sigma(s.num());
  GRat total;
  for (const auto& t : p) {
    std::vector<int> a(5);
    for (int i = 0; i < 5; ++i) a[i] = t.first.e[i];
    PiVal v = ball_monomial(a);
    if (v.q == 0) continue;
    if (v.k != 2) throw std::logic_error("oracle: expected pi^2");
    total += t.second * GRat(v.q);
  }
  return total;
}

}  // namespace qrumin::testing

#endif
