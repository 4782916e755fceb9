#include "qrumin/pairing.hpp"

namespace qrumin {

namespace {

long fact(int n) {
  long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// dt ^ dz1 ^ dz2 ^ dz1bar ^ dz2bar = 4 dx1 ^ dy1 ^ dx2 ^ dy2 ^ dt
const GRat kComplexToLebesgue = GRat(4);

}  // namespace

Scalar hermitian_inner(const PqForm& a, const PqForm& b) {
  if (a.p() != b.p() || a.q() != b.q() || a.structure() != b.structure())
    throw std::invalid_argument("hermitian_inner: bidegree mismatch");
  const StructPtr& S = a.structure();
  const auto& sig = a.prim().sig();
  const int rank = a.prim().rank();
  int nh = 0;
  for (Idx i : sig)
    if (i == Idx::Hol) ++nh;
  Scalar acc;
  // <w,t> = (1/a!b!) w_{AB} conj(t_{CD}) prod h^{a_i c_i} prod h^{d_j b_j}
  for (std::size_t ka = 0; ka < a.prim().size(); ++ka) {
    if (a.prim().flat(ka).is_zero()) continue;
    for (std::size_t kb = 0; kb < b.prim().size(); ++kb) {
      if (b.prim().flat(kb).is_zero()) continue;
      Scalar factor = a.prim().flat(ka) * b.prim().flat(kb).conj();
      for (int j = 0; j < rank; ++j) {
        int ia = int((ka >> (rank - 1 - j)) & 1);
        int ib = int((kb >> (rank - 1 - j)) & 1);
        factor = factor * (sig[j] == Idx::Hol ? S->hup(ia, ib) : S->hup(ib, ia));
      }
      acc += factor;
    }
  }
  int na = rank - nh;
  return Scalar::rational(1, fact(nh) * fact(na)) * acc;
}

PairingValue integrate_form(const CoordForm& top) {
  for (const auto& kv : top.comps())
    if (kv.first != 0b11111)
      throw std::invalid_argument("integrate_form: not a top form");
  Scalar c = Scalar::of(kComplexToLebesgue) * top.coeff(0b11111);
  return {integrate_ball(c).pi2};
}

PairingValue l2_inner(const PqForm& a, const PqForm& b) {
  const StructPtr& S = a.structure();
  if (!S->is_flat())
    throw std::invalid_argument("l2_inner: exact integration needs the flat structure");
  Scalar inner = hermitian_inner(a, b);
  // (1/2) int <w,t> theta ^ dtheta^2 with the Jacobian read off exactly
  CoordForm vol = S->theta().wedge(S->dtheta().pow_wedge(2));
  return integrate_form(Scalar::rational(1, 2) *
                        (CoordForm::function(inner).wedge(vol)));
}

PairingValue serre_pair(const PqForm& w01, const PqForm& t22) {
  PqSum prod = rwedge(w01, t22.conj());
  return integrate_form(prod.at(3, 2).realize());
}

PairingValue form_L01(const PqForm& w, const PqForm& t) {
  return integrate_form(rwedge(w, L01(t).conj()).at(3, 2).realize());
}

PairingValue form_Q01(const PqForm& w, const PqForm& t) {
  if (!dbbar(t).realize().is_zero() || !dbbar(w).realize().is_zero())
    throw std::invalid_argument("form_Q01 needs dbbar-closed arguments");
  return integrate_form(rwedge(w, Q01(t).conj()).at(3, 2).realize());
}

PairingValue form_L00(const StructPtr& S, const Scalar& phi, const Scalar& psi) {
  PqForm f = PqForm::make(S, 0, 0, FrameTensor::scalar(phi));
  PqForm l = L00scal(S, psi);
  return integrate_form(rwedge(f, l.conj()).at(3, 2).realize());
}

}  // namespace qrumin
