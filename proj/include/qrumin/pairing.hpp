#ifndef QRUMIN_PAIRING_HPP
#define QRUMIN_PAIRING_HPP

#include "qrumin/qops.hpp"

namespace qrumin {

// Exact pairing value q * pi^2 with Gaussian-rational q.
struct PairingValue {
  GRat pi2;
  bool is_zero() const { return pi2.is_zero(); }
  friend bool operator==(const PairingValue& a, const PairingValue& b) {
    return a.pi2 == b.pi2;
  }
  friend PairingValue operator+(const PairingValue& a, const PairingValue& b) {
    return {a.pi2 + b.pi2};
  }
  friend PairingValue operator-(const PairingValue& a, const PairingValue& b) {
    return {a.pi2 - b.pi2};
  }
  PairingValue conj() const { return {pi2.conj()}; }
};

// Pointwise Hermitian inner product <w,t> = (1/p!q!) w_{AB} conj(t)^{BA}.
Scalar hermitian_inner(const PqForm& a, const PqForm& b);

// Exact integral of an honest top form over the unit ball (flat structure,
// u-free coefficients required).
PairingValue integrate_form(const CoordForm& top);

// L^2 inner product <<w,t>> = (1/2) int <w,t> theta ^ dtheta^2 at the flat
// structure; the Jacobian normalization is computed, not assumed.
PairingValue l2_inner(const PqForm& a, const PqForm& b);

// int w rwedge conj(t) for (0,1) x (2,2) arguments (Serre-type pairing).
PairingValue serre_pair(const PqForm& w01, const PqForm& t22);

// Bilinear forms of the GJMS/Q-operators; flat structure, cutoff arguments.
PairingValue form_L01(const PqForm& w, const PqForm& t);
PairingValue form_Q01(const PqForm& w, const PqForm& t);  // dbbar-closed args
PairingValue form_L00(const StructPtr& S, const Scalar& phi, const Scalar& psi);

}  // namespace qrumin

#endif
