#ifndef QRUMIN_COORD_FORM_HPP
#define QRUMIN_COORD_FORM_HPP

#include <map>
#include <vector>

#include "qrumin/scalar.hpp"

namespace qrumin {

// Basis covector indices for exterior algebra containers.
// Coordinate basis: 0 = dt, 1 = dz^1, 2 = dz^2, 3 = dzbar^1, 4 = dzbar^2.
// The same container also carries coframe-basis expansions
// (0 = theta, 1..2 = theta^alpha, 3..4 = theta^alphabar).
inline constexpr int kBasisDim = 5;

// Complex vector field with components over (d/dt, d/dz^1, d/dz^2,
// d/dzbar^1, d/dzbar^2).
struct VecField {
  std::array<Scalar, 5> c;
  VecField conj() const;
  Scalar apply(const Scalar& f) const;  // directional derivative
  friend VecField operator+(const VecField& a, const VecField& b);
  VecField scaled(const Scalar& s) const;
};

// Complex-derivative helpers on Scalars.
Scalar d_dt(const Scalar& f);
Scalar d_dz(const Scalar& f, int alpha);     // alpha in {1,2}
Scalar d_dzbar(const Scalar& f, int alpha);  // alpha in {1,2}

// Exterior form with Scalar coefficients over sorted basis monomials
// (bitmask over 5 basis covectors).  Not necessarily homogeneous.
class CoordForm {
 public:
  CoordForm() = default;
  static CoordForm function(Scalar f);
  static CoordForm basis(int i);  // single basis covector

  bool is_zero() const;
  int degree() const;  // -1 if mixed, 0 for the zero form by convention

  const std::map<std::uint8_t, Scalar>& comps() const { return c_; }
  Scalar coeff(std::uint8_t mask) const;
  void set(std::uint8_t mask, Scalar v);

  friend CoordForm operator+(const CoordForm& a, const CoordForm& b);
  friend CoordForm operator-(const CoordForm& a, const CoordForm& b);
  friend CoordForm operator-(const CoordForm& a);
  friend CoordForm operator*(const Scalar& s, const CoordForm& a);
  CoordForm& operator+=(const CoordForm& b) { *this = *this + b; return *this; }
  CoordForm& operator-=(const CoordForm& b) { *this = *this - b; return *this; }
  friend bool operator==(const CoordForm& a, const CoordForm& b);

  CoordForm wedge(const CoordForm& b) const;
  CoordForm d() const;  // exterior derivative (coordinate basis only)
  CoordForm conj() const;
  CoordForm interior(const VecField& v) const;

  // evaluation on k vectors (k = degree)
  Scalar eval(const std::vector<const VecField*>& vs) const;

  CoordForm pow_wedge(int k) const;  // k-fold wedge of a 2-form with itself

 private:
  void prune();
  std::map<std::uint8_t, Scalar> c_;
};

// sign of sorting the concatenation of two disjoint sorted masks
int merge_sign(std::uint8_t a, std::uint8_t b);

}  // namespace qrumin

#endif
