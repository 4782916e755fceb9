#ifndef QRUMIN_PQFORM_HPP
#define QRUMIN_PQFORM_HPP

#include <map>
#include <optional>

#include "qrumin/structure.hpp"

namespace qrumin {

// Bigraded Rumin (p,q)-form, stored as its primary-part frame tensor.
// Low regime (p+q <= 2): |A| = p holomorphic slots, |B| = q antiholomorphic.
// High regime (p+q >= 3): |A| = 2-q, |B| = 3-p.
class PqForm {
 public:
  PqForm() = default;
  static PqForm make(StructPtr S, int p, int q, FrameTensor prim);
  static PqForm zero(StructPtr S, int p, int q);
  static std::vector<Idx> expected_sig(int p, int q);
  static bool valid_bidegree(int p, int q);
  static bool high_regime(int p, int q) { return p + q >= 3; }

  int p() const { return p_; }
  int q() const { return q_; }
  int degree() const { return p_ + q_; }
  bool high() const { return high_regime(p_, q_); }
  const FrameTensor& prim() const { return prim_; }
  const StructPtr& structure() const { return S_; }
  bool is_zero() const { return prim_.is_zero(); }

  CoordForm realize() const;
  PqForm conj() const;  // (p,q) -> (q,p) low, (q+1,p-1) high

  friend PqForm operator+(const PqForm& a, const PqForm& b);
  friend PqForm operator-(const PqForm& a, const PqForm& b);
  friend PqForm operator-(const PqForm& a);
  friend PqForm operator*(const Scalar& s, const PqForm& a);

 private:
  int p_ = 0, q_ = 0;
  FrameTensor prim_;
  StructPtr S_;
};

// Graded collection of PqForms of one total degree (or mixed degrees for
// operator outputs such as Q_{1,1}^d).
class PqSum {
 public:
  PqSum() = default;
  explicit PqSum(StructPtr S) : S_(std::move(S)) {}
  static PqSum of(PqForm w);

  const StructPtr& structure() const { return S_; }
  bool is_zero() const;
  const std::map<std::pair<int, int>, PqForm>& parts() const { return parts_; }
  PqForm at(int p, int q) const;  // zero form if absent
  bool has(int p, int q) const { return parts_.count({p, q}) > 0; }

  void add(const PqForm& w);
  friend PqSum operator+(const PqSum& a, const PqSum& b);
  friend PqSum operator-(const PqSum& a, const PqSum& b);
  friend PqSum operator-(const PqSum& a);
  friend PqSum operator*(const Scalar& s, const PqSum& a);

  CoordForm realize() const;
  PqSum conj() const;

 private:
  std::map<std::pair<int, int>, PqForm> parts_;
  StructPtr S_;
};

// Thrown when a coordinate form fails to lie in the bigraded Rumin subspace.
struct DecomposeError : std::runtime_error {
  explicit DecomposeError(const std::string& what, std::string witness_)
      : std::runtime_error(what), witness(std::move(witness_)) {}
  std::string witness;
};

// Unique bigraded components of a form in realize(R^k); throws DecomposeError
// when the residual is nonzero.
PqSum decompose(const StructPtr& S, const CoordForm& w, int k);

// The Lee form: (1,1)-form with primary part -i E_{alpha betabar}.
PqForm lee_form(const StructPtr& S);

}  // namespace qrumin

#endif
