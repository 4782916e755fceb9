#ifndef QRUMIN_STRUCTURE_HPP
#define QRUMIN_STRUCTURE_HPP

#include <memory>

#include "qrumin/coord_form.hpp"
#include "qrumin/frame_tensor.hpp"

namespace qrumin {

class PHStructure;
using StructPtr = std::shared_ptr<const PHStructure>;

// Pseudohermitian structure theta = e^Upsilon * theta_0 on the Heisenberg
// group H^2, with the full Tanaka-Webster package derived exactly from the
// structure equations.  Immutable after construction.
//
// Frame direction indices used throughout: 0 = T (Reeb), 1..2 = Z_alpha,
// 3..4 = Z_alphabar.
class PHStructure {
 public:
  static StructPtr flat();
  static StructPtr rescale(const StructPtr& base, const Scalar& upsilon);

  const Scalar& upsilon() const { return upsilon_; }
  const UCtx& uctx() const { return uctx_; }
  bool is_flat() const { return uctx_ == nullptr; }
  Scalar u_pow(int k) const;  // e^{k Upsilon}

  const CoordForm& theta() const { return theta_; }
  const CoordForm& dtheta() const { return dtheta_; }
  CoordForm coframe(int d) const;  // d in 0..4 as above
  const VecField& frame(int d) const { return frame_[d]; }

  const Scalar& h(int a, int b) const { return h_[a][b]; }      // h_{alpha betabar}
  const Scalar& hup(int a, int b) const { return hup_[a][b]; }  // h^{alpha betabar}

  // connection coefficient of omega_a^g along frame direction d
  const Scalar& conn(int a, int g, int d) const { return conn_[a][g][d]; }
  const CoordForm& conn_form(int a, int g) const { return conn_form_[a][g]; }

  const FrameTensor& torsion() const { return A_; }           // A_{alpha gamma}
  const Scalar& torsion_raised(int a, int b) const { return Araised_[a][b]; }
  const Scalar& riem(int a, int b, int r, int s) const { return Rlow_[a][b][r][s]; }
  const FrameTensor& ricci() const { return Ric_; }
  const Scalar& scalar_curv() const { return Rscal_; }
  const FrameTensor& schouten() const { return P_; }
  const Scalar& schouten_trace() const { return Ptrace_; }
  const FrameTensor& schouten_tf() const { return E_; }  // E_{alpha betabar}

  Scalar frame_deriv(const Scalar& f, int d) const { return frame_[d].apply(f); }

  // covariant derivative along one frame direction d in 0..4 (signature kept)
  FrameTensor cov_dir(const FrameTensor& T, int d) const;
  // covariant derivative with a new Hol / AHol slot appended, and nabla_0
  FrameTensor cov_hol(const FrameTensor& T) const;
  FrameTensor cov_ahol(const FrameTensor& T) const;
  FrameTensor cov0(const FrameTensor& T) const;

  // expansion of a coordinate-basis form over the coframe (masks reindexed to
  // frame directions) and back.
  CoordForm to_frame(const CoordForm& w) const;
  CoordForm from_frame(const CoordForm& w) const;

  // exact residuals of all defining equations; empty scalars mean success
  std::vector<std::pair<std::string, Scalar>> structure_residuals() const;

  std::string dump_json() const;  // named component s-expressions

 private:
  PHStructure() = default;
  static StructPtr make(const Scalar& upsilon_total);

  Scalar upsilon_;
  UCtx uctx_;
  CoordForm theta_, dtheta_;
  CoordForm coframe_[5];
  VecField frame_[5];
  Scalar h_[2][2], hup_[2][2];
  Scalar conn_[2][2][5];
  CoordForm conn_form_[2][2];
  FrameTensor A_;
  Scalar Araised_[2][2];
  Scalar Rlow_[2][2][2][2];
  FrameTensor Ric_, P_, E_;
  Scalar Rscal_, Ptrace_;
};

}  // namespace qrumin

#endif
