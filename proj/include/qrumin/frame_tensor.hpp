#ifndef QRUMIN_FRAME_TENSOR_HPP
#define QRUMIN_FRAME_TENSOR_HPP

#include <initializer_list>
#include <vector>

#include "qrumin/scalar.hpp"

namespace qrumin {

enum class Idx { Hol, AHol };

// Dense frame-indexed component array over {1,2} per slot.
class FrameTensor {
 public:
  FrameTensor() = default;
  explicit FrameTensor(std::vector<Idx> sig);

  static FrameTensor scalar(Scalar v);

  int rank() const { return int(sig_.size()); }
  const std::vector<Idx>& sig() const { return sig_; }
  std::size_t size() const { return c_.size(); }

  // indices are 0-based in {0,1}
  const Scalar& at(std::initializer_list<int> idx) const;
  Scalar& at(std::initializer_list<int> idx);
  const Scalar& flat(std::size_t k) const { return c_[k]; }
  Scalar& flat(std::size_t k) { return c_[k]; }

  bool is_zero() const;
  FrameTensor conj() const;  // flips every index type, conjugates components

  friend FrameTensor operator+(const FrameTensor& a, const FrameTensor& b);
  friend FrameTensor operator-(const FrameTensor& a, const FrameTensor& b);
  friend FrameTensor operator-(const FrameTensor& a);
  friend FrameTensor operator*(const Scalar& s, const FrameTensor& a);
  friend bool operator==(const FrameTensor& a, const FrameTensor& b);

 private:
  std::size_t offset(std::initializer_list<int> idx) const;
  std::vector<Idx> sig_;
  std::vector<Scalar> c_;
};

// rows: n x (n+m) augmented exact system over the Scalar fraction field;
// returns the n x m solution block. Throws if the system is singular or
// inconsistent.
std::vector<std::vector<Scalar>> solve_linear(std::vector<std::vector<Scalar>> rows,
                                              int unknowns);

}  // namespace qrumin

#endif
