#ifndef QRUMIN_GRAT_HPP
#define QRUMIN_GRAT_HPP

#include <gmpxx.h>

#include <string>

namespace qrumin {

// Gaussian rational a + b*i with arbitrary-precision components.
class GRat {
 public:
  GRat() : re_(0), im_(0) {}
  GRat(long n) : re_(n), im_(0) {}
  GRat(mpq_class re) : re_(std::move(re)), im_(0) {}
  GRat(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

  static GRat i() { return GRat(mpq_class(0), mpq_class(1)); }
  static GRat of(long num, long den) { return GRat(mpq_class(num, den)); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_one() const { return re_ == 1 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  GRat conj() const { return GRat(re_, -im_); }

  friend GRat operator+(const GRat& a, const GRat& b) {
    return GRat(a.re_ + b.re_, a.im_ + b.im_);
  }
  friend GRat operator-(const GRat& a, const GRat& b) {
    return GRat(a.re_ - b.re_, a.im_ - b.im_);
  }
  friend GRat operator-(const GRat& a) { return GRat(-a.re_, -a.im_); }
  friend GRat operator*(const GRat& a, const GRat& b) {
    return GRat(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
  }
  friend GRat operator/(const GRat& a, const GRat& b) {
    mpq_class n = b.re_ * b.re_ + b.im_ * b.im_;
    return GRat((a.re_ * b.re_ + a.im_ * b.im_) / n,
                (a.im_ * b.re_ - a.re_ * b.im_) / n);
  }
  GRat& operator+=(const GRat& b) { re_ += b.re_; im_ += b.im_; return *this; }
  GRat& operator-=(const GRat& b) { re_ -= b.re_; im_ -= b.im_; return *this; }
  GRat& operator*=(const GRat& b) { *this = *this * b; return *this; }

  friend bool operator==(const GRat& a, const GRat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GRat& a, const GRat& b) { return !(a == b); }

  std::string str() const;

 private:
  mpq_class re_, im_;
};

}  // namespace qrumin

#endif
