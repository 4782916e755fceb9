#include "qrumin/coord_form.hpp"

#include <bit>

namespace qrumin {

VecField VecField::conj() const {
  // conj swaps d/dz^a with d/dzbar^a and conjugates coefficients
  VecField r;
  r.c[0] = c[0].conj();
  r.c[1] = c[3].conj();
  r.c[2] = c[4].conj();
  r.c[3] = c[1].conj();
  r.c[4] = c[2].conj();
  return r;
}

Scalar d_dt(const Scalar& f) { return f.derive(Coord::t); }
Scalar d_dz(const Scalar& f, int alpha) {
  Coord x = alpha == 1 ? Coord::x1 : Coord::x2;
  Coord y = alpha == 1 ? Coord::y1 : Coord::y2;
  return Scalar::rational(1, 2) * (f.derive(x) - Scalar::i() * f.derive(y));
}
Scalar d_dzbar(const Scalar& f, int alpha) {
  Coord x = alpha == 1 ? Coord::x1 : Coord::x2;
  Coord y = alpha == 1 ? Coord::y1 : Coord::y2;
  return Scalar::rational(1, 2) * (f.derive(x) + Scalar::i() * f.derive(y));
}

static Scalar basis_deriv(const Scalar& f, int i) {
  switch (i) {
    case 0: return d_dt(f);
    case 1: return d_dz(f, 1);
    case 2: return d_dz(f, 2);
    case 3: return d_dzbar(f, 1);
    default: return d_dzbar(f, 2);
  }
}

Scalar VecField::apply(const Scalar& f) const {
  Scalar r;
  for (int i = 0; i < 5; ++i)
    if (!c[i].is_zero()) r += c[i] * basis_deriv(f, i);
  return r;
}

VecField operator+(const VecField& a, const VecField& b) {
  VecField r;
  for (int i = 0; i < 5; ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}
VecField VecField::scaled(const Scalar& s) const {
  VecField r;
  for (int i = 0; i < 5; ++i) r.c[i] = s * c[i];
  return r;
}

int merge_sign(std::uint8_t a, std::uint8_t b) {
  // count inversions between sorted index sets a and b
  int sign = 1;
  for (int i = 0; i < kBasisDim; ++i) {
    if (!(b & (1 << i))) continue;
    int higher = std::popcount(std::uint8_t(a >> (i + 1)));
    if (higher % 2 == 1) sign = -sign;
  }
  return sign;
}

CoordForm CoordForm::function(Scalar f) {
  CoordForm r;
  r.set(0, std::move(f));
  return r;
}
CoordForm CoordForm::basis(int i) {
  CoordForm r;
  r.set(std::uint8_t(1 << i), Scalar::one());
  return r;
}

bool CoordForm::is_zero() const { return c_.empty(); }
int CoordForm::degree() const {
  int d = 0;
  bool first = true;
  for (const auto& kv : c_) {
    int k = std::popcount(kv.first);
    if (first) {
      d = k;
      first = false;
    } else if (k != d) {
      return -1;
    }
  }
  return d;
}

Scalar CoordForm::coeff(std::uint8_t mask) const {
  auto it = c_.find(mask);
  return it == c_.end() ? Scalar::zero() : it->second;
}
void CoordForm::set(std::uint8_t mask, Scalar v) {
  if (v.is_zero())
    c_.erase(mask);
  else
    c_[mask] = std::move(v);
}
void CoordForm::prune() {
  for (auto it = c_.begin(); it != c_.end();) {
    if (it->second.is_zero())
      it = c_.erase(it);
    else
      ++it;
  }
}

CoordForm operator+(const CoordForm& a, const CoordForm& b) {
  CoordForm r = a;
  for (const auto& kv : b.c_) {
    auto it = r.c_.find(kv.first);
    if (it == r.c_.end())
      r.c_.insert(kv);
    else
      it->second += kv.second;
  }
  r.prune();
  return r;
}
CoordForm operator-(const CoordForm& a) {
  CoordForm r = a;
  for (auto& kv : r.c_) kv.second = -kv.second;
  return r;
}
CoordForm operator-(const CoordForm& a, const CoordForm& b) { return a + (-b); }
CoordForm operator*(const Scalar& s, const CoordForm& a) {
  CoordForm r;
  if (s.is_zero()) return r;
  for (const auto& kv : a.c_) r.set(kv.first, s * kv.second);
  return r;
}
bool operator==(const CoordForm& a, const CoordForm& b) {
  return (a - b).is_zero();
}

CoordForm CoordForm::wedge(const CoordForm& b) const {
  CoordForm r;
  for (const auto& ta : c_) {
    for (const auto& tb : b.c_) {
      if (ta.first & tb.first) continue;
      int sg = merge_sign(ta.first, tb.first);
      Scalar v = ta.second * tb.second;
      if (sg < 0) v = -v;
      std::uint8_t m = ta.first | tb.first;
      auto it = r.c_.find(m);
      if (it == r.c_.end())
        r.c_[m] = std::move(v);
      else
        it->second += v;
    }
  }
  r.prune();
  return r;
}

CoordForm CoordForm::d() const {
  CoordForm r;
  for (const auto& kv : c_) {
    for (int i = 0; i < kBasisDim; ++i) {
      if (kv.first & (1 << i)) continue;
      Scalar df = basis_deriv(kv.second, i);
      if (df.is_zero()) continue;
      int sg = merge_sign(std::uint8_t(1 << i), kv.first);
      std::uint8_t m = std::uint8_t(kv.first | (1 << i));
      Scalar v = sg < 0 ? -df : df;
      auto it = r.c_.find(m);
      if (it == r.c_.end())
        r.c_[m] = std::move(v);
      else
        it->second += v;
    }
  }
  r.prune();
  return r;
}

CoordForm CoordForm::conj() const {
  // dt fixed, dz^a <-> dzbar^a (indices 1<->3, 2<->4)
  static const int perm[5] = {0, 3, 4, 1, 2};
  CoordForm r;
  for (const auto& kv : c_) {
    std::uint8_t m = 0;
    // permutation sign: collect image indices in the order of the sorted source
    std::vector<int> image;
    for (int i = 0; i < kBasisDim; ++i)
      if (kv.first & (1 << i)) image.push_back(perm[i]);
    int sign = 1;
    for (std::size_t a = 0; a < image.size(); ++a)
      for (std::size_t b = a + 1; b < image.size(); ++b)
        if (image[a] > image[b]) sign = -sign;
    for (int i : image) m |= std::uint8_t(1 << i);
    Scalar v = kv.second.conj();
    r.set(m, sign < 0 ? -v : v);
  }
  return r;
}

CoordForm CoordForm::interior(const VecField& v) const {
  CoordForm r;
  for (const auto& kv : c_) {
    int pos = 0;
    for (int i = 0; i < kBasisDim; ++i) {
      if (!(kv.first & (1 << i))) continue;
      if (!v.c[i].is_zero()) {
        Scalar val = v.c[i] * kv.second;
        if (pos % 2 == 1) val = -val;
        std::uint8_t m = std::uint8_t(kv.first & ~(1 << i));
        auto it = r.c_.find(m);
        if (it == r.c_.end())
          r.c_[m] = std::move(val);
        else
          it->second += val;
      }
      ++pos;
    }
  }
  r.prune();
  return r;
}

Scalar CoordForm::eval(const std::vector<const VecField*>& vs) const {
  CoordForm cur = *this;
  for (const VecField* v : vs) cur = cur.interior(*v);
  return cur.coeff(0);
}

CoordForm CoordForm::pow_wedge(int k) const {
  CoordForm r = CoordForm::function(Scalar::one());
  for (int i = 0; i < k; ++i) r = r.wedge(*this);
  return r;
}

}  // namespace qrumin
