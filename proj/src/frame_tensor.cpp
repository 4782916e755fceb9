#include "qrumin/frame_tensor.hpp"

#include <algorithm>

namespace qrumin {

FrameTensor::FrameTensor(std::vector<Idx> sig) : sig_(std::move(sig)) {
  c_.assign(std::size_t(1) << sig_.size(), Scalar::zero());
}

FrameTensor FrameTensor::scalar(Scalar v) {
  FrameTensor t{std::vector<Idx>{}};
  t.c_[0] = std::move(v);
  return t;
}

std::size_t FrameTensor::offset(std::initializer_list<int> idx) const {
  if (idx.size() != sig_.size()) throw std::logic_error("tensor rank mismatch");
  std::size_t k = 0;
  for (int i : idx) k = (k << 1) | std::size_t(i & 1);
  return k;
}

const Scalar& FrameTensor::at(std::initializer_list<int> idx) const {
  return c_[offset(idx)];
}
Scalar& FrameTensor::at(std::initializer_list<int> idx) { return c_[offset(idx)]; }

bool FrameTensor::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Scalar& s) { return s.is_zero(); });
}

FrameTensor FrameTensor::conj() const {
  FrameTensor r = *this;
  for (auto& t : r.sig_) t = t == Idx::Hol ? Idx::AHol : Idx::Hol;
  for (auto& s : r.c_) s = s.conj();
  return r;
}

FrameTensor operator+(const FrameTensor& a, const FrameTensor& b) {
  if (a.sig_ != b.sig_) throw std::logic_error("tensor signature mismatch");
  FrameTensor r = a;
  for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] += b.c_[k];
  return r;
}
FrameTensor operator-(const FrameTensor& a, const FrameTensor& b) { return a + (-b); }
FrameTensor operator-(const FrameTensor& a) {
  FrameTensor r = a;
  for (auto& s : r.c_) s = -s;
  return r;
}
FrameTensor operator*(const Scalar& s, const FrameTensor& a) {
  FrameTensor r = a;
  for (auto& c : r.c_) c = s * c;
  return r;
}
bool operator==(const FrameTensor& a, const FrameTensor& b) {
  return a.sig_ == b.sig_ && (a - b).is_zero();
}

std::vector<std::vector<Scalar>> solve_linear(std::vector<std::vector<Scalar>> rows,
                                              int unknowns) {
  const int n = unknowns;
  const int m = rows.empty() ? 0 : int(rows[0].size()) - n;
  if (m < 0) throw std::logic_error("solve_linear: bad shape");
  int rank = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < n && rank < int(rows.size()); ++col) {
    // prefer constant pivots to limit fraction growth
    int best = -1;
    for (int r = rank; r < int(rows.size()); ++r) {
      if (rows[r][col].is_zero()) continue;
      if (best == -1) best = r;
      if (rows[r][col].is_constant()) {
        best = r;
        break;
      }
    }
    if (best == -1) continue;
    std::swap(rows[rank], rows[best]);
    Scalar inv = rows[rank][col].inv();
    for (auto& v : rows[rank]) v = inv * v;
    for (int r = 0; r < int(rows.size()); ++r) {
      if (r == rank || rows[r][col].is_zero()) continue;
      Scalar f = rows[r][col];
      for (int c2 = 0; c2 < n + m; ++c2) rows[r][c2] -= f * rows[rank][c2];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  // consistency of the remaining rows
  for (int r = rank; r < int(rows.size()); ++r)
    for (int c2 = n; c2 < n + m; ++c2)
      if (!rows[r][c2].is_zero())
        throw std::runtime_error("solve_linear: inconsistent system");
  std::vector<std::vector<Scalar>> sol(n, std::vector<Scalar>(m, Scalar::zero()));
  for (int r = 0; r < rank; ++r)
    for (int c2 = 0; c2 < m; ++c2) sol[pivot_col[r]][c2] = rows[r][n + c2];
  return sol;
}

}  // namespace qrumin
