#include "qrumin/pqform.hpp"

#include <bit>

#include "qrumin/testhooks.hpp"

namespace qrumin {

namespace {

bool is_low(int p, int q) { return p + q <= 2; }

long fact(int n) {
  long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// trace over one Hol slot and one AHol slot with h^{alpha betabar}
Scalar pair_trace(const StructPtr& S, const FrameTensor& T, int hol_slot,
                  int ahol_slot) {
  const int rank = T.rank();
  Scalar acc;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      // all other slots must match; here rank == 2 in every use
      (void)rank;
      std::size_t k = 0;
      k |= std::size_t(a) << (rank - 1 - hol_slot);
      k |= std::size_t(b) << (rank - 1 - ahol_slot);
      acc += S->hup(a, b) * T.flat(k);
    }
  return acc;
}

void validate_prim(const StructPtr& S, int p, int q, const FrameTensor& T) {
  auto sig = PqForm::expected_sig(p, q);
  if (T.sig() != sig) throw std::invalid_argument("pqform: wrong index signature");
  int nh = 0, na = 0;
  for (Idx i : sig) (i == Idx::Hol ? nh : na)++;
  // antisymmetry inside each group (groups have size <= 2)
  if (nh == 2) {
    if (!(T.at({0, 0}).is_zero() && T.at({1, 1}).is_zero() &&
          (T.at({0, 1}) + T.at({1, 0})).is_zero()))
      throw std::invalid_argument("pqform: holomorphic group not antisymmetric");
  }
  if (na == 2) {
    if (!(T.at({0, 0}).is_zero() && T.at({1, 1}).is_zero() &&
          (T.at({0, 1}) + T.at({1, 0})).is_zero()))
      throw std::invalid_argument("pqform: antiholomorphic group not antisymmetric");
  }
  if (nh == 1 && na == 1) {
    if (!pair_trace(S, T, 0, 1).is_zero())
      throw std::invalid_argument("pqform: trace condition violated");
  }
}

}  // namespace

bool PqForm::valid_bidegree(int p, int q) {
  if (p < 0 || q < 0 || p > 3 || q > 2) return false;
  if (p + q <= 2) return p <= 2;  // (3,-1) style slots do not exist
  return p >= 1;                  // high regime needs |B| = 3-p <= 2
}

std::vector<Idx> PqForm::expected_sig(int p, int q) {
  if (!valid_bidegree(p, q)) throw std::invalid_argument("invalid bidegree");
  int nh = p + q <= 2 ? p : 2 - q;
  int na = p + q <= 2 ? q : 3 - p;
  std::vector<Idx> sig;
  for (int i = 0; i < nh; ++i) sig.push_back(Idx::Hol);
  for (int i = 0; i < na; ++i) sig.push_back(Idx::AHol);
  return sig;
}

PqForm PqForm::make(StructPtr S, int p, int q, FrameTensor prim) {
  validate_prim(S, p, q, prim);
  PqForm w;
  w.p_ = p;
  w.q_ = q;
  w.prim_ = std::move(prim);
  w.S_ = std::move(S);
  return w;
}

PqForm PqForm::zero(StructPtr S, int p, int q) {
  return make(std::move(S), p, q, FrameTensor(expected_sig(p, q)));
}

PqForm operator+(const PqForm& a, const PqForm& b) {
  if (a.p_ != b.p_ || a.q_ != b.q_ || a.S_ != b.S_)
    throw std::invalid_argument("pqform: bidegree or structure mismatch");
  return PqForm::make(a.S_, a.p_, a.q_, a.prim_ + b.prim_);
}
PqForm operator-(const PqForm& a) { return PqForm::make(a.S_, a.p_, a.q_, -a.prim_); }
PqForm operator-(const PqForm& a, const PqForm& b) { return a + (-b); }
PqForm operator*(const Scalar& s, const PqForm& a) {
  return PqForm::make(a.S_, a.p_, a.q_, s * a.prim_);
}

CoordForm PqForm::realize() const {
  const StructPtr& S = S_;
  const int p = p_, q = q_;
  const int rank = prim_.rank();
  CoordForm out;
  auto wedge_coframes = [&](const std::vector<int>& dirs, const Scalar& c) {
    if (c.is_zero()) return;
    CoordForm m = CoordForm::function(c);
    for (int d : dirs) m = m.wedge(S->coframe(d));
    out += m;
  };
  if (is_low(p, q)) {
    Scalar norm = Scalar::rational(1, fact(p) * fact(q));
    // primary term
    for (std::size_t k = 0; k < prim_.size(); ++k) {
      if (prim_.flat(k).is_zero()) continue;
      std::vector<int> dirs;
      for (int j = 0; j < rank; ++j) {
        int i = int((k >> (rank - 1 - j)) & 1);
        dirs.push_back((j < p ? 1 : 3) + i);
      }
      wedge_coframes(dirs, norm * prim_.flat(k));
    }
    const int m = 3 - p - q;
    if (p >= 1) {
      // -(p i / (3-p-q)) nabla^mu omega_{mu A' B} theta ^ theta^{A'} ^ theta^B
      FrameTensor U = S->cov_ahol(prim_);
      Scalar c0 = Scalar::rational(-p, m) * Scalar::i() * norm;
      // contract slot 0 (Hol) against the appended derivative slot
      FrameTensor C(std::vector<Idx>(prim_.sig().begin() + 1, prim_.sig().end()));
      for (std::size_t k = 0; k < C.size(); ++k) {
        Scalar acc;
        for (int mu = 0; mu < 2; ++mu)
          for (int nu = 0; nu < 2; ++nu)
            acc += S->hup(mu, nu) *
                   U.flat(((std::size_t(mu) << (rank - 1)) | k) << 1 | std::size_t(nu));
        C.flat(k) = acc;
      }
      for (std::size_t k = 0; k < C.size(); ++k) {
        if (C.flat(k).is_zero()) continue;
        std::vector<int> dirs = {0};
        for (int j = 0; j < rank - 1; ++j) {
          int i = int((k >> (rank - 2 - j)) & 1);
          dirs.push_back((j < p - 1 ? 1 : 3) + i);
        }
        wedge_coframes(dirs, c0 * C.flat(k));
      }
    }
    if (q >= 1) {
      // +((-1)^p q i/(3-p-q)) nabla^nubar omega_{A nubar B'} theta^theta^A^theta^B'
      FrameTensor V = S->cov_hol(prim_);
      Scalar c0 = Scalar::rational((p % 2 == 0 ? q : -q), m) * Scalar::i() * norm;
      // contract the first AHol slot (position p) against the derivative slot
      std::vector<Idx> csig;
      for (int j = 0; j < rank; ++j)
        if (j != p) csig.push_back(prim_.sig()[j]);
      FrameTensor C(csig);
      for (std::size_t k = 0; k < C.size(); ++k) {
        Scalar acc;
        for (int mu = 0; mu < 2; ++mu)
          for (int nu = 0; nu < 2; ++nu) {
            // rebuild source index with nu at slot p
            std::size_t hi = k >> (rank - 1 - p);
            std::size_t lo = k & ((std::size_t(1) << (rank - 1 - p)) - 1);
            std::size_t src = (((hi << 1) | std::size_t(nu)) << (rank - 1 - p)) | lo;
            acc += S->hup(mu, nu) * V.flat((src << 1) | std::size_t(mu));
          }
        C.flat(k) = acc;
      }
      for (std::size_t k = 0; k < C.size(); ++k) {
        if (C.flat(k).is_zero()) continue;
        std::vector<int> dirs = {0};
        for (int j = 0; j < rank - 1; ++j) {
          int i = int((k >> (rank - 2 - j)) & 1);
          dirs.push_back((j < p ? 1 : 3) + i);
        }
        wedge_coframes(dirs, c0 * C.flat(k));
      }
    }
    return out;
  }
  // high regime
  long norm_den = fact(p + q - 3) * fact(3 - p) * fact(2 - q);
  Scalar norm = Scalar::rational(1, norm_den);
  CoordForm base;
  for (std::size_t k = 0; k < prim_.size(); ++k) {
    if (prim_.flat(k).is_zero()) continue;
    std::vector<int> dirs = {0};
    int nh = 2 - q;
    for (int j = 0; j < rank; ++j) {
      int i = int((k >> (rank - 1 - j)) & 1);
      dirs.push_back((j < nh ? 1 : 3) + i);
    }
    CoordForm m = CoordForm::function(norm * prim_.flat(k));
    for (int d : dirs) m = m.wedge(S->coframe(d));
    base += m;
  }
  if (p + q - 3 > 0) base = base.wedge(S->dtheta().pow_wedge(p + q - 3));
  return base;
}

PqForm PqForm::conj() const {
  CoordForm c = realize().conj();
  int np = high() ? q_ + 1 : q_;
  int nq = high() ? p_ - 1 : p_;
  PqSum parts = decompose(S_, c, degree());
  for (const auto& kv : parts.parts())
    if (kv.first != std::make_pair(np, nq) && !kv.second.is_zero())
      throw std::logic_error("pqform conj landed off-bidegree");
  return parts.at(np, nq);
}

PqSum PqSum::of(PqForm w) {
  PqSum s(w.structure());
  s.add(w);
  return s;
}
bool PqSum::is_zero() const {
  for (const auto& kv : parts_)
    if (!kv.second.is_zero()) return false;
  return true;
}
PqForm PqSum::at(int p, int q) const {
  auto it = parts_.find({p, q});
  if (it != parts_.end()) return it->second;
  if (!S_) throw std::logic_error("pqsum: empty sum has no structure");
  return PqForm::zero(S_, p, q);
}
void PqSum::add(const PqForm& w) {
  if (!S_) S_ = w.structure();
  if (S_ != w.structure()) throw std::invalid_argument("pqsum: structure mismatch");
  auto key = std::make_pair(w.p(), w.q());
  auto it = parts_.find(key);
  if (it == parts_.end())
    parts_.emplace(key, w);
  else
    it->second = it->second + w;
}
PqSum operator+(const PqSum& a, const PqSum& b) {
  PqSum r = a;
  if (!r.S_) r.S_ = b.S_;
  for (const auto& kv : b.parts_) r.add(kv.second);
  return r;
}
PqSum operator-(const PqSum& a) {
  PqSum r = a;
  for (auto& kv : r.parts_) kv.second = -kv.second;
  return r;
}
PqSum operator-(const PqSum& a, const PqSum& b) { return a + (-b); }
PqSum operator*(const Scalar& s, const PqSum& a) {
  PqSum r = a;
  for (auto& kv : r.parts_) kv.second = s * kv.second;
  return r;
}
CoordForm PqSum::realize() const {
  CoordForm out;
  for (const auto& kv : parts_) out += kv.second.realize();
  return out;
}
PqSum PqSum::conj() const {
  PqSum r(S_);
  for (const auto& kv : parts_) r.add(kv.second.conj());
  return r;
}

namespace {

// candidate primaries per bidegree from the coframe expansion blocks
PqSum decompose_candidates(const StructPtr& S, const CoordForm& F, int k) {
  PqSum out(S);
  auto mk = [&](int p, int q, FrameTensor T) {
    out.add(PqForm::make(S, p, q, std::move(T)));
  };
  auto mask2 = [](int i, int j) { return std::uint8_t((1 << i) | (1 << j)); };
  switch (k) {
    case 0: {
      mk(0, 0, FrameTensor::scalar(F.coeff(0)));
      break;
    }
    case 1: {
      FrameTensor t10({Idx::Hol}), t01({Idx::AHol});
      for (int a = 0; a < 2; ++a) {
        t10.at({a}) = F.coeff(std::uint8_t(1 << (1 + a)));
        t01.at({a}) = F.coeff(std::uint8_t(1 << (3 + a)));
      }
      mk(1, 0, t10);
      mk(0, 1, t01);
      break;
    }
    case 2: {
      FrameTensor t20({Idx::Hol, Idx::Hol}), t11({Idx::Hol, Idx::AHol}),
          t02({Idx::AHol, Idx::AHol});
      Scalar c = F.coeff(mask2(1, 2));
      t20.at({0, 1}) = c;
      t20.at({1, 0}) = -c;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) t11.at({a, b}) = F.coeff(mask2(1 + a, 3 + b));
      c = F.coeff(mask2(3, 4));
      t02.at({0, 1}) = c;
      t02.at({1, 0}) = -c;
      mk(2, 0, t20);
      mk(1, 1, t11);
      mk(0, 2, t02);
      break;
    }
    case 3: {
      FrameTensor t30({Idx::Hol, Idx::Hol}), t21({Idx::Hol, Idx::AHol}),
          t12({Idx::AHol, Idx::AHol});
      Scalar c = F.coeff(std::uint8_t(0b111));  // theta ^ theta^1 ^ theta^2
      t30.at({0, 1}) = c;
      t30.at({1, 0}) = -c;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          t21.at({a, b}) = F.coeff(std::uint8_t(1 | (1 << (1 + a)) | (1 << (3 + b))));
      c = F.coeff(std::uint8_t(0b11001));  // theta ^ theta^1b ^ theta^2b
      t12.at({0, 1}) = c;
      t12.at({1, 0}) = -c;
      mk(3, 0, t30);
      mk(2, 1, t21);
      mk(1, 2, t12);
      break;
    }
    case 4: {
      // theta ^ theta^12 ^ theta^nubar block: i(T[0] h_{2 nu} - T[1] h_{1 nu})
      FrameTensor t31({Idx::Hol}), t22({Idx::AHol});
      {
        std::vector<std::vector<Scalar>> rows(2, std::vector<Scalar>(3));
        for (int nu = 0; nu < 2; ++nu) {
          rows[nu][0] = Scalar::i() * S->h(1, nu);
          rows[nu][1] = -Scalar::i() * S->h(0, nu);
          rows[nu][2] = F.coeff(std::uint8_t(0b111 | (1 << (3 + nu))));
        }
        auto sol = solve_linear(std::move(rows), 2);
        t31.at({0}) = sol[0][0];
        t31.at({1}) = sol[1][0];
      }
      {
        std::vector<std::vector<Scalar>> rows(2, std::vector<Scalar>(3));
        for (int m = 0; m < 2; ++m) {
          rows[m][0] = -Scalar::i() * S->h(m, 1);
          rows[m][1] = Scalar::i() * S->h(m, 0);
          rows[m][2] = F.coeff(std::uint8_t(0b11001 | (1 << (1 + m))));
        }
        auto sol = solve_linear(std::move(rows), 2);
        t22.at({0}) = sol[0][0];
        t22.at({1}) = sol[1][0];
      }
      mk(3, 1, t31);
      mk(2, 2, t22);
      break;
    }
    case 5: {
      CoordForm vol = S->to_frame(S->theta().wedge(S->dtheta().pow_wedge(2)));
      Scalar kappa = vol.coeff(0b11111);
      Scalar c = Scalar::integer(2) * F.coeff(0b11111) / kappa;
      mk(3, 2, FrameTensor::scalar(c));
      break;
    }
    default:
      throw std::invalid_argument("decompose: bad degree");
  }
  return out;
}

}  // namespace

PqSum decompose(const StructPtr& S, const CoordForm& w, int k) {
  CoordForm F = S->to_frame(w);
  PqSum out(S);
  try {
    out = decompose_candidates(S, F, k);
  } catch (const std::invalid_argument& e) {
    throw DecomposeError(std::string("decompose: ") + e.what(), "");
  }
  CoordForm residual = w - out.realize();
  if (!residual.is_zero()) {
    std::string witness;
    for (const auto& kv : residual.comps()) {
      witness = kv.second.to_sexpr();
      break;
    }
    throw DecomposeError("decompose: form is not in the Rumin subspace", witness);
  }
  return out;
}

PqForm lee_form(const StructPtr& S) {
  FrameTensor prim({Idx::Hol, Idx::AHol});
  Scalar sign = testhooks::on(testhooks::kLeeFormSign) ? Scalar::i() : -Scalar::i();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) prim.at({a, b}) = sign * S->schouten_tf().at({a, b});
  return PqForm::make(S, 1, 1, prim);
}

}  // namespace qrumin
