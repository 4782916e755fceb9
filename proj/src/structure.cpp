#include "qrumin/structure.hpp"

#include <bit>
#include <sstream>

#include "qrumin/testhooks.hpp"

namespace qrumin {

namespace {

Scalar zc(int alpha) {  // z^alpha
  return alpha == 1 ? Scalar::var(Coord::x1) + Scalar::i() * Scalar::var(Coord::y1)
                    : Scalar::var(Coord::x2) + Scalar::i() * Scalar::var(Coord::y2);
}

CoordForm flat_theta0() {
  // theta_0 = dt + (i/2) sum (z^a dzbar^a - zbar^a dz^a)
  CoordForm th = CoordForm::basis(0);
  Scalar half_i = Scalar::rational(1, 2) * Scalar::i();
  for (int a = 1; a <= 2; ++a) {
    th += (half_i * zc(a)) * CoordForm::basis(2 + a);
    th -= (half_i * zc(a).conj()) * CoordForm::basis(a);
  }
  return th;
}

VecField flat_Z(int alpha) {
  VecField v;
  for (auto& s : v.c) s = Scalar::zero();
  v.c[alpha] = Scalar::one();
  v.c[0] = Scalar::rational(1, 2) * Scalar::i() * zc(alpha).conj();
  return v;
}

}  // namespace

Scalar PHStructure::u_pow(int k) const {
  return uctx_ ? Scalar::u(uctx_, k) : Scalar::one();
}

CoordForm PHStructure::coframe(int d) const { return coframe_[d]; }

StructPtr PHStructure::flat() {
  static StructPtr cached = make(Scalar::zero());
  return cached;
}

StructPtr PHStructure::rescale(const StructPtr& base, const Scalar& upsilon) {
  if (!upsilon.is_polynomial() || !upsilon.sigma_free() || !upsilon.u_free())
    throw std::invalid_argument("conformal factor must be a coordinate polynomial");
  if (!upsilon.is_real())
    throw std::invalid_argument("conformal factor must be real");
  // chained rescales compose the factors additively
  return make(base->upsilon_ + upsilon);
}

StructPtr PHStructure::make(const Scalar& ups) {
  auto S = std::shared_ptr<PHStructure>(new PHStructure());
  S->upsilon_ = ups;
  S->uctx_ = ups.is_zero() ? nullptr : std::make_shared<UContext>(ups.num());
  const Scalar u = S->u_pow(1);

  CoordForm theta0 = flat_theta0();
  S->theta_ = u * theta0;
  S->coframe_[0] = S->theta_;
  for (int a = 1; a <= 2; ++a) {
    // Upsilon^alpha = h0^{alpha betabar} Z_betabar(Upsilon) with h0 = id
    Scalar ups_up = flat_Z(a).conj().apply(ups);
    S->coframe_[a] = CoordForm::basis(a) + (Scalar::i() * ups_up) * theta0;
  }
  S->coframe_[3] = S->coframe_[1].conj();
  S->coframe_[4] = S->coframe_[2].conj();

  // dual frame: invert the coframe coefficient matrix
  {
    std::vector<std::vector<Scalar>> rows(5, std::vector<Scalar>(10, Scalar::zero()));
    for (int i = 0; i < 5; ++i) {
      for (int k = 0; k < 5; ++k)
        rows[i][k] = S->coframe_[i].coeff(std::uint8_t(1 << k));
      rows[i][5 + i] = Scalar::one();
    }
    auto inv = solve_linear(std::move(rows), 5);
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) S->frame_[j].c[k] = inv[k][j];
  }

  S->dtheta_ = S->theta_.d();

  // Levi form from dtheta = i h_{ab} theta^a ^ theta^bbar; admissibility and
  // the Reeb conditions require every other coframe component to vanish.
  {
    CoordForm dth = S->to_frame(S->dtheta_);
    for (const auto& kv : dth.comps()) {
      bool mixed = std::popcount(kv.first) == 2 && !(kv.first & 1) &&
                   (kv.first & 0b00110) && (kv.first & 0b11000);
      if (!mixed)
        throw std::runtime_error("rescale: coframe is not admissible");
    }
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        S->h_[a][b] =
            -Scalar::i() * dth.coeff(std::uint8_t((1 << (1 + a)) | (1 << (3 + b))));
  }

  // h^{alpha betabar} = transpose of the matrix inverse
  {
    Scalar det = S->h_[0][0] * S->h_[1][1] - S->h_[0][1] * S->h_[1][0];
    Scalar inv_det = det.inv();
    Scalar hinv[2][2] = {{inv_det * S->h_[1][1], -inv_det * S->h_[0][1]},
                         {-inv_det * S->h_[1][0], inv_det * S->h_[0][0]}};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) S->hup_[a][b] = hinv[b][a];
  }

  // Connection and torsion from the structure equations.
  // d theta^a = theta^m ^ omega_m^a + A^a_bbar theta ^ theta^bbar gives the
  // Z-bar and Reeb components of omega directly; the metric equation
  // d h = omega_{ab} + omega_{ba} then determines the Z components.
  Scalar Gb[2][2][2];  // omega_a^g along theta^nubar
  Scalar G0[2][2];     // omega_a^g along theta
  Scalar G[2][2][2];   // omega_a^g along theta^nu
  {
    CoordForm dth_frame[2];
    for (int a = 0; a < 2; ++a)
      dth_frame[a] = S->to_frame(S->coframe_[1 + a].d());
    for (int m = 0; m < 2; ++m)
      for (int a = 0; a < 2; ++a)
        for (int n = 0; n < 2; ++n)
          Gb[m][a][n] =
              dth_frame[a].coeff(std::uint8_t((1 << (1 + m)) | (1 << (3 + n))));
    for (int n = 0; n < 2; ++n)
      for (int a = 0; a < 2; ++a)
        G0[n][a] = -dth_frame[a].coeff(std::uint8_t(1 | (1 << (1 + n))));
    for (int a = 0; a < 2; ++a)
      for (int n = 0; n < 2; ++n)
        S->Araised_[a][n] = dth_frame[a].coeff(std::uint8_t(1 | (1 << (3 + n))));

    // metric equation, theta^nu component:
    //   Z_nu h_{ab} = sum_g G[a][g][nu] h_{gb} + sum_g conj(Gb[b][g][nu]) h_{ag}
    Scalar hinv_mat[2][2];  // plain matrix inverse of h
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) hinv_mat[a][b] = S->hup_[b][a];
    for (int a = 0; a < 2; ++a)
      for (int nu = 0; nu < 2; ++nu) {
        Scalar rhs[2];
        for (int b = 0; b < 2; ++b) {
          rhs[b] = S->frame_deriv(S->h_[a][b], 1 + nu);
          for (int g = 0; g < 2; ++g)
            rhs[b] -= Gb[b][g][nu].conj() * S->h_[a][g];
        }
        for (int g = 0; g < 2; ++g) {
          S->conn_[a][g][1 + nu] = Scalar::zero();
          for (int b = 0; b < 2; ++b)
            S->conn_[a][g][1 + nu] += rhs[b] * hinv_mat[b][g];
          G[a][g][nu] = S->conn_[a][g][1 + nu];
        }
      }
    for (int a = 0; a < 2; ++a)
      for (int g = 0; g < 2; ++g) {
        S->conn_[a][g][0] = G0[a][g];
        for (int n = 0; n < 2; ++n) S->conn_[a][g][3 + n] = Gb[a][g][n];
      }
  }

  for (int a = 0; a < 2; ++a)
    for (int g = 0; g < 2; ++g) {
      CoordForm w;
      for (int d = 0; d < 5; ++d)
        w += S->conn_[a][g][d] * S->coframe_[d];
      S->conn_form_[a][g] = w;
    }

  // torsion with both indices lowered: A_{sg} = conj( sum_a A^a_gbar h_{as} )
  S->A_ = FrameTensor({Idx::Hol, Idx::Hol});
  for (int s = 0; s < 2; ++s)
    for (int g = 0; g < 2; ++g) {
      Scalar acc;
      for (int a = 0; a < 2; ++a) acc += S->Araised_[a][g] * S->h_[a][s];
      S->A_.at({s, g}) = acc.conj();
    }

  // curvature: Omega_a^g = d omega_a^g - omega_a^m ^ omega_m^g, then the
  // theta^r ^ theta^sbar block mod theta and pure-type wedges
  Scalar Rup[2][2][2][2];
  for (int a = 0; a < 2; ++a)
    for (int g = 0; g < 2; ++g) {
      CoordForm omega = S->conn_form_[a][g].d();
      for (int m = 0; m < 2; ++m)
        omega -= S->conn_form_[a][m].wedge(S->conn_form_[m][g]);
      CoordForm of = S->to_frame(omega);
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s)
          Rup[a][g][r][s] =
              of.coeff(std::uint8_t((1 << (1 + r)) | (1 << (3 + s))));
    }
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) {
          Scalar acc;
          for (int g = 0; g < 2; ++g) acc += Rup[a][g][r][s] * S->h_[g][b];
          S->Rlow_[a][b][r][s] = acc;
        }

  S->Ric_ = FrameTensor({Idx::Hol, Idx::AHol});
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Scalar acc;
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) acc += S->hup_[r][s] * S->Rlow_[a][b][r][s];
      S->Ric_.at({a, b}) = acc;
    }
  {
    Scalar acc;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) acc += S->hup_[a][b] * S->Ric_.at({a, b});
    S->Rscal_ = acc;
  }

  Scalar schouten_div =
      testhooks::on(testhooks::kSchoutenFactor) ? Scalar::integer(5) : Scalar::integer(6);
  S->P_ = FrameTensor({Idx::Hol, Idx::AHol});
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      S->P_.at({a, b}) = Scalar::rational(1, 4) *
                         (S->Ric_.at({a, b}) - S->Rscal_ / schouten_div * S->h_[a][b]);
  {
    Scalar acc;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) acc += S->hup_[a][b] * S->P_.at({a, b});
    S->Ptrace_ = acc;
  }
  S->E_ = FrameTensor({Idx::Hol, Idx::AHol});
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      S->E_.at({a, b}) =
          S->P_.at({a, b}) - Scalar::rational(1, 2) * S->Ptrace_ * S->h_[a][b];

  return S;
}

FrameTensor PHStructure::cov_dir(const FrameTensor& T, int d) const {
  FrameTensor R(T.sig());
  const int rank = T.rank();
  for (std::size_t src = 0; src < T.size(); ++src) {
    Scalar val = frame_deriv(T.flat(src), d);
    // one connection term per slot, sign by index type
    for (int j = 0; j < rank; ++j) {
      int i = int((src >> (rank - 1 - j)) & 1);
      for (int m = 0; m < 2; ++m) {
        std::size_t alt = src ^ ((std::size_t(i) ^ std::size_t(m)) << (rank - 1 - j));
        const Scalar& comp = T.flat(alt);
        if (comp.is_zero()) continue;
        if (T.sig()[j] == Idx::Hol) {
          val -= conn_[i][m][d] * comp;
        } else {
          int cd = d == 0 ? 0 : (d <= 2 ? d + 2 : d - 2);
          val -= conn_[i][m][cd].conj() * comp;
        }
      }
    }
    R.flat(src) = val;
  }
  return R;
}

FrameTensor PHStructure::cov_hol(const FrameTensor& T) const {
  std::vector<Idx> sig = T.sig();
  sig.push_back(Idx::Hol);
  FrameTensor R(sig);
  for (int c = 0; c < 2; ++c) {
    FrameTensor D = cov_dir(T, 1 + c);
    for (std::size_t src = 0; src < T.size(); ++src)
      R.flat((src << 1) | std::size_t(c)) = D.flat(src);
  }
  return R;
}

FrameTensor PHStructure::cov_ahol(const FrameTensor& T) const {
  std::vector<Idx> sig = T.sig();
  sig.push_back(Idx::AHol);
  FrameTensor R(sig);
  for (int c = 0; c < 2; ++c) {
    FrameTensor D = cov_dir(T, 3 + c);
    for (std::size_t src = 0; src < T.size(); ++src)
      R.flat((src << 1) | std::size_t(c)) = D.flat(src);
  }
  return R;
}

FrameTensor PHStructure::cov0(const FrameTensor& T) const { return cov_dir(T, 0); }

CoordForm PHStructure::to_frame(const CoordForm& w) const {
  CoordForm out;
  // split by degree, then evaluate on frame multivectors
  for (int k = 0; k <= 5; ++k) {
    CoordForm part;
    for (const auto& kv : w.comps())
      if (std::popcount(kv.first) == k) part.set(kv.first, kv.second);
    if (part.is_zero()) continue;
    for (std::uint8_t mask = 0; mask < 32; ++mask) {
      if (std::popcount(mask) != k) continue;
      std::vector<const VecField*> vs;
      for (int i = 0; i < 5; ++i)
        if (mask & (1 << i)) vs.push_back(&frame_[i]);
      Scalar c = part.eval(vs);
      if (!c.is_zero()) out.set(mask, out.coeff(mask) + c);
    }
  }
  return out;
}

CoordForm PHStructure::from_frame(const CoordForm& w) const {
  CoordForm out;
  for (const auto& kv : w.comps()) {
    CoordForm m = CoordForm::function(kv.second);
    for (int i = 0; i < 5; ++i)
      if (kv.first & (1 << i)) m = m.wedge(coframe_[i]);
    out += m;
  }
  return out;
}

std::vector<std::pair<std::string, Scalar>> PHStructure::structure_residuals() const {
  std::vector<std::pair<std::string, Scalar>> res;
  auto push_form = [&](const std::string& name, const CoordForm& f) {
    int i = 0;
    for (const auto& kv : f.comps())
      res.emplace_back(name + "[" + std::to_string(i++) + "]", kv.second);
    if (f.is_zero()) res.emplace_back(name, Scalar::zero());
  };

  // Reeb conditions
  res.emplace_back("theta(T)-1", theta_.interior(frame_[0]).coeff(0) - Scalar::one());
  push_form("dtheta(T,.)", dtheta_.interior(frame_[0]));

  // Levi form display
  CoordForm levi = dtheta_;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      levi -= (Scalar::i() * h_[a][b]) * coframe_[1 + a].wedge(coframe_[3 + b]);
  push_form("dtheta-ih", levi);

  // first structure equation
  for (int a = 0; a < 2; ++a) {
    CoordForm r = coframe_[1 + a].d();
    for (int m = 0; m < 2; ++m) r -= coframe_[1 + m].wedge(conn_form_[m][a]);
    for (int n = 0; n < 2; ++n)
      r -= Araised_[a][n] * theta_.wedge(coframe_[3 + n]);
    push_form("dtheta^" + std::to_string(a + 1), r);
  }

  // metric compatibility
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      CoordForm r = CoordForm::function(h_[a][b]).d();
      for (int g = 0; g < 2; ++g) {
        r -= h_[g][b] * conn_form_[a][g];
        r -= h_[a][g] * conn_form_[b][g].conj();
      }
      push_form("dh_" + std::to_string(a + 1) + std::to_string(b + 1), r);
    }

  // torsion symmetry and trace-free E
  res.emplace_back("A_sym", A_.at({0, 1}) - A_.at({1, 0}));
  {
    Scalar tr;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) tr += hup_[a][b] * E_.at({a, b});
    res.emplace_back("E_trace", tr);
  }
  return res;
}

std::string PHStructure::dump_json() const {
  std::ostringstream os;
  auto q = [](const std::string& s) { return "\"" + s + "\""; };
  os << "{\n  " << q("upsilon") << ": " << q(upsilon_.to_sexpr()) << ",\n";
  os << "  " << q("coframe") << ": {";
  const char* names[5] = {"theta", "theta1", "theta2", "theta1b", "theta2b"};
  for (int d = 0; d < 5; ++d) {
    os << (d ? ", " : "") << q(names[d]) << ": {";
    bool first = true;
    for (const auto& kv : coframe_[d].comps()) {
      os << (first ? "" : ", ") << q(std::to_string(kv.first)) << ": "
         << q(kv.second.to_sexpr());
      first = false;
    }
    os << "}";
  }
  os << "},\n";
  auto tensor2 = [&](const std::string& name, auto getter) {
    os << "  " << q(name) << ": [";
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        os << ((a || b) ? ", " : "") << q(getter(a, b).to_sexpr());
    os << "],\n";
  };
  os << "  " << q("Gamma") << ": [";
  for (int a = 0; a < 2; ++a)
    for (int g = 0; g < 2; ++g)
      for (int d = 0; d < 5; ++d)
        os << ((a || g || d) ? ", " : "") << q(conn_[a][g][d].to_sexpr());
  os << "],\n";
  tensor2("A", [&](int a, int b) { return A_.at({a, b}); });
  tensor2("Ric", [&](int a, int b) { return Ric_.at({a, b}); });
  tensor2("P", [&](int a, int b) { return P_.at({a, b}); });
  tensor2("E", [&](int a, int b) { return E_.at({a, b}); });
  os << "  " << q("R") << ": " << q(Rscal_.to_sexpr()) << "\n}";
  return os.str();
}

}  // namespace qrumin
