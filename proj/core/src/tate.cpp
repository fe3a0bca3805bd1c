#include <algorithm>
#include <map>
#include <set>

#include "qcurve/curve.hpp"
#include "qcurve/error.hpp"

namespace qcurve {

namespace {

struct TateCtx {
  const PrimeIdeal& P;
  Fq F;
  u64 p;
  FieldElement pi;
  long d;

  explicit TateCtx(const PrimeIdeal& P_) : P(P_), F(residue_field(P_)), p(P_.p), pi(uniformizer(P_)), d(P_.d) {}

  FieldElement k(long v) const { return FieldElement(d, v); }
  int val(const FieldElement& x) const { return valuation(x, P); }
  bool pdiv(const FieldElement& x) const { return x.is_zero() || val(x) > 0; }
  Fe red(const FieldElement& x) const { return reduce(x, P, F); }
  FieldElement lft(Fe a) const { return lift(a, P); }
  FieldElement preduce(const FieldElement& x) const { return lft(red(x)); }
  FieldElement pinv(const FieldElement& x) const { return lft(F.inv(red(x))); }
  // inverse Frobenius in characteristic p = e
  FieldElement proot(const FieldElement& x, u64 e) const {
    (void)e;
    return lft(F.pow(red(x), F.q() / p));
  }
  bool pquadroots(const FieldElement& a, const FieldElement& b, const FieldElement& c) const {
    Fe A = red(a), B = red(b), C = red(c);
    if (F.is_zero(A)) return !F.is_zero(B) || F.is_zero(C);
    if (p == 2) return !F.roots({C, B, A}).empty();
    Fe disc = F.sub(F.mul(B, B), F.scal(4, F.mul(A, C)));
    return F.is_square(disc);
  }
  int pcubicroots(const FieldElement& b, const FieldElement& c, const FieldElement& dd) const {
    return (int)F.roots({red(dd), red(c), red(b), F.one()}).size();
  }
};

struct Model {
  FieldElement a1, a2, a3, a4, a6;
  Urst w;  // from the input model
  void apply(const Urst& step) {
    Curve C = Curve(a1, a2, a3, a4, a6).transform(step);
    a1 = C.a1(), a2 = C.a2(), a3 = C.a3(), a4 = C.a4(), a6 = C.a6();
    w = compose(w, step);
  }
  void rst(const FieldElement& r, const FieldElement& s, const FieldElement& t) {
    apply({FieldElement(r.d() ? r.d() : s.d() ? s.d() : t.d(), 1), r, s, t});
  }
};

}  // namespace

LocalData local_data(const Curve& E, const PrimeIdeal& P) {
  TateCtx T(P);
  long d = E.d() ? E.d() : P.d;
  const u64 p = T.p;
  const FieldElement& pi = T.pi;
  FieldElement zero(d, 0);
  FieldElement halfmodp = p == 2 ? zero : T.pinv(T.k(2));

  LocalData out;
  out.P = P;
  out.v_disc_model = T.val(E.disc());

  Model M{E.a1(), E.a2(), E.a3(), E.a4(), E.a6(), Urst::identity(d)};
  {
    int e = 0;
    const FieldElement* as[5] = {&M.a1, &M.a2, &M.a3, &M.a4, &M.a6};
    int idx[5] = {1, 2, 3, 4, 6};
    for (int i = 0; i < 5; ++i) {
      if (as[i]->is_zero()) continue;
      int v = T.val(*as[i]);
      if (v < 0) e = std::max(e, (-v + idx[i] - 1) / idx[i]);
    }
    if (e > 0) M.apply({pi.pow(-e), zero, zero, zero});
  }

  FieldElement pi2 = pi * pi, pi3 = pi2 * pi, pi4 = pi2 * pi2;
  for (;;) {
    Curve C(M.a1, M.a2, M.a3, M.a4, M.a6);
    FieldElement b2 = C.b2(), b4 = C.b4(), b6 = C.b6(), c4 = C.c4(), c6 = C.c6();
    int vpd = T.val(C.disc());
    auto finish = [&](Reduction type, const std::string& ks, int f, int cp) {
      out.minimal = Curve(M.a1, M.a2, M.a3, M.a4, M.a6);
      out.to_minimal = M.w;
      out.type = type;
      out.kodaira = ks;
      out.f = f;
      out.tamagawa = cp;
      out.v_disc_min = vpd;
      return out;
    };
    if (vpd == 0) return finish(Reduction::Good, "I0", 0, 1);

    FieldElement r, t;
    if (p == 2) {
      if (T.pdiv(b2)) {
        r = T.proot(M.a4, 2);
        t = T.proot(((r + M.a2) * r + M.a4) * r + M.a6, 2);
      } else {
        FieldElement temp = T.pinv(M.a1);
        r = temp * M.a3;
        t = temp * (M.a4 + r * r);
      }
    } else if (p == 3) {
      if (T.pdiv(b2))
        r = T.proot(-b6, 3);
      else
        r = -(T.pinv(b2) * b4);
      t = M.a1 * r + M.a3;
    } else {
      if (T.pdiv(c4))
        r = -(T.pinv(T.k(12)) * b2);
      else
        r = -(T.pinv(12 * c4) * (c6 + b2 * c4));
      t = -(halfmodp * (M.a1 * r + M.a3));
    }
    r = T.preduce(r);
    t = T.preduce(t);
    M.rst(r, zero, t);
    if (!T.pdiv(M.a3) || !T.pdiv(M.a4) || !T.pdiv(M.a6))
      throw Error(ErrorCode::Internal, "Tate: first transform failed at " + P.str());

    if (!T.pdiv(c4)) {
      bool split = T.pquadroots(T.k(1), M.a1, -M.a2);
      int cp = split ? vpd : (vpd % 2 == 0 ? 2 : 1);
      return finish(split ? Reduction::SplitMultiplicative : Reduction::NonSplitMultiplicative,
                    "I" + std::to_string(vpd), 1, cp);
    }
    if (T.val(M.a6) < 2) return finish(Reduction::Additive, "II", vpd, 1);
    {
      Curve C2(M.a1, M.a2, M.a3, M.a4, M.a6);
      if (T.val(C2.b8()) < 3) return finish(Reduction::Additive, "III", vpd - 1, 2);
      if (T.val(C2.b6()) < 3) {
        int cp = T.pquadroots(T.k(1), M.a3 / pi, -(M.a6 / pi2)) ? 3 : 1;
        return finish(Reduction::Additive, "IV", vpd - 2, cp);
      }
    }
    FieldElement s;
    if (p == 2) {
      s = T.proot(M.a2, 2);
      t = pi * T.proot(M.a6 / pi2, 2);
    } else if (p == 3) {
      s = M.a1;
      t = M.a3;
    } else {
      s = -(M.a1 * halfmodp);
      t = -(M.a3 * halfmodp);
    }
    M.rst(zero, s, t);
    if (!T.pdiv(M.a1) || !T.pdiv(M.a2) || T.val(M.a3) < 2 || T.val(M.a4) < 2 || T.val(M.a6) < 3)
      throw Error(ErrorCode::Internal, "Tate: second transform failed at " + P.str());

    FieldElement b = M.a2 / pi, c = M.a4 / pi2, dd = M.a6 / pi3;
    FieldElement bb = b * b, cc = c * c, bc = b * c;
    FieldElement w = 27 * dd * dd - bb * cc + 4 * b * bb * dd - 18 * bc * dd + 4 * c * cc;
    FieldElement x = 3 * c - bb;
    int sw = T.pdiv(w) ? (T.pdiv(x) ? 3 : 2) : 1;
    if (sw == 1) return finish(Reduction::Additive, "I0*", vpd - 4, 1 + T.pcubicroots(b, c, dd));
    if (sw == 2) {
      if (p == 2)
        r = T.proot(c, 2);
      else if (p == 3)
        r = c * T.pinv(b);
      else
        r = (bc - 9 * dd) * T.pinv(2 * x);
      r = pi * T.preduce(r);
      M.rst(r, zero, zero);
      int ix = 3, iy = 3;
      FieldElement mx = pi2, my = pi2;
      int cp = 0;
      for (;;) {
        FieldElement a2t = M.a2 / pi, a3t = M.a3 / my, a4t = M.a4 / (pi * mx), a6t = M.a6 / (mx * my);
        if (T.pdiv(a3t * a3t + 4 * a6t)) {
          if (p == 2)
            t = my * T.proot(a6t, 2);
          else
            t = my * T.preduce(-(a3t * halfmodp));
          M.rst(zero, zero, t);
          my *= pi;
          ++iy;
          a2t = M.a2 / pi;
          a3t = M.a3 / my;
          a4t = M.a4 / (pi * mx);
          a6t = M.a6 / (mx * my);
          if (T.pdiv(a4t * a4t - 4 * a6t * a2t)) {
            if (p == 2)
              r = mx * T.proot(a6t * T.pinv(a2t), 2);
            else
              r = mx * T.preduce(-(a4t * T.pinv(2 * a2t)));
            M.rst(r, zero, zero);
            mx *= pi;
            ++ix;
          } else {
            cp = T.pquadroots(a2t, a4t, a6t) ? 4 : 2;
            break;
          }
        } else {
          cp = T.pquadroots(T.k(1), a3t, -a6t) ? 4 : 2;
          break;
        }
      }
      return finish(Reduction::Additive, "I" + std::to_string(ix + iy - 5) + "*", vpd - ix - iy + 1, cp);
    }
    // triple root
    if (p == 2)
      r = b;
    else if (p == 3)
      r = T.proot(-dd, 3);
    else
      r = -(b * T.pinv(T.k(3)));
    r = pi * T.preduce(r);
    M.rst(r, zero, zero);
    if (T.val(M.a2) < 2 || T.val(M.a4) < 3 || T.val(M.a6) < 4)
      throw Error(ErrorCode::Internal, "Tate: third transform failed at " + P.str());
    FieldElement a3t = M.a3 / pi2, a6t = M.a6 / pi4;
    if (!T.pdiv(a3t * a3t + 4 * a6t)) {
      int cp = T.pquadroots(T.k(1), a3t, -a6t) ? 3 : 1;
      return finish(Reduction::Additive, "IV*", vpd - 6, cp);
    }
    if (p == 2)
      t = -(pi2 * T.proot(a6t, 2));
    else
      t = pi2 * T.preduce(-(a3t * halfmodp));
    M.rst(zero, zero, t);
    if (T.val(M.a4) < 4) return finish(Reduction::Additive, "III*", vpd - 7, 2);
    if (T.val(M.a6) < 6) return finish(Reduction::Additive, "II*", vpd - 8, 1);
    M.apply({pi, zero, zero, zero});
  }
}

std::vector<u64> support_primes(const Curve& E) {
  std::set<u64> ps;
  auto add_den = [&](const FieldElement& z) {
    mpz_class X, Y, D;
    z.omega_coords(X, Y, D);
    for (u64 p : prime_divisors(D)) ps.insert(p);
  };
  for (auto& a : E.a()) add_den(a);
  add_den(E.disc());
  mpq_class n = E.disc().norm();
  for (u64 p : prime_divisors(n.get_num())) ps.insert(p);
  for (u64 p : prime_divisors(n.get_den())) ps.insert(p);
  return {ps.begin(), ps.end()};
}

const LocalData* GlobalData::at(const PrimeIdeal& P) const {
  for (auto& L : local)
    if (L.P == P) return &L;
  return nullptr;
}

GlobalData global_data(const Curve& E) {
  QuadraticField K = QuadraticField::make(E.d());
  GlobalData G;
  G.n = 1;
  for (u64 p : support_primes(E)) {
    auto Ps = primes_above(K, p);
    std::vector<int> fs;
    for (auto& P : Ps) {
      G.local.push_back(local_data(E, P));
      fs.push_back(G.local.back().f);
    }
    int e = 0;
    if (Ps[0].kind == Splitting::Split) {
      if (fs[0] != fs[1])
        throw Error(ErrorCode::NotGaloisStableConductor,
                    "conductor exponents " + std::to_string(fs[0]) + " and " + std::to_string(fs[1]) + " above " +
                        std::to_string(p));
      e = fs[0];
    } else if (Ps[0].kind == Splitting::Ramified) {
      if (fs[0] % 2)
        throw Error(ErrorCode::NotGaloisStableConductor,
                    "odd conductor exponent at the ramified prime above " + std::to_string(p));
      e = fs[0] / 2;
    } else {
      e = fs[0];
    }
    if (e > 0) {
      mpz_class t;
      mpz_ui_pow_ui(t.get_mpz_t(), p, e);
      G.n *= t;
      G.conductor_factorisation.push_back({p, e});
    }
  }
  G.level = G.n * abs(mpz_class(K.disc()));
  return G;
}

}  // namespace qcurve
