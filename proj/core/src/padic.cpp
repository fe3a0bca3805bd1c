#include "qcurve/padic.hpp"

#include <cmath>

#include "qcurve/error.hpp"

namespace qcurve {

namespace {

struct ModRing {
  const OKRing& R;
  mpz_class M;
  void red(OK& x) const {
    mpz_mod(x.a.get_mpz_t(), x.a.get_mpz_t(), M.get_mpz_t());
    mpz_mod(x.b.get_mpz_t(), x.b.get_mpz_t(), M.get_mpz_t());
  }
  OK mul(const OK& x, const OK& y) const {
    OK r = R.mul(x, y);
    red(r);
    return r;
  }
  OK inv(const OK& x) const {
    mpz_class n = x.a * x.a + R.t * x.a * x.b - R.n0 * x.b * x.b, ni;
    mpz_mod(n.get_mpz_t(), n.get_mpz_t(), M.get_mpz_t());
    if (!mpz_invert(ni.get_mpz_t(), n.get_mpz_t(), M.get_mpz_t()))
      throw Error(ErrorCode::Internal, "non-unit in lifting");
    OK c{x.a + R.t * x.b, -x.b};
    c = R.mul(c, OK{ni, 0});
    red(c);
    return c;
  }
  void eval(const OKPoly& f, const OK& x, OK& v, OK& dv) const {
    v = {0, 0};
    dv = {0, 0};
    for (size_t i = f.size(); i-- > 0;) {
      dv = R.add(mul(dv, x), v);
      v = R.add(mul(v, x), f[i]);
      red(v);
      red(dv);
    }
  }
};

// log2 |sigma(z)| for both complex embeddings
void embed_log2(const OKRing& R, const OK& z, double out[2]) {
  double d = (double)R.d;
  long double a = z.a.get_d(), b = z.b.get_d();
  // fall back to log-scale when doubles overflow
  bool big = mpz_sizeinbase(z.a.get_mpz_t(), 2) > 900 || mpz_sizeinbase(z.b.get_mpz_t(), 2) > 900;
  if (big) {
    long sa = mpz_sizeinbase(z.a.get_mpz_t(), 2), sb = mpz_sizeinbase(z.b.get_mpz_t(), 2);
    double s = (double)std::max(sa, sb) + std::log2(std::sqrt(std::fabs(d)) + 2) + 1;
    out[0] = out[1] = s;
    return;
  }
  for (int e = 0; e < 2; ++e) {
    long double sq = std::sqrt(std::fabs(d)) * (e ? -1 : 1);
    long double re, im = 0;
    if (R.t) {
      if (d > 0)
        re = a + b * (1 + sq) / 2;
      else
        re = a + b / 2, im = b * sq / 2;
    } else {
      if (d > 0)
        re = a + b * sq;
      else
        re = a, im = b * sq;
    }
    long double m = std::sqrt(re * re + im * im);
    out[e] = m > 0 ? (double)std::log2(m) : -1e9;
  }
}

std::vector<FieldElement> lift_roots(const OKRing& R, const OKPoly& f, u64 p, int k) {
  std::vector<FieldElement> out;
  long n0 = (long)mpz_mod_u64(R.n0, p);
  Fq F(p, (u64)n0, (u64)R.t);
  FqPoly fb(f.size());
  for (size_t i = 0; i < f.size(); ++i) fb[i] = F.make(mpz_mod_u64(f[i].a, p), mpz_mod_u64(f[i].b, p));
  FqPoly dfb;
  for (size_t i = 1; i < fb.size(); ++i) dfb.push_back(F.scal(i, fb[i]));
  mpz_class M;
  mpz_ui_pow_ui(M.get_mpz_t(), p, k);
  const OK& L = f.back();
  for (Fe r : F.roots(fb)) {
    OK x{mpz_class(r.a), mpz_class(r.b)};
    mpz_class cur = p;
    while (cur < M) {
      cur = cur * cur;
      if (cur > M) cur = M;
      ModRing MR{R, cur};
      OK v, dv;
      MR.eval(f, x, v, dv);
      x = R.sub(x, MR.mul(v, MR.inv(dv)));
      MR.red(x);
    }
    ModRing MR{R, M};
    OK y = MR.mul(x, L);
    mpz_class half = M / 2;
    if (y.a > half) y.a -= M;
    if (y.b > half) y.b -= M;
    // exact check: sum c_i y^i L^(n-i) == 0
    OK acc = f.back(), Lp{1, 0};
    for (size_t i = f.size() - 1; i-- > 0;) {
      Lp = R.mul(Lp, L);
      acc = R.add(R.mul(acc, y), R.mul(f[i], Lp));
    }
    if (acc.a == 0 && acc.b == 0) out.push_back(R.to_k(y) / R.to_k(L));
  }
  return out;
}

}  // namespace

std::vector<FieldElement> roots_in_K(const OKRing& R, const OKPoly& f0) {
  OKPoly f = f0;
  oktrim(f);
  std::vector<FieldElement> out;
  while (f.size() > 1 && f[0].a == 0 && f[0].b == 0) {
    if (out.empty()) out.push_back(FieldElement(R.d, 0));
    f.erase(f.begin());
  }
  if (f.size() <= 1) return out;
  const OK& L = f.back();
  double lL[2], mx[2] = {0, 0};
  embed_log2(R, L, lL);
  for (size_t i = 0; i + 1 < f.size(); ++i) {
    double li[2];
    embed_log2(R, f[i], li);
    for (int e = 0; e < 2; ++e) mx[e] = std::max(mx[e], li[e] - lL[e]);
  }
  double ly[2];
  for (int e = 0; e < 2; ++e) ly[e] = lL[e] + std::max(mx[e], 0.0) + 1;
  double ad = std::fabs((double)R.d);
  double lB = std::max(ly[0], ly[1]) + 1 - 0.5 * std::log2(ad);
  double lA = std::max(ly[0], lB + std::log2(std::sqrt(ad) + 1)) + 1;
  double need = std::max(lA, lB) + 4;
  mpz_class NL = L.a * L.a + R.t * L.a * L.b - R.n0 * L.b * L.b;
  mpz_class disc = R.t ? mpz_class(R.d) : mpz_class(4 * R.d);
  int tried = 0;
  for (u64 p = 3; p < 2000 && tried < 60; p += 2) {
    if (!is_prime(p)) continue;
    if (mpz_kronecker_ui(disc.get_mpz_t(), p) != -1) continue;
    if (mpz_divisible_ui_p(NL.get_mpz_t(), p)) continue;
    ++tried;
    Fq F(p, mpz_mod_u64(R.n0, p), (u64)R.t);
    FqPoly fb(f.size());
    for (size_t i = 0; i < f.size(); ++i) fb[i] = F.make(mpz_mod_u64(f[i].a, p), mpz_mod_u64(f[i].b, p));
    FqPoly dfb;
    for (size_t i = 1; i < fb.size(); ++i) dfb.push_back(F.scal(i, fb[i]));
    fq_trim(F, dfb);
    if (dfb.empty() || fq_gcd(F, fb, dfb).size() > 1) continue;
    int k = (int)std::ceil(need / std::log2((double)p)) + 1;
    auto r = lift_roots(R, f, p, k);
    out.insert(out.end(), r.begin(), r.end());
    return out;
  }
  throw Error(ErrorCode::PrecisionExhausted, "no inert prime with squarefree reduction");
}

std::vector<FieldElement> roots_in_K(const KPoly& f0) {
  KPoly f = f0;
  trim(f);
  if (f.size() <= 1) return {};
  long d = 0;
  for (auto& c : f)
    if (c.d()) d = c.d();
  OKRing R(d);
  // squarefree part keeps the lifting well defined
  KPoly g = pgcd(f, pderiv(f));
  if (g.size() > 1) {
    KPoly q, r;
    pdivmod(f, g, q, r);
    f = q;
  }
  mpz_class den = 1;
  for (auto& c : f) {
    mpz_class X, Y, D;
    c.omega_coords(X, Y, D);
    den = lcm(den, D);
  }
  OKPoly h;
  for (auto& c : f) h.push_back(R.from_k(mpq_class(den) * c));
  return roots_in_K(R, h);
}

bool sqrt_in_K(const FieldElement& z, FieldElement& out) {
  long d = z.d();
  if (z.is_zero()) {
    out = z;
    return true;
  }
  auto qsqrt = [](const mpq_class& q, mpq_class& r) {
    if (q < 0) return false;
    mpz_class a, b;
    if (!is_square(q.get_num(), &a) || !is_square(q.get_den(), &b)) return false;
    r = mpq_class(a, b);
    return true;
  };
  mpq_class r;
  if (z.y() == 0) {
    if (qsqrt(z.x(), r)) {
      out = FieldElement(d, r);
      return true;
    }
    if (d != 0 && qsqrt(z.x() / d, r)) {
      out = FieldElement(d, 0, r);
      return true;
    }
    return false;
  }
  mpq_class n;
  if (!qsqrt(z.norm(), n)) return false;
  for (int sgn : {1, -1}) {
    mpq_class a2 = (z.x() + sgn * n) / 2, a;
    if (a2 != 0 && qsqrt(a2, a)) {
      FieldElement c(d, a, z.y() / (2 * a));
      if (c * c == z) {
        out = c;
        return true;
      }
    }
  }
  return false;
}

}  // namespace qcurve
