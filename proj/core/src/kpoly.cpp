#include "qcurve/kpoly.hpp"

#include "qcurve/error.hpp"

namespace qcurve {

void trim(KPoly& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

int degree(const KPoly& f) { return (int)f.size() - 1; }

KPoly padd(const KPoly& f, const KPoly& g) {
  KPoly r(std::max(f.size(), g.size()));
  for (size_t i = 0; i < f.size(); ++i) r[i] += f[i];
  for (size_t i = 0; i < g.size(); ++i) r[i] += g[i];
  trim(r);
  return r;
}

KPoly psub(const KPoly& f, const KPoly& g) {
  KPoly r(std::max(f.size(), g.size()));
  for (size_t i = 0; i < f.size(); ++i) r[i] += f[i];
  for (size_t i = 0; i < g.size(); ++i) r[i] -= g[i];
  trim(r);
  return r;
}

KPoly pmul(const KPoly& f, const KPoly& g) {
  if (f.empty() || g.empty()) return {};
  KPoly r(f.size() + g.size() - 1);
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i].is_zero()) continue;
    for (size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
  }
  trim(r);
  return r;
}

KPoly pscale(const KPoly& f, const FieldElement& c) {
  KPoly r = f;
  for (auto& a : r) a *= c;
  trim(r);
  return r;
}

KPoly pderiv(const KPoly& f) {
  KPoly r;
  for (size_t i = 1; i < f.size(); ++i) r.push_back(mpq_class((long)i) * f[i]);
  trim(r);
  return r;
}

KPoly pconj(const KPoly& f) {
  KPoly r = f;
  for (auto& a : r) a = a.conj();
  return r;
}

FieldElement peval(const KPoly& f, const FieldElement& x) {
  FieldElement r(x.d(), 0);
  for (size_t i = f.size(); i-- > 0;) r = r * x + f[i];
  return r;
}

KPoly pcompose(const KPoly& f, const KPoly& g) {
  KPoly r;
  for (size_t i = f.size(); i-- > 0;) r = padd(pmul(r, g), pconst(f[i]));
  return r;
}

void pdivmod(const KPoly& f, const KPoly& g, KPoly& q, KPoly& r) {
  if (g.empty()) throw Error(ErrorCode::ZeroElement, "polynomial division by zero");
  r = f;
  trim(r);
  q.clear();
  if (r.size() < g.size()) return;
  q.assign(r.size() - g.size() + 1, FieldElement());
  FieldElement li = g.back().inverse();
  while (r.size() >= g.size()) {
    FieldElement c = r.back() * li;
    size_t sh = r.size() - g.size();
    q[sh] = c;
    for (size_t i = 0; i < g.size(); ++i) r[sh + i] -= c * g[i];
    r.pop_back();
    trim(r);
  }
  trim(q);
}

KPoly pmonic(const KPoly& f) {
  if (f.empty()) return f;
  return pscale(f, f.back().inverse());
}

KPoly pgcd(KPoly f, KPoly g) {
  trim(f);
  trim(g);
  while (!g.empty()) {
    KPoly q, r;
    pdivmod(f, g, q, r);
    f = std::move(g);
    g = pmonic(r);
  }
  return pmonic(f);
}

KPoly pconst(const FieldElement& c) {
  if (c.is_zero()) return {};
  return {c};
}

KPoly px(long d) { return {FieldElement(d, 0), FieldElement(d, 1)}; }

KRat radd(const KRat& a, const KRat& b) {
  if (a.den == b.den) return {padd(a.num, b.num), a.den};
  return {padd(pmul(a.num, b.den), pmul(b.num, a.den)), pmul(a.den, b.den)};
}

KRat rsub(const KRat& a, const KRat& b) {
  if (a.den == b.den) return {psub(a.num, b.num), a.den};
  return {psub(pmul(a.num, b.den), pmul(b.num, a.den)), pmul(a.den, b.den)};
}

KRat rmul(const KRat& a, const KRat& b) { return {pmul(a.num, b.num), pmul(a.den, b.den)}; }

KRat rderiv(const KRat& a) {
  return {psub(pmul(pderiv(a.num), a.den), pmul(a.num, pderiv(a.den))), pmul(a.den, a.den)};
}

KRat rreduce(const KRat& a) {
  if (a.num.empty()) return {{}, a.den.empty() ? a.den : KPoly{FieldElement(a.den[0].d(), 1)}};
  KPoly g = pgcd(a.num, a.den), q, r, n, dd;
  pdivmod(a.num, g, n, r);
  pdivmod(a.den, g, dd, r);
  FieldElement li = dd.back().inverse();
  return {pscale(n, li), pscale(dd, li)};
}

bool ris_zero(const KRat& a) { return a.num.empty(); }

OKRing::OKRing(long d_) : d(d_) {
  bool one = ((d % 4) + 4) % 4 == 1;
  t = one ? 1 : 0;
  n0 = one ? (d - 1) / 4 : d;
}

OK OKRing::mul(const OK& x, const OK& y) const {
  mpz_class bd = x.b * y.b;
  OK r{x.a * y.a + bd * n0, x.a * y.b + x.b * y.a};
  if (t) r.b += bd;
  return r;
}

OK OKRing::from_k(const FieldElement& z) const {
  mpz_class X, Y, D;
  z.omega_coords(X, Y, D);
  if (D != 1) throw Error(ErrorCode::Internal, "element not integral");
  return {X, Y};
}

void oktrim(OKPoly& f) {
  while (!f.empty() && f.back().a == 0 && f.back().b == 0) f.pop_back();
}

OKPoly okmul(const OKRing& R, const OKPoly& f, const OKPoly& g) {
  if (f.empty() || g.empty()) return {};
  OKPoly r(f.size() + g.size() - 1);
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i].a == 0 && f[i].b == 0) continue;
    for (size_t j = 0; j < g.size(); ++j) {
      OK m = R.mul(f[i], g[j]);
      r[i + j].a += m.a;
      r[i + j].b += m.b;
    }
  }
  oktrim(r);
  return r;
}

OKPoly okadd(const OKPoly& f, const OKPoly& g) {
  OKPoly r(std::max(f.size(), g.size()));
  for (size_t i = 0; i < f.size(); ++i) r[i] = f[i];
  for (size_t i = 0; i < g.size(); ++i) r[i].a += g[i].a, r[i].b += g[i].b;
  oktrim(r);
  return r;
}

OKPoly oksub(const OKPoly& f, const OKPoly& g) {
  OKPoly r(std::max(f.size(), g.size()));
  for (size_t i = 0; i < f.size(); ++i) r[i] = f[i];
  for (size_t i = 0; i < g.size(); ++i) r[i].a -= g[i].a, r[i].b -= g[i].b;
  oktrim(r);
  return r;
}

}  // namespace qcurve
