#pragma once

#include <vector>

#include "qcurve/qfield.hpp"

namespace qcurve {

// dense polynomial over K, coefficients low to high, no trailing zeros
using KPoly = std::vector<FieldElement>;

void trim(KPoly& f);
int degree(const KPoly& f);  // -1 for zero
KPoly padd(const KPoly& f, const KPoly& g);
KPoly psub(const KPoly& f, const KPoly& g);
KPoly pmul(const KPoly& f, const KPoly& g);
KPoly pscale(const KPoly& f, const FieldElement& c);
KPoly pderiv(const KPoly& f);
KPoly pconj(const KPoly& f);
FieldElement peval(const KPoly& f, const FieldElement& x);
KPoly pcompose(const KPoly& f, const KPoly& g);  // f(g(x))
void pdivmod(const KPoly& f, const KPoly& g, KPoly& q, KPoly& r);
KPoly pgcd(KPoly f, KPoly g);  // monic
KPoly pmonic(const KPoly& f);
KPoly pconst(const FieldElement& c);
KPoly px(long d);  // the polynomial x

// rational function num/den, not kept reduced
struct KRat {
  KPoly num, den;
};
KRat radd(const KRat& a, const KRat& b);
KRat rsub(const KRat& a, const KRat& b);
KRat rmul(const KRat& a, const KRat& b);
KRat rderiv(const KRat& a);
KRat rreduce(const KRat& a);  // cancel gcd, monic denominator
bool ris_zero(const KRat& a);

// element of the maximal order in the basis 1, omega
struct OK {
  mpz_class a, b;
};

struct OKRing {
  long d;
  long t;       // omega^2 = t omega + n0
  mpz_class n0;
  explicit OKRing(long d_);
  OK mul(const OK& x, const OK& y) const;
  OK add(const OK& x, const OK& y) const { return {x.a + y.a, x.b + y.b}; }
  OK sub(const OK& x, const OK& y) const { return {x.a - y.a, x.b - y.b}; }
  OK scal(const mpz_class& k, const OK& x) const { return {k * x.a, k * x.b}; }
  FieldElement to_k(const OK& x) const { return FieldElement::from_omega(d, x.a, x.b); }
  OK from_k(const FieldElement& z) const;  // z must be integral
};

using OKPoly = std::vector<OK>;
void oktrim(OKPoly& f);
OKPoly okmul(const OKRing& R, const OKPoly& f, const OKPoly& g);
OKPoly okadd(const OKPoly& f, const OKPoly& g);
OKPoly oksub(const OKPoly& f, const OKPoly& g);

}  // namespace qcurve
