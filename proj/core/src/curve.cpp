#include "qcurve/curve.hpp"

#include <sstream>

#include "qcurve/error.hpp"

namespace qcurve {

Urst Urst::identity(long d) { return {FieldElement(d, 1), FieldElement(d, 0), FieldElement(d, 0), FieldElement(d, 0)}; }

Urst compose(const Urst& w1, const Urst& w2) {
  FieldElement u12 = w1.u * w1.u;
  return {w1.u * w2.u, w1.r + u12 * w2.r, w1.s + w1.u * w2.s, w1.t + u12 * w1.u * w2.t + u12 * w1.s * w2.r};
}

Curve::Curve(const FieldElement& a1, const FieldElement& a2, const FieldElement& a3, const FieldElement& a4,
             const FieldElement& a6)
    : a1_(a1), a2_(a2), a3_(a3), a4_(a4), a6_(a6) {
  long d = a1.d();
  for (auto* a : {&a2, &a3, &a4, &a6})
    if (a->d() != 0 && d != 0 && a->d() != d) throw Error(ErrorCode::InvalidInput, "coefficients from different fields");
  for (auto* a : {&a2, &a3, &a4, &a6})
    if (d == 0) d = a->d();
  for (auto* a : {&a1_, &a2_, &a3_, &a4_, &a6_}) *a = FieldElement(d, a->x(), a->y());
  FieldElement B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
  disc_ = -(B2 * B2 * B8) - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
  if (disc_.is_zero()) throw Error(ErrorCode::SingularModel, "discriminant is zero");
}

Curve Curve::from_array(const std::array<FieldElement, 5>& a) { return Curve(a[0], a[1], a[2], a[3], a[4]); }

FieldElement Curve::b2() const { return a1_ * a1_ + 4 * a2_; }
FieldElement Curve::b4() const { return 2 * a4_ + a1_ * a3_; }
FieldElement Curve::b6() const { return a3_ * a3_ + 4 * a6_; }
FieldElement Curve::b8() const {
  return a1_ * a1_ * a6_ + 4 * a2_ * a6_ - a1_ * a3_ * a4_ + a2_ * a3_ * a3_ - a4_ * a4_;
}
FieldElement Curve::c4() const {
  FieldElement B2 = b2();
  return B2 * B2 - 24 * b4();
}
FieldElement Curve::c6() const {
  FieldElement B2 = b2();
  return -(B2 * B2 * B2) + 36 * B2 * b4() - 216 * b6();
}
FieldElement Curve::j() const {
  FieldElement C4 = c4();
  return C4 * C4 * C4 / disc_;
}

Curve Curve::conj() const { return Curve(a1_.conj(), a2_.conj(), a3_.conj(), a4_.conj(), a6_.conj()); }

Curve Curve::transform(const Urst& w) const {
  const FieldElement &r = w.r, &s = w.s, &t = w.t;
  FieldElement ui = w.u.inverse(), ui2 = ui * ui, ui3 = ui2 * ui;
  FieldElement n1 = a1_ + 2 * s;
  FieldElement n2 = a2_ - s * a1_ + 3 * r - s * s;
  FieldElement n3 = a3_ + r * a1_ + 2 * t;
  FieldElement n4 = a4_ - s * a3_ + 2 * r * a2_ - (t + r * s) * a1_ + 3 * r * r - 2 * s * t;
  FieldElement n6 = a6_ + r * a4_ + r * r * a2_ + r * r * r - t * a3_ - t * t - r * t * a1_;
  return Curve(n1 * ui, n2 * ui2, n3 * ui3, n4 * ui2 * ui2, n6 * ui3 * ui3);
}

bool Curve::is_integral_at(const PrimeIdeal& P) const {
  for (auto* a : {&a1_, &a2_, &a3_, &a4_, &a6_})
    if (!qcurve::is_integral_at(*a, P)) return false;
  return true;
}

std::string Curve::str() const {
  std::ostringstream os;
  os << "[" << a1_.str() << ", " << a2_.str() << ", " << a3_.str() << ", " << a4_.str() << ", " << a6_.str() << "]";
  return os.str();
}

const char* reduction_name(Reduction r) {
  switch (r) {
    case Reduction::Good: return "good";
    case Reduction::SplitMultiplicative: return "split multiplicative";
    case Reduction::NonSplitMultiplicative: return "non-split multiplicative";
    case Reduction::Additive: return "additive";
  }
  return "?";
}

}  // namespace qcurve
