#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

#include <string>

#include "qcurve/qfield.hpp"

namespace qcurve {

using Real = boost::multiprecision::mpfr_float;

// sets the default mpfr precision (decimal digits) for its lifetime; the setting is
// process-wide, so only change it outside worker threads
class Precision {
 public:
  explicit Precision(unsigned digits) : old_(Real::default_precision()) { Real::default_precision(digits); }
  ~Precision() { Real::default_precision(old_); }
  Precision(const Precision&) = delete;
  Precision& operator=(const Precision&) = delete;

 private:
  unsigned old_;
};

struct Cx {
  Real re, im;
  Cx() : re(0), im(0) {}
  Cx(Real r, Real i = 0) : re(std::move(r)), im(std::move(i)) {}
  Cx conj() const { return Cx(re, -im); }
  Real norm2() const { return re * re + im * im; }
  Real abs() const { return sqrt(norm2()); }
};

inline Cx operator+(const Cx& a, const Cx& b) { return Cx(a.re + b.re, a.im + b.im); }
inline Cx operator-(const Cx& a, const Cx& b) { return Cx(a.re - b.re, a.im - b.im); }
inline Cx operator-(const Cx& a) { return Cx(-a.re, -a.im); }
inline Cx operator*(const Cx& a, const Cx& b) { return Cx(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re); }
inline Cx operator*(const Real& s, const Cx& a) { return Cx(s * a.re, s * a.im); }
inline Cx operator/(const Cx& a, const Real& s) { return Cx(a.re / s, a.im / s); }
inline Cx operator/(const Cx& a, const Cx& b) {
  Real n = b.norm2();
  return Cx((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
}
inline Cx& operator+=(Cx& a, const Cx& b) { return a = a + b; }
Cx csqrt(const Cx& z);  // principal branch
Cx cexp(const Cx& z);

Real to_real(const mpq_class& q);
Real to_real(const mpz_class& z);
// real embedding (sqrt d -> +-sqrt d) or the complex one (sqrt d -> i sqrt|d|)
Cx embed(const FieldElement& z, bool conjugate = false);
Real pi();
std::string fmt(const Real& x, int digits = 15);
std::string fmt(const Cx& z, int digits = 15);

}  // namespace qcurve
