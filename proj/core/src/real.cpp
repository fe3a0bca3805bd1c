#include "qcurve/real.hpp"

#include <iomanip>
#include <sstream>

namespace qcurve {

Cx csqrt(const Cx& z) {
  Real r = z.abs();
  if (r == 0) return Cx();
  Real re = sqrt((r + abs(z.re)) / 2);
  if (z.re >= 0) return Cx(re, z.im / (2 * re));
  Real im = z.im >= 0 ? re : Real(-re);
  return Cx(abs(z.im) / (2 * re), im);
}

Cx cexp(const Cx& z) {
  Real m = exp(z.re);
  return Cx(m * cos(z.im), m * sin(z.im));
}

Real to_real(const mpz_class& z) { return Real(z.get_mpz_t()); }

Real to_real(const mpq_class& q) { return to_real(mpz_class(q.get_num())) / to_real(mpz_class(q.get_den())); }

Cx embed(const FieldElement& z, bool conjugate) {
  Real x = to_real(z.x());
  if (z.y() == 0) return Cx(x);
  Real s = sqrt(Real(std::abs(z.d()))) * to_real(z.y());
  if (conjugate) s = -s;
  if (z.d() > 0) return Cx(x + s);
  return Cx(x, s);
}

Real pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

std::string fmt(const Real& x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

std::string fmt(const Cx& z, int digits) {
  if (z.im == 0) return fmt(z.re, digits);
  std::string im = fmt(abs(z.im), digits);
  return fmt(z.re, digits) + (z.im < 0 ? " - " : " + ") + im + "*I";
}

}  // namespace qcurve
