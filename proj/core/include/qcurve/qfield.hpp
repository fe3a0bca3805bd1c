#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "qcurve/arith.hpp"
#include "qcurve/resfield.hpp"

namespace qcurve {

// x + y*sqrt(d).  d == 0 marks a field-less rational (only valid with y == 0).
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(long d, mpq_class x, mpq_class y = 0);
  FieldElement(long d, long x) : FieldElement(d, mpq_class(x)) {}

  long d() const { return d_; }
  const mpq_class& x() const { return x_; }
  const mpq_class& y() const { return y_; }

  bool is_zero() const { return x_ == 0 && y_ == 0; }
  bool is_one() const { return x_ == 1 && y_ == 0; }
  bool is_rational() const { return y_ == 0; }
  bool is_integral() const;
  FieldElement conj() const { return FieldElement(d_, x_, -y_); }
  mpq_class norm() const { return x_ * x_ - d_ * y_ * y_; }
  mpq_class trace() const { return 2 * x_; }
  FieldElement inverse() const;

  // integral coordinates in the basis 1, omega: (X + Y*omega) / D, D > 0, content 1
  void omega_coords(mpz_class& X, mpz_class& Y, mpz_class& D) const;
  static FieldElement from_omega(long d, const mpz_class& X, const mpz_class& Y,
                                 const mpz_class& D = 1);

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o) { return *this *= o.inverse(); }
  FieldElement operator-() const { return FieldElement(d_, -x_, -y_); }

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  friend FieldElement operator*(const mpq_class& c, FieldElement a) {
    a.x_ *= c;
    a.y_ *= c;
    return a;
  }
  friend FieldElement operator*(FieldElement a, const mpq_class& c) { return c * std::move(a); }
  friend FieldElement operator*(long c, const FieldElement& a) { return mpq_class(c) * a; }
  bool operator==(const FieldElement& o) const { return x_ == o.x_ && y_ == o.y_; }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  FieldElement pow(long e) const;
  std::string str() const;
  double approx(int embedding = 0) const;  // real embeddings only

 private:
  long field(const FieldElement& o) const;
  long d_ = 0;
  mpq_class x_, y_;
};

// parse "u", "u+v*sqrt(d)", "v*sqrt(d)", "-sqrt(d)", fractions allowed
FieldElement parse_element(long d, const std::string& s);

class QuadraticField {
 public:
  static QuadraticField make(long d);  // throws NonSquarefree / DegenerateD
  long d() const { return d_; }
  long disc() const { return disc_; }
  bool is_real() const { return d_ > 0; }
  bool one_mod_four() const { return ((d_ % 4) + 4) % 4 == 1; }
  // omega^2 = t*omega + n0
  long omega_t() const { return one_mod_four() ? 1 : 0; }
  long omega_n0() const { return one_mod_four() ? (d_ - 1) / 4 : d_; }
  int kronecker(u64 p) const;
  FieldElement operator()(const mpq_class& x, const mpq_class& y = 0) const {
    return FieldElement(d_, x, y);
  }
  FieldElement omega() const;

 private:
  long d_ = 0, disc_ = 0;
};

enum class Splitting { Split, Inert, Ramified };

struct PrimeIdeal {
  long d = 0;
  u64 p = 0;
  Splitting kind = Splitting::Inert;
  int index = 0;         // split primes: 0 or 1
  u64 omega_image = 0;   // split / ramified: omega mod P in F_p
  u64 norm() const { return kind == Splitting::Inert ? p * p : p; }
  int f() const { return kind == Splitting::Inert ? 2 : 1; }
  std::string str() const;
  bool operator==(const PrimeIdeal& o) const {
    return d == o.d && p == o.p && index == o.index;
  }
};

std::vector<PrimeIdeal> primes_above(const QuadraticField& K, u64 p);
PrimeIdeal conjugate(const PrimeIdeal& P);

constexpr int kInfiniteValuation = 1 << 28;
int valuation(const FieldElement& z, const PrimeIdeal& P);
bool is_integral_at(const FieldElement& z, const PrimeIdeal& P);
Fq residue_field(const PrimeIdeal& P);
Fe reduce(const FieldElement& z, const PrimeIdeal& P, const Fq& F);
FieldElement lift(Fe a, const PrimeIdeal& P);
FieldElement uniformizer(const PrimeIdeal& P);

// norm of the denominator ideal of z
mpz_class denominator_norm(const FieldElement& z);

}  // namespace qcurve
