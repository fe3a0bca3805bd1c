#pragma once

#include <random>
#include <vector>

#include "qcurve/curve.hpp"
#include "qcurve/resfield.hpp"

namespace qcurve {

struct FPoint {
  Fe x, y;
  bool inf = true;
  static FPoint at(Fe x, Fe y) { return {x, y, false}; }
  bool operator==(const FPoint& o) const { return inf == o.inf && (inf || (x == o.x && y == o.y)); }
  bool operator!=(const FPoint& o) const { return !(*this == o); }
};

// Weierstrass cubic over a finite field; may be singular (group law on the smooth locus)
class ECq {
 public:
  ECq() = default;
  ECq(const Fq& F, Fe a1, Fe a2, Fe a3, Fe a4, Fe a6);
  // reduction of a P-integral model
  static ECq reduce(const Curve& E, const PrimeIdeal& P);

  const Fq& field() const { return F_; }
  Fe a1() const { return a1_; }
  Fe a2() const { return a2_; }
  Fe a3() const { return a3_; }
  Fe a4() const { return a4_; }
  Fe a6() const { return a6_; }
  Fe disc() const { return disc_; }
  bool is_singular() const { return F_.is_zero(disc_); }
  ECq frobenius() const;  // coefficients raised to the p-th power

  bool on_curve(const FPoint& P) const;
  bool is_singular_point(const FPoint& P) const;
  FPoint neg(const FPoint& P) const;
  FPoint add(const FPoint& P, const FPoint& Q) const;
  FPoint dbl(const FPoint& P) const { return add(P, P); }
  FPoint mul(const FPoint& P, const mpz_class& n) const;
  FPoint mul(const FPoint& P, long long n) const;
  FPoint frob(const FPoint& P) const;  // (x^p, y^p), lands on frobenius()

  // random non-singular point, std::nullopt-free: returns O only if the smooth locus is trivial
  FPoint random_point(std::mt19937_64& rng) const;
  // y-values over x (0, 1 or 2 of them)
  std::vector<Fe> lift_x(Fe x) const;

  u64 count_naive() const;
  u64 count_bsgs(std::mt19937_64& rng) const;
  u64 count(std::mt19937_64& rng) const;  // naive below 10^4 elements
  // order of the smooth locus (good or nodal or cuspidal)
  u64 group_order(std::mt19937_64& rng) const;
  u64 point_order(const FPoint& P, u64 multiple) const;

 private:
  Fq F_;
  Fe a1_, a2_, a3_, a4_, a6_, disc_;
};

// random smooth point of order coprime to avoid, given the order of the smooth locus;
// throws NoSuitablePoint when that part of the group is trivial
FPoint random_point_coprime(const ECq& C, u64 order, const mpz_class& avoid, std::mt19937_64& rng);

}  // namespace qcurve
