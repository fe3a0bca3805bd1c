#pragma once

#include <gmpxx.h>

#include <random>
#include <vector>

#include "qcurve/arith.hpp"

namespace qcurve {

// element a + b*t of F_p or F_p[t]/(t^2 - c1 t - c0)
struct Fe {
  u64 a = 0, b = 0;
  bool operator==(const Fe& o) const { return a == o.a && b == o.b; }
  bool operator!=(const Fe& o) const { return !(*this == o); }
};

class Fq {
 public:
  Fq() = default;
  explicit Fq(u64 p) : p_(p), deg_(1), q_(p) {}
  Fq(u64 p, u64 c0, u64 c1) : p_(p), deg_(2), c0_(c0 % p), c1_(c1 % p), q_(p * p) {}

  u64 p() const { return p_; }
  int deg() const { return deg_; }
  u64 q() const { return q_; }
  u64 c0() const { return c0_; }
  u64 c1() const { return c1_; }

  Fe zero() const { return {}; }
  Fe one() const { return {1 % p_, 0}; }
  Fe t() const { return {0, 1}; }
  Fe from_int(long long v) const;
  Fe from_mpz(const mpz_class& v) const;
  Fe make(u64 a, u64 b) const { return {a % p_, deg_ == 2 ? b % p_ : 0}; }

  Fe add(Fe x, Fe y) const { return {addm(x.a, y.a), addm(x.b, y.b)}; }
  Fe sub(Fe x, Fe y) const { return {subm(x.a, y.a), subm(x.b, y.b)}; }
  Fe neg(Fe x) const { return {subm(0, x.a), subm(0, x.b)}; }
  Fe mul(Fe x, Fe y) const;
  Fe sqr(Fe x) const { return mul(x, x); }
  Fe scal(u64 k, Fe x) const { return {mulmod(k % p_, x.a, p_), mulmod(k % p_, x.b, p_)}; }
  u64 norm(Fe x) const;
  u64 trace(Fe x) const;
  Fe inv(Fe x) const;
  Fe div(Fe x, Fe y) const { return mul(x, inv(y)); }
  Fe pow(Fe x, const mpz_class& e) const;
  Fe pow(Fe x, u64 e) const;
  Fe frob(Fe x) const;  // x^p
  bool is_zero(Fe x) const { return x.a == 0 && x.b == 0; }
  bool is_square(Fe x) const;
  bool sqrt(Fe x, Fe& out) const;
  // element with index i in [0, q)
  Fe element(u64 i) const { return {i % p_, i / p_}; }
  Fe random(std::mt19937_64& rng) const { return element(rng() % q_); }
  // absolute trace to F_2 in characteristic 2
  u64 trace_f2(Fe x) const;
  // number of roots of a polynomial (coefficients low to high) in this field
  std::vector<Fe> roots(const std::vector<Fe>& f) const;

 private:
  u64 addm(u64 x, u64 y) const {
    u64 s = x + y;
    return s >= p_ ? s - p_ : s;
  }
  u64 subm(u64 x, u64 y) const { return x >= y ? x - y : x + p_ - y; }

  u64 p_ = 2;
  int deg_ = 1;
  u64 c0_ = 0, c1_ = 0;
  u64 q_ = 2;
};

// polynomial helpers over Fq, coefficients low to high
using FqPoly = std::vector<Fe>;
void fq_trim(const Fq& F, FqPoly& f);
FqPoly fq_mul(const Fq& F, const FqPoly& f, const FqPoly& g);
FqPoly fq_mod(const Fq& F, const FqPoly& f, const FqPoly& g);
FqPoly fq_div(const Fq& F, const FqPoly& f, const FqPoly& g);  // quotient
FqPoly fq_gcd(const Fq& F, FqPoly f, FqPoly g);
Fe fq_eval(const Fq& F, const FqPoly& f, Fe x);

}  // namespace qcurve
