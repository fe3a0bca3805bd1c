#pragma once

#include <map>

#include "qcurve/curve.hpp"
#include "qcurve/kpoly.hpp"

namespace qcurve {

// gcd of #E(k(P)) over good primes of residue characteristic >= 17
u64 torsion_bound(const Curve& E, int nprimes = 12);

// #E(K)[n]
u64 count_n_torsion(const Curve& E, u64 n);

// #E(K)_tors
u64 torsion_order(const Curve& E);

// f_n with psi_n = f_n (n odd), psi_n = 2y f_n (n even) on y^2 = x^3 + A x + B
class DivisionPolynomials {
 public:
  DivisionPolynomials(const OKRing& R, const OK& A, const OK& B);
  const OKPoly& operator()(int n);

 private:
  const OKRing& R_;
  OK A_, B_;
  OKPoly F2_;  // (4 (x^3 + A x + B))^2
  std::map<int, OKPoly> memo_;
};

}  // namespace qcurve
