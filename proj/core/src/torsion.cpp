#include "qcurve/torsion.hpp"

#include <numeric>

#include "qcurve/ecfq.hpp"
#include "qcurve/error.hpp"
#include "qcurve/padic.hpp"

namespace qcurve {

DivisionPolynomials::DivisionPolynomials(const OKRing& R, const OK& A, const OK& B) : R_(R), A_(A), B_(B) {
  OKPoly F{R.scal(4, B), R.scal(4, A), OK{0, 0}, OK{4, 0}};
  F2_ = okmul(R, F, F);
  OK z{0, 0};
  memo_[0] = {};
  memo_[1] = {OK{1, 0}};
  memo_[2] = {OK{1, 0}};
  OK A2 = R.mul(A, A);
  // 3x^4 + 6Ax^2 + 12Bx - A^2
  memo_[3] = {R.scal(-1, A2), R.scal(12, B), R.scal(6, A), z, OK{3, 0}};
  // 2(x^6 + 5Ax^4 + 20Bx^3 - 5A^2x^2 - 4ABx - 8B^2 - A^3)
  OK c0 = R.sub(R.scal(-8, R.mul(B, B)), R.mul(A2, A));
  memo_[4] = {R.scal(2, c0), R.scal(-8, R.mul(A, B)), R.scal(-10, A2), R.scal(40, B), R.scal(10, A), z, OK{2, 0}};
}

const OKPoly& DivisionPolynomials::operator()(int n) {
  auto it = memo_.find(n);
  if (it != memo_.end()) return it->second;
  const OKRing& R = R_;
  OKPoly res;
  int m = n / 2;
  if (n % 2) {
    OKPoly a = okmul(R, (*this)(m + 2), okmul(R, (*this)(m), okmul(R, (*this)(m), (*this)(m))));
    OKPoly b = okmul(R, (*this)(m - 1), okmul(R, (*this)(m + 1), okmul(R, (*this)(m + 1), (*this)(m + 1))));
    if (m % 2 == 0)
      a = okmul(R, a, F2_);
    else
      b = okmul(R, b, F2_);
    res = oksub(a, b);
  } else {
    OKPoly t1 = okmul(R, (*this)(m + 2), okmul(R, (*this)(m - 1), (*this)(m - 1)));
    OKPoly t2 = okmul(R, (*this)(m - 2), okmul(R, (*this)(m + 1), (*this)(m + 1)));
    res = okmul(R, (*this)(m), oksub(t1, t2));
  }
  return memo_[n] = res;
}

u64 torsion_bound(const Curve& E, int nprimes) {
  QuadraticField K = QuadraticField::make(E.d());
  auto S = support_primes(E);
  std::mt19937_64 rng(17);
  u64 g = 0;
  int used = 0;
  for (u64 p = 17; used < nprimes || g == 0; ++p) {
    if (!is_prime(p) || std::find(S.begin(), S.end(), p) != S.end()) continue;
    for (auto& P : primes_above(K, p)) {
      if (P.kind == Splitting::Ramified) continue;
      ECq Er = ECq::reduce(E, P);
      g = std::gcd(g, Er.count(rng));
      ++used;
    }
    if (p > 5000) break;
  }
  return g;
}

namespace {

struct ShortModel {
  OKRing R;
  OK A, B;
  explicit ShortModel(const Curve& E) : R(E.d()) {
    FieldElement c4 = E.c4(), c6 = E.c6();
    mpz_class X, Y, D4, D6;
    c4.omega_coords(X, Y, D4);
    c6.omega_coords(X, Y, D6);
    mpz_class lam = lcm(D4, D6);
    mpq_class l4 = mpq_class(lam * lam * lam * lam), l6 = l4 * lam * lam;
    A = R.from_k(mpq_class(-27) * l4 * c4);
    B = R.from_k(mpq_class(-54) * l6 * c6);
  }
};

u64 count_points_over(const ShortModel& M, const std::vector<FieldElement>& xs) {
  u64 n = 0;
  FieldElement A = M.R.to_k(M.A), B = M.R.to_k(M.B);
  for (auto& x : xs) {
    FieldElement f = x * x * x + A * x + B, s;
    if (f.is_zero())
      n += 1;
    else if (sqrt_in_K(f, s))
      n += 2;
  }
  return n;
}

}  // namespace

u64 count_n_torsion(const Curve& E, u64 n) {
  if (n == 1) return 1;
  ShortModel M(E);
  DivisionPolynomials psi(M.R, M.A, M.B);
  u64 cnt = 1;
  if (n % 2 == 0) {
    OKPoly cubic{M.B, M.A, OK{0, 0}, OK{1, 0}};
    cnt += roots_in_K(M.R, cubic).size();
  }
  if (n > 2) cnt += count_points_over(M, roots_in_K(M.R, psi((int)n)));
  return cnt;
}

u64 torsion_order(const Curve& E) {
  u64 bound = torsion_bound(E);
  u64 order = 1;
  for (auto& [lz, e] : factor(mpz_class(bound))) {
    u64 l = lz.get_ui();
    u64 lmax = 1;
    for (int i = 0; i < e; ++i) lmax *= l;
    u64 prev = 1, n = 1;
    for (;;) {
      n *= l;
      u64 c = count_n_torsion(E, n);
      if (c == prev || n > lmax * lmax) break;
      prev = c;
      if (c % lmax == 0 && c == lmax) break;
    }
    order *= prev;
  }
  return order;
}

}  // namespace qcurve
