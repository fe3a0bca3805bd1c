#include "qcurve/ecfq.hpp"

#include <cmath>
#include <unordered_map>

#include "qcurve/error.hpp"

namespace qcurve {

ECq::ECq(const Fq& F, Fe a1, Fe a2, Fe a3, Fe a4, Fe a6) : F_(F), a1_(a1), a2_(a2), a3_(a3), a4_(a4), a6_(a6) {
  Fe b2 = F.add(F.sqr(a1), F.scal(4, a2));
  Fe b4 = F.add(F.scal(2, a4), F.mul(a1, a3));
  Fe b6 = F.add(F.sqr(a3), F.scal(4, a6));
  Fe b8 = F.sub(F.add(F.add(F.mul(F.sqr(a1), a6), F.scal(4, F.mul(a2, a6))), F.mul(a2, F.sqr(a3))),
                F.add(F.mul(F.mul(a1, a3), a4), F.sqr(a4)));
  Fe t1 = F.neg(F.mul(F.sqr(b2), b8));
  Fe t2 = F.scal(8, F.mul(F.sqr(b4), b4));
  Fe t3 = F.scal(27, F.sqr(b6));
  Fe t4 = F.scal(9, F.mul(F.mul(b2, b4), b6));
  disc_ = F.add(F.sub(F.sub(t1, t2), t3), t4);
}

ECq ECq::reduce(const Curve& E, const PrimeIdeal& P) {
  Fq F = residue_field(P);
  return ECq(F, qcurve::reduce(E.a1(), P, F), qcurve::reduce(E.a2(), P, F), qcurve::reduce(E.a3(), P, F),
             qcurve::reduce(E.a4(), P, F), qcurve::reduce(E.a6(), P, F));
}

ECq ECq::frobenius() const {
  return ECq(F_, F_.frob(a1_), F_.frob(a2_), F_.frob(a3_), F_.frob(a4_), F_.frob(a6_));
}

bool ECq::on_curve(const FPoint& P) const {
  if (P.inf) return true;
  const Fq& F = F_;
  Fe lhs = F.add(F.sqr(P.y), F.mul(P.y, F.add(F.mul(a1_, P.x), a3_)));
  Fe rhs = F.add(F.mul(F.add(F.mul(F.add(P.x, a2_), P.x), a4_), P.x), a6_);
  return lhs == rhs;
}

bool ECq::is_singular_point(const FPoint& P) const {
  if (P.inf) return false;
  const Fq& F = F_;
  Fe fy = F.add(F.add(F.scal(2, P.y), F.mul(a1_, P.x)), a3_);
  Fe fx = F.sub(F.sub(F.sub(F.mul(a1_, P.y), F.scal(3, F.sqr(P.x))), F.scal(2, F.mul(a2_, P.x))), a4_);
  return F.is_zero(fy) && F.is_zero(fx);
}

FPoint ECq::neg(const FPoint& P) const {
  if (P.inf) return P;
  return FPoint::at(P.x, F_.sub(F_.neg(P.y), F_.add(F_.mul(a1_, P.x), a3_)));
}

FPoint ECq::add(const FPoint& P, const FPoint& Q) const {
  if (P.inf) return Q;
  if (Q.inf) return P;
  const Fq& F = F_;
  Fe lam, nu;
  if (P.x == Q.x) {
    Fe s = F.add(F.add(F.add(P.y, Q.y), F.mul(a1_, Q.x)), a3_);
    if (F.is_zero(s)) return FPoint{};
    Fe den = F.inv(F.add(F.add(F.scal(2, P.y), F.mul(a1_, P.x)), a3_));
    Fe x2 = F.sqr(P.x);
    lam = F.mul(F.sub(F.add(F.add(F.scal(3, x2), F.scal(2, F.mul(a2_, P.x))), a4_), F.mul(a1_, P.y)), den);
    nu = F.mul(F.sub(F.add(F.add(F.neg(F.mul(x2, P.x)), F.mul(a4_, P.x)), F.scal(2, a6_)), F.mul(a3_, P.y)), den);
  } else {
    Fe den = F.inv(F.sub(Q.x, P.x));
    lam = F.mul(F.sub(Q.y, P.y), den);
    nu = F.mul(F.sub(F.mul(P.y, Q.x), F.mul(Q.y, P.x)), den);
  }
  Fe x3 = F.sub(F.sub(F.sub(F.add(F.sqr(lam), F.mul(a1_, lam)), a2_), P.x), Q.x);
  Fe y3 = F.sub(F.sub(F.neg(F.mul(F.add(lam, a1_), x3)), nu), a3_);
  return FPoint::at(x3, y3);
}

FPoint ECq::mul(const FPoint& P, long long n) const {
  if (n < 0) return mul(neg(P), -n);
  FPoint R, B = P;
  unsigned long long e = n;
  while (e) {
    if (e & 1) R = add(R, B);
    B = dbl(B);
    e >>= 1;
  }
  return R;
}

FPoint ECq::mul(const FPoint& P, const mpz_class& n) const {
  if (n < 0) return mul(neg(P), mpz_class(-n));
  FPoint R;
  size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    R = dbl(R);
    if (mpz_tstbit(n.get_mpz_t(), i)) R = add(R, P);
  }
  return R;
}

FPoint ECq::frob(const FPoint& P) const {
  if (P.inf) return P;
  return FPoint::at(F_.frob(P.x), F_.frob(P.y));
}

std::vector<Fe> ECq::lift_x(Fe x) const {
  const Fq& F = F_;
  Fe b = F.add(F.mul(a1_, x), a3_);
  Fe f = F.add(F.mul(F.add(F.mul(F.add(x, a2_), x), a4_), x), a6_);
  std::vector<Fe> ys;
  if (F.p() == 2) {
    for (u64 i = 0; i < F.q(); ++i) {
      Fe y = F.element(i);
      if (F.add(F.sqr(y), F.mul(b, y)) == f) ys.push_back(y);
    }
    return ys;
  }
  Fe D = F.add(F.sqr(b), F.scal(4, f));
  Fe s;
  if (!F.sqrt(D, s)) return ys;
  Fe h = F.inv(F.from_int(2));
  ys.push_back(F.mul(F.sub(s, b), h));
  if (!F.is_zero(s)) ys.push_back(F.mul(F.sub(F.neg(s), b), h));
  return ys;
}

FPoint ECq::random_point(std::mt19937_64& rng) const {
  if (F_.q() <= 64) {
    std::vector<FPoint> pts;
    for (u64 i = 0; i < F_.q(); ++i)
      for (Fe y : lift_x(F_.element(i))) {
        FPoint P = FPoint::at(F_.element(i), y);
        if (!is_singular_point(P)) pts.push_back(P);
      }
    if (pts.empty()) return FPoint{};
    return pts[rng() % pts.size()];
  }
  for (int tries = 0; tries < 100000; ++tries) {
    Fe x = F_.random(rng);
    auto ys = lift_x(x);
    if (ys.empty()) continue;
    FPoint P = FPoint::at(x, ys[rng() % ys.size()]);
    if (!is_singular_point(P)) return P;
  }
  throw Error(ErrorCode::NoSuitablePoint, "could not find a point");
}

u64 ECq::count_naive() const {
  const Fq& F = F_;
  u64 n = 1;
  if (F.p() == 2) {
    for (u64 i = 0; i < F.q(); ++i) n += lift_x(F.element(i)).size();
    return n;
  }
  std::vector<signed char> qr(F.p(), -1);
  qr[0] = 0;
  for (u64 i = 1; i < F.p(); ++i) qr[mulmod(i, i, F.p())] = 1;
  for (u64 i = 0; i < F.q(); ++i) {
    Fe x = F.element(i);
    Fe b = F.add(F.mul(a1_, x), a3_);
    Fe f = F.add(F.mul(F.add(F.mul(F.add(x, a2_), x), a4_), x), a6_);
    Fe D = F.add(F.sqr(b), F.scal(4, f));
    if (F.is_zero(D))
      n += 1;
    else
      n += 1 + qr[F.norm(D)];
  }
  return n;
}

u64 ECq::point_order(const FPoint& P, u64 multiple) const {
  u64 n = multiple;
  for (auto& [pp, e] : factor(mpz_class(multiple))) {
    u64 l = pp.get_ui();
    for (int i = 0; i < e; ++i) {
      if (mul(P, (long long)(n / l)).inf)
        n /= l;
      else
        break;
    }
  }
  return n;
}

namespace {

struct Key {
  u64 a, b, c, d;
  bool operator==(const Key& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
};
struct KeyHash {
  size_t operator()(const Key& k) const {
    return std::hash<u64>()(k.a * 0x9E3779B97F4A7C15ull ^ (k.b + 0x7f4a7c15) * 31 ^ k.c * 1000003 ^ k.d);
  }
};

// some k in [klo, khi] with kR = O (0 if none)
u64 bsgs_multiple(const ECq& E, const FPoint& R, u64 klo, u64 khi) {
  if (R.inf) return 1;
  u64 W = khi - klo + 1;
  u64 m = (u64)std::ceil(std::sqrt((double)W)) + 1;
  std::unordered_map<Key, u64, KeyHash> table;
  table.reserve(m * 2);
  FPoint J;
  for (u64 j = 0; j < m; ++j) {
    if (j > 0 && J.inf) return j;  // order is j
    if (!J.inf) table.emplace(Key{J.x.a, J.x.b, J.y.a, J.y.b}, j);
    J = E.add(J, R);
  }
  FPoint step = E.mul(R, (long long)m);
  FPoint S = E.mul(R, (long long)klo);
  for (u64 i = 0; i * m <= W + m; ++i) {
    if (S.inf) return klo + i * m;
    FPoint nS = E.neg(S);
    auto it = table.find(Key{nS.x.a, nS.x.b, nS.y.a, nS.y.b});
    if (it != table.end()) return klo + i * m + it->second;
    S = E.add(S, step);
  }
  return 0;
}

u64 exponent_step(const ECq& E, u64 L, u64 lo, u64 hi, std::mt19937_64& rng) {
  FPoint P = E.random_point(rng);
  FPoint R = E.mul(P, (long long)L);
  if (R.inf) return L;
  u64 klo = (lo + L - 1) / L, khi = hi / L;
  u64 k = bsgs_multiple(E, R, klo, khi);
  if (k == 0) throw Error(ErrorCode::Internal, "BSGS failed to find a multiple");
  return L * E.point_order(R, k);
}

}  // namespace

u64 ECq::count_bsgs(std::mt19937_64& rng) const {
  if (is_singular()) throw Error(ErrorCode::BadReduction, "BSGS on a singular curve");
  u64 q = F_.q();
  u64 w = isqrt(mpz_class(4) * q).get_ui();
  u64 lo = q + 1 - w, hi = q + 1 + w;
  u64 L = 1;
  auto candidates = [&](u64 LL) {
    std::vector<u64> c;
    for (u64 n = (lo + LL - 1) / LL * LL; n <= hi; n += LL) c.push_back(n);
    return c;
  };
  for (int it = 0; it < 12; ++it) {
    L = exponent_step(*this, L, lo, hi, rng);
    if (candidates(L).size() == 1) return candidates(L)[0];
  }
  if (F_.p() == 2) return count_naive();
  // the quadratic twist has order 2q + 2 - n
  const Fq& F = F_;
  Fe h = F.inv(F.from_int(4));
  Fe A2 = F.add(a2_, F.mul(F.sqr(a1_), h));
  Fe A4 = F.add(a4_, F.mul(F.mul(a1_, a3_), F.scal(2, h)));
  Fe A6 = F.add(a6_, F.mul(F.sqr(a3_), h));
  Fe D = F.one();
  for (u64 i = 2;; ++i) {
    D = F.element(i);
    if (!F.is_square(D)) break;
  }
  Fe D2 = F.sqr(D);
  ECq T(F, F.zero(), F.mul(D, A2), F.zero(), F.mul(D2, A4), F.mul(F.mul(D2, D), A6));
  u64 Lt = 1;
  for (int it = 0; it < 40; ++it) {
    Lt = exponent_step(T, Lt, lo, hi, rng);
    L = exponent_step(*this, L, lo, hi, rng);
    std::vector<u64> ok;
    for (u64 n : candidates(L))
      if ((2 * q + 2 - n) % Lt == 0) ok.push_back(n);
    if (ok.size() == 1) return ok[0];
  }
  if (q <= 100000000ull) return count_naive();
  throw Error(ErrorCode::NoSuitablePoint, "point count ambiguous");
}

u64 ECq::count(std::mt19937_64& rng) const {
  if (F_.q() <= 10000 || is_singular()) return count_naive();
  return count_bsgs(rng);
}

u64 ECq::group_order(std::mt19937_64& rng) const {
  if (!is_singular()) return count(rng);
  if (F_.q() > 100000000ull) throw Error(ErrorCode::Unsupported, "singular curve over a large field");
  return count_naive() - 1;
}

FPoint random_point_coprime(const ECq& C, u64 order, const mpz_class& avoid, std::mt19937_64& rng) {
  u64 r = order;
  for (u64 l : prime_divisors(avoid))
    while (r % l == 0) r /= l;
  if (r == 1) throw Error(ErrorCode::NoSuitablePoint, "no points of order coprime to " + avoid.get_str());
  for (int i = 0; i < 64; ++i) {
    FPoint Q = C.random_point(rng);
    if (Q.inf) continue;
    FPoint R = C.mul(Q, (long long)(order / r));
    if (!R.inf) return R;
  }
  throw Error(ErrorCode::NoSuitablePoint, "64 samples all killed by the cofactor");
}

}  // namespace qcurve
