#include "qcurve/resfield.hpp"

#include "qcurve/error.hpp"

namespace qcurve {

Fe Fq::from_int(long long v) const {
  long long r = v % (long long)p_;
  if (r < 0) r += p_;
  return {(u64)r, 0};
}

Fe Fq::from_mpz(const mpz_class& v) const { return {mpz_mod_u64(v, p_), 0}; }

Fe Fq::mul(Fe x, Fe y) const {
  if (deg_ == 1) return {mulmod(x.a, y.a, p_), 0};
  u64 ac = mulmod(x.a, y.a, p_);
  u64 bd = mulmod(x.b, y.b, p_);
  u64 ad = mulmod(x.a, y.b, p_);
  u64 bc = mulmod(x.b, y.a, p_);
  return {addm(ac, mulmod(bd, c0_, p_)), addm(addm(ad, bc), mulmod(bd, c1_, p_))};
}

u64 Fq::norm(Fe x) const {
  if (deg_ == 1) return x.a;
  // N(a+bt) = a^2 + ab c1 - b^2 c0
  u64 n = addm(mulmod(x.a, x.a, p_), mulmod(mulmod(x.a, x.b, p_), c1_, p_));
  return subm(n, mulmod(mulmod(x.b, x.b, p_), c0_, p_));
}

u64 Fq::trace(Fe x) const {
  if (deg_ == 1) return x.a;
  return addm(addm(x.a, x.a), mulmod(x.b, c1_, p_));
}

Fe Fq::inv(Fe x) const {
  if (is_zero(x)) throw Error(ErrorCode::ZeroElement, "inverse of zero in residue field");
  if (deg_ == 1) return {invmod(x.a, p_), 0};
  u64 ni = invmod(norm(x), p_);
  Fe c{addm(x.a, mulmod(x.b, c1_, p_)), subm(0, x.b)};
  return scal(ni, c);
}

Fe Fq::pow(Fe x, u64 e) const {
  Fe r = one();
  while (e) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

Fe Fq::pow(Fe x, const mpz_class& e) const {
  Fe r = one();
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = mul(r, r);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, x);
  }
  return r;
}

Fe Fq::frob(Fe x) const {
  if (deg_ == 1) return x;
  // t^p = c1 - t
  return {addm(x.a, mulmod(x.b, c1_, p_)), subm(0, x.b)};
}

bool Fq::is_square(Fe x) const {
  if (is_zero(x) || p_ == 2) return true;
  return legendre(norm(x), p_) == 1;
}

bool Fq::sqrt(Fe x, Fe& out) const {
  if (is_zero(x)) {
    out = zero();
    return true;
  }
  if (p_ == 2) {
    // Frobenius is bijective: sqrt(x) = x^(q/2)
    out = pow(x, q_ / 2);
    return true;
  }
  if (!is_square(x)) return false;
  if (deg_ == 1) {
    out = {sqrtmod(x.a, p_), 0};
    return true;
  }
  u64 qq = q_ - 1;
  int s = 0;
  while (!(qq & 1)) qq >>= 1, ++s;
  Fe z{0, 1};
  for (u64 i = 1;; ++i) {
    z = element(i);
    if (!is_square(z)) break;
  }
  int m = s;
  Fe c = pow(z, qq), t = pow(x, qq), r = pow(x, (qq + 1) / 2);
  while (t != one()) {
    int i = 0;
    Fe tt = t;
    while (tt != one()) tt = sqr(tt), ++i;
    Fe b = c;
    for (int j = 0; j + i + 1 < m; ++j) b = sqr(b);
    m = i;
    c = sqr(b);
    t = mul(t, c);
    r = mul(r, b);
  }
  out = r;
  return true;
}

u64 Fq::trace_f2(Fe x) const {
  Fe s = x, y = x;
  for (int i = 1; i < deg_; ++i) {
    y = sqr(y);
    s = add(s, y);
  }
  return s.a;
}

void fq_trim(const Fq& F, FqPoly& f) {
  while (!f.empty() && F.is_zero(f.back())) f.pop_back();
}

FqPoly fq_mul(const Fq& F, const FqPoly& f, const FqPoly& g) {
  if (f.empty() || g.empty()) return {};
  FqPoly r(f.size() + g.size() - 1, F.zero());
  for (size_t i = 0; i < f.size(); ++i)
    for (size_t j = 0; j < g.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(f[i], g[j]));
  fq_trim(F, r);
  return r;
}

FqPoly fq_mod(const Fq& F, const FqPoly& f, const FqPoly& g) {
  FqPoly r = f;
  fq_trim(F, r);
  if (g.empty()) throw Error(ErrorCode::ZeroElement, "polynomial division by zero");
  Fe li = F.inv(g.back());
  while (r.size() >= g.size()) {
    Fe c = F.mul(r.back(), li);
    size_t sh = r.size() - g.size();
    for (size_t i = 0; i < g.size(); ++i) r[sh + i] = F.sub(r[sh + i], F.mul(c, g[i]));
    r.pop_back();
    fq_trim(F, r);
  }
  return r;
}

FqPoly fq_div(const Fq& F, const FqPoly& f, const FqPoly& g) {
  FqPoly r = f;
  fq_trim(F, r);
  if (g.empty()) throw Error(ErrorCode::ZeroElement, "polynomial division by zero");
  if (r.size() < g.size()) return {};
  FqPoly q(r.size() - g.size() + 1, F.zero());
  Fe li = F.inv(g.back());
  while (r.size() >= g.size()) {
    Fe c = F.mul(r.back(), li);
    size_t sh = r.size() - g.size();
    q[sh] = c;
    for (size_t i = 0; i < g.size(); ++i) r[sh + i] = F.sub(r[sh + i], F.mul(c, g[i]));
    r.pop_back();
    fq_trim(F, r);
  }
  fq_trim(F, q);
  return q;
}

FqPoly fq_gcd(const Fq& F, FqPoly f, FqPoly g) {
  fq_trim(F, f);
  fq_trim(F, g);
  while (!g.empty()) {
    FqPoly r = fq_mod(F, f, g);
    f = std::move(g);
    g = std::move(r);
  }
  if (!f.empty()) {
    Fe li = F.inv(f.back());
    for (auto& c : f) c = F.mul(c, li);
  }
  return f;
}

Fe fq_eval(const Fq& F, const FqPoly& f, Fe x) {
  Fe r = F.zero();
  for (size_t i = f.size(); i-- > 0;) r = F.add(F.mul(r, x), f[i]);
  return r;
}

namespace {

FqPoly powmod_poly(const Fq& F, FqPoly base, const mpz_class& e, const FqPoly& m) {
  FqPoly r{F.one()};
  base = fq_mod(F, base, m);
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = fq_mod(F, fq_mul(F, r, r), m);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = fq_mod(F, fq_mul(F, r, base), m);
  }
  return r;
}

void split_roots(const Fq& F, const FqPoly& g, std::vector<Fe>& out, std::mt19937_64& rng) {
  if (g.size() <= 1) return;
  if (g.size() == 2) {
    out.push_back(F.neg(F.div(g[0], g[1])));
    return;
  }
  mpz_class e = (mpz_class(F.q()) - 1) / 2;
  for (;;) {
    FqPoly b{F.random(rng), F.one()};
    FqPoly h = powmod_poly(F, b, e, g);
    if (h.empty()) continue;
    h[0] = F.sub(h[0], F.one());
    fq_trim(F, h);
    FqPoly d = fq_gcd(F, g, h);
    if (d.size() > 1 && d.size() < g.size()) {
      // g / d
      FqPoly q, r = g;
      q.assign(g.size() - d.size() + 1, F.zero());
      while (r.size() >= d.size()) {
        Fe c = r.back();
        size_t sh = r.size() - d.size();
        q[sh] = c;
        for (size_t i = 0; i < d.size(); ++i) r[sh + i] = F.sub(r[sh + i], F.mul(c, d[i]));
        r.pop_back();
      }
      split_roots(F, d, out, rng);
      split_roots(F, q, out, rng);
      return;
    }
  }
}

}  // namespace

std::vector<Fe> Fq::roots(const std::vector<Fe>& f0) const {
  FqPoly f = f0;
  fq_trim(*this, f);
  std::vector<Fe> out;
  if (f.size() <= 1) return out;
  if (p_ == 2 || q_ <= 4096) {
    for (u64 i = 0; i < q_; ++i)
      if (is_zero(fq_eval(*this, f, element(i)))) out.push_back(element(i));
    return out;
  }
  FqPoly x{zero(), one()};
  FqPoly xq = powmod_poly(*this, x, mpz_class(q_), f);
  xq.resize(std::max<size_t>(xq.size(), 2), zero());
  xq[1] = sub(xq[1], one());
  fq_trim(*this, xq);
  FqPoly g = fq_gcd(*this, f, xq);
  std::mt19937_64 rng(0x5eed);
  split_roots(*this, g, out, rng);
  return out;
}

}  // namespace qcurve
