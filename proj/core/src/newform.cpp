#include "qcurve/newform.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "qcurve/error.hpp"

namespace qcurve {

CoefField::CoefField(long m_) : m(m_) {
  if (m == 0 || (m > 0 && is_square(mpz_class(m))))
    throw Error(ErrorCode::InvalidInput, "coefficient field needs a non-square m");
}

std::pair<double, double> CoefField::embed(const FieldElement& a, bool conjugate) const {
  double u = a.x().get_d(), v = a.y().get_d();
  if (conjugate) v = -v;
  if (m > 0) return {u + v * std::sqrt((double)m), 0.0};
  return {u, v * std::sqrt((double)-m)};
}

std::string CoefField::str(const FieldElement& a) const { return FieldElement(m, a.x(), a.y()).str(); }

int CharacterSpec::operator()(const mpz_class& n) const {
  mpz_class g = gcd(n, modulus);
  if (g != 1) return 0;
  if (trivial) return 1;
  return mpz_kronecker(mpz_class(disc).get_mpz_t(), n.get_mpz_t());
}

mpz_class newform_level(const GlobalData& G, const QuadraticField& K) { return G.n * std::abs(K.disc()); }

namespace {

Urst conj(const Urst& w) { return {w.u.conj(), w.r.conj(), w.s.conj(), w.t.conj()}; }

struct LocalModel {
  Curve minimal;
  Urst w;
  Reduction type = Reduction::Good;
};

LocalModel local_model(const NewformInput& in, const PrimeIdeal& P) {
  if (const LocalData* L = in.global.at(P)) return {L->minimal, L->to_minimal, L->type};
  return {in.E, Urst::identity(in.E.d()), Reduction::Good};
}

// removes from n every prime factor dividing k
u64 coprime_part(u64 n, const mpz_class& k) {
  for (u64 l : prime_divisors(k))
    while (n % l == 0) n /= l;
  return n;
}

// random point of order dividing the part of the group order coprime to k; once those run
// out, plain random points (a test is conclusive whenever exactly one branch vanishes)
FPoint test_point(const ECq& C, u64 order, const mpz_class& k, int attempt, std::mt19937_64& rng) {
  u64 r = coprime_part(order, k);
  for (int i = 0; i < 64; ++i) {
    FPoint Q = C.random_point(rng);
    if (Q.inf) continue;
    if (attempt >= 16 || r == 1) return Q;
    FPoint R = C.mul(Q, (long long)(order / r));
    if (!R.inf) return R;
  }
  return FPoint{};
}

FPoint scaled(const ECq& C, const FPoint& Q, long long k) { return C.mul(Q, k); }

IsogenyMap local_isogeny(const NewformInput& in, const PrimeIdeal& P, const LocalModel& lm) {
  LocalModel lc = local_model(in, conjugate(P));
  return transport(*in.mu, lm.w, conj(lc.w));
}

long trace_at(const NewformInput& in, const PrimeIdeal& P, const LocalModel& lm, std::mt19937_64& rng) {
  ECq C = ECq::reduce(lm.minimal, P);
  u64 n = C.count(rng);
  return (long)P.norm() + 1 - (long)n;
}

long bad_sign(Reduction r) {
  if (r == Reduction::SplitMultiplicative) return 1;
  if (r == Reduction::NonSplitMultiplicative) return -1;
  return 0;
}

}  // namespace

PrimeCoefficient prime_coefficient(const NewformInput& in, u64 p) {
  QuadraticField K = QuadraticField::make(in.E.d());
  const long m = in.m;
  std::mt19937_64 rng(in.seed ^ (p * 0x9E3779B97F4A7C15ULL));
  PrimeCoefficient pc;
  pc.p = p;
  auto Ps = primes_above(K, p);
  bool bad = mpz_divisible_ui_p(in.global.n.get_mpz_t(), p) != 0;
  std::vector<LocalModel> lms;
  for (auto& P : Ps) lms.push_back(local_model(in, P));
  for (size_t i = 0; i < Ps.size(); ++i) {
    LocalFactor lf;
    lf.P = Ps[i];
    lf.type = bad ? lms[i].type : Reduction::Good;
    lf.c = lf.type == Reduction::Good ? trace_at(in, Ps[i], lms[i], rng) : bad_sign(lf.type);
    pc.local.push_back(lf);
  }
  const int conv = in.convention;
  auto mu_at = [&](const ReducedIsogeny& R, const ECq& C, const FPoint& Q) {
    FPoint X = R(Q);
    return conv < 0 ? C.neg(X) : X;
  };
  Splitting kind = Ps[0].kind;

  if (kind == Splitting::Split) {
    if (pc.local[0].c != pc.local[1].c)
      throw Error(ErrorCode::TraceMismatch, "traces differ at the primes above " + std::to_string(p));
    pc.a = FieldElement(m, pc.local[0].c);
    pc.how = bad ? "bad-split" : "split";
    return pc;
  }

  const PrimeIdeal& P = Ps[0];
  const LocalModel& lm = lms[0];
  long c = pc.local[0].c;

  if (kind == Splitting::Ramified) {
    if (bad) {
      pc.a = FieldElement(m, 0);
      pc.how = "bad-ramified";
      return pc;
    }
    pc.how = "ramified";
    // a = (c +- w sqrt m)/2 with w^2 m = c^2 - 4p
    mpq_class r(mpz_class(c * c - 4 * (long)p), mpz_class(m));
    r.canonicalize();
    mpz_class wn, wd;
    if (r < 0 || !is_square(r.get_num(), &wn) || !is_square(r.get_den(), &wd) || wd != 1)
      throw Error(ErrorCode::NotASquareInF, "c^2 - 4p is not m times a square at p = " + std::to_string(p));
    FieldElement plus(m, mpq_class(c, 2), mpq_class(wn, 2));
    plus = FieldElement(m, plus.x(), plus.y());
    if (!in.mu) {
      pc.a = plus;
      pc.ambiguous = true;
      return pc;
    }
    ReducedIsogeny R = reduce_isogeny(local_isogeny(in, P, lm), P);
    const ECq& C = R.source;
    if (!(C.a1() == R.target.a1() && C.a2() == R.target.a2() && C.a3() == R.target.a3() && C.a4() == R.target.a4() &&
          C.a6() == R.target.a6()))
      throw Error(ErrorCode::Internal, "reduced conjugate models differ at a ramified prime");
    u64 order = C.group_order(rng);
    mpz_class avoid = mpz_class(2) * p * std::abs(m) * (wn == 0 ? mpz_class(1) : wn);
    for (int attempt = 0; attempt < 64; ++attempt) {
      FPoint Q = test_point(C, order, avoid, attempt, rng);
      if (Q.inf) break;
      // 2 Fr(Q) = c Q + (+-w) mu(Q), Fr trivial on rational points
      FPoint lhs = C.add(Q, Q), cq = scaled(C, Q, c);
      FPoint wmu = scaled(C, mu_at(R, C, Q), wn.get_si());
      bool tp = C.add(cq, wmu) == lhs, tm = C.add(cq, C.neg(wmu)) == lhs;
      if (tp != tm) {
        pc.a = tp ? plus : plus.conj();
        return pc;
      }
    }
    throw Error(ErrorCode::NoSuitablePoint, "ramified sign test failed at p = " + std::to_string(p));
  }

  // inert
  if (bad) {
    pc.how = "bad-inert";
    if (c == 0 || m != -1) {
      if (c != 0) throw Error(ErrorCode::Internal, "multiplicative inert reduction with m != -1");
      pc.a = FieldElement(m, 0);
      return pc;
    }
    FieldElement plus(m, 0, 1);
    if (!in.mu) {
      pc.a = plus;
      pc.ambiguous = true;
      return pc;
    }
    // Fr_p = c p mu on the smooth locus
    ReducedIsogeny R = reduce_isogeny(local_isogeny(in, P, lm), P);
    const ECq& C = R.source;
    ECq Cf = C.frobenius();
    u64 order = C.group_order(rng);
    for (int attempt = 0; attempt < 64; ++attempt) {
      FPoint Q = test_point(C, order, mpz_class(2 * p), attempt, rng);
      if (Q.inf) break;
      FPoint F = C.frob(Q);
      FPoint M = Cf.mul(mu_at(R, Cf, Q), (long long)p);
      bool tp = F == M, tm = F == Cf.neg(M);
      if (tp != tm) {
        pc.a = tp ? plus : plus.conj();
        return pc;
      }
    }
    throw Error(ErrorCode::NoSuitablePoint, "torus sign test failed at p = " + std::to_string(p));
  }

  pc.how = "inert";
  long e = m > 0 ? 1 : -1;
  long val = c + 2 * e * (long)p;
  if (val % m != 0 || val / m < 0 || !is_square(mpz_class(val / m)))
    throw Error(ErrorCode::NotASquareTimesM, "c + 2 eps p is not m times a square at p = " + std::to_string(p));
  long cc = isqrt(mpz_class(val / m)).get_si();
  if (cc == 0) {
    pc.a = FieldElement(m, 0);
    return pc;
  }
  FieldElement plus(m, 0, cc);
  if (!in.mu) {
    pc.a = plus;
    pc.ambiguous = true;
    return pc;
  }
  IsogenyMap loc = local_isogeny(in, P, lm);
  ReducedIsogeny Rc = reduce_isogeny(loc.conj(), P);
  ECq C = ECq::reduce(lm.minimal, P);
  u64 order = C.group_order(rng);
  mpz_class avoid = mpz_class(2) * p * std::abs(m) * cc;
  for (int attempt = 0; attempt < 64; ++attempt) {
    FPoint Q = test_point(C, order, avoid, attempt, rng);
    if (Q.inf) break;
    // T = Fr_{p^2} - |c| conj(mu) Fr_p + eps p, with Fr_{p^2} trivial on k(P)-points
    FPoint X = C.mul(Q, 1 + e * (long long)p);
    FPoint Y = C.mul(mu_at(Rc, C, C.frob(Q)), (long long)cc);
    bool tp = X == Y, tm = X == C.neg(Y);
    if (tp != tm) {
      pc.a = tp ? plus : plus.conj();
      return pc;
    }
  }
  throw Error(ErrorCode::NoSuitablePoint, "inert sign test failed at p = " + std::to_string(p));
}

NewformData compute_newform(const NewformInput& in, u64 pmax) {
  QuadraticField K = QuadraticField::make(in.E.d());
  CoefField F(in.m);
  NewformData nf;
  nf.level = newform_level(in.global, K);
  nf.m = in.m;
  nf.disc = K.disc();
  nf.convention = in.convention;
  nf.character.modulus = nf.level;
  nf.character.trivial = in.m > 0;
  nf.character.disc = K.disc();
  std::vector<u64> ps = primes_up_to(pmax);
  std::vector<PrimeCoefficient> out(ps.size());
  std::vector<std::exception_ptr> errs(ps.size());
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (size_t i; (i = next++) < ps.size();) {
      try {
        out[i] = prime_coefficient(in, ps[i]);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  int nw = std::max(1, in.workers);
  std::vector<std::thread> pool;
  for (int t = 1; t < nw; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (size_t i = 0; i < ps.size(); ++i) {
    if (errs[i]) std::rethrow_exception(errs[i]);
    if (out[i].ambiguous) nf.ambiguous.insert(ps[i]);
    nf.ap[ps[i]] = std::move(out[i]);
  }
  return nf;
}

std::vector<FieldElement> expand(const NewformData& nf, size_t nmax) {
  const long m = nf.m;
  std::vector<FieldElement> a(nmax + 1, FieldElement(m, 0));
  if (nmax == 0) return a;
  a[1] = FieldElement(m, 1);
  std::vector<u64> spf(nmax + 1, 0);
  for (u64 i = 2; i <= nmax; ++i)
    if (!spf[i])
      for (u64 j = i; j <= nmax; j += i)
        if (!spf[j]) spf[j] = i;
  for (u64 n = 2; n <= nmax; ++n) {
    u64 p = spf[n], r = n, k = 0;
    while (r % p == 0) r /= p, ++k;
    if (r > 1) {
      a[n] = a[n / r] * a[r];
      continue;
    }
    auto it = nf.ap.find(p);
    if (it == nf.ap.end()) throw Error(ErrorCode::MissingPrimeCoefficient, "a_" + std::to_string(p) + " not computed");
    if (k == 1) {
      a[n] = it->second.a;
    } else {
      int e = nf.eps(p);
      a[n] = it->second.a * a[n / p] - mpq_class(e * (long)p) * a[n / p / p];
    }
  }
  return a;
}

namespace {

using RPoly = std::vector<FieldElement>;

RPoly rp_mul(const RPoly& a, const RPoly& b, long m) {
  RPoly r(a.size() + b.size() - 1, FieldElement(m, 0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

}  // namespace

bool euler_factor_check(const NewformData& nf, u64 p, std::string* detail) {
  const long m = nf.m;
  auto it = nf.ap.find(p);
  if (it == nf.ap.end()) throw Error(ErrorCode::MissingPrimeCoefficient, "a_" + std::to_string(p) + " not computed");
  const PrimeCoefficient& pc = it->second;
  RPoly lhs{FieldElement(m, 1)};
  for (const LocalFactor& lf : pc.local) {
    int f = lf.P.f();
    RPoly t(2 * f + 1, FieldElement(m, 0));
    t[0] = FieldElement(m, 1);
    t[f] = FieldElement(m, -lf.c);
    if (lf.type == Reduction::Good) t[2 * f] = FieldElement(m, (long)lf.P.norm());
    lhs = rp_mul(lhs, t, m);
  }
  mpq_class ep = mpq_class(nf.eps(p)) * mpq_class((unsigned long)p);
  RPoly f1{FieldElement(m, 1), -pc.a, FieldElement(m, ep)};
  RPoly f2{FieldElement(m, 1), -pc.a.conj(), FieldElement(m, ep)};
  RPoly rhs = rp_mul(f1, f2, m);
  while (lhs.size() < rhs.size()) lhs.push_back(FieldElement(m, 0));
  while (rhs.size() < lhs.size()) rhs.push_back(FieldElement(m, 0));
  bool ok = lhs == rhs;
  if (!ok && detail) {
    std::ostringstream os;
    os << "p=" << p << " lhs:";
    for (auto& c : lhs) os << " " << c.str();
    os << " rhs:";
    for (auto& c : rhs) os << " " << c.str();
    *detail = os.str();
  }
  return ok;
}

std::vector<FieldElement> h_form(const std::vector<FieldElement>& a, const FieldElement& alpha) {
  FieldElement ca = alpha.conj();
  std::vector<FieldElement> out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(FieldElement(alpha.d(), x.x()) + x.y() * ca);
  return out;
}

std::string pretty_expansion(const std::vector<FieldElement>& a, size_t nmax) {
  std::ostringstream os;
  bool first = true;
  for (size_t n = 1; n <= nmax && n < a.size(); ++n) {
    const FieldElement& c = a[n];
    if (c.is_zero()) continue;
    std::string mono = n == 1 ? "q" : "q^" + std::to_string(n);
    std::string s;
    bool neg = false;
    if (c.y() == 0) {
      mpq_class x = c.x();
      neg = x < 0;
      if (neg) x = -x;
      s = x == 1 ? mono : x.get_str() + "*" + mono;
    } else if (c.x() == 0) {
      mpq_class y = c.y();
      neg = y < 0;
      if (neg) y = -y;
      std::string r = "sqrt(" + std::to_string(c.d()) + ")";
      s = (y == 1 ? r : y.get_str() + "*" + r) + "*" + mono;
    } else {
      s = "(" + c.str() + ")*" + mono;
    }
    if (first)
      os << (neg ? "-" : "") << s;
    else
      os << (neg ? " - " : " + ") << s;
    first = false;
  }
  if (first) os << "0";
  os << " + O(q^" << nmax + 1 << ")";
  return os.str();
}

}  // namespace qcurve
