#include "qcurve/lseries.hpp"

#include <cmath>
#include <thread>

#include "qcurve/error.hpp"

namespace qcurve {

namespace {

Real euler_gamma() {
  Real r;
  mpfr_const_euler(r.backend().data(), MPFR_RNDN);
  return r;
}

Real sqrt_level(const mpz_class& N) { return sqrt(to_real(N)); }

constexpr size_t kChunk = 512;

// sum over n in [1, M] of term(n), in fixed chunks merged in order so the result does not
// depend on the number of workers
template <class F>
std::vector<Cx> chunked_sum(size_t M, int nsums, int workers, F term) {
  size_t nchunks = (M + kChunk - 1) / kChunk;
  std::vector<std::vector<Cx>> part(nchunks, std::vector<Cx>(nsums));
  auto run = [&](size_t c) {
    size_t lo = c * kChunk + 1, hi = std::min(M, (c + 1) * kChunk);
    term(lo, hi, part[c]);
  };
  if (workers <= 1 || nchunks <= 1) {
    for (size_t c = 0; c < nchunks; ++c) run(c);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (size_t c; (c = next++) < nchunks;) run(c);
      });
    for (auto& t : pool) t.join();
  }
  std::vector<Cx> out(nsums);
  for (auto& p : part)
    for (int i = 0; i < nsums; ++i) out[i] += p[i];
  return out;
}

// A(t) = sum a_n/n e^(-c n/t), B(t) = sum b_n/n e^(-c n t)
void split_sums(const EmbeddedForm& f, const Real& t, int workers, Cx& A, Cx& B) {
  size_t M = f.a.size() - 1;
  Real c = 2 * pi() / sqrt_level(f.level);
  auto s = chunked_sum(M, 2, workers, [&](size_t lo, size_t hi, std::vector<Cx>& acc) {
    Real ra = exp(-c / t), rb = exp(-c * t);
    Real ea = exp(-c * lo / t), eb = exp(-c * lo * t);
    for (size_t n = lo; n <= hi; ++n) {
      acc[0] += (ea / n) * f.a[n];
      acc[1] += (eb / n) * f.b[n];
      ea *= ra;
      eb *= rb;
    }
  });
  A = s[0];
  B = s[1];
}

}  // namespace

EmbeddedForm embed_form(const NewformData& nf, const std::vector<FieldElement>& coeffs, bool sigma) {
  EmbeddedForm f;
  f.level = nf.level;
  f.a.resize(coeffs.size());
  f.b.resize(coeffs.size());
  for (size_t n = 1; n < coeffs.size(); ++n) {
    f.a[n] = embed(coeffs[n], sigma);
    f.b[n] = f.a[n].conj();
  }
  return f;
}

size_t truncation(const mpz_class& level, unsigned digits) {
  double sn = std::sqrt(level.get_d());
  return (size_t)std::ceil(sn / (2 * M_PI) * (digits * std::log(10.0) + std::log(sn) + 10));
}

Real expint_e1(const Real& x) {
  if (x <= 0) throw Error(ErrorCode::InvalidInput, "E1 needs x > 0");
  Real tol = pow(Real(10), -(int)Real::default_precision());
  if (x <= 1) {
    Real s = 0, term = 1;
    for (long k = 1; k < 100000; ++k) {
      term *= -x / k;
      Real t = term / k;
      s += t;
      if (abs(t) < tol) break;
    }
    return -euler_gamma() - log(x) - s;
  }
  // modified Lentz on e^x E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- ...)))
  Real tiny = pow(Real(10), -2 * (int)Real::default_precision());
  Real b = x + 1, f = 1 / b, C = 1 / tiny, D = 1 / b;
  f = D;
  for (long k = 1; k < 100000; ++k) {
    Real a = -Real(k) * k;
    b += 2;
    D = b + a * D;
    if (D == 0) D = tiny;
    C = b + a / C;
    if (C == 0) C = tiny;
    D = 1 / D;
    Real delta = C * D;
    f *= delta;
    if (abs(delta - 1) < tol) break;
  }
  return f * exp(-x);
}

Real tail_bound(const EmbeddedForm& f, const Real& t) {
  size_t M = f.a.size() - 1;
  Real c = 2 * pi() / sqrt_level(f.level);
  auto part = [&](const Real& r) { return 2 * exp(-r * (M + 1)) / (1 - exp(-r)); };
  return part(c / t) + part(c * t);
}

Cx eta(const EmbeddedForm& f, int workers) {
  Real sn = sqrt_level(f.level);
  static const char* heights[][2] = {{"1.0", "1.3"}, {"1.1", "1.45"}, {"0.9", "1.2"}};
  for (auto& h : heights) {
    Real t1(h[0]), t2(h[1]);
    Cx A1, B1, A2, B2;
    split_sums(f, t1, workers, A1, B1);
    split_sums(f, t2, workers, A2, B2);
    Cx den = B2 - B1;
    Real err = tail_bound(f, t1) + tail_bound(f, t2);
    if (den.abs() < 1e6 * err || den.abs() < pow(Real(10), -(int)Real::default_precision() / 2)) continue;
    Cx e = (A1 - A2) / den;
    if (abs(e.abs() - 1) > Real("1e-6")) throw Error(ErrorCode::EtaUnavailable, "|eta| = " + fmt(e.abs()));
    return e;
  }
  throw Error(ErrorCode::IllConditioned, "eta system singular at every test height");
}

LValue l_value(const EmbeddedForm& f, const Cx& et, int k, int workers) {
  LValue out;
  out.eta = et;
  out.terms = f.a.size() - 1;
  Cx A, B;
  split_sums(f, Real(1), workers, A, B);
  Cx L1 = A + et * B;
  if (k == 0) {
    out.value = L1;
    out.error = tail_bound(f, Real(1));
    return out;
  }
  // L'(1) = sum a_n/n (E1_n - ln N/2 e_n) - eta sum b_n/n (E1_n + ln N/2 e_n) + L(1)(ln 2pi + gamma)
  size_t M = out.terms;
  Real c = 2 * pi() / sqrt_level(f.level);
  Real hl = log(to_real(f.level)) / 2;
  auto s = chunked_sum(M, 2, workers, [&](size_t lo, size_t hi, std::vector<Cx>& acc) {
    Real r = exp(-c), e = exp(-c * lo);
    for (size_t n = lo; n <= hi; ++n) {
      Real E1 = expint_e1(c * n);
      acc[0] += ((E1 - hl * e) / n) * f.a[n];
      acc[1] += ((E1 + hl * e) / n) * f.b[n];
      e *= r;
    }
  });
  out.value = s[0] - et * s[1] + (log(2 * pi()) + euler_gamma()) * L1;
  out.error = tail_bound(f, Real(1)) * (2 + hl + 1 / c);
  return out;
}

Real fe_residual(const EmbeddedForm& f, const Cx& et, const Real& t) {
  Cx A0, B0, A, B;
  split_sums(f, Real(1), 1, A0, B0);
  split_sums(f, t, 1, A, B);
  return ((A0 + et * B0) - (A + et * B)).abs();
}

LBoundReport bound(const QuadraticField& K, const FieldElement& alpha, long m, u64 tors, u64 s_lcm, u64 s_max,
                   const OmegaE& omega) {
  if (m > 0) {
    long r = (long)std::llround(std::sqrt((double)m));
    for (long c = std::max(0L, r - 1); c <= r + 1; ++c)
      if (c * c == m)
        throw Error(ErrorCode::SquareDegreeCase,
                    "m = " + std::to_string(m) + " is a square; twist by the character cutting out K(sqrt m) and treat the twist over Q");
  }
  LBoundReport b;
  b.q_alpha = K.disc() == K.d() ? alpha.y() : mpq_class(alpha.y() / 2);
  b.q_alpha.canonicalize();
  b.tors = tors;
  b.t = ((m % 4) + 4) % 4 == 1 ? 4 : 1;
  b.nd_alpha = denominator_norm(alpha.conj());
  b.s_lcm = s_lcm;
  b.s_max = s_max;
  mpq_class q2 = 2 * b.q_alpha;
  q2.canonicalize();
  mpz_class base = abs(q2.get_num()) * mpz_class((unsigned long)tors) * mpz_class((unsigned long)tors) * b.t * b.nd_alpha;
  b.Q_reconstruct = base * mpz_class((unsigned long)s_lcm) * mpz_class((unsigned long)s_lcm);
  b.Q_vanish = base * mpz_class((unsigned long)s_max) * mpz_class((unsigned long)s_max);
  b.threshold = omega.value / (sqrt(Real(std::abs(K.disc()))) * to_real(b.Q_vanish));
  return b;
}

std::optional<mpq_class> reconstruct_rational(const Real& x, const mpz_class& B) {
  Real y = x * to_real(B);
  Real k = round(y);
  if (abs(y - k) >= Real("0.5")) return std::nullopt;
  mpz_class kz;
  mpfr_get_z(kz.get_mpz_t(), k.backend().data(), MPFR_RNDN);
  mpq_class r(kz, B);
  r.canonicalize();
  return r;
}

const char* verdict_name(VerdictKind v) {
  switch (v) {
    case VerdictKind::Vanishes:
      return "Vanishes";
    case VerdictKind::Ratio:
      return "Ratio";
    default:
      return "Inconclusive";
  }
}

Verdict decide(const Cx& LE, const Real& err, const LBoundReport& b, const QuadraticField& K, const OmegaE& omega) {
  Verdict v;
  Real sd = sqrt(Real(std::abs(K.disc())));
  v.x = LE.re * sd / omega.value;
  if (LE.abs() + err < b.threshold) {
    v.kind = VerdictKind::Vanishes;
    v.reason = "|L(E,1)| below threshold";
    return v;
  }
  Real ex = err * sd / omega.value;
  if (ex * 2 * to_real(b.Q_reconstruct) >= 1) {
    v.reason = "error " + fmt(ex, 6) + " too large for denominator " + b.Q_reconstruct.get_str();
    return v;
  }
  auto r = reconstruct_rational(v.x, b.Q_reconstruct);
  if (!r) {
    v.reason = "no rational with denominator dividing " + b.Q_reconstruct.get_str();
    return v;
  }
  v.kind = VerdictKind::Ratio;
  v.ratio = *r;
  return v;
}

}  // namespace qcurve
