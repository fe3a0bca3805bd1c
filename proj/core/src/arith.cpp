#include "qcurve/arith.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <random>

#include "qcurve/error.hpp"

namespace qcurve {

const char* code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonSquarefree: return "NonSquarefree";
    case ErrorCode::DegenerateD: return "DegenerateD";
    case ErrorCode::NotPIntegral: return "NotPIntegral";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::SingularModel: return "SingularModel";
    case ErrorCode::UnsupportedResidueChar: return "UnsupportedResidueChar";
    case ErrorCode::NotGaloisStableConductor: return "NotGaloisStableConductor";
    case ErrorCode::BadReduction: return "BadReduction";
    case ErrorCode::NoSuitablePoint: return "NoSuitablePoint";
    case ErrorCode::NotAnIsogeny: return "NotAnIsogeny";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::NonConstantRatio: return "NonConstantRatio";
    case ErrorCode::SquareDegreeCase: return "SquareDegreeCase";
    case ErrorCode::NonIntegralMap: return "NonIntegralMap";
    case ErrorCode::UnsupportedEll: return "UnsupportedEll";
    case ErrorCode::GraphTooLarge: return "GraphTooLarge";
    case ErrorCode::TraceMismatch: return "TraceMismatch";
    case ErrorCode::NotASquareTimesM: return "NotASquareTimesM";
    case ErrorCode::NotASquareInF: return "NotASquareInF";
    case ErrorCode::MissingPrimeCoefficient: return "MissingPrimeCoefficient";
    case ErrorCode::NonIntegralTwelfth: return "NonIntegralTwelfth";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::EtaUnavailable: return "EtaUnavailable";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::Internal: return "Internal";
  }
  return "?";
}

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 m) {
  __int128 t = 0, nt = 1, r = m, nr = a % m;
  while (nr) {
    __int128 q = r / nr;
    __int128 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw Error(ErrorCode::ZeroElement, "not invertible");
  if (t < 0) t += m;
  return (u64)t;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while (!(d & 1)) d >>= 1, ++s;
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

std::vector<u64> primes_up_to(u64 n) {
  std::vector<u64> out;
  if (n < 2) return out;
  std::vector<bool> sieve(n + 1, true);
  for (u64 i = 2; i <= n; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= n; j += i) sieve[j] = false;
  }
  return out;
}

int legendre(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return 1;
  return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

u64 sqrtmod(u64 a, u64 p) {
  a %= p;
  if (a == 0 || p == 2) return a;
  u64 q = p - 1;
  int s = 0;
  while (!(q & 1)) q >>= 1, ++s;
  u64 z = 2;
  while (legendre(z, p) != -1) ++z;
  u64 m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 i = 0, tt = t;
    while (tt != 1) tt = mulmod(tt, tt, p), ++i;
    u64 b = c;
    for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return std::min(r, p - r);
}

u64 mpz_mod_u64(const mpz_class& a, u64 m) {
  mpz_class r;
  mpz_class mm;
  mpz_import(mm.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &m);
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), mm.get_mpz_t());
  u64 out = 0;
  mpz_export(&out, nullptr, 1, sizeof(u64), 0, 0, r.get_mpz_t());
  return out;
}

int valuation(const mpz_class& n, u64 p) {
  if (n == 0) return 1 << 28;
  mpz_class pp;
  mpz_import(pp.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &p);
  mpz_class t = n;
  return (int)mpz_remove(t.get_mpz_t(), t.get_mpz_t(), pp.get_mpz_t());
}

bool is_square(const mpz_class& n, mpz_class* root) {
  if (n < 0) return false;
  if (!mpz_perfect_square_p(n.get_mpz_t())) return false;
  if (root) mpz_sqrt(root->get_mpz_t(), n.get_mpz_t());
  return true;
}

mpz_class isqrt(const mpz_class& n) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_squarefree(long n) {
  if (n == 0) return false;
  for (auto& [p, e] : factor(mpz_class(n))) {
    if (e > 1) return false;
  }
  return true;
}

namespace {

mpz_class rho(const mpz_class& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  std::mt19937_64 rng(12345);
  for (;;) {
    mpz_class c = rng() % 1000 + 1, x = rng() % 1000 + 2, y = x, g = 1, q = 1, ys;
    unsigned long r = 1;
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(128ul, r - k); ++i) {
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
        }
        g = gcd(q, n);
        k += 128;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = (ys * ys + c) % n;
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_rec(const mpz_class& n, std::map<mpz_class, int>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
    out[n]++;
    return;
  }
  mpz_class d = rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<mpz_class, int>> factor(const mpz_class& n0) {
  mpz_class n = abs(n0);
  std::map<mpz_class, int> out;
  for (unsigned long p = 2; p < 10000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      out[mpz_class(p)]++;
      n /= p;
    }
  }
  factor_rec(n, out);
  return {out.begin(), out.end()};
}

std::vector<u64> prime_divisors(const mpz_class& n) {
  std::vector<u64> out;
  for (auto& [p, e] : factor(n)) {
    if (!p.fits_ulong_p()) throw Error(ErrorCode::Unsupported, "prime divisor too large");
    out.push_back(p.get_ui());
  }
  return out;
}

}  // namespace qcurve
