#include <doctest.h>

#include <cmath>
#include <random>

#include "qcurve/ecfq.hpp"
#include "qcurve/error.hpp"
#include "support.hpp"

using namespace qcurve;
using qcurve::test::fixture;
using qcurve::test::newform;

namespace {

bool good(const NewformData& nf, u64 p) { return !mpz_divisible_ui_p(nf.level.get_mpz_t(), p); }

int kronecker(long D, u64 p) { return mpz_kronecker_ui(mpz_class(D).get_mpz_t(), p); }

// digits for the functional equation check; the two huge levels get fewer
unsigned fe_digits(const std::string& name) { return name == "ex3" || name == "ex5" ? 15 : 30; }

}  // namespace

TEST_CASE("Euler factors at good p <= 500") {
  for (auto name : test::kExamples) {
    CAPTURE(std::string(name));
    const auto& nf = newform(name, 1000).nf;
    int checked = 0;
    for (u64 p : primes_up_to(500)) {
      if (!good(nf, p)) continue;
      CAPTURE(p);
      std::string detail;
      CHECK_MESSAGE(euler_factor_check(nf, p, &detail), detail);
      ++checked;
    }
    CHECK(checked > 80);
  }
}

TEST_CASE("inner twist") {
  for (auto name : test::kExamples) {
    CAPTURE(std::string(name));
    const auto& nf = newform(name, 1000).nf;
    for (auto& [p, pc] : nf.ap) {
      if (!good(nf, p)) continue;
      CAPTURE(p);
      CHECK(pc.a.conj() == FieldElement(nf.m, kronecker(nf.disc, p)) * pc.a);
    }
  }
}

TEST_CASE("Deligne bound at both embeddings, p <= 1000") {
  for (auto name : test::kExamples) {
    CAPTURE(std::string(name));
    const auto& nf = newform(name, 1000).nf;
    CoefField F(nf.m);
    for (auto& [p, pc] : nf.ap) {
      if (!good(nf, p)) continue;
      CAPTURE(p);
      for (bool s : {false, true}) {
        auto [re, im] = F.embed(pc.a, s);
        CHECK(std::hypot(re, im) <= 2 * std::sqrt((double)p) + 1e-9);
      }
    }
  }
}

TEST_CASE("BSGS agrees with naive counting over F_p, p <= 200") {
  std::mt19937_64 rng(2024);
  long curves = 0;
  for (u64 p : primes_up_to(200)) {
    Fq F(p);
    if (p <= 3) {
      // every long Weierstrass model
      for (u64 i = 0; i < p * p * p * p * p; ++i) {
        u64 c[5], t = i;
        for (auto& x : c) x = t % p, t /= p;
        ECq C(F, F.from_int(c[0]), F.from_int(c[1]), F.from_int(c[2]), F.from_int(c[3]), F.from_int(c[4]));
        if (C.is_singular()) continue;
        ++curves;
        REQUIRE(C.count_bsgs(rng) == C.count_naive());
      }
      continue;
    }
    for (u64 a = 0; a < p; ++a)
      for (u64 b = 0; b < p; ++b) {
        ECq C(F, F.zero(), F.zero(), F.zero(), F.from_int(a), F.from_int(b));
        if (C.is_singular()) continue;
        ++curves;
        u64 n = C.count_naive();
        CAPTURE(p);
        CAPTURE(a);
        CAPTURE(b);
        REQUIRE(C.count_bsgs(rng) == n);
        REQUIRE((double)std::llabs((long long)n - (long long)(p + 1)) <= 2 * std::sqrt((double)p));
      }
  }
  CHECK(curves > 500000);
  // a sample over F_{p^2}
  for (u64 p : {5ULL, 7ULL, 13ULL, 31ULL, 47ULL}) {
    u64 c0 = 2;
    while (legendre(c0, p) != -1) ++c0;
    Fq F(p, c0, 0);
    for (int i = 0; i < 200; ++i) {
      ECq C(F, F.zero(), F.zero(), F.zero(), F.random(rng), F.random(rng));
      if (C.is_singular()) continue;
      REQUIRE(C.count_bsgs(rng) == C.count_naive());
    }
  }
}

TEST_CASE("reconstruct_rational against brute force, B <= 100") {
  Precision prec(40);
  // grid shifted by an irrational amount so no point sits within 1e-8 of a boundary; the brute force
  // runs in long double, which is plenty at that distance
  Real shift = sqrt(Real(2)) * Real("1e-7");
  long double lshift = std::sqrt(2.0L) * 1e-7L;
  for (long B = 1; B <= 100; ++B) {
    for (int i = 0; i < 10000; ++i) {
      Real x = Real(-2) + Real(4) * i / 10000 + shift;
      long double lx = -2.0L + 4.0L * i / 10000 + lshift;
      // every k/B with |x - k/B| < 1/(2B)
      std::optional<mpq_class> want;
      int hits = 0;
      for (long k = -2 * B - 1; k <= 2 * B + 1; ++k)
        if (std::fabs(lx - (long double)k / B) < 0.5L / B) {
          ++hits;
          want = mpq_class(k, B);
          want->canonicalize();
        }
      REQUIRE(hits <= 1);
      auto got = reconstruct_rational(x, B);
      REQUIRE(got.has_value() == want.has_value());
      if (want) REQUIRE(*got == *want);
    }
    // exact midpoints have no answer (exactly representable when B is a power of two)
    if ((B & (B - 1)) == 0)
      for (long k = -3; k <= 3; ++k) CHECK_FALSE(reconstruct_rational((Real(2 * k + 1)) / (2 * B), B).has_value());
  }
}

TEST_CASE("functional equation residual at three heights") {
  for (auto name : test::kExamples) {
    CAPTURE(std::string(name));
    const auto& P = fixture(name);
    unsigned digits = fe_digits(name);
    Precision prec(digits + 20);
    const auto& r = newform(name, truncation(P.global.level, digits));
    for (bool sigma : {false, true}) {
      EmbeddedForm f = embed_form(r.nf, r.coeffs, sigma);
      Cx e = eta(f, 4);
      CHECK(abs(e.abs() - 1) < Real("1e-6"));
      for (const char* t : {"1.1", "1.25", "1.4"}) {
        Real res = fe_residual(f, e, Real(t));
        // eta is solved at heights 1 and 1.3, so it carries the tail at 1.3 as well
        Real tail = tail_bound(f, max(Real(t), Real("1.3"))) + tail_bound(f, Real(1));
        CAPTURE(std::string(t));
        CHECK(res <= 10 * tail);
      }
    }
  }
}

TEST_CASE("Omega_E invariant under 2-rescaling") {
  Precision prec(50);
  for (auto name : test::kExamples) {
    CAPTURE(std::string(name));
    const auto& P = fixture(name);
    Real w0 = omega_E(P.E, P.global, 30).value;
    for (mpq_class u : {mpq_class(1, 2), mpq_class(2)}) {
      Urst w = Urst::identity(P.K.d());
      w.u = FieldElement(P.K.d(), u);
      Curve E2 = P.E.transform(w);
      Real w1 = omega_E(E2, global_data(E2), 30).value;
      CHECK(abs(w1 - w0) / w0 < Real("1e-25"));
    }
  }
}

TEST_CASE("norm of alpha is m") {
  for (auto name : test::kExamples) {
    CAPTURE(std::string(name));
    const auto& P = fixture(name);
    CHECK(P.degree.alpha.norm() == P.degree.m);
    CHECK(newform(name, 1000).nf.m == P.degree.m);
  }
}

TEST_CASE("convention flip conjugates every coefficient") {
  for (auto name : test::kExamples) {
    CAPTURE(std::string(name));
    const auto& a = newform(name, 1000).coeffs;
    const auto& b = newform(name, 1000, -1).coeffs;
    REQUIRE(a.size() == b.size());
    for (size_t n = 1; n < a.size(); ++n) REQUIRE(a[n] == b[n].conj());
  }
}
