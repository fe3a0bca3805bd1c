#include <doctest.h>

#include <complex>
#include <json.hpp>
#include <fstream>

#include "qcurve/error.hpp"
#include "support.hpp"

using namespace qcurve;
using qcurve::test::fixture;
using qcurve::test::newform;

namespace {

nlohmann::json expected(const std::string& name) {
  std::ifstream in(test::fixture_path(name));
  return nlohmann::json::parse(in)["expected"];
}

int kronecker(long D, u64 p) { return mpz_kronecker_ui(mpz_class(D).get_mpz_t(), p); }

}  // namespace

TEST_CASE("level and character") {
  for (auto name : test::kExamples) {
    CAPTURE(std::string(name));
    const auto& P = fixture(name);
    const auto& nf = newform(name, 20).nf;
    auto e = expected(name);
    CHECK(nf.level.get_str() == e["level"].get<std::string>());
    CHECK(nf.m == e["m"].get<long>());
    CHECK(nf.character.trivial == (nf.m > 0));
    CHECK((nf.character.trivial ? "trivial" : "quadratic") == e["character"].get<std::string>());
    for (u64 p : primes_up_to(200)) {
      if (mpz_divisible_ui_p(nf.level.get_mpz_t(), p)) {
        CHECK(nf.eps(p) == 0);
        continue;
      }
      CHECK(nf.eps(p) == (nf.character.trivial ? 1 : kronecker(P.K.disc(), p)));
    }
  }
}

TEST_CASE("expansions through q^20") {
  for (auto name : {"ex1", "ex2", "ex3", "ex4", "ex5"}) {
    CAPTURE(std::string(name));
    CHECK(test::expansion(name, 20) == expected(name)["expansion"].get<std::string>());
  }
  // Ex.6: the displayed f is the conjugate of the form picked by the default convention
  auto shown = expected("ex6")["expansion"].get<std::string>();
  CHECK(test::expansion("ex6", 20, -1) == shown);
  const auto& a = newform("ex6", 20).coeffs;
  const auto& b = newform("ex6", 20, -1).coeffs;
  for (size_t n = 1; n <= 20; ++n) CHECK(a[n] == b[n].conj());
  CHECK(a[5] == FieldElement(-1, 0, -1));
}

TEST_CASE("listed prime coefficients") {
  const auto& nf = newform("ex1", 20).nf;
  CHECK(nf.ap.at(11).a == FieldElement(-2, -3, 1));
  CHECK(nf.ap.at(7).a == FieldElement(-2, 1));
  CHECK(nf.ap.at(2).a == FieldElement(-2, 0, 1));
  CHECK(nf.ap.at(3).how == "split");
  const auto& n6 = newform("ex6", 20, -1).nf;
  CHECK(n6.ap.at(5).a == FieldElement(-1, 0, 1));
  CHECK(n6.ap.at(5).how == "bad-inert");
  CHECK(n6.ap.at(17).a == FieldElement(-1, -4, -1));
}

TEST_CASE("expand: multiplicativity and prime powers") {
  for (auto name : test::kExamples) {
    CAPTURE(std::string(name));
    const auto& r = newform(name, 400);
    const auto& a = r.coeffs;
    const auto& nf = r.nf;
    long m = nf.m;
    REQUIRE(a.size() == 401);
    CHECK(a[1] == FieldElement(m, 1));
    for (size_t x = 2; x <= 20; ++x)
      for (size_t y = 2; x * y <= 400; ++y)
        if (std::gcd(x, y) == 1) CHECK(a[x * y] == a[x] * a[y]);
    for (u64 p : primes_up_to(20)) {
      FieldElement pp = a[p] * a[p] - FieldElement(m, nf.eps(p) * (long)p);
      CHECK(a[p * p] == pp);
    }
  }
  try {
    expand(newform("ex1", 20).nf, 50);
    FAIL("expected MissingPrimeCoefficient");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingPrimeCoefficient);
  }
}

TEST_CASE("Euler factors and inner twist") {
  for (auto name : test::kExamples) {
    CAPTURE(std::string(name));
    const auto& nf = newform(name, 100).nf;
    for (auto& [p, pc] : nf.ap) {
      CAPTURE(p);
      std::string detail;
      if (mpz_divisible_ui_p(nf.level.get_mpz_t(), p)) continue;
      CHECK(euler_factor_check(nf, p, &detail));
      // inner twist by the character of K
      CHECK(pc.a.conj() == FieldElement(nf.m, kronecker(nf.disc, p)) * pc.a);
      CHECK_FALSE(pc.ambiguous);
    }
  }
  // perturbing one coefficient breaks the check
  NewformData bad = newform("ex1", 100).nf;
  bad.ap.at(13).a = bad.ap.at(13).a + FieldElement(-2, 1);
  CHECK_FALSE(euler_factor_check(bad, 13));
  // the check is blind to conjugating a single a_p; only the sign tests see that
  bad = newform("ex1", 100).nf;
  bad.ap.at(5).a = bad.ap.at(5).a.conj();
  CHECK(euler_factor_check(bad, 5));
}

TEST_CASE("h_form against kappa = sqrt(disc)/beta") {
  for (auto name : test::kExamples) {
    CAPTURE(std::string(name));
    const auto& P = fixture(name);
    const auto& a = newform(name, 60).coeffs;
    const FieldElement& al = P.degree.alpha;
    long m = P.degree.m, D = P.K.disc();
    // alpha = p + q sqrt(disc), beta = (p + sqrt m)/q, kappa = sqrt(disc)/beta
    double p = al.x().get_d(), q = (D == P.K.d() ? al.y() : mpq_class(al.y() / 2)).get_d();
    using C = std::complex<double>;
    C sm = std::sqrt(C(m)), sD = std::sqrt(C(D));
    C beta = (p + sm) / q, kappa = sD / beta;
    auto h = h_form(a, al);
    // K embedded with sqrt(d) = sqrt(disc) / (disc == d ? 1 : 2)
    C sd = D == P.K.d() ? sD : sD / 2.0;
    for (size_t n = 1; n < a.size(); ++n) {
      C an = a[n].x().get_d() + a[n].y().get_d() * sm, sn = a[n].x().get_d() - a[n].y().get_d() * sm;
      C want = (an + kappa * sn) / (1.0 + kappa);
      C got = h[n].x().get_d() + h[n].y().get_d() * sd;
      CHECK(std::abs(want - got) < 1e-9 * (1 + std::abs(want)));
    }
  }
}

TEST_CASE("coefficient field") {
  CHECK_THROWS_AS(CoefField(4), Error);
  CHECK_THROWS_AS(CoefField(1), Error);
  CoefField F(-2);
  CHECK(F.str(F(-3, 1)) == "-3+sqrt(-2)");
  auto [re, im] = F.embed(F(1, 1));
  CHECK(re == doctest::Approx(1));
  CHECK(im == doctest::Approx(std::sqrt(2.0)));
}
