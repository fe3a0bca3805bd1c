#include <doctest.h>

#include <cmath>

#include "qcurve/error.hpp"
#include "support.hpp"

using namespace qcurve;
using qcurve::test::fixture;

namespace {

// E1(x) = -Ei(-x)
Real e1_oracle(const Real& x) {
  Real r;
  Real mx = -x;
  mpfr_eint(r.backend().data(), mx.backend().data(), MPFR_RNDN);
  return -r;
}

Real rel(const Real& a, const Real& b) { return abs(a - b) / abs(b); }

const app::CertifyResult& certify(const std::string& name) {
  static std::map<std::string, app::CertifyResult> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    app::Options o;
    o.workers = 4;
    it = cache.emplace(name, app::run_certify(fixture(name), o)).first;
  }
  return it->second;
}

Urst scaling(long d, const mpq_class& u) {
  Urst w = Urst::identity(d);
  w.u = FieldElement(d, u);
  return w;
}

}  // namespace

TEST_CASE("E1") {
  Precision prec(50);
  for (const char* s : {"1e-6", "0.01", "0.3", "0.999", "1", "1.001", "2.5", "7", "30", "120"}) {
    Real x(s);
    CAPTURE(std::string(s));
    CHECK(rel(expint_e1(x), e1_oracle(x)) < Real("1e-45"));
  }
  CHECK_THROWS_AS(expint_e1(Real(0)), Error);
}

TEST_CASE("reconstruct_rational") {
  Precision prec(40);
  CHECK(*reconstruct_rational(Real(1) / 3 + Real("1e-12"), 6) == mpq_class(1, 3));
  CHECK(*reconstruct_rational(Real(1) - Real("1e-12"), 244996258) == 1);
  CHECK(*reconstruct_rational(Real("-0.25"), 8) == mpq_class(-1, 4));
  CHECK(*reconstruct_rational(Real(0), 17) == 0);
  // exactly halfway between 1/10 and 2/10
  CHECK_FALSE(reconstruct_rational(Real(3) / 20, 10).has_value());
  CHECK(*reconstruct_rational(Real(3) / 20 - Real("1e-30"), 10) == mpq_class(1, 10));
}

TEST_CASE("truncation") {
  // ceil(sqrt N/(2 pi) (D ln 10 + ln sqrt N + 10))
  for (long N : {170L, 616L, 7168L, 11520L}) {
    for (unsigned D : {15u, 30u, 60u}) {
      double sn = std::sqrt((double)N);
      size_t want = (size_t)std::ceil(sn / (2 * M_PI) * (D * std::log(10.0) + std::log(sn) + 10));
      CHECK(truncation(N, D) == want);
    }
  }
  CHECK(truncation(616, 30) == 326);
}

TEST_CASE("Omega_E") {
  Precision prec(50);
  struct {
    const char* name;
    const char* omega;
    mpq_class nd;
  } cases[] = {{"ex1", "5.45882600014972", mpq_class(1, 36)},
               {"ex6", "11.1808314690274", 1},
               {"ex2", "0.663037499513841", mpq_class(1, 63)},
               {"ex4", "2.60444072643674", 0}};
  for (auto& c : cases) {
    CAPTURE(std::string(c.name));
    const auto& P = fixture(c.name);
    OmegaE w = omega_E(P.E, P.global, 30);
    CHECK(rel(w.value, Real(c.omega)) < Real("1e-13"));
    if (c.nd != 0) CHECK(w.delta_norm == c.nd);
  }
}

TEST_CASE("Omega_E is independent of the model") {
  Precision prec(50);
  for (auto name : {"ex1", "ex6", "ex2"}) {
    CAPTURE(std::string(name));
    const auto& P = fixture(name);
    Real w0 = omega_E(P.E, P.global, 30).value;
    for (mpq_class u : {mpq_class(1, 2), mpq_class(1, 4)}) {
      Curve E2 = P.E.transform(scaling(P.K.d(), u));
      Real w = omega_E(E2, global_data(E2), 30).value;
      CHECK(rel(w, w0) < Real("1e-25"));
    }
  }
}

TEST_CASE("bound") {
  Precision prec(40);
  const auto& P = fixture("ex1");
  OmegaE w = omega_E(P.E, P.global, 30);
  LBoundReport b = bound(P.K, P.degree.alpha, P.degree.m, 6, 3, 3, w);
  CHECK(abs(b.q_alpha) == mpq_class(3, 2));
  CHECK(b.t == 1);
  CHECK(b.nd_alpha == 1);
  CHECK(b.Q_reconstruct == 972);
  CHECK(rel(b.threshold, Real("5.98675727185567e-4")) < Real("1e-10"));
  CHECK_THROWS_AS(bound(P.K, P.degree.alpha, 4, 6, 3, 3, w), Error);
  try {
    bound(P.K, P.degree.alpha, 9, 6, 3, 3, w);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SquareDegreeCase);
  }
}

TEST_CASE("decide") {
  Precision prec(40);
  auto K = QuadraticField::make(17);
  OmegaE w{Real("11.1808314690274"), 1};
  LBoundReport b;
  b.Q_reconstruct = 244996258;
  b.Q_vanish = 244996258;
  b.threshold = w.value / (sqrt(Real(17)) * to_real(b.Q_vanish));
  Real one = w.value / sqrt(Real(17));
  Verdict v = decide(Cx(one), Real("1e-20"), b, K, w);
  CHECK(v.kind == VerdictKind::Ratio);
  CHECK(v.ratio == 1);
  v = decide(Cx(one * 3 / 2), Real("1e-20"), b, K, w);
  CHECK(v.kind == VerdictKind::Ratio);
  CHECK(v.ratio == mpq_class(3, 2));
  CHECK(decide(Cx(Real("1e-25")), Real("1e-25"), b, K, w).kind == VerdictKind::Vanishes);
  CHECK(decide(Cx(one), Real("1e-5"), b, K, w).kind == VerdictKind::Inconclusive);
  // just above the threshold once the error is counted
  CHECK(decide(Cx(b.threshold / 2), b.threshold, b, K, w).kind != VerdictKind::Vanishes);
}

TEST_CASE("Ex.6 certificate") {
  const auto& r = certify("ex6");
  Precision prec(50);
  CHECK(r.bound.Q_reconstruct == 244996258);
  CHECK(r.verdict.kind == VerdictKind::Ratio);
  CHECK(r.verdict.ratio == 1);
  // eta = sqrt 17/(1 + 4i)
  Cx want = Cx(sqrt(Real(17))) / Cx(Real(1), Real(4));
  CHECK((r.f.eta - want).abs() < Real("1e-6"));
  CHECK((r.sf.eta - want.conj()).abs() < Real("1e-6"));
  // L(sigma f, 1) is the complex conjugate of L(f, 1), so L(E, 1) is real and positive
  CHECK((r.f.L.value - r.sf.L.value.conj()).abs() < Real("1e-25"));
  CHECK(abs(r.LE.im) < Real("1e-25"));
  CHECK(r.LE.re > 0);
  for (auto* f : {&r.f, &r.sf}) CHECK(f->fe_residual <= 10 * f->fe_tail);
}

TEST_CASE("Ex.1 certificate") {
  const auto& r = certify("ex1");
  Precision prec(50);
  CHECK(r.verdict.kind == VerdictKind::Vanishes);
  Cx want = Cx(sqrt(Real(88))) / Cx(Real(4), Real(6) * sqrt(Real(2)));
  CHECK((r.f.eta - want).abs() < Real("1e-6"));
  CHECK(r.f.L.value.abs() < Real("1e-25"));
  CHECK(r.f.Lprime.value.abs() > Real("0.01"));
  CHECK(r.sf.Lprime.value.abs() > Real("0.01"));
  for (auto* f : {&r.f, &r.sf}) CHECK(f->fe_residual <= 10 * f->fe_tail);
}

TEST_CASE("sums do not depend on the worker count") {
  Precision prec(80);
  size_t M = truncation(616, 60);
  REQUIRE(M > 512);  // more than one chunk
  const auto& nf = test::newform("ex1", M);
  EmbeddedForm f = embed_form(nf.nf, nf.coeffs, false);
  Cx e1 = eta(f, 1), e4 = eta(f, 4);
  CHECK(e1.re == e4.re);
  CHECK(e1.im == e4.im);
  LValue a = l_value(f, e1, 1, 1), b = l_value(f, e1, 1, 3);
  CHECK(a.value.re == b.value.re);
  CHECK(a.value.im == b.value.im);
}
