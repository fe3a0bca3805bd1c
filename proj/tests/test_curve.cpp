#include <doctest.h>

#include <random>

#include "qcurve/ecfq.hpp"
#include "qcurve/error.hpp"
#include "qcurve/torsion.hpp"
#include "support.hpp"

using namespace qcurve;
using qcurve::test::fixture;

namespace {

Curve rational_curve(long d, std::array<long, 5> a) {
  return Curve(FieldElement(d, a[0]), FieldElement(d, a[1]), FieldElement(d, a[2]), FieldElement(d, a[3]),
               FieldElement(d, a[4]));
}

// points on the reduction at a degree one prime, by enumeration over F_p
u64 brute_count(const Curve& E, const PrimeIdeal& P) {
  Fq F = residue_field(P);
  REQUIRE(F.deg() == 1);
  u64 p = P.p;
  std::array<u64, 5> c;
  auto a = E.a();
  for (int i = 0; i < 5; ++i) c[i] = reduce(a[i], P, F).a;
  u64 n = 1;
  for (u64 x = 0; x < p; ++x)
    for (u64 y = 0; y < p; ++y) {
      u64 lhs = (mulmod(y, y, p) + mulmod(c[0], mulmod(x, y, p), p) + mulmod(c[2], y, p)) % p;
      u64 x2 = mulmod(x, x, p);
      u64 rhs = (mulmod(x2, x, p) + mulmod(c[1], x2, p) + mulmod(c[3], x, p) + c[4]) % p;
      if (lhs == rhs) ++n;
    }
  return n;
}

}  // namespace

TEST_CASE("invariants") {
  Curve E = rational_curve(22, {0, 0, 0, 1, 0});
  CHECK(E.j() == FieldElement(22, 1728));
  CHECK(rational_curve(-1, {0, 0, 0, 0, 1}).j().is_zero());
  CHECK_THROWS_AS(rational_curve(22, {0, 0, 0, 0, 0}), Error);
  try {
    rational_curve(22, {0, 0, 0, 0, 0});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularModel);
  }
  for (auto name : test::kExamples) {
    const Curve& C = fixture(name).E;
    CAPTURE(std::string(name));
    CHECK(C.c4().pow(3) - C.c6().pow(2) == 1728 * C.disc());
    CHECK(C.j() * C.disc() == C.c4().pow(3));
    CHECK(C.conj().j() == C.j().conj());
  }
}

TEST_CASE("conductor and level") {
  struct {
    const char* name;
    long n;
    long level;
  } cases[] = {{"ex1", 7, 616}, {"ex2", 480, 11520}, {"ex4", 896, 7168}, {"ex6", 10, 170}, {"ex5", 755153, 82311677},
               {"ex3", 1077120, 146488320}};
  for (auto& c : cases) {
    CAPTURE(std::string(c.name));
    const auto& P = fixture(c.name);
    CHECK(P.global.n == c.n);
    CHECK(P.global.level == c.level);
    CHECK(newform_level(P.global, P.K) == c.level);
  }
}

TEST_CASE("Tate's algorithm on Ex.6") {
  const auto& G = fixture("ex6").global;
  std::vector<int> tam;
  for (auto& L : G.local) {
    std::string ps = L.P.str();
    CAPTURE(ps);
    CHECK((L.v_disc_model - L.v_disc_min) % 12 == 0);
    if (L.P.p == 2) {
      CHECK(L.type == Reduction::SplitMultiplicative);
      CHECK(L.kodaira == "I13");
      CHECK(L.v_disc_min == 13);
    }
    if (L.P.p == 5) {
      CHECK(L.type == Reduction::NonSplitMultiplicative);
      CHECK(L.P.kind == Splitting::Inert);
    }
    if (L.type != Reduction::Good) tam.push_back(L.tamagawa);
  }
  CHECK(tam == std::vector<int>{13, 13, 1});
}

TEST_CASE("local data invariants") {
  for (auto name : test::kExamples) {
    CAPTURE(std::string(name));
    for (auto& L : fixture(name).global.local) {
      std::string ps = L.P.str();
      CAPTURE(ps);
      CHECK((L.v_disc_model - L.v_disc_min) % 12 == 0);
      switch (L.type) {
        case Reduction::Good:
          CHECK(L.f == 0);
          CHECK(L.v_disc_min == 0);
          break;
        case Reduction::SplitMultiplicative:
          CHECK(L.f == 1);
          CHECK(L.tamagawa == L.v_disc_min);
          break;
        case Reduction::NonSplitMultiplicative:
          CHECK(L.f == 1);
          CHECK(L.tamagawa == (L.v_disc_min % 2 ? 1 : 2));
          break;
        case Reduction::Additive:
          CHECK(L.f >= 2);
          CHECK(L.tamagawa >= 1);
          CHECK(L.tamagawa <= 4);
          break;
      }
    }
  }
}

TEST_CASE("point counts") {
  Fq F5(5);
  ECq C(F5, F5.zero(), F5.zero(), F5.zero(), F5.one(), F5.one());
  CHECK(C.count_naive() == 9);
  std::mt19937_64 rng(1);
  CHECK(C.count_bsgs(rng) == 9);

  // Ex.6 at the primes over 13 and 19: reductions against enumeration
  const auto& P = fixture("ex6");
  for (u64 p : {13ULL, 19ULL, 43ULL, 47ULL})
    for (auto& Q : primes_above(P.K, p)) {
      std::string qs = Q.str();
      CAPTURE(qs);
      CHECK(ECq::reduce(P.E, Q).count_naive() == brute_count(P.E, Q));
    }
}

TEST_CASE("torsion matches the stated orders") {
  for (auto name : test::kExamples) {
    CAPTURE(std::string(name));
    const auto& P = fixture(name);
    REQUIRE(P.spec.overrides.torsion.has_value());
    u64 t = torsion_order(P.E);
    CHECK(t == *P.spec.overrides.torsion);
    CHECK(torsion_bound(P.E) % t == 0);
  }
}

TEST_CASE("random_point_coprime") {
  std::mt19937_64 rng(5);
  Fq F5(5);
  ECq C(F5, F5.zero(), F5.zero(), F5.zero(), F5.one(), F5.one());  // order 9
  try {
    random_point_coprime(C, 9, 3, rng);
    FAIL("expected NoSuitablePoint");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoSuitablePoint);
  }
  FPoint R = random_point_coprime(C, 9, 2, rng);
  CHECK(C.on_curve(R));
  CHECK(!R.inf);

  // a curve of order 10 over F_11: the point returned has order 5
  bool found = false;
  Fq F11(11);
  for (u64 a = 0; a < 11 && !found; ++a)
    for (u64 b = 1; b < 11 && !found; ++b) {
      ECq D(F11, F11.zero(), F11.zero(), F11.zero(), F11.from_int(a), F11.from_int(b));
      if (D.is_singular() || D.count_naive() != 10) continue;
      found = true;
      for (int i = 0; i < 20; ++i) {
        FPoint Q = random_point_coprime(D, 10, 2, rng);
        CHECK(D.on_curve(Q));
        CHECK(!Q.inf);
        CHECK(D.mul(Q, 5LL).inf);
      }
    }
  CHECK(found);
}
