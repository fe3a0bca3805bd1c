#include <doctest.h>

#include <random>

#include "qcurve/error.hpp"
#include "qcurve/qfield.hpp"

using namespace qcurve;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

FieldElement rand_elem(long d, std::mt19937_64& rng) {
  auto r = [&] { return mpq_class((long)(rng() % 2001) - 1000, (long)(rng() % 12) + 1); };
  return FieldElement(d, r(), r());
}

// roots of t^2 - d mod an odd prime p, counted by enumeration
int count_roots(long d, u64 p) {
  int n = 0;
  long dm = ((d % (long)p) + (long)p) % (long)p;
  for (u64 t = 0; t < p; ++t)
    if (mulmod(t, t, p) == (u64)dm) ++n;
  return n;
}

}  // namespace

TEST_CASE("make_field") {
  auto K = QuadraticField::make(22);
  CHECK(K.disc() == 88);
  CHECK(K.is_real());
  CHECK(QuadraticField::make(17).disc() == 17);
  auto G = QuadraticField::make(-1);
  CHECK(G.disc() == -4);
  CHECK_FALSE(G.is_real());
  CHECK(QuadraticField::make(-6).disc() == -24);
  CHECK(code_of([] { QuadraticField::make(12); }) == ErrorCode::NonSquarefree);
  CHECK(code_of([] { QuadraticField::make(1); }) == ErrorCode::DegenerateD);
  CHECK(code_of([] { QuadraticField::make(0); }) == ErrorCode::DegenerateD);
}

TEST_CASE("split_prime examples") {
  auto K = QuadraticField::make(-6);
  auto P5 = primes_above(K, 5);
  REQUIRE(P5.size() == 2);
  CHECK(P5[0].kind == Splitting::Split);
  CHECK(conjugate(P5[0]) == P5[1]);
  CHECK(conjugate(P5[1]) == P5[0]);
  auto I5 = primes_above(QuadraticField::make(17), 5);
  REQUIRE(I5.size() == 1);
  CHECK(I5[0].kind == Splitting::Inert);
  CHECK(I5[0].norm() == 25);
  auto R2 = primes_above(QuadraticField::make(22), 2);
  REQUIRE(R2.size() == 1);
  CHECK(R2[0].kind == Splitting::Ramified);
}

TEST_CASE("splitting agrees with root counting for odd p < 10^4") {
  for (long d : {22L, 17L, -1L, -6L, 34L, 2L, 109L, -3L}) {
    auto K = QuadraticField::make(d);
    for (u64 p : primes_up_to(10000)) {
      if (p == 2) continue;
      int n = count_roots(d, p);
      auto P = primes_above(K, p);
      Splitting expect = n == 2 ? Splitting::Split : n == 1 ? Splitting::Ramified : Splitting::Inert;
      REQUIRE(P[0].kind == expect);
      REQUIRE(P.size() == (expect == Splitting::Split ? 2u : 1u));
    }
  }
  // p = 2 from disc mod 8
  CHECK(primes_above(QuadraticField::make(17), 2)[0].kind == Splitting::Split);
  CHECK(primes_above(QuadraticField::make(5), 2)[0].kind == Splitting::Inert);
  CHECK(primes_above(QuadraticField::make(-1), 2)[0].kind == Splitting::Ramified);
}

TEST_CASE("reduce_mod examples") {
  auto K22 = QuadraticField::make(22);
  auto P7 = primes_above(K22, 7);
  REQUIRE(P7.size() == 2);
  Fq F7 = residue_field(P7[0]);
  CHECK(reduce(K22(3), P7[0], F7) == F7.from_int(3));

  auto K17 = QuadraticField::make(17);
  auto P5 = primes_above(K17, 5)[0];
  Fq F25 = residue_field(P5);
  Fe t = reduce(K17(0, 1), P5, F25);
  CHECK(F25.sqr(t) == F25.from_int(17));
  CHECK(F25.from_int(17) == F25.from_int(2));
  Fe w = reduce(K17(mpq_class(1, 2), mpq_class(1, 2)), P5, F25);
  CHECK(w == F25.mul(F25.from_int(3), F25.add(F25.one(), t)));
  // exhaustive: w is the unique element with 2w = 1 + t
  int hits = 0;
  for (u64 i = 0; i < F25.q(); ++i)
    if (F25.add(F25.element(i), F25.element(i)) == F25.add(F25.one(), t)) {
      ++hits;
      CHECK(F25.element(i) == w);
    }
  CHECK(hits == 1);

  CHECK(code_of([&] { reduce(K17(mpq_class(1, 5)), P5, F25); }) == ErrorCode::NotPIntegral);
}

TEST_CASE("reduce_mod is a ring homomorphism") {
  std::mt19937_64 rng(7);
  for (long d : {22L, 17L, -6L}) {
    auto K = QuadraticField::make(d);
    for (u64 p : {7ULL, 11ULL, 13ULL, 101ULL}) {
      for (auto& P : primes_above(K, p)) {
        Fq F = residue_field(P);
        for (int i = 0; i < 10000; ++i) {
          FieldElement a = rand_elem(d, rng), b = rand_elem(d, rng);
          if (!is_integral_at(a, P) || !is_integral_at(b, P)) continue;
          Fe ra = reduce(a, P, F), rb = reduce(b, P, F);
          REQUIRE(reduce(a + b, P, F) == F.add(ra, rb));
          REQUIRE(reduce(a * b, P, F) == F.mul(ra, rb));
        }
        // split primes: reduction at conj P of conj a equals reduction of a at P
        if (P.kind == Splitting::Split) {
          PrimeIdeal Q = conjugate(P);
          for (int i = 0; i < 100; ++i) {
            FieldElement a = rand_elem(d, rng);
            if (!is_integral_at(a, P)) continue;
            REQUIRE(reduce(a.conj(), Q, F) == reduce(a, P, F));
          }
        }
      }
    }
  }
}

TEST_CASE("denominator_ideal_norm") {
  CHECK(denominator_norm(parse_element(22, "-14+3*sqrt(22)")) == 1);
  CHECK(denominator_norm(parse_element(109, "-73/2-7/2*sqrt(109)")) == 1);
  CHECK(denominator_norm(FieldElement(22, mpq_class(1, 3))) == 9);
  CHECK(denominator_norm(FieldElement(-1, mpq_class(1, 2), mpq_class(1, 2))) == 2);
  CHECK(code_of([] { denominator_norm(FieldElement(22, 0)); }) == ErrorCode::ZeroElement);
  std::mt19937_64 rng(3);
  for (long d : {22L, 17L, -6L, 109L})
    for (int i = 0; i < 500; ++i) {
      FieldElement a = rand_elem(d, rng);
      if (a.is_zero()) continue;
      mpq_class v = mpq_class(denominator_norm(a)) * abs(a.norm());
      v.canonicalize();
      REQUIRE(v.get_den() == 1);
    }
}

TEST_CASE("norm is multiplicative and conj is an automorphism") {
  std::mt19937_64 rng(11);
  for (long d : {22L, 17L, -1L, -6L}) {
    for (int i = 0; i < 2000; ++i) {
      FieldElement a = rand_elem(d, rng), b = rand_elem(d, rng);
      REQUIRE((a * b).norm() == a.norm() * b.norm());
      REQUIRE((a * b).conj() == a.conj() * b.conj());
      REQUIRE((a + b).conj() == a.conj() + b.conj());
      REQUIRE(a.conj().conj() == a);
      if (!a.is_zero()) REQUIRE(a * a.inverse() == FieldElement(d, 1));
      bool integral = a.trace().get_den() == 1 && a.norm().get_den() == 1;
      REQUIRE(a.is_integral() == integral);
    }
  }
}

TEST_CASE("parse_element") {
  auto a = parse_element(109, "-2727437331/2-261241129/2*sqrt(109)");
  CHECK(a.x() == mpq_class("-2727437331/2"));
  CHECK(a.y() == mpq_class(-261241129, 2));
  CHECK(parse_element(-1, "-sqrt(-1)") == FieldElement(-1, 0, -1));
  CHECK(parse_element(2, "3/2-sqrt(2)") == FieldElement(2, mpq_class(3, 2), -1));
}
