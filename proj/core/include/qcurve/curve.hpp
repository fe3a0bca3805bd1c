#pragma once

#include <array>
#include <string>
#include <vector>

#include "qcurve/qfield.hpp"

namespace qcurve {

// x = u^2 x' + r,  y = u^3 y' + s u^2 x' + t
struct Urst {
  FieldElement u, r, s, t;
  static Urst identity(long d);
};
Urst compose(const Urst& first, const Urst& second);

class Curve {
 public:
  Curve() = default;
  // throws SingularModel when the discriminant vanishes
  Curve(const FieldElement& a1, const FieldElement& a2, const FieldElement& a3, const FieldElement& a4,
        const FieldElement& a6);
  static Curve from_array(const std::array<FieldElement, 5>& a);

  long d() const { return a1_.d(); }
  const FieldElement& a1() const { return a1_; }
  const FieldElement& a2() const { return a2_; }
  const FieldElement& a3() const { return a3_; }
  const FieldElement& a4() const { return a4_; }
  const FieldElement& a6() const { return a6_; }
  std::array<FieldElement, 5> a() const { return {a1_, a2_, a3_, a4_, a6_}; }

  FieldElement b2() const;
  FieldElement b4() const;
  FieldElement b6() const;
  FieldElement b8() const;
  FieldElement c4() const;
  FieldElement c6() const;
  const FieldElement& disc() const { return disc_; }
  FieldElement j() const;

  Curve conj() const;
  Curve transform(const Urst& w) const;
  bool is_integral_at(const PrimeIdeal& P) const;
  bool operator==(const Curve& o) const {
    return a1_ == o.a1_ && a2_ == o.a2_ && a3_ == o.a3_ && a4_ == o.a4_ && a6_ == o.a6_;
  }
  std::string str() const;

 private:
  FieldElement a1_, a2_, a3_, a4_, a6_, disc_;
};

enum class Reduction { Good, SplitMultiplicative, NonSplitMultiplicative, Additive };
const char* reduction_name(Reduction r);

struct LocalData {
  PrimeIdeal P;
  Curve minimal;     // P-minimal model
  Urst to_minimal;   // minimal = model.transform(to_minimal)
  Reduction type = Reduction::Good;
  std::string kodaira;
  int f = 0;          // conductor exponent
  int tamagawa = 1;
  int v_disc_model = 0;
  int v_disc_min = 0;
};

// Tate's algorithm at P, p = 2 and 3 included
LocalData local_data(const Curve& E, const PrimeIdeal& P);

// rational primes where the model is not integral or the discriminant is not a unit
std::vector<u64> support_primes(const Curve& E);

struct GlobalData {
  std::vector<LocalData> local;  // every prime above support_primes
  mpz_class n;                   // conductor = n O_K
  mpz_class level;               // n * |disc K|
  const LocalData* at(const PrimeIdeal& P) const;
  std::vector<std::pair<u64, int>> conductor_factorisation;  // n = prod p^e
};

GlobalData global_data(const Curve& E);  // throws NotGaloisStableConductor

}  // namespace qcurve
