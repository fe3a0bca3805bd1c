#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qcurve/curve.hpp"
#include "qcurve/isogeny.hpp"

namespace qcurve {

// elements of F = Q(sqrt m) are FieldElements with d = m (m need not be squarefree)
struct CoefField {
  long m = 0;
  explicit CoefField(long m_);  // throws InvalidInput when m is a square
  FieldElement operator()(const mpq_class& u, const mpq_class& v = 0) const { return FieldElement(m, u, v); }
  FieldElement sigma(const FieldElement& a) const { return a.conj(); }
  // complex embedding with sqrt(m) -> +sqrt(m) or +i sqrt(|m|)
  std::pair<double, double> embed(const FieldElement& a, bool conjugate = false) const;
  std::string str(const FieldElement& a) const;  // "u + v*sqrt(m)"
};

struct CharacterSpec {
  mpz_class modulus;
  bool trivial = true;
  long disc = 1;  // discriminant of K when quadratic
  int operator()(const mpz_class& n) const;
};

// local factor data at one prime ideal over p
struct LocalFactor {
  PrimeIdeal P;
  Reduction type = Reduction::Good;
  long c = 0;  // trace of Frobenius, or 1 / -1 / 0 at bad primes
};

struct PrimeCoefficient {
  u64 p = 0;
  FieldElement a;
  std::string how;  // split, inert, ramified, bad-split, ...
  bool ambiguous = false;  // sign undetermined; a and conj(a) are the candidates
  std::vector<LocalFactor> local;
};

struct NewformData {
  mpz_class level;
  CharacterSpec character;
  long m = 0;
  long disc = 0;
  int convention = 1;
  std::map<u64, PrimeCoefficient> ap;
  std::set<u64> ambiguous;
  int eps(u64 p) const { return character(mpz_class((unsigned long)p)); }
};

struct NewformInput {
  Curve E;
  GlobalData global;
  std::optional<IsogenyMap> mu;  // absent: alpha-only, signs flagged ambiguous
  long m = 0;
  int convention = 1;  // -1 picks the conjugate newform
  u64 seed = 1;
  int workers = 1;
};

// level N = n |disc K|
mpz_class newform_level(const GlobalData& G, const QuadraticField& K);

PrimeCoefficient prime_coefficient(const NewformInput& in, u64 p);
NewformData compute_newform(const NewformInput& in, u64 pmax);

// a_1..a_nmax (index 0 unused); throws MissingPrimeCoefficient
std::vector<FieldElement> expand(const NewformData& nf, size_t nmax);

// prod over P | p of P_P(E, x^f) against prod over conjugates of 1 - a x + eps p x^2
bool euler_factor_check(const NewformData& nf, u64 p, std::string* detail = nullptr);

// coefficients of h = (f + kappa sigma f)/(1 + kappa): a = u + v sqrt m -> u + v conj(alpha)
std::vector<FieldElement> h_form(const std::vector<FieldElement>& a, const FieldElement& alpha);

// q-expansion in the paper's display style
std::string pretty_expansion(const std::vector<FieldElement>& a, size_t nmax);

}  // namespace qcurve
