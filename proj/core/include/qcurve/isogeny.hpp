#pragma once

#include <map>
#include <string>
#include <vector>

#include "qcurve/curve.hpp"
#include "qcurve/ecfq.hpp"
#include "qcurve/kpoly.hpp"

namespace qcurve {

// (x, y) -> (g(x), y h(x) + k(x))
struct IsogenyMap {
  Curve source, target;
  KRat g, h, k;
  IsogenyMap conj() const;  // conjugate map, conj(source) -> conj(target)
};

struct SignedDegree {
  u64 degree = 0;
  long m = 0;
  FieldElement alpha;
};

// checks the function-field identity, computes deg, alpha and m = norm(alpha)
SignedDegree verify_isogeny(const IsogenyMap& mu);
// alpha with mu^* omega' = alpha omega; throws SquareDegreeCase when alpha is rational
FieldElement pullback_scalar(const IsogenyMap& mu);
// [+-|m|] test of conj(mu) o mu on points over a split residue field; returns the sign found
long composition_sign(const IsogenyMap& mu, int npoints = 5, u64 seed = 1);

// same isogeny between transformed models: source.transform(ws) -> target.transform(wt)
IsogenyMap transport(const IsogenyMap& mu, const Urst& ws, const Urst& wt);

struct FqRat {
  FqPoly num, den;
};

struct ReducedIsogeny {
  ECq source, target;
  FqRat g, h, k;
  FPoint operator()(const FPoint& P) const;
};

// throws NonIntegralMap when a map does not reduce, BadReduction when exactly one model is singular mod P
ReducedIsogeny reduce_isogeny(const IsogenyMap& mu, const PrimeIdeal& P);

// normalised isogeny E -> conj(E) of degree |norm(alpha)| with pullback alpha,
// obtained from the Weierstrass p-function expansion; exact-verified
IsogenyMap isogeny_from_alpha(const Curve& E, const FieldElement& alpha);

// classical modular polynomials
class ModularPolynomials {
 public:
  static const ModularPolynomials& instance();  // QCURVE_PHI_DATA or bundled data
  explicit ModularPolynomials(const std::string& path);
  bool has(int l) const { return data_.count(l) > 0; }
  // Phi_l(j, Y) as a polynomial in Y
  KPoly specialise(int l, const FieldElement& j) const;
  FieldElement evaluate(int l, const FieldElement& x, const FieldElement& y) const;
  const std::map<std::pair<int, int>, mpz_class>& coefficients(int l) const { return data_.at(l); }

 private:
  std::map<int, std::map<std::pair<int, int>, mpz_class>> data_;
};
std::string default_modpoly_path();

struct IsogenyGraph {
  std::vector<FieldElement> vertices;  // vertices[0] = j(E)
  struct Edge {
    size_t a, b;
    int l;
  };
  std::vector<Edge> edges;
  std::vector<u64> s;        // minimal degree products from each vertex to E
  std::vector<long> conj_of;  // index of the conjugate vertex, -1 if absent
  // aggregates over the whole graph
  u64 s_lcm = 1, s_max = 1, s_gcd = 0;
  // aggregates over conjugation orbits, each orbit contributing min(s_i, s_conj(i))
  u64 orbit_lcm = 1, orbit_max = 1, orbit_gcd = 0;
};

IsogenyGraph isogeny_graph(const Curve& E, const std::vector<int>& ells = {2, 3, 5, 7, 11, 13},
                           size_t max_vertices = 64);

}  // namespace qcurve
