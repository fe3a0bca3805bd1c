#include <algorithm>
#include <numeric>

#include "qcurve/error.hpp"
#include "qcurve/isogeny.hpp"
#include "qcurve/padic.hpp"

namespace qcurve {

IsogenyGraph isogeny_graph(const Curve& E, const std::vector<int>& ells, size_t max_vertices) {
  const auto& phi = ModularPolynomials::instance();
  for (int l : ells)
    if (!phi.has(l)) throw Error(ErrorCode::UnsupportedEll, "unsupported isogeny degree " + std::to_string(l));
  IsogenyGraph G;
  G.vertices.push_back(E.j());
  auto index_of = [&](const FieldElement& j) -> long {
    for (size_t i = 0; i < G.vertices.size(); ++i)
      if (G.vertices[i] == j) return (long)i;
    return -1;
  };
  for (size_t v = 0; v < G.vertices.size(); ++v) {
    for (int l : ells) {
      auto roots = roots_in_K(phi.specialise(l, G.vertices[v]));
      std::sort(roots.begin(), roots.end(), [](const FieldElement& a, const FieldElement& b) {
        return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
      });
      for (auto& r : roots) {
        long w = index_of(r);
        if (w < 0) {
          if (G.vertices.size() >= max_vertices) throw Error(ErrorCode::GraphTooLarge, "more than " + std::to_string(max_vertices) + " vertices");
          G.vertices.push_back(r);
          w = (long)G.vertices.size() - 1;
        }
        size_t a = std::min<size_t>(v, w), b = std::max<size_t>(v, w);
        bool seen = false;
        for (auto& e : G.edges)
          if (e.a == a && e.b == b && e.l == l) seen = true;
        if (!seen && a != b) G.edges.push_back({a, b, l});
      }
    }
  }
  size_t n = G.vertices.size();
  const u64 inf = ~0ull;
  G.s.assign(n, inf);
  G.s[0] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& e : G.edges) {
      for (auto [x, y] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
        if (G.s[x] != inf && G.s[x] * e.l < G.s[y]) {
          G.s[y] = G.s[x] * e.l;
          changed = true;
        }
      }
    }
  }
  G.conj_of.assign(n, -1);
  for (size_t i = 0; i < n; ++i) G.conj_of[i] = index_of(G.vertices[i].conj());
  G.s_gcd = 0;
  for (size_t i = 0; i < n; ++i) {
    G.s_lcm = std::lcm(G.s_lcm, G.s[i]);
    G.s_max = std::max(G.s_max, G.s[i]);
    G.s_gcd = std::gcd(G.s_gcd, G.s[i]);
  }
  G.orbit_gcd = 0;
  for (size_t i = 0; i < n; ++i) {
    u64 v = G.s[i];
    if (G.conj_of[i] >= 0) v = std::min(v, G.s[G.conj_of[i]]);
    G.orbit_lcm = std::lcm(G.orbit_lcm, v);
    G.orbit_max = std::max(G.orbit_max, v);
    G.orbit_gcd = std::gcd(G.orbit_gcd, v);
  }
  return G;
}

}  // namespace qcurve
