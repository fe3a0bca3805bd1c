#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qcurve/error.hpp"
#include "qcurve/isogeny.hpp"

namespace qcurve {

std::string default_modpoly_path() {
  if (const char* env = std::getenv("QCURVE_PHI_DATA")) return env;
  for (const char* dir : {QCURVE_SOURCE_DATA, QCURVE_INSTALL_DATA}) {
    std::string p = std::string(dir) + "/modpoly.txt";
    if (std::ifstream(p).good()) return p;
  }
  return "modpoly.txt";
}

ModularPolynomials::ModularPolynomials(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot read modular polynomial data " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream is(line);
    int l, a, b;
    std::string c;
    if (!(is >> l >> a >> b >> c)) throw Error(ErrorCode::InvalidInput, "bad line in " + path + ": " + line);
    data_[l][{a, b}] = mpz_class(c);
  }
}

const ModularPolynomials& ModularPolynomials::instance() {
  static const ModularPolynomials inst(default_modpoly_path());
  return inst;
}

KPoly ModularPolynomials::specialise(int l, const FieldElement& j) const {
  if (!has(l)) throw Error(ErrorCode::UnsupportedEll, "no modular polynomial for l = " + std::to_string(l));
  const auto& cs = data_.at(l);
  long d = j.d();
  std::vector<FieldElement> jp(l + 2, FieldElement(d, 1));
  for (int i = 1; i < l + 2; ++i) jp[i] = jp[i - 1] * j;
  KPoly f(l + 2, FieldElement(d, 0));
  for (auto& [ab, c] : cs) f[ab.second] += mpq_class(c) * jp[ab.first];
  trim(f);
  return f;
}

FieldElement ModularPolynomials::evaluate(int l, const FieldElement& x, const FieldElement& y) const {
  return peval(specialise(l, x), y);
}

}  // namespace qcurve
