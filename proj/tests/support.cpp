#include "support.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace qcurve::test {

namespace {
std::mutex mu;
}

std::string fixture_path(const std::string& name) { return std::string(QCURVE_FIXTURES) + "/" + name + ".json"; }

const app::Prepared& fixture(const std::string& name) {
  static std::map<std::string, app::Prepared> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, app::prepare(app::load_spec(fixture_path(name)))).first;
  return it->second;
}

const app::NewformResult& newform(const std::string& name, size_t nmax, int convention) {
  static std::map<std::tuple<std::string, size_t, int>, app::NewformResult> cache;
  const app::Prepared& P = fixture(name);
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(name, nmax, convention);
  auto it = cache.find(key);
  if (it == cache.end()) {
    app::Options o;
    o.convention = convention;
    o.workers = 4;
    it = cache.emplace(key, app::run_newform(P, o, nmax)).first;
  }
  return it->second;
}

FieldElement K(long d, const char* s) { return parse_element(d, s); }

std::string expansion(const std::string& name, size_t nmax, int convention) {
  return pretty_expansion(newform(name, nmax, convention).coeffs, nmax);
}

}  // namespace qcurve::test
