#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "qcurve/error.hpp"
#include "qcurve/isogeny.hpp"
#include "qcurve/lseries.hpp"
#include "qcurve/newform.hpp"

namespace qcurve::app {

using Json = nlohmann::ordered_json;

struct Overrides {
  std::optional<u64> s, torsion;
  std::optional<mpz_class> conductor, level;
};

// input document
struct CurveSpec {
  std::string name, comment;
  long d = 0;
  std::array<FieldElement, 5> a;
  std::optional<IsogenyMap> isogeny;
  std::optional<u64> degree;
  std::optional<FieldElement> alpha;
  Overrides overrides;
  std::optional<u64> seed;
  std::optional<unsigned> digits;
};

// throws Error(InvalidInput) on malformed documents
CurveSpec parse_spec(const Json& j);
CurveSpec load_spec(const std::string& path);
FieldElement parse_literal(long d, const Json& v);

struct Prepared {
  CurveSpec spec;
  QuadraticField K;
  Curve E;
  GlobalData global;
  IsogenyMap mu;
  SignedDegree degree;  // degree, m, alpha
  bool rebuilt = false;  // mu rebuilt from alpha
  std::vector<std::string> warnings;
};

// model, conductor, isogeny, m; throws SquareDegreeCase / Unsupported (CM)
Prepared prepare(const CurveSpec& spec);

struct Options {
  size_t terms = 20;
  unsigned digits = 30;
  u64 seed = 0x5eed;
  std::string s_mode = "lcm";
  int workers = 1;
  int convention = 1;
};

struct NewformResult {
  NewformData nf;
  std::vector<FieldElement> coeffs;  // a_0 unused
};
NewformResult run_newform(const Prepared& P, const Options& o, size_t nmax);

struct FactorResult {
  Cx eta;
  LValue L, Lprime;
  Real fe_residual, fe_tail;
};

struct CertifyResult {
  NewformResult newform;
  OmegaE omega;
  IsogenyGraph graph;
  u64 tors = 0;
  LBoundReport bound;
  FactorResult f, sf;  // f and sigma f
  Cx LE;
  Real LE_error;
  Verdict verdict;
  std::vector<std::string> caveats;
};
CertifyResult run_certify(const Prepared& P, const Options& o);

// reports; reals as decimal strings at o.digits
Json newform_json(const Prepared& P, const NewformResult& r, const Options& o);
Json certify_json(const Prepared& P, const CertifyResult& r, const Options& o);
Json graph_json(const Prepared& P, const IsogenyGraph& G);
Json field_json(const FieldElement& z);
std::string real_str(const Real& x, const Options& o);

// exit status for an error code: 2 invalid input, 3 unsupported, 4 numerical/internal
int exit_code(ErrorCode c);

}  // namespace qcurve::app
