#include "app.hpp"

#include <fstream>
#include <sstream>

#include "qcurve/error.hpp"
#include "qcurve/torsion.hpp"

#ifndef QCURVE_VERSION
#define QCURVE_VERSION "0.0.0"
#endif

namespace qcurve::app {

namespace {

constexpr int kSchema = 1;

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::InvalidInput, msg); }

mpq_class parse_q(const Json& v) {
  std::string s;
  if (v.is_string())
    s = v.get<std::string>();
  else if (v.is_number_integer())
    s = std::to_string(v.get<long long>());
  else
    bad("expected a rational, got " + v.dump());
  mpq_class q;
  if (q.set_str(s, 10) != 0) bad("bad rational '" + s + "'");
  q.canonicalize();
  return q;
}

KPoly parse_poly(long d, const Json& v) {
  if (!v.is_array()) bad("polynomial must be a coefficient list, low degree first");
  KPoly f;
  for (auto& c : v) f.push_back(parse_literal(d, c));
  trim(f);
  return f;
}

KRat parse_rat(long d, const Json& v) {
  KRat r;
  if (v.is_array()) {
    r.num = parse_poly(d, v);
    r.den = {FieldElement(d, 1)};
    return r;
  }
  if (!v.is_object() || !v.contains("num")) bad("rational function needs \"num\"");
  r.num = parse_poly(d, v.at("num"));
  r.den = v.contains("den") ? parse_poly(d, v.at("den")) : KPoly{FieldElement(d, 1)};
  if (r.den.empty()) bad("zero denominator");
  return r;
}

// rational j-invariants with complex multiplication
bool cm_j(const FieldElement& j) {
  if (!j.is_rational() || j.x().get_den() != 1) return false;
  static const char* js[] = {"0",        "1728",       "-3375",         "8000",          "-32768",
                             "54000",    "287496",     "-884736",       "-12288000",     "16581375",
                             "-884736000", "-147197952000", "-262537412640768000"};
  for (auto s : js)
    if (j.x() == mpz_class(s)) return true;
  return false;
}

Json cx_json(const Cx& z, const Options& o) { return Json::array({real_str(z.re, o), real_str(z.im, o)}); }

Json provenance(const Options& o) {
  return {{"schema", kSchema}, {"version", QCURVE_VERSION}, {"seed", o.seed}, {"digits", o.digits}};
}

}  // namespace

FieldElement parse_literal(long d, const Json& v) {
  if (v.is_array()) {
    if (v.size() != 2) bad("field element pair must have two entries");
    return FieldElement(d, parse_q(v[0]), parse_q(v[1]));
  }
  if (v.is_number_integer()) return FieldElement(d, v.get<long>());
  if (!v.is_string()) bad("bad field element " + v.dump());
  try {
    return parse_element(d, v.get<std::string>());
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    bad("bad field element '" + v.get<std::string>() + "': " + e.what());
  }
}

namespace {

CurveSpec parse_spec_impl(const Json& j) {
  if (!j.is_object()) bad("spec must be a JSON object");
  CurveSpec s;
  if (j.contains("name")) s.name = j.at("name").get<std::string>();
  if (j.contains("comment")) s.comment = j.at("comment").get<std::string>();
  if (!j.contains("d") || !j.at("d").is_number_integer()) bad("missing integer \"d\"");
  s.d = j.at("d").get<long>();
  QuadraticField::make(s.d);
  if (!j.contains("a_invariants") || !j.at("a_invariants").is_array() || j.at("a_invariants").size() != 5)
    bad("\"a_invariants\" must list five field elements");
  for (int i = 0; i < 5; ++i) s.a[i] = parse_literal(s.d, j.at("a_invariants")[i]);
  bool has_iso = j.contains("isogeny"), has_alpha = j.contains("alpha");
  if (has_iso == has_alpha) bad("give exactly one of \"isogeny\" and \"alpha\"");
  if (has_alpha) s.alpha = parse_literal(s.d, j.at("alpha"));
  if (has_iso) {
    const Json& iso = j.at("isogeny");
    if (!iso.contains("x_map") || !iso.contains("y_map")) bad("isogeny needs \"x_map\" and \"y_map\"");
    IsogenyMap mu;
    mu.source = Curve::from_array(s.a);
    mu.target = mu.source.conj();
    mu.g = parse_rat(s.d, iso.at("x_map"));
    const Json& y = iso.at("y_map");
    if (!y.contains("h")) bad("y_map needs \"h\"");
    mu.h = parse_rat(s.d, y.at("h"));
    mu.k = y.contains("k") ? parse_rat(s.d, y.at("k")) : KRat{{}, {FieldElement(s.d, 1)}};
    s.isogeny = mu;
    if (iso.contains("degree")) s.degree = iso.at("degree").get<u64>();
  }
  if (j.contains("overrides")) {
    const Json& o = j.at("overrides");
    if (o.contains("s")) s.overrides.s = o.at("s").get<u64>();
    if (o.contains("torsion")) s.overrides.torsion = o.at("torsion").get<u64>();
    auto z = [](const Json& v) { return mpz_class(v.is_string() ? v.get<std::string>() : v.dump()); };
    if (o.contains("conductor")) s.overrides.conductor = z(o.at("conductor"));
    if (o.contains("level")) s.overrides.level = z(o.at("level"));
  }
  if (j.contains("seed")) s.seed = j.at("seed").get<u64>();
  if (j.contains("digits")) s.digits = j.at("digits").get<unsigned>();
  return s;
}

}  // namespace

CurveSpec parse_spec(const Json& j) {
  try {
    return parse_spec_impl(j);
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  } catch (const std::invalid_argument& e) {
    bad(std::string("bad integer: ") + e.what());
  }
}

CurveSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    bad(path + ": " + e.what());
  }
  return parse_spec(j);
}

Prepared prepare(const CurveSpec& spec) {
  Prepared P;
  P.spec = spec;
  P.K = QuadraticField::make(spec.d);
  P.E = Curve::from_array(spec.a);
  if (cm_j(P.E.j())) throw Error(ErrorCode::Unsupported, "j = " + P.E.j().str() + " has complex multiplication");
  if (spec.alpha) {
    const FieldElement& al = *spec.alpha;
    mpq_class nm = al.norm();
    bool square = al.is_rational() || (nm > 0 && nm.get_den() == 1 && is_square(nm.get_num()));
    try {
      P.mu = isogeny_from_alpha(P.E, al);
    } catch (const Error&) {
      if (!square) throw;
      throw Error(ErrorCode::SquareDegreeCase,
                  "m = " + nm.get_str() +
                      " is a square: E is isogenous to a curve over Q; use L(E/K,s) = L(E0,s) L(E0^(d),s)");
    }
    P.rebuilt = true;
  } else {
    P.mu = *spec.isogeny;
  }
  P.degree = verify_isogeny(P.mu);
  pullback_scalar(P.mu);  // SquareDegreeCase
  if (spec.degree && *spec.degree != P.degree.degree)
    throw Error(ErrorCode::DegreeMismatch,
                "declared degree " + std::to_string(*spec.degree) + ", map has degree " + std::to_string(P.degree.degree));
  if (spec.alpha && P.degree.alpha != *spec.alpha)
    throw Error(ErrorCode::Internal, "rebuilt isogeny has pullback " + P.degree.alpha.str());
  if (P.K.disc() < 0 && P.degree.m < 0)
    throw Error(ErrorCode::Internal, "m < 0 over an imaginary field");
  P.global = global_data(P.E);
  if (spec.overrides.conductor && *spec.overrides.conductor != P.global.n)
    P.warnings.push_back("conductor override " + spec.overrides.conductor->get_str() + " != computed " + P.global.n.get_str());
  if (spec.overrides.level && *spec.overrides.level != P.global.level)
    P.warnings.push_back("level override " + spec.overrides.level->get_str() + " != computed " + P.global.level.get_str());
  return P;
}

NewformResult run_newform(const Prepared& P, const Options& o, size_t nmax) {
  NewformInput in;
  in.E = P.E;
  in.global = P.global;
  in.mu = P.mu;
  in.m = P.degree.m;
  in.convention = o.convention;
  in.seed = o.seed;
  in.workers = o.workers;
  NewformResult r;
  r.nf = compute_newform(in, std::max<size_t>(nmax, 2));
  r.coeffs = expand(r.nf, nmax);
  return r;
}

CertifyResult run_certify(const Prepared& P, const Options& o) {
  Precision prec(o.digits + 20);
  CertifyResult r;
  r.omega = omega_E(P.E, P.global, o.digits);
  r.graph = isogeny_graph(P.E);
  r.tors = torsion_order(P.E);
  u64 s = o.s_mode == "max" ? r.graph.orbit_max : o.s_mode == "gcd" ? r.graph.orbit_gcd : r.graph.orbit_lcm;
  r.bound = bound(P.K, P.degree.alpha, P.degree.m, r.tors, s, r.graph.orbit_max, r.omega);

  size_t M = truncation(P.global.level, o.digits);
  r.newform = run_newform(P, o, M);
  auto factor = [&](bool sigma) {
    FactorResult fr;
    EmbeddedForm f = embed_form(r.newform.nf, r.newform.coeffs, sigma);
    fr.eta = eta(f, o.workers);
    fr.L = l_value(f, fr.eta, 0, o.workers);
    fr.Lprime = l_value(f, fr.eta, 1, o.workers);
    fr.fe_residual = 0;
    for (const char* t : {"1.1", "1.2", "1.4"}) fr.fe_residual = std::max(fr.fe_residual, fe_residual(f, fr.eta, Real(t)));
    fr.fe_tail = tail_bound(f, Real("1.4")) + tail_bound(f, Real(1));
    return fr;
  };
  r.f = factor(false);
  r.sf = factor(true);
  r.LE = r.f.L.value * r.sf.L.value;
  r.LE_error = r.f.L.value.abs() * r.sf.L.error + r.sf.L.value.abs() * r.f.L.error + r.f.L.error * r.sf.L.error;
  r.verdict = decide(r.LE, r.LE_error, r.bound, P.K, r.omega);

  r.caveats.push_back("heuristic-precision");
  if (P.rebuilt) r.caveats.push_back("isogeny rebuilt from alpha");
  if (!r.newform.nf.ambiguous.empty()) r.caveats.push_back("ambiguous signs at some primes");
  if (r.verdict.kind == VerdictKind::Vanishes) {
    Real tiny = pow(Real(10), -(int)o.digits / 2);
    if (r.f.Lprime.value.abs() > tiny && r.sf.Lprime.value.abs() > tiny)
      r.caveats.push_back("analytic rank 2 (conditional on generalized Manin conjecture)");
  }
  if (P.spec.overrides.torsion && *P.spec.overrides.torsion != r.tors)
    r.caveats.push_back("torsion override " + std::to_string(*P.spec.overrides.torsion) + " != computed " + std::to_string(r.tors));
  if (P.spec.overrides.s && *P.spec.overrides.s != s)
    r.caveats.push_back("s override " + std::to_string(*P.spec.overrides.s) + " != computed " + std::to_string(s));
  for (auto& w : P.warnings) r.caveats.push_back(w);
  return r;
}

std::string real_str(const Real& x, const Options& o) { return fmt(x, (int)o.digits); }

Json field_json(const FieldElement& z) { return Json::array({z.x().get_str(), z.y().get_str()}); }

namespace {

Json local_json(const GlobalData& G) {
  Json out = Json::array();
  for (auto& L : G.local)
    out.push_back({{"prime", L.P.str()},
                   {"norm", L.P.norm()},
                   {"reduction", reduction_name(L.type)},
                   {"kodaira", L.kodaira},
                   {"conductor_exponent", L.f},
                   {"tamagawa", L.tamagawa},
                   {"v_disc", L.v_disc_model},
                   {"v_disc_min", L.v_disc_min}});
  return out;
}

Json header_json(const Prepared& P, const NewformData& nf) {
  Json h;
  h["name"] = P.spec.name;
  h["d"] = P.spec.d;
  h["disc"] = P.K.disc();
  h["conductor"] = P.global.n.get_str();
  h["level"] = nf.level.get_str();
  h["character"] = {{"modulus", nf.character.modulus.get_str()},
                    {"kind", nf.character.trivial ? "trivial" : "quadratic"},
                    {"disc", nf.character.disc}};
  h["m"] = nf.m;
  h["degree"] = P.degree.degree;
  h["alpha"] = field_json(P.degree.alpha);
  h["convention"] = nf.convention;
  return h;
}

}  // namespace

Json newform_json(const Prepared& P, const NewformResult& r, const Options& o) {
  Json j = header_json(P, r.nf);
  Json c = Json::array();
  for (size_t n = 1; n < r.coeffs.size(); ++n)
    c.push_back(Json::array({n, r.coeffs[n].x().get_str(), r.coeffs[n].y().get_str()}));
  j["coefficients"] = c;
  j["expansion"] = pretty_expansion(r.coeffs, r.coeffs.size() - 1);
  j["ambiguous"] = Json(std::vector<u64>(r.nf.ambiguous.begin(), r.nf.ambiguous.end()));
  j["local"] = local_json(P.global);
  j["warnings"] = P.warnings;
  j["provenance"] = provenance(o);
  return j;
}

Json certify_json(const Prepared& P, const CertifyResult& r, const Options& o) {
  Json j = header_json(P, r.newform.nf);
  j["local"] = local_json(P.global);
  j["torsion"] = r.tors;
  j["s"] = {{"mode", o.s_mode}, {"lcm", r.graph.orbit_lcm}, {"max", r.graph.orbit_max}, {"gcd", r.graph.orbit_gcd}};
  j["omega_E"] = real_str(r.omega.value, o);
  j["delta_norm"] = r.omega.delta_norm.get_str();
  j["bound"] = {{"B", r.bound.Q_reconstruct.get_str()},
                {"Q_vanish", r.bound.Q_vanish.get_str()},
                {"q", r.bound.q_alpha.get_str()},
                {"t", r.bound.t},
                {"N_D_alpha", r.bound.nd_alpha.get_str()},
                {"threshold", real_str(r.bound.threshold, o)}};
  j["terms"] = r.f.L.terms;
  auto fj = [&](const FactorResult& f) {
    return Json{{"eta", cx_json(f.eta, o)},
                {"L", cx_json(f.L.value, o)},
                {"Lprime", cx_json(f.Lprime.value, o)},
                {"error", fmt(f.L.error, 6)},
                {"fe_residual", fmt(f.fe_residual, 6)}};
  };
  j["eta"] = cx_json(r.f.eta, o);
  j["L"] = cx_json(r.LE, o);
  j["Lprime"] = Json::array({cx_json(r.f.Lprime.value, o), cx_json(r.sf.Lprime.value, o)});
  j["factors"] = {{"f", fj(r.f)}, {"sigma_f", fj(r.sf)}};
  j["L_error"] = fmt(r.LE_error, 6);
  Json v = {{"kind", verdict_name(r.verdict.kind)}};
  if (r.verdict.kind == VerdictKind::Ratio) v["ratio"] = r.verdict.ratio.get_str();
  v["x"] = real_str(r.verdict.x, o);
  if (!r.verdict.reason.empty()) v["reason"] = r.verdict.reason;
  j["verdict"] = v;
  j["caveats"] = r.caveats;
  j["provenance"] = provenance(o);
  return j;
}

Json graph_json(const Prepared& P, const IsogenyGraph& G) {
  Json j;
  j["name"] = P.spec.name;
  Json vs = Json::array();
  for (size_t i = 0; i < G.vertices.size(); ++i)
    vs.push_back({{"j", field_json(G.vertices[i])}, {"s", G.s[i]}, {"conjugate", G.conj_of[i]}});
  j["vertices"] = vs;
  Json es = Json::array();
  for (auto& e : G.edges) es.push_back({{"a", e.a}, {"b", e.b}, {"l", e.l}});
  j["edges"] = es;
  j["s_gcd"] = G.s_gcd;
  j["s_max"] = G.s_max;
  j["s_lcm"] = G.s_lcm;
  j["orbit"] = {{"gcd", G.orbit_gcd}, {"max", G.orbit_max}, {"lcm", G.orbit_lcm}};
  return j;
}

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonSquarefree:
    case ErrorCode::DegenerateD:
    case ErrorCode::NotPIntegral:
    case ErrorCode::ZeroElement:
    case ErrorCode::SingularModel:
    case ErrorCode::NotAnIsogeny:
    case ErrorCode::DegreeMismatch:
    case ErrorCode::NonConstantRatio:
    case ErrorCode::NonIntegralMap:
    case ErrorCode::InvalidInput:
    case ErrorCode::NotGaloisStableConductor:
      return 2;
    case ErrorCode::SquareDegreeCase:
    case ErrorCode::Unsupported:
    case ErrorCode::UnsupportedEll:
    case ErrorCode::UnsupportedResidueChar:
    case ErrorCode::GraphTooLarge:
      return 3;
    default:
      return 4;
  }
}

}  // namespace qcurve::app
