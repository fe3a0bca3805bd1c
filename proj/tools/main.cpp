// qcurve: newform, L-ratio certificate and isogeny graph of a quadratic Q-curve

#include <CLI11.hpp>
#include <iostream>
#include <thread>

#include "app.hpp"
#include "qcurve/error.hpp"

using namespace qcurve;
using namespace qcurve::app;

namespace {

std::string cx(const Json& z) {
  std::string re = z[0].get<std::string>(), im = z[1].get<std::string>();
  if (!im.empty() && im[0] == '-') return re + " - " + im.substr(1) + "*I";
  return re + " + " + im + "*I";
}

void print_pretty_certify(const Json& j) {
  std::cout << j["name"].get<std::string>() << "\n";
  std::cout << "  level " << j["level"].get<std::string>() << ", character " << j["character"]["kind"].get<std::string>()
            << " mod " << j["character"]["modulus"].get<std::string>() << ", m = " << j["m"] << "\n";
  std::cout << "  Omega_E   " << j["omega_E"].get<std::string>() << "  (N(delta) = " << j["delta_norm"].get<std::string>()
            << ")\n";
  std::cout << "  B         " << j["bound"]["B"].get<std::string>() << "\n";
  std::cout << "  threshold " << j["bound"]["threshold"].get<std::string>() << "\n";
  std::cout << "  eta       " << cx(j["eta"]) << "\n";
  std::cout << "  L(E,1)    " << j["L"][0].get<std::string>() << "\n";
  for (auto& f : {"f", "sigma_f"})
    std::cout << "  L'(" << f << ",1) " << cx(j["factors"][f]["Lprime"]) << "\n";
  for (auto& L : j["local"])
    std::cout << "  " << L["prime"].get<std::string>() << ": " << L["reduction"].get<std::string>() << " "
              << L["kodaira"].get<std::string>() << ", f = " << L["conductor_exponent"] << ", c = " << L["tamagawa"] << "\n";
  std::cout << "  verdict   " << j["verdict"]["kind"].get<std::string>();
  if (j["verdict"].contains("ratio")) std::cout << "(" << j["verdict"]["ratio"].get<std::string>() << ")";
  std::cout << "\n";
  for (auto& c : j["caveats"]) std::cout << "  note: " << c.get<std::string>() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"quadratic Q-curves: newform, L-ratio, isogeny graph"};
  cli.require_subcommand(1);
  Options o;
  o.workers = (int)std::max(1u, std::thread::hardware_concurrency());
  std::string spec_path;
  bool json = false, pretty = false;
  std::optional<u64> seed;
  std::optional<unsigned> digits;

  auto common = [&](CLI::App* sc) {
    sc->add_option("spec", spec_path, "curve spec (JSON)")->required()->check(CLI::ExistingFile);
    sc->add_option("--seed", seed, "seed for the sign-test points");
    sc->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
    auto* fj = sc->add_flag("--json", json, "JSON output");
    sc->add_flag("--pretty", pretty, "human-readable output")->excludes(fj);
    sc->add_option("--convention", o.convention, "sign convention, 1 or -1")->check(CLI::IsMember({1, -1}));
  };
  auto* nf = cli.add_subcommand("newform", "level, character and q-expansion");
  common(nf);
  nf->add_option("--terms", o.terms, "number of coefficients")->check(CLI::PositiveNumber);
  auto* cert = cli.add_subcommand("certify", "L(E,1) vanishing test or exact L-ratio");
  common(cert);
  cert->add_option("--digits", digits, "working precision in decimal digits")->check(CLI::Range(10u, 1000u));
  cert->add_option("--s-mode", o.s_mode, "s aggregate for the bound")->check(CLI::IsMember({"lcm", "max", "gcd"}));
  auto* gr = cli.add_subcommand("graph", "isogeny graph and s-aggregates");
  common(gr);

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = cli.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    CurveSpec spec = load_spec(spec_path);
    o.seed = seed ? *seed : spec.seed.value_or(o.seed);
    o.digits = digits ? *digits : spec.digits.value_or(o.digits);
    Prepared P = prepare(spec);
    Json out;
    if (nf->parsed()) {
      auto r = run_newform(P, o, o.terms);
      out = newform_json(P, r, o);
      if (!json) {
        std::cout << "level " << out["level"].get<std::string>() << ", character " << out["character"]["kind"].get<std::string>()
                  << " mod " << out["character"]["modulus"].get<std::string>() << ", m = " << out["m"] << "\n"
                  << out["expansion"].get<std::string>() << "\n";
        return 0;
      }
    } else if (cert->parsed()) {
      auto r = run_certify(P, o);
      out = certify_json(P, r, o);
      if (!json) {
        print_pretty_certify(out);
        return 0;
      }
    } else {
      out = graph_json(P, isogeny_graph(P.E));
      if (!json) {
        std::cout << out["vertices"].size() << " vertices\n";
        for (auto& e : out["edges"]) std::cout << "  " << e["a"] << " -" << e["l"] << "- " << e["b"] << "\n";
        std::cout << "s: gcd " << out["s_gcd"] << ", max " << out["s_max"] << ", lcm " << out["s_lcm"] << "; orbits: gcd "
                  << out["orbit"]["gcd"] << ", max " << out["orbit"]["max"] << ", lcm " << out["orbit"]["lcm"] << "\n";
        return 0;
      }
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.code() == ErrorCode::SquareDegreeCase)
      std::cerr << "hint: E is isogenous to a twist of a curve E0 over Q; compute L(E0,s) L(E0^(d),s) instead\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
