// acceptance: one PASS/FAIL line per criterion, with the sub-checks that decide it

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sys/wait.h>
#include <thread>

#include "qcurve/error.hpp"
#include "support.hpp"

using namespace qcurve;
using namespace qcurve::app;
using test::fixture;

namespace {

struct Criterion {
  std::string title;
  std::vector<std::pair<bool, std::string>> checks;
  void check(bool ok, const std::string& what) { checks.emplace_back(ok, what); }
  bool ok() const {
    for (auto& c : checks)
      if (!c.first) return false;
    return true;
  }
};

nlohmann::json expected(const std::string& name) {
  std::ifstream in(test::fixture_path(name));
  return nlohmann::json::parse(in)["expected"];
}

Real rel(const Real& a, const Real& b) { return abs(a - b) / abs(b); }

std::string sci(const Real& x) { return fmt(x, 3); }

struct Run {
  CertifyResult r;
  double seconds = 0;
};

Run certify(const std::string& name, unsigned digits = 30) {
  Options o;
  o.digits = digits;
  o.workers = (int)std::max(1u, std::thread::hardware_concurrency());
  auto t0 = std::chrono::steady_clock::now();
  Run run;
  run.r = run_certify(fixture(name), o);
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f s", s);
  return buf;
}

// expansion through q^20 against the displayed one; reports a conjugate match
void check_expansion(Criterion& c, const std::string& name, bool up_to_conjugation) {
  std::string shown = expected(name)["expansion"].get<std::string>();
  std::string ours = test::expansion(name, 20), conj = test::expansion(name, 20, -1);
  if (ours == shown) {
    c.check(true, name + " expansion through q^20 matches");
  } else if (conj == shown) {
    c.check(up_to_conjugation, name + " expansion through q^20 is the Galois conjugate of the displayed one" +
                                   (up_to_conjugation ? " (allowed)" : ""));
  } else {
    c.check(false, name + " expansion differs:\n      ours  " + ours + "\n      shown " + shown);
  }
}

void check_real(Criterion& c, const std::string& what, const Real& got, const char* want, const char* tol) {
  Real e = rel(got, Real(want));
  c.check(e < Real(tol), what + " = " + fmt(got, 16) + " (shown " + want + ", rel err " + sci(e) + ", tol " + tol + ")");
}

void check_eta(Criterion& c, const std::string& name, const Cx& got, const Cx& want, const std::string& shown) {
  Real e = (got - want).abs();
  c.check(e < Real("1e-6"), name + " eta = " + fmt(got, 12) + " vs " + shown + " (|diff| " + sci(e) + ")");
}

Cx real_cx(const char* s) { return Cx(Real(s)); }

int run_status(const std::string& cmd, std::string& out) {
  FILE* f = popen((cmd + " 2>&1").c_str(), "r");
  if (!f) return -1;
  char buf[512];
  while (fgets(buf, sizeof buf, f)) out += buf;
  int st = pclose(f);
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

void criterion1(Criterion& c) {
  Precision prec(50);
  auto run = certify("ex1");
  const auto& r = run.r;
  const auto& nf = r.newform.nf;
  c.check(nf.level == 616, "level " + nf.level.get_str());
  c.check(!nf.character.trivial && nf.character.disc == 88 && nf.character.modulus == 616,
          "character quadratic mod " + nf.character.modulus.get_str() + " from disc " + std::to_string(nf.character.disc));
  check_expansion(c, "ex1", false);
  check_real(c, "Omega_E", r.omega.value, "5.45882600014972", "1e-9");
  check_real(c, "threshold", r.bound.threshold, "5.98675727185567e-4", "1e-10");
  check_eta(c, "ex1", r.f.eta, Cx(sqrt(Real(88))) / Cx(Real(4), 6 * sqrt(Real(2))), "sqrt88/(4+6sqrt-2)");
  c.check(r.verdict.kind == VerdictKind::Vanishes, std::string("verdict ") + verdict_name(r.verdict.kind));
  Real tiny("1e-15");
  c.check(r.f.Lprime.value.abs() > tiny && r.sf.Lprime.value.abs() > tiny,
          "L'(f,1) = " + fmt(r.f.Lprime.value, 10) + ", L'(sigma f,1) = " + fmt(r.sf.Lprime.value, 10));
  c.check(run.seconds < 60, "time at 30 digits " + secs(run.seconds) + " (limit 60 s)");
}

void criterion2(Criterion& c) {
  Precision prec(50);
  auto run = certify("ex6");
  const auto& r = run.r;
  const auto& nf = r.newform.nf;
  c.check(nf.level == 170, "level " + nf.level.get_str());
  c.check(nf.m == -1, "m = " + std::to_string(nf.m));
  check_expansion(c, "ex6", false);
  FieldElement a5 = r.newform.coeffs[5];
  c.check(a5 == FieldElement(-1, 0, 1), "a5 = " + a5.str() + " from the torus test at (5) (shown i)");
  check_real(c, "Omega_E", r.omega.value, "11.1808314690274", "1e-9");
  c.check(r.bound.Q_reconstruct == 244996258, "B = " + r.bound.Q_reconstruct.get_str());
  c.check(r.verdict.kind == VerdictKind::Ratio && r.verdict.ratio == 1,
          std::string("verdict ") + verdict_name(r.verdict.kind) + "(" + r.verdict.ratio.get_str() + ")");
  check_eta(c, "ex6", r.f.eta, Cx(sqrt(Real(17))) / Cx(Real(1), Real(4)), "sqrt17/(1+4i)");
  std::vector<int> tam;
  std::string ts;
  for (auto& L : fixture("ex6").global.local)
    if (L.type != Reduction::Good) {
      tam.push_back(L.tamagawa);
      ts += (ts.empty() ? "" : ", ") + std::to_string(L.tamagawa);
    }
  c.check(tam == std::vector<int>{13, 13, 1}, "Tamagawa numbers " + ts);
}

void criterion3(Criterion& c) {
  Precision prec(50);
  struct {
    const char* name;
    const char* omega;
    const char* threshold;
  } cases[] = {{"ex2", "0.663037499513841", "8.45887267706248e-3"}, {"ex4", "2.60444072643674", "8.13887727011480e-2"}};
  for (auto& k : cases) {
    auto run = certify(k.name);
    const auto& r = run.r;
    check_expansion(c, k.name, std::string(k.name) == "ex2");
    check_eta(c, k.name, r.f.eta, real_cx("-1"), "-1");
    check_real(c, std::string(k.name) + " Omega_E", r.omega.value, k.omega, "1e-9");
    check_real(c, std::string(k.name) + " threshold", r.bound.threshold, k.threshold, "1e-10");
    c.check(run.seconds < 120, std::string(k.name) + " time " + secs(run.seconds) + " (limit 120 s)");
  }
}

void criterion4(Criterion& c) {
  for (auto name : {"ex3", "ex5"}) {
    const auto& r = test::newform(name, 100);
    bool complete = true;
    for (u64 p : primes_up_to(100)) complete &= r.nf.ap.count(p) && !r.nf.ap.at(p).ambiguous;
    c.check(complete, std::string(name) + " a_p determined for all p <= 100");
    size_t euler = 0, good = 0;
    for (u64 p : primes_up_to(100))
      if (!mpz_divisible_ui_p(r.nf.level.get_mpz_t(), p)) ++good, euler += euler_factor_check(r.nf, p);
    c.check(euler == good, std::string(name) + " Euler factors consistent at " + std::to_string(euler) + "/" +
                               std::to_string(good) + " good p <= 100");
    // the paper displays coefficients through q^20 only
    check_expansion(c, name, false);
  }
}

void criterion5(Criterion& c) {
  std::string out;
  int rc = run_status(QCURVE_PROPERTIES, out);
  auto pos = out.find("[doctest] test cases:");
  std::string summary = pos == std::string::npos ? out : out.substr(pos, out.find('\n', pos) - pos);
  c.check(rc == 0, "test_properties exit " + std::to_string(rc) + ": " + summary);
  if (rc != 0) c.check(false, out);
}

void criterion6(Criterion& c) {
  try {
    prepare(load_spec(test::fixture_path("m_square")));
    c.check(false, "E1 over Q(i) was accepted");
  } catch (const Error& e) {
    c.check(e.code() == ErrorCode::SquareDegreeCase, std::string("library raises ") + code_name(e.code()));
  }
  std::string out;
  int rc = run_status(std::string(QCURVE_CLI) + " certify " + test::fixture_path("m_square"), out);
  c.check(rc == 3, "CLI exit status " + std::to_string(rc));
  c.check(out.find("SquareDegreeCase") != std::string::npos && out.find("twist") != std::string::npos,
          "CLI message carries the error and the twist hint");
}

}  // namespace

int main() {
  int failed = 0;
  std::pair<const char*, void (*)(Criterion&)> all[] = {
      {"1  Ex.1 end-to-end", criterion1},
      {"2  Ex.6 end-to-end", criterion2},
      {"3  Ex.2 and Ex.4", criterion3},
      {"4  Ex.3 and Ex.5 a_p for p <= 100", criterion4},
      {"5  property suites", criterion5},
      {"6  square-degree case rejected", criterion6},
};
  for (auto& [title, f] : all) {
    Criterion c{title};
    try {
      f(c);
    } catch (const std::exception& e) {
      c.check(false, std::string("exception: ") + e.what());
    }
    std::cout << (c.ok() ? "PASS " : "FAIL ") << c.title << "\n";
    for (auto& [ok, what] : c.checks) std::cout << "     " << (ok ? "ok   " : "FAIL ") << what << "\n";
    std::cout.flush();
    failed += !c.ok();
  }
  std::cout << (failed ? "acceptance: " + std::to_string(failed) + " of 6 criteria failed\n" : "acceptance: all 6 criteria pass\n");
  return failed ? 1 : 0;
}
