#include <doctest.h>

#include "qcurve/error.hpp"
#include "support.hpp"

using namespace qcurve;
using namespace qcurve::app;

namespace {

ErrorCode spec_error(const char* text) {
  try {
    parse_spec(Json::parse(text));
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("spec parsing") {
  CHECK(spec_error("[]") == ErrorCode::InvalidInput);
  CHECK(spec_error(R"({"a_invariants": [0,0,0,1,1], "alpha": 1})") == ErrorCode::InvalidInput);
  CHECK(spec_error(R"({"d": 12, "a_invariants": [0,0,0,1,1], "alpha": 1})") == ErrorCode::NonSquarefree);
  CHECK(spec_error(R"({"d": 1, "a_invariants": [0,0,0,1,1], "alpha": 1})") == ErrorCode::DegenerateD);
  CHECK(spec_error(R"({"d": 2, "a_invariants": [0,0,1,1], "alpha": 1})") == ErrorCode::InvalidInput);
  CHECK(spec_error(R"({"d": 2, "a_invariants": [0,0,0,1,1]})") == ErrorCode::InvalidInput);
  CHECK(spec_error(R"({"d": 2, "a_invariants": [0,0,0,"1+x",1], "alpha": 1})") == ErrorCode::InvalidInput);
  CHECK(spec_error(R"({"d": 2, "a_invariants": [0,0,0,1,1], "alpha": 1, "name": 5})") == ErrorCode::InvalidInput);
  CHECK(spec_error(R"({"d": 2, "a_invariants": [0,0,0,1,1], "alpha": 1, "overrides": {"level": "x"}})") ==
        ErrorCode::InvalidInput);
  CHECK(spec_error(R"({"d": 2, "a_invariants": [0,0,0,1,1], "isogeny": {"x_map": [0, 1]}})") ==
        ErrorCode::InvalidInput);

  auto s = parse_spec(Json::parse(R"J({"d": 2, "a_invariants": [0, ["1/2", 3], 0, "1+sqrt(2)", -4], "alpha": "-2-sqrt(2)"})J"));
  CHECK(s.a[1] == FieldElement(2, mpq_class(1, 2), 3));
  CHECK(s.a[3] == FieldElement(2, 1, 1));
  CHECK(s.a[4] == FieldElement(2, -4));
  CHECK(*s.alpha == FieldElement(2, -2, -1));
}

TEST_CASE("exit codes") {
  CHECK(exit_code(ErrorCode::InvalidInput) == 2);
  CHECK(exit_code(ErrorCode::NotAnIsogeny) == 2);
  CHECK(exit_code(ErrorCode::SquareDegreeCase) == 3);
  CHECK(exit_code(ErrorCode::UnsupportedEll) == 3);
  CHECK(exit_code(ErrorCode::GraphTooLarge) == 3);
  CHECK(exit_code(ErrorCode::EtaUnavailable) == 4);
  CHECK(exit_code(ErrorCode::PrecisionExhausted) == 4);
}

TEST_CASE("square degree and CM inputs") {
  try {
    prepare(load_spec(test::fixture_path("m_square")));
    FAIL("expected SquareDegreeCase");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SquareDegreeCase);
  }
  // y^2 = x^3 + x over Q(sqrt 2) has j = 1728
  try {
    prepare(parse_spec(Json::parse(R"({"d": 2, "a_invariants": [0,0,0,1,0], "alpha": 1})")));
    FAIL("expected Unsupported");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unsupported);
  }
}

TEST_CASE("reports do not depend on the worker count") {
  const auto& P = test::fixture("ex6");
  Options a, b;
  a.workers = 1;
  b.workers = 5;
  CHECK(certify_json(P, run_certify(P, a), a).dump() == certify_json(P, run_certify(P, b), b).dump());
  auto na = newform_json(P, run_newform(P, a, 200), a), nb = newform_json(P, run_newform(P, b, 200), b);
  CHECK(na.dump() == nb.dump());
}

TEST_CASE("certify report") {
  const auto& P = test::fixture("ex6");
  Options o;
  Json j = certify_json(P, run_certify(P, o), o);
  CHECK(j["level"] == "170");
  CHECK(j["m"] == -1);
  CHECK(j["bound"]["B"] == "244996258");
  CHECK(j["verdict"]["kind"] == "Ratio");
  CHECK(j["verdict"]["ratio"] == "1");
  CHECK(j["provenance"]["schema"] == 1);
  CHECK(j["provenance"]["digits"] == 30);
  std::vector<int> tam;
  for (auto& L : j["local"])
    if (L["reduction"] != "good") tam.push_back(L["tamagawa"].get<int>());
  CHECK(tam == std::vector<int>{13, 13, 1});
  bool heuristic = false;
  for (auto& c : j["caveats"]) heuristic |= c == "heuristic-precision";
  CHECK(heuristic);
}
