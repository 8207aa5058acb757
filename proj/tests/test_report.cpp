#include <doctest.h>

#include <optional>

#include "resolvent/error.hpp"
#include "resolvent/report.hpp"

using namespace resolvent;

namespace {

const char* kDiag = R"({
  "ring": {"vars": ["x", "y"]},
  "objects": {"phi": {"kind": "matrix", "entries": [["x", "0"], ["0", "y"]]}},
  "params": {"target": "phi"}
})";

std::string parse_failure(const std::string& text) {
  try {
    load_problem_text(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("problem loading names the offending stanza") {
  CHECK(parse_failure(R"({"objects": {}})").find("ring") != std::string::npos);
  CHECK(parse_failure(R"({"ring": {"vars": ["x"]}, "objects": {"m": {"kind": "matrix", "entries": [["x", "x +"]]}}})")
            .find("objects.m.entries[0][1]") != std::string::npos);
  CHECK(parse_failure(R"({"ring": {"vars": ["x"]}, "objects": {"m": {"kind": "tensor"}}})").find("objects.m.kind") !=
        std::string::npos);
  CHECK(parse_failure(R"({"ring": {"vars": ["x"]}, "params": {"target": "nope"}})").find("params.target") !=
        std::string::npos);
  CHECK(parse_failure(R"({"ring": {"vars": ["x", "y"]}, "objects": {"g": {"kind": "graded", "source_twists": [0],
        "target_twists": [2], "entries": [["x + y"]]}}})")
            .find("objects.g") != std::string::npos);
  CHECK_THROWS_AS(load_problem_text("{\"ring\": "), ParseError);
}

TEST_CASE("flags override the params stanza") {
  ParamOverrides ov;
  ov.max_depth = 3;
  ov.seed = 9;
  auto p = load_problem_text(R"({"ring": {"vars": ["x"]}, "params": {"max_depth": 5, "seed": 2, "degree_cap": 11}})", ov);
  CHECK(p.options.max_depth == 3);
  CHECK(p.options.seed == 9);
  CHECK(p.options.degree_cap == 11);
}

TEST_CASE("reports are deterministic and carry no timing") {
  auto a = render_json(run_command(Command::Resolve, load_problem_text(kDiag)));
  auto b = render_json(run_command(Command::Resolve, load_problem_text(kDiag)));
  CHECK(a == b);
  auto j = Json::parse(a);
  CHECK(j["command"] == "resolve");
  CHECK(j["target"] == "phi");
  CHECK(j["result"]["cohomology"] == Json::array({0, 0}));
  CHECK(j["digest"] == report_digest(j));
  CHECK(a.find("time") == std::string::npos);
  CHECK(a.find("elapsed") == std::string::npos);
}

TEST_CASE("check accepts reports and explains rejections") {
  for (auto c : {Command::Diagonalize, Command::Resolve, Command::Fitting}) {
    auto text = render_json(run_command(c, load_problem_text(kDiag)));
    auto ok = check_report(text);
    CHECK_MESSAGE(ok.ok, ok.reason);
    CHECK(ok.checked == to_string(c));
  }
  auto report = run_command(Command::Diagonalize, load_problem_text(kDiag));
  CHECK(check_report(render_json(report)).certificates == 2);

  auto forged = report;
  forged["result"]["leaves"][0]["certificate"]["V_det"] = "2*x";
  auto bad = check_report(render_json(forged));
  CHECK_FALSE(bad.ok);
  CHECK(bad.reason.find("NonUnitDet") != std::string::npos);

  auto stale = report;
  stale["digest"] = "fnv1a64:0000000000000000";
  bad = check_report(render_json(stale));
  CHECK_FALSE(bad.ok);
  CHECK(bad.reason.find("digest") != std::string::npos);

  auto other = report;
  other["problem"]["params"]["max_depth"] = 7;
  other["digest"] = report_digest(other);
  CHECK(check_report(render_json(other)).ok);
}

TEST_CASE("commands reject targets of the wrong kind") {
  auto p = load_problem_text(kDiag);
  try {
    run_command(Command::Euler, p);
    FAIL("euler accepted a plain matrix");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
  }
  CHECK_FALSE(parse_command("frobnicate").has_value());
  CHECK_THROWS_AS(run_command(Command::Check, p), Error);
}
