#include <doctest.h>

#include "helpers.hpp"

using namespace kt;

namespace {

int error_line(const std::string& text) {
  try {
    parse_problem(text, "t.json");
  } catch (const ParseError& e) {
    return static_cast<int>(e.line());
  }
  return -1;
}

const char* kMinimal = R"({
  "field": {"characteristic": 0},
  "algebra": {"variables": [{"name": "x", "weight": 1}], "relators": []},
  "module": {"generators": [{"name": "g", "degree": 0}], "relations": []}
})";

}  // namespace

TEST_CASE("bundled problems parse") {
  CHECK(bundled_problems().size() == 7);
  for (const auto& [name, text] : bundled_problems()) {
    const Problem p = parse_problem(text, name);
    CHECK(p.module->rank() > 0);
    CHECK(p.task.degree_bound.has_value());
  }
}

TEST_CASE("regular-ideal-xy is the ideal (x, y)") {
  const auto [source, text] = load_problem_text("examples/regular-ideal-xy.json");
  CHECK(source == "bundled:regular-ideal-xy");
  const Problem p = parse_problem(text, source);
  REQUIRE(p.regular_ideal.has_value());
  CHECK(p.regular_ideal->presentation_ok);
  CHECK(p.module->rank() == 2);
  CHECK(p.module->relations.size() == 1);
  const auto names = p.algebra->names();
  const auto& rel = p.module->relations[0];
  // y g1 - x g2 up to sign.
  CHECK((rel[0] == parse_polynomial("y", names) || rel[0] == parse_polynomial("-y", names)));
  CHECK(piece_dims(*p.module, 0, 4) == std::vector<Index>{0, 2, 3, 4, 5});
}

TEST_CASE("remark ring data") {
  const Problem p = parse_problem(*bundled_problem("remark-ring"), "remark-ring");
  CHECK(p.algebra->variable_count() == 6);
  CHECK(p.algebra->relators.size() == 4);
  const auto names = p.algebra->names();
  CHECK(p.algebra->relators[3] == parse_polynomial("u*t_1", names));
  CHECK(p.module->rank() == 2);
  CHECK(p.module->relations[0][0] == parse_polynomial("u", names));
  CHECK(p.module->relations[0][1] == parse_polynomial("v", names));
}

TEST_CASE("characteristic override re-reads coefficients") {
  const Problem p = parse_problem(*bundled_problem("regular-ideal-xyz"), "xyz");
  const Problem q = with_characteristic(p, 2);
  CHECK(q.algebra->field.characteristic == 2);
  CHECK(q.module->algebra == q.algebra);
  CHECK(q.regular_ideal->presentation_ok);
  CHECK_THROWS_AS(with_characteristic(p, 9), ValidationError);
}

TEST_CASE("malformed problems are rejected with positions") {
  CHECK_NOTHROW(parse_problem(kMinimal));

  std::string zero_weight = kMinimal;
  zero_weight.replace(zero_weight.find("\"weight\": 1"), 11, "\"weight\": 0");
  CHECK(error_line(zero_weight) == 3);

  std::string bad_char = kMinimal;
  bad_char.replace(bad_char.find("\"characteristic\": 0"), 19, "\"characteristic\": 6");
  CHECK(error_line(bad_char) == 2);

  std::string inhomogeneous = kMinimal;
  inhomogeneous.replace(inhomogeneous.find("\"relators\": []"), 14, "\"relators\": [\"x^2 + x\"]");
  CHECK(error_line(inhomogeneous) == 3);

  std::string unknown_var = kMinimal;
  unknown_var.replace(unknown_var.find("\"relations\": []"), 15, "\"relations\": [[\"z\"]]");
  try {
    parse_problem(unknown_var, "t.json");
    FAIL("unknown variable accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).find("z") != std::string::npos);
  }

  std::string unknown_key = kMinimal;
  unknown_key.replace(unknown_key.find("\"field\""), 7, "\"fields\"");
  CHECK_THROWS_AS(parse_problem(unknown_key), ParseError);

  CHECK(error_line("{\n  \"field\": {\"characteristic\": 0},\n  oops\n}") == 3);
  CHECK_THROWS_AS(parse_problem("[]"), ParseError);
  CHECK_THROWS_AS(load_problem_text("no/such/file.json"), ParseError);
}

TEST_CASE("bundle tables") {
  const auto t = parse_bundle_table(R"({"r": 1, "n": 2, "smooth_dimension": 0,
    "entries": [{"q": 0, "j": 0, "dim": 3}, {"q": 0, "j": 1, "dim": 4}, {"q": 0, "j": 2, "dim": 1}]})");
  CHECK(t.r == 1);
  CHECK(t.characteristic_zero);
  CHECK(t.h.at({0, 1}) == 4);
  CHECK(t.smooth_dimension == 0);
  CHECK_THROWS_AS(parse_bundle_table(R"({"r": 1, "n": 2, "entries": [{"q": 0, "j": 0, "dim": -1}]})"), ParseError);
  CHECK_THROWS_AS(parse_bundle_table(R"({"r": 1, "n": 2, "entries": [{"q": 0, "j": 0, "dim": 1},
    {"q": 0, "j": 0, "dim": 1}]})"), ParseError);
}

TEST_CASE("digest") {
  CHECK(digest("") == "cbf29ce484222325");
  CHECK(digest("a") == "af63dc4c8601ec8c");
}
