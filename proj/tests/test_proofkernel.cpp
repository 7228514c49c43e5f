#include <doctest.h>

#include <fstream>
#include <sstream>

#include "meadow/gen.hpp"
#include "meadow/laws.hpp"
#include "meadow/proofkernel.hpp"
#include "support.hpp"

using namespace meadow;
using namespace meadow::test;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string file_name(std::string name) {
  for (auto& c : name) c = c == '/' ? '.' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return name + ".jsonl";
}

ProofResult check_text(const std::string& jsonl) { return check_proof(parse_script(jsonl)); }

const char* const header = R"({"kind":"target","name":"T","laws":"e-ftc-cm","hyps":[],"concl":"x = x"})";

}  // namespace

TEST_CASE("shipped scripts are accepted") {
  const auto scripts = shipped_scripts();
  CHECK(scripts.size() == 6);
  for (const auto& s : scripts) {
    CAPTURE(s.name);
    const ProofResult r = check_proof(s);
    CHECK_MESSAGE(r.accepted, r.detail);
    CHECK(check_proof(s, law_set(s.laws)).accepted);
  }
}

TEST_CASE("shipped files match the builder output") {
  for (const auto& s : shipped_scripts()) {
    const std::string text = slurp(data_path("proofs/" + file_name(s.name)));
    CHECK(text == to_jsonl(s));
    const ProofScript back = parse_script(text);
    CHECK(to_jsonl(back) == text);
    CHECK(check_proof(back).accepted);
  }
}

TEST_CASE("mutants are rejected for the stated reason") {
  const auto mutants = shipped_mutants();
  CHECK(mutants.size() >= 8);
  const auto manifest = nlohmann::json::parse(slurp(data_path("proofs/mutants/manifest.json")));
  REQUIRE(manifest.size() == mutants.size());
  std::set<Reject> reasons;
  for (std::size_t i = 0; i < mutants.size(); ++i) {
    const Mutant& m = mutants[i];
    CAPTURE(m.script.name);
    const ProofResult r = check_proof(m.script);
    CHECK_FALSE(r.accepted);
    CHECK(r.reason == m.expected);
    CHECK(r.step == m.step);
    reasons.insert(r.reason);

    CHECK(manifest[i]["file"] == file_name(m.script.name));
    CHECK(manifest[i]["reason"] == std::string(reject_name(m.expected)));
    CHECK(manifest[i]["step"] == m.step);
    const ProofResult from_file = check_proof(load_script(data_path("proofs/mutants/" + file_name(m.script.name))));
    CHECK(from_file.reason == m.expected);
    CHECK(from_file.step == m.step);
  }
  CHECK(reasons.size() >= 12);
}

TEST_CASE("AVL_SQUARES needs AVL") {
  for (const auto& s : shipped_scripts()) {
    if (s.name != "AVL_SQUARES") continue;
    const ProofResult r = check_proof(s, law_set("e-ftc-cm"));
    CHECK_FALSE(r.accepted);
    CHECK(r.reason == Reject::unknown_law);
  }
}

TEST_CASE("every checked step is valid in small fields") {
  const auto z3 = make_zn_inverse_division(3);
  const auto z7 = make_zn_inverse_division(7);
  std::size_t judged = 0;
  for (const auto& s : shipped_scripts()) {
    CAPTURE(s.name);
    REQUIRE(check_proof(s).accepted);
    for (const auto& step : s.steps) {
      ConditionalEquation ce{{}, step.claim, std::nullopt};
      for (const auto& h : step.hyps.value_or(s.target.hyps)) ce.conditions.push_back({h, Polarity::equal});
      CAPTURE(step.id);
      REQUIRE(check_conditional(*z3, ce, Mode::exhaustive()).holds);
      REQUIRE(check_conditional(*z7, ce, Mode::exhaustive()).holds);
      ++judged;
    }
  }
  CHECK(judged > 500);
}

TEST_CASE("individual rules") {
  // refl
  CHECK(check_text(std::string(header) + "\n" + R"({"id":"a","rule":"refl","claim":"x = x"})").accepted);
  ProofResult r = check_text(std::string(header) + "\n" + R"({"id":"a","rule":"refl","claim":"x = y"})");
  CHECK(r.reason == Reject::claim_mismatch);

  // empty
  r = check_text(header);
  CHECK_FALSE(r.accepted);
  CHECK(r.reason == Reject::empty_script);

  // target
  r = check_text(std::string(header) + "\n" + R"({"id":"a","rule":"refl","claim":"y = y"})");
  CHECK(r.reason == Reject::target_mismatch);

  // axiom, sym, cong, trans
  const std::string chain = R"({"kind":"target","name":"T","laws":"e-ftc-cm","hyps":[],"concl":"0 + (x + 0) = 0 + x"}
{"id":"a","rule":"axiom","law":"eq3","subst":{},"claim":"x + 0 = x"}
{"id":"b","rule":"cong","of":"a","path":[1],"claim":"0 + (x + 0) = 0 + x"})";
  CHECK(check_text(chain).accepted);

  const std::string wrong_side = R"({"kind":"target","name":"T","laws":"e-ftc-cm","hyps":[],"concl":"0 + (x + 0) = 0 + x"}
{"id":"a","rule":"axiom","law":"eq3","subst":{},"claim":"x + 0 = x"}
{"id":"b","rule":"cong","of":"a","path":[0],"claim":"0 + (x + 0) = 0 + x"})";
  CHECK(check_text(wrong_side).reason == Reject::claim_mismatch);

  const std::string sym = R"({"kind":"target","name":"T","laws":"e-ftc-cm","hyps":[],"concl":"x = x + 0"}
{"id":"a","rule":"axiom","law":"eq3","subst":{},"claim":"x + 0 = x"}
{"id":"b","rule":"sym","of":"a","claim":"x = x + 0"})";
  CHECK(check_text(sym).accepted);

  // cond with a negated condition
  const std::string nvl = R"({"kind":"target","name":"T","laws":"e-ftc-cm+nvl","hyps":["0*x = 1"],"concl":"x = bot"}
{"id":"a","rule":"hyp","index":0,"claim":"0*x = 1"}
{"id":"b","rule":"cond","law":"nvl","subst":{},"of":["a"],"claim":"x = bot"})";
  r = check_text(nvl);
  CHECK(r.reason == Reject::negated_condition);
  CHECK(r.step == 1);

  // substitution into a variable of the context
  const std::string capture = R"({"kind":"target","name":"T","laws":"e-ftc-cm","hyps":["x = 1"],"concl":"0 = 1"}
{"id":"a","rule":"hyp","index":0,"claim":"x = 1"}
{"id":"b","rule":"subst","of":"a","subst":{"x":"0"},"claim":"0 = 1"})";
  CHECK(check_text(capture).reason == Reject::substitution_capture);
}

TEST_CASE("result JSON") {
  const auto mutants = shipped_mutants();
  const ProofResult r = check_proof(mutants.front().script);
  const auto j = to_json(r, mutants.front().script);
  CHECK(j["accepted"] == false);
  CHECK(j["reason"] == std::string(reject_name(mutants.front().expected)));
  CHECK(j["step"] == mutants.front().step);
}

TEST_CASE("script syntax errors") {
  CHECK_THROWS_AS(parse_script(""), ScriptError);
  CHECK_THROWS_AS(parse_script("{"), ScriptError);
  CHECK_THROWS_AS(parse_script(R"({"id":"a","rule":"refl","claim":"x = x"})"), ScriptError);
  CHECK_THROWS_AS(parse_script(std::string(header) + "\n" + R"({"id":"a","rule":"magic","claim":"x = x"})"), ScriptError);
  CHECK_THROWS_AS(parse_script(std::string(header) + "\n" + R"({"id":"a","rule":"refl","claim":"x = "})"), ScriptError);
  try {
    parse_script(std::string(header) + "\n\n" + R"({"id":"a","rule":"refl"})");
    FAIL("no error");
  } catch (const ScriptError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS(load_script(data_path("proofs/does_not_exist.jsonl")));
}

TEST_CASE("rcm soundness examples") {
  const auto z10 = make_zn_inverse_division(10);
  RcmCheck c = check_rcm_soundness(*z10, T("1/x"), T("1/(x*x)"), {});
  CHECK(c.premises_hold);
  CHECK(c.conclusion_holds);
  CHECK(c.sound());

  const auto z7 = make_zn_inverse_division(7);
  c = check_rcm_soundness(*z7, T("x"), T("x"), {});
  CHECK(c.premises_hold);
  CHECK(c.sound());

  // r = bot at x = 0 without t = bot: the premises fail, nothing to check.
  c = check_rcm_soundness(*z7, T("x"), T("1/x"), {});
  CHECK_FALSE(c.premises_hold);
  CHECK(c.sound());

  c = check_rcm_soundness(*z10, T("y/x"), T("1/x"), {parse_equation("y = 1")});
  CHECK(c.premises_hold);
  CHECK(c.sound());

  CHECK_THROWS_AS(check_rcm_soundness(*z7, T("a + b + c"), T("d + e"), {}), LawError);
}

TEST_CASE("rcm is sound on random instances") {
  Rng rng(19);
  TermShape shape;
  shape.max_depth = 3;
  shape.vars = {"x", "y"};
  std::vector<TotalPtr> rings;
  for (std::int64_t n = 2; n <= 12; ++n) rings.push_back(make_zn_inverse_division(n));
  int with_premises = 0;
  for (int i = 0; i < 150; ++i) {
    const Term t = random_term(rng, shape), r = random_term(rng, shape);
    std::vector<Equation> e;
    if (i % 2) e.push_back({random_term(rng, shape), random_term(rng, shape), std::nullopt});
    for (const auto& a : rings) {
      const RcmCheck c = check_rcm_soundness(*a, t, r, e);
      with_premises += c.premises_hold;
      REQUIRE(c.sound());
    }
  }
  CHECK(with_premises > 100);
}
