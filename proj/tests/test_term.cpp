#include <doctest.h>

#include <algorithm>
#include <random>

#include "meadow/gen.hpp"
#include "meadow/term.hpp"
#include "support.hpp"

using namespace meadow;
using meadow::test::T;

namespace {

std::uint64_t depth(const Term& t) {
  std::uint64_t d = 0;
  for (const auto& a : t.args()) d = std::max(d, depth(a) + 1);
  return d;
}

// Counts the leaves of a sum of ones, failing on anything else.
std::uint64_t count_ones(const Term& t) {
  if (t.op() == Op::one) return 1;
  REQUIRE(t.op() == Op::add);
  return count_ones(t.arg(0)) + count_ones(t.arg(1));
}

}  // namespace

TEST_CASE("parse builds the expected trees") {
  CHECK(T("1/0") == Term::div(Term::one(), Term::zero()));

  const Term one = Term::one();
  const Term two = Term::add(one, one);
  const Term three = Term::add(one, two);
  const Term six = Term::add(two, Term::add(two, two));
  CHECK(T("6/3") == Term::div(six, three));
  CHECK(T("0/2 * 0/3") == Term::mul(Term::div(Term::zero(), two), Term::div(Term::zero(), three)));

  CHECK(T("a/b*c") == Term::mul(Term::div(T("a"), T("b")), T("c")));
  CHECK(T("a + b + c") == Term::add(Term::add(T("a"), T("b")), T("c")));
  CHECK(T("-x*y") == Term::mul(Term::neg(T("x")), T("y")));
  CHECK(T("_|_") == Term::bot());
  CHECK(T("bot") == Term::bot());
  CHECK(T("cond(x; y; z)") == Term::cond(T("x"), T("y"), T("z")));
  CHECK(T("x_1 + Y2").op() == Op::add);
}

TEST_CASE("numerals are sums of ones with logarithmic depth") {
  CHECK(T("0") == Term::zero());
  CHECK(T("1") == Term::one());
  for (std::uint64_t n : {2u, 3u, 5u, 8u, 13u, 100u, 1023u, 1024u, 99999u}) {
    const Term t = numeral(n);
    CHECK(count_ones(t) == n);
    CHECK(T(std::to_string(n).c_str()) == t);
    std::uint64_t log2 = 0;
    while ((1ull << (log2 + 1)) <= n) ++log2;
    CHECK(depth(t) <= 2 * (log2 + 1));
  }
}

TEST_CASE("parse errors report offset and expectations") {
  for (const char* bad : {"", "1/(x", "x +", "cond(x; y)", "3x", "1 $ 2", "(x))"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse(bad), ParseError);
  }
  try {
    parse("1/(x");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
    CHECK(e.expected().count(")") == 1);
  }
  try {
    parse("x + * y");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
    CHECK(!e.expected().empty());
  }
  CHECK_THROWS_AS(parse("10000001"), ParseError);
}

TEST_CASE("render uses minimal parentheses") {
  CHECK(render(Term::div(Term::one(), Term::zero())) == "1/0");
  CHECK(render(Term::neg(Term::neg(T("x")))) == "-(-x)");
  CHECK(render(Term::add(T("x"), Term::mul(Term::zero(), T("y")))) == "x + 0*y");
  CHECK(render(T("a/(b*c)")) == "a/(b*c)");
  CHECK(render(T("(a + b)*c")) == "(a + b)*c");
  CHECK(render(T("a + (b + c)")) == "a + (b + c)");
  CHECK(render(T("_|_")) == "bot");
}

TEST_CASE("parse inverts render on random terms") {
  Rng rng(11);
  TermShape shape;
  shape.max_depth = 8;
  shape.allow_cond = true;
  for (int i = 0; i < 2000; ++i) {
    const Term t = random_term(rng, shape);
    const std::string text = render(t);
    CAPTURE(text);
    REQUIRE(parse(text) == t);
    REQUIRE(term_from_json(to_json(t)) == t);
    REQUIRE(term_from_json(nlohmann::json(text)) == t);
  }
}

TEST_CASE("substitute") {
  CHECK(substitute(T("x + y"), {{"x", Term::one()}}) == T("1 + y"));
  CHECK(substitute(T("x/x"), {{"x", T("1/0")}}) == T("(1/0)/(1/0)"));
  CHECK(substitute(T("x"), {}) == T("x"));
  // Simultaneous, not sequential.
  CHECK(substitute(T("x + y"), {{"x", T("y")}, {"y", T("x")}}) == T("y + x"));
}

TEST_CASE("substitution composes") {
  Rng rng(5);
  TermShape shape;
  shape.max_depth = 5;
  shape.allow_cond = true;
  TermShape small = shape;
  small.max_depth = 2;
  small.vars = {"x", "y", "z", "w"};
  for (int i = 0; i < 500; ++i) {
    const Term t = random_term(rng, shape);
    Substitution s1{{"x", random_term(rng, small)}, {"y", random_term(rng, small)}};
    Substitution s2{{"z", random_term(rng, small)}, {"w", random_term(rng, small)}};
    Substitution composed = s2;
    for (const auto& [v, u] : s1) composed.insert_or_assign(v, substitute(u, s2));
    REQUIRE(substitute(substitute(t, s1), s2) == substitute(t, composed));
  }
}

TEST_CASE("free_vars") {
  CHECK(free_vars(T("x + 0*y")) == std::set<std::string>{"x", "y"});
  CHECK(free_vars(T("1/0")).empty());
  CHECK(free_vars(T("cond(x; y; x)")) == std::set<std::string>{"x", "y"});
}

TEST_CASE("is_flat_fracterm") {
  CHECK(is_flat_fracterm(T("(x+1)/(y*y)")));
  CHECK_FALSE(is_flat_fracterm(T("(1/x)/y")));
  CHECK_FALSE(is_flat_fracterm(T("x + 1")));
  CHECK_FALSE(is_flat_fracterm(T("bot/1")));
  CHECK_FALSE(is_flat_fracterm(T("x/cond(x; y; 1)")));
}

TEST_CASE("positions") {
  const Term t = T("x + 0*y");
  const std::vector<std::size_t> p{1, 0};
  CHECK(*subterm_at(t, p) == Term::zero());
  CHECK(*replace_at(t, p, T("z")) == T("x + z*y"));
  const std::vector<std::size_t> bad{0, 0};
  CHECK_FALSE(subterm_at(t, bad).has_value());
  CHECK_FALSE(replace_at(t, bad, T("z")).has_value());
  CHECK(*subterm_at(t, {}) == t);
}

TEST_CASE("equations and conditional equations") {
  const Equation e = parse_equation("x/y * u/v = (x*u)/(y*v)");
  CHECK(e.lhs == T("x/y * u/v"));
  CHECK(parse_equation(render(e)) == e);
  CHECK(equation_from_json(to_json(e)) == e);

  const ConditionalEquation nvl = parse_conditional("0*x != 0 -> x = bot");
  REQUIRE(nvl.conditions.size() == 1);
  CHECK(nvl.conditions[0].polarity == Polarity::not_equal);
  CHECK(nvl.has_negated_condition());
  CHECK(parse_conditional(render(nvl)).conclusion == nvl.conclusion);

  const ConditionalEquation two = parse_conditional("x = y /\\ y = z -> x = z");
  CHECK(two.conditions.size() == 2);
  CHECK(parse_conditional("x = x").is_equation());
  CHECK_THROWS_AS(parse_conditional("x = y ->"), ParseError);
}
