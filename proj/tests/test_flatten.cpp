#include <doctest.h>

#include "meadow/finite.hpp"
#include "meadow/flatten.hpp"
#include "meadow/gen.hpp"
#include "support.hpp"

using namespace meadow;
using namespace meadow::test;

namespace {

// Every valuation of `vars` over the carrier, in odometer order.
template <class F>
void for_each_valuation(const std::vector<Element>& carrier, const std::vector<std::string>& vars, F&& f) {
  std::vector<std::size_t> at(vars.size(), 0);
  while (true) {
    Valuation v;
    for (std::size_t i = 0; i < vars.size(); ++i) v.emplace(vars[i], carrier[at[i]]);
    f(v);
    std::size_t i = 0;
    while (i < at.size() && ++at[i] == carrier.size()) at[i++] = 0;
    if (i == at.size()) return;
  }
}

bool oracle_equal(const Term& t, const Term& flat, const TotalAlgebra& a) {
  const auto fv = free_vars(t);
  bool same = true;
  for_each_valuation(a.elements(), {fv.begin(), fv.end()}, [&](const Valuation& v) {
    same = same && eval(t, a, v) == eval(flat, a, v);
  });
  return same;
}

}  // namespace

TEST_CASE("flatten examples") {
  auto f = flatten(T("x"));
  CHECK(f.num == T("x"));
  CHECK(f.den == T("1"));

  f = flatten(T("bot"));
  CHECK(f.num == T("1"));
  CHECK(f.den == T("0"));

  f = flatten(T("1/x + 1/y"));
  CHECK(f.as_term() == T("(1*y + x*1)/(x*y)"));
  for (int p : {5, 7}) CHECK(oracle_equal(T("1/x + 1/y"), f.as_term(), *make_zn_inverse_division(p)));

  f = flatten(T("(1/x)/y"));
  CHECK(f.num == T("1*1*1"));
  CHECK(f.den == T("x*y*1"));
  for (int p : {5, 7}) CHECK(oracle_equal(T("(1/x)/y"), f.as_term(), *make_zn_inverse_division(p)));

  f = flatten(T("-(x/y)"));
  CHECK(f.as_term() == T("(-x)/y"));
  CHECK(flatten(T("(x/y)*(u/v)")).as_term() == T("(x*u)/(y*v)"));

  CHECK_THROWS_AS(flatten(T("cond(x; y; z)")), std::invalid_argument);
}

TEST_CASE("flatten_stats counts nodes") {
  auto s = flatten_stats(T("bot"));
  CHECK(s.input_size == 1);
  CHECK(s.output_num_size == 1);
  CHECK(s.output_den_size == 1);

  s = flatten_stats(T("x"));
  CHECK(s.input_size == 1);
  CHECK(s.output_num_size == 1);
  CHECK(s.output_den_size == 1);

  // num 1*y + x*1 has 7 nodes, den x*y has 3.
  s = flatten_stats(T("1/x + 1/y"));
  CHECK(s.input_size == 7);
  CHECK(s.output_num_size == 7);
  CHECK(s.output_den_size == 3);
}

TEST_CASE("the division rule agrees with the model, the field rule does not") {
  const auto z5 = make_zn_inverse_division(5);
  const Term lhs = T("(p/q)/(r/s)");
  const Term rule = T("(p*s*s)/(q*r*s)");
  const Term field = T("(p*s)/(q*r)");
  bool field_fails = false;
  for_each_valuation(z5->elements(), {"p", "q", "r", "s"}, [&](const Valuation& v) {
    REQUIRE(eval(lhs, *z5, v) == eval(rule, *z5, v));
    field_fails = field_fails || eval(lhs, *z5, v) != eval(field, *z5, v);
  });
  CHECK(field_fails);
}

TEST_CASE("flattened terms are flat and equal to their input") {
  Rng rng(2024);
  TermShape shape;
  shape.max_depth = 8;
  std::vector<TotalPtr> fields;
  for (int p : {2, 3, 5, 7}) fields.push_back(make_zn_inverse_division(p));
  const auto q = make_rational_cm();

  for (int i = 0; i < 150; ++i) {
    const Term t = random_term(rng, shape);
    const FlatFracterm f = flatten(t);
    const Term flat = f.as_term();
    CAPTURE(render(t));
    REQUIRE(is_flat_fracterm(flat));
    REQUIRE(is_free_of(f.num, {Op::div, Op::bot, Op::cond}));
    REQUIRE(is_free_of(f.den, {Op::div, Op::bot, Op::cond}));
    for (const auto& a : fields) REQUIRE(oracle_equal(t, flat, *a));
    for (int k = 0; k < 20; ++k) {
      Valuation v;
      for (const auto& x : free_vars(t)) v.emplace(x, q->sample(rng));
      REQUIRE(eval(t, *q, v) == eval(flat, *q, v));
    }
  }
}

TEST_CASE("compiled terms agree with eval") {
  Rng rng(8);
  TermShape shape;
  shape.max_depth = 6;
  shape.allow_cond = true;
  const std::vector<std::string> vars = shape.vars;
  for (const auto& a : finite_instances(7)) {
    const FiniteTables ft(*a);
    std::vector<FiniteTables::Index> scratch;
    for (int i = 0; i < 40; ++i) {
      const Term t = random_term(rng, shape);
      const CompiledTerm c(t, vars);
      for_each_valuation(a->elements(), vars, [&](const Valuation& v) {
        FiniteTables::Index slots[3];
        for (std::size_t k = 0; k < 3; ++k) slots[k] = ft.index_of(v.at(vars[k]));
        REQUIRE(ft.element(c.eval(ft, slots, scratch)) == eval(t, *a, v));
      });
    }
  }
}
