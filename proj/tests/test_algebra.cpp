#include <doctest.h>

#include <random>

#include "meadow/algebra.hpp"
#include "meadow/gen.hpp"
#include "meadow/laws.hpp"
#include "support.hpp"

using namespace meadow;
using namespace meadow::test;

namespace {

Element lvl0(const char* q) { return Element::of(Rational::parse(q), Level::base); }
Element lvlc(const char* q) { return Element::of(Rational::parse(q), Level::upper); }

}  // namespace

TEST_CASE("Z_10 with inverse-based division") {
  const auto z10 = make_zn_inverse_division(10);
  CHECK(z10->div(num(6), num(3)) == num(2));
  CHECK(z10->div(num(6), num(2)).is_bot());
  CHECK(z10->div(num(1), num(3)) == num(7));
  CHECK(z10->add(num(7), num(5)) == num(2));
  CHECK(z10->neg(num(3)) == num(7));
  CHECK(z10->elements().size() == 11);
  CHECK(z10->elements().back().is_bot());
  CHECK_THROWS_AS(make_zn_inverse_division(1), AlgebraError);
}

TEST_CASE("units of Z_n match brute force") {
  CHECK(zn_units(10) == std::vector<std::int64_t>{1, 3, 7, 9});
  for (std::int64_t n = 2; n <= 40; ++n) {
    std::vector<std::int64_t> expected;
    for (std::int64_t b = 0; b < n; ++b)
      for (std::int64_t x = 0; x < n; ++x)
        if (b * x % n == 1 % n) {
          expected.push_back(b);
          break;
        }
    CHECK(zn_units(n) == expected);
  }
}

TEST_CASE("inverses in Z_n are unique and agree with div") {
  for (std::int64_t n = 2; n <= 50; ++n) {
    const auto z = make_zn_inverse_division(n);
    for (std::int64_t a = 0; a < n; ++a) {
      std::vector<std::int64_t> inv;
      for (std::int64_t c = 0; c < n; ++c)
        if (a * c % n == 1 % n) inv.push_back(c);
      REQUIRE(inv.size() <= 1);
      const Element d = z->div(num(1), num(a));
      if (inv.empty())
        CHECK(d.is_bot());
      else
        CHECK(d == num(inv[0]));
    }
  }
}

TEST_CASE("direct division solutions") {
  CHECK(direct_division_solutions(6, 2, 4) == std::vector<std::int64_t>{2, 5});
  CHECK(direct_division_solutions(10, 1, 3) == std::vector<std::int64_t>{7});
  CHECK(direct_division_solutions(6, 1, 2).empty());
}

TEST_CASE("integers with inverse-based division") {
  const auto z = make_int_inverse_division();
  CHECK(z->div(num(5), num(-1)) == num(-5));
  CHECK(z->div(num(6), num(3)).is_bot());
  CHECK(z->div(num(1), num(2)).is_bot());
  CHECK(z->mul(z->zero(), num(2)) == num(0));
  CHECK_FALSE(z->is_finite());
}

TEST_CASE("rational common meadow") {
  const auto q = make_rational_cm();
  CHECK(q->div(num(1), num(0)).is_bot());
  CHECK(q->div(rat("2/3"), rat("4/9")) == rat("3/2"));
  CHECK(eval(T("cond(0; 1; bot)"), *q, {}) == num(0));
  CHECK(eval(T("cond(0; 0; 1)"), *q, {}) == num(1));
  CHECK(eval(T("cond(0; bot; 1)"), *q, {}).is_bot());
  CHECK(q->encode(rat("3/2")) == "3/2");
  CHECK(q->encode(Element::bot()) == "bot");
  CHECK(q->decode(nlohmann::json("-4/6")) == rat("-2/3"));
}

TEST_CASE("integers with direct division") {
  const auto p = make_int_direct_division();
  CHECK(p->div(num(12), num(4)) == num(3));
  CHECK_FALSE(p->div(num(1), num(3)).has_value());
  CHECK(p->div(num(0), num(5)) == num(0));
  CHECK_FALSE(p->div(num(0), num(0)).has_value());
  CHECK(p->div(num(-12), num(4)) == num(-3));
  const auto e = enlarge(p);
  CHECK(e->div(num(1), num(3)).is_bot());
  CHECK(e->add(num(3), Element::bot()).is_bot());
}

TEST_CASE("bounded rationals") {
  const auto p = make_bounded_q(Rational(10));
  CHECK_FALSE(p->add(num(6), num(7)).has_value());
  CHECK(p->div(num(1), num(3)) == rat("1/3"));
  CHECK_FALSE(p->div(num(1), num(0)).has_value());
  CHECK_FALSE(p->mul(num(-5), num(2)).has_value());
  CHECK(p->mul(num(-3), num(3)) == num(-9));
  CHECK_THROWS_AS(make_bounded_q(Rational(1)), AlgebraError);
}

TEST_CASE("three-level lattice") {
  const auto m = make_three_level_lattice();
  CHECK(m->mul(m->zero(), lvl0("1/3")) == lvl0("0"));
  CHECK(m->mul(m->zero(), lvlc("1/2")) == lvlc("0"));
  CHECK(m->div(m->one(), lvl0("3")) == lvl0("1/3"));
  CHECK(m->div(m->one(), lvl0("-9")) == lvl0("-1/9"));
  CHECK(m->div(m->one(), lvl0("2")) == lvlc("1/2"));
  CHECK(m->div(m->one(), lvl0("0")).is_bot());
  CHECK(m->add(lvl0("1"), lvlc("1/2")) == lvlc("3/2"));
  CHECK(m->div(lvlc("1"), lvlc("0")).is_bot());
  CHECK(m->encode(lvl0("1/3")) == nlohmann::json{{"level", "0"}, {"value", "1/3"}});
  CHECK(m->decode(nlohmann::json{{"level", "c"}, {"value", "1/2"}}) == lvlc("1/2"));
  // Zero is level-local: (levelC, 0) selects the else branch.
  CHECK(eval(T("cond(x; y; z)"), *m, {{"x", lvl0("1")}, {"y", lvlc("0")}, {"z", lvl0("2")}}) == lvlc("2"));
  CHECK(eval(T("cond(x; y; z)"), *m, {{"x", lvl0("1")}, {"y", lvl0("0")}, {"z", lvl0("2")}}) == lvl0("2"));
  CHECK(eval(T("cond(x; y; z)"), *m, {{"x", lvl0("1")}, {"y", lvlc("5")}, {"z", lvl0("2")}}) == lvlc("1"));
}

TEST_CASE("restriction of total algebras") {
  CHECK_FALSE(restrict(make_rational_cm())->div(num(1), num(0)).has_value());
  CHECK_FALSE(restrict(make_zn_inverse_division(10))->div(num(6), num(2)).has_value());
  CHECK(restrict(make_zn_inverse_division(10))->div(num(6), num(3)) == num(2));
}

TEST_CASE("evaluation") {
  const auto q = make_rational_cm();
  const auto z10 = make_zn_inverse_division(10);
  CHECK(eval(T("1/0"), *q, {}).is_bot());
  CHECK(eval(T("x + (-x)"), *z10, {{"x", Element::bot()}}).is_bot());
  CHECK(eval(T("0*(x*x)"), *z10, {{"x", num(5)}}) == num(0));
  CHECK(eval(T("0*x"), *z10, {{"x", num(5)}}) == num(0));
  CHECK(eval(T("6/3"), *z10, {}) == num(2));
  CHECK_THROWS_AS(eval(T("x + y"), *z10, {{"x", num(1)}}), AlgebraError);
}

TEST_CASE("partial evaluation") {
  const auto zd = make_int_direct_division();
  CHECK_FALSE(eval_partial(T("(1/3)*(3/1)"), *zd, {}).has_value());
  CHECK(eval_partial(T("(1*3)/(3*1)"), *zd, {}) == num(1));
  CHECK_FALSE(eval_partial(T("x + 1"), *make_bounded_q(Rational(10)), {{"x", rat("19/2")}}).has_value());
  CHECK_THROWS_AS(eval_partial(T("bot"), *zd, {}), AlgebraError);
  CHECK_THROWS_AS(eval_partial(T("cond(1; 1; 1)"), *zd, {}), AlgebraError);
}

TEST_CASE("eager equality") {
  const auto zd = make_int_direct_division();
  CHECK(eager_eq(T("1"), T("1/0"), *zd, {}));
  CHECK_FALSE(eager_eq(T("1"), T("2"), *zd, {}));
  CHECK(eager_eq(T("(1/3)*(3/1)"), T("(1*3)/(3*1)"), *zd, {}));
}

TEST_CASE("eager equality is not transitive, but is when the middle is defined") {
  const auto zd = make_int_direct_division();
  CHECK(eager_eq(T("1"), T("1/0"), *zd, {}));
  CHECK(eager_eq(T("1/0"), T("2"), *zd, {}));
  CHECK_FALSE(eager_eq(T("1"), T("2"), *zd, {}));

  Rng rng(3);
  TermShape shape;
  shape.max_depth = 2;
  shape.vars = {"x"};
  shape.allow_bot = false;
  int premises = 0;
  for (int i = 0; i < 20000; ++i) {
    const Term t = random_term(rng, shape), r = random_term(rng, shape);
    const Term s = random_term(rng, shape), u = random_term(rng, shape);
    const Valuation v{{"x", zd->sample(rng)}};
    if (eager_eq(t, r, *zd, v) && eager_eq(r, s, *zd, v) && !eager_eq(r, u, *zd, v)) {
      ++premises;
      REQUIRE(eager_eq(t, s, *zd, v));
    }
  }
  CHECK(premises > 100);
}

TEST_CASE("bot absorbs in every finite instance") {
  for (const auto& a : finite_instances()) {
    CAPTURE(a->name());
    const Element b = a->bot();
    CHECK(a->neg(b).is_bot());
    for (const auto& x : a->elements()) {
      REQUIRE(a->add(x, b).is_bot());
      REQUIRE(a->add(b, x).is_bot());
      REQUIRE(a->mul(x, b).is_bot());
      REQUIRE(a->mul(b, x).is_bot());
      REQUIRE(a->div(x, b).is_bot());
      REQUIRE(a->div(b, x).is_bot());
    }
  }
}

TEST_CASE("bot is the only absorptive element") {
  for (const auto& a : finite_instances()) {
    CAPTURE(a->name());
    const auto elems = a->elements();
    for (const auto& e : elems) {
      bool absorbs = true;
      for (const auto& x : elems) absorbs = absorbs && a->add(e, x) == e && a->mul(e, x) == e;
      CHECK(absorbs == e.is_bot());
    }
  }
}

TEST_CASE("enlarging a restriction gives back the algebra") {
  for (const auto& a : finite_instances()) {
    CAPTURE(a->name());
    const auto back = enlarge(restrict(a));
    const auto elems = a->elements();
    REQUIRE(back->elements() == elems);
    for (const auto& x : elems) {
      REQUIRE(back->neg(x) == a->neg(x));
      for (const auto& y : elems) {
        REQUIRE(back->add(x, y) == a->add(x, y));
        REQUIRE(back->mul(x, y) == a->mul(x, y));
        REQUIRE(back->div(x, y) == a->div(x, y));
      }
    }
  }
}

TEST_CASE("restricting an enlargement gives back the partial algebra") {
  for (const auto& p : {make_int_direct_division(), make_bounded_q(Rational(10))}) {
    CAPTURE(p->name());
    const auto back = restrict(enlarge(p));
    Rng rng(17);
    for (int i = 0; i < 10000; ++i) {
      const Element x = p->sample(rng), y = p->sample(rng);
      REQUIRE(back->add(x, y) == p->add(x, y));
      REQUIRE(back->mul(x, y) == p->mul(x, y));
      REQUIRE(back->div(x, y) == p->div(x, y));
      REQUIRE(back->neg(x) == p->neg(x));
    }
  }
}

TEST_CASE("equations valid in Q hold eagerly in bounded rationals") {
  const auto q = make_rational_cm();
  const auto bq = make_bounded_q(Rational(10));
  for (const auto& law : law_set("e-ftc-cm")) {
    CAPTURE(law.name);
    REQUIRE(check_law(*q, law, Mode::fuzz(2000)).holds);
    CHECK(check_eager(*bq, law, Mode::fuzz(2000)).holds);
  }
}

TEST_CASE("make_algebra resolves names") {
  CHECK(make_algebra("zn:7").total->name() == "zn:7");
  CHECK(make_algebra("int-direct").native_partial);
  CHECK(make_algebra("bounded-q:10").native_partial);
  CHECK_FALSE(make_algebra("rat-cm").native_partial);
  CHECK(make_algebra(data_path("tables/gcm_f2_chain.json")).total->is_finite());
  CHECK_THROWS(make_algebra("zn:x"));
  CHECK_THROWS(make_algebra("nope"));
  const auto z = make_algebra("zn:10").total;
  CHECK(z->parse_element("7") == num(7));
  CHECK(z->parse_element("bot").is_bot());
  CHECK_THROWS(z->parse_element("10"));
}

TEST_CASE("samplers are reproducible") {
  for (const char* name : {"int-inv", "rat-cm", "int-direct", "lattice3"}) {
    const auto a = make_algebra(name);
    Rng r1(99), r2(99);
    for (int i = 0; i < 100; ++i) {
      if (a.native_partial)
        REQUIRE(a.partial->sample(r1) == a.partial->sample(r2));
      else
        REQUIRE(a.total->sample(r1) == a.total->sample(r2));
    }
  }
}
