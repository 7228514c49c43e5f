#include <doctest.h>

#include "meadow/homs.hpp"
#include "meadow/laws.hpp"
#include "support.hpp"

using namespace meadow;
using namespace meadow::test;

namespace {

std::shared_ptr<const TableAlgebra> table(const char* name) {
  return TableAlgebra::load(data_path(std::string("tables/") + name + ".json"));
}

Element label(const TableAlgebra& a, const char* text) { return a.parse_element(text); }

bool passes(const TotalAlgebra& a, const char* set) {
  for (const auto& v : check_suite(a, law_set(set), Mode::exhaustive()))
    if (!v.holds) return false;
  return true;
}

}  // namespace

TEST_CASE("zero part") {
  const auto z10 = make_zn_inverse_division(10);
  const auto zp = zero_part(*z10);
  CHECK(zp.size() == 10);
  for (const auto& e : zp) CHECK_FALSE(e.is_bot());

  const auto m = make_three_level_lattice();
  const std::vector<Element> probe = {Element::of(0), Element::of(Rational::parse("1/3")),
                                      Element::of(0, Level::upper), Element::of(Rational::parse("1/2"), Level::upper),
                                      Element::bot()};
  const auto lower = zero_part(*m, probe);
  CHECK(lower == std::vector<Element>{probe[0], probe[1]});

  const auto chain = table("gcm_f2_chain");
  CHECK(zero_part(*chain) == std::vector<Element>{label(*chain, "0"), label(*chain, "1")});

  // The trivial ring with bot: {0, bot}.
  TableAlgebra::Tables t;
  t.labels = {"0", "bot"};
  t.add = t.mul = t.div = {{0, 1}, {1, 1}};
  t.neg = {0, 1};
  t.zero = t.one = 0;
  t.bot = 1;
  const TableAlgebra trivial("trivial", t);
  CHECK(zero_part(trivial) == std::vector<Element>{trivial.element(0)});
}

TEST_CASE("rho") {
  const auto z10 = make_zn_inverse_division(10);
  const HomMap rho = map_rho(z10);
  for (const auto& e : z10->elements()) CHECK(rho(e) == e);
  CHECK(rho(z10->zero()) == rho.target->zero());
  CHECK(rho(z10->one()) == rho.target->one());
  CHECK(rho(z10->bot()).is_bot());
  CHECK_FALSE(verify_hom(rho).has_value());

  const auto chain = table("gcm_f2_chain");
  const HomMap r = map_rho(chain);
  CHECK(r(label(*chain, "c0")).is_bot());
  CHECK(r(label(*chain, "c1")).is_bot());
  CHECK_FALSE(r(label(*chain, "1")).is_bot());
  CHECK_FALSE(verify_hom(r).has_value());

  CHECK_THROWS_AS(map_rho(make_rational_cm()), HomError);
}

TEST_CASE("phi") {
  const auto z10 = make_zn_inverse_division(10);
  const HomMap phi = map_phi(z10, num(2));
  for (const auto& e : z10->elements()) CHECK(phi(e) == e);
  for (const auto& x : z10->elements())
    for (const auto& y : z10->elements()) REQUIRE(phi(z10->mul(x, y)) == z10->mul(phi(x), phi(y)));
  CHECK_FALSE(verify_hom(phi, false).has_value());
  CHECK_THROWS_AS(map_phi(z10, Element::bot()), HomError);

  const auto m = make_three_level_lattice();
  const HomMap lift = map_phi(m, Element::of(1, Level::upper), 2000);
  for (const char* q : {"0", "1", "-1/3", "7/9"})
    CHECK(lift(Element::of(Rational::parse(q))) == Element::of(Rational::parse(q), Level::upper));
}

TEST_CASE("quotients") {
  const auto z10 = make_zn_inverse_division(10);
  const Quotient q = quotient_by(z10, num(3));
  CHECK(q.algebra->size() == 11);
  for (const auto& c : q.classes) CHECK(c.size() == 1);
  CHECK_FALSE(verify_hom(q.map).has_value());
  CHECK_THROWS_AS(quotient_by(z10, Element::bot()), HomError);

  for (std::int64_t n = 2; n <= 12; ++n) {
    const auto z = make_zn_inverse_division(n);
    for (const auto& a : zero_part(*z)) {
      const Quotient qa = quotient_by(z, a);
      CHECK(qa.classes.back() == std::vector<Element>{Element::bot()});
    }
  }

  const auto chain = table("gcm_f2_chain");
  const Quotient qc = quotient_by(chain, label(*chain, "c0"));
  CHECK(qc.algebra->size() == 3);
  CHECK(qc.map(label(*chain, "0")) == qc.map(label(*chain, "c0")));
  CHECK(qc.map(label(*chain, "1")) == qc.map(label(*chain, "c1")));
  CHECK(passes(*qc.algebra, "e-wcr-bot"));
}

TEST_CASE("a = 1/b implies a*b =_a 1") {
  std::vector<TotalPtr> instances = finite_instances();
  int pairs = 0;
  for (const auto& a : instances) {
    for (const auto& b : a->elements()) {
      const Element inv = a->div(a->one(), b);
      if (inv.is_bot()) continue;
      ++pairs;
      const Element z = a->mul(a->zero(), inv);
      CHECK(a->add(a->mul(inv, b), z) == a->add(a->one(), z));
      const Quotient q = quotient_by(a, inv);
      CHECK(q.map(a->mul(inv, b)) == q.map(a->one()));
    }
  }
  CHECK(pairs > 30);
}

TEST_CASE("AVL is preserved by level quotients") {
  for (const auto& a : finite_instances()) {
    if (!check_law(*a, find_law("avl"), Mode::exhaustive()).holds) continue;
    CAPTURE(a->name());
    for (const auto& at : a->elements()) {
      if (at.is_bot()) continue;
      const Quotient q = quotient_by(a, at);
      CHECK(check_law(*q.algebra, find_law("avl"), Mode::exhaustive()).holds);
      CHECK_FALSE(verify_hom(q.map).has_value());
    }
  }
}

TEST_CASE("prime quotients are homomorphic images") {
  for (const char* name : {"gcm_f2_chain", "gcm_f3_chain", "gcm_f2_split", "gcm_idempotents"}) {
    const auto a = table(name);
    for (const auto& at : a->elements()) {
      if (at.is_bot() || a->mul(a->zero(), at) == a->zero()) continue;
      const Quotient q = quotient_by(a, at, QuotientMode::prime);
      CHECK_FALSE(verify_hom(q.map).has_value());
      CHECK(passes(*q.algebra, "e-wcr-bot"));
    }
  }
  CHECK_THROWS_AS(quotient_by(make_zn_inverse_division(5), num(2), QuotientMode::prime), HomError);
}

TEST_CASE("bot-splitting") {
  for (std::int64_t n = 2; n <= 12; ++n) CHECK_FALSE(detect_bot_splitting(*make_zn_inverse_division(n)).has_value());

  const auto z = make_int_inverse_division();
  Rng rng(1);
  std::vector<Element> probe;
  for (int i = 0; i < 60; ++i) probe.push_back(z->sample(rng));
  CHECK_FALSE(detect_bot_splitting(*z, probe).has_value());

  const auto split = table("gcm_f2_split");
  const auto pair = detect_bot_splitting(*split);
  REQUIRE(pair.has_value());
  CHECK(split->add(pair->first, pair->second).is_bot());
  CHECK(split->render(pair->first) == "a0");
  CHECK(split->render(pair->second) == "b0");
}

TEST_CASE("zero divisors split 1/a + 1/b under AVL") {
  const auto a = table("gcm_idempotents");
  REQUIRE(check_law(*a, find_law("avl"), Mode::exhaustive()).holds);
  const auto zp = zero_part(*a);
  int found = 0;
  for (const auto& x : zp)
    for (const auto& y : zp) {
      if (x == a->zero() || y == a->zero() || a->mul(x, y) != a->zero()) continue;
      ++found;
      const Element ix = a->div(a->one(), x), iy = a->div(a->one(), y);
      CHECK_FALSE(ix.is_bot());
      CHECK_FALSE(iy.is_bot());
      CHECK(a->add(ix, iy).is_bot());
    }
  CHECK(found == 2);
}

TEST_CASE("zero divisors of Z_n") {
  for (std::int64_t n = 2; n <= 30; ++n) {
    std::vector<std::pair<std::int64_t, std::int64_t>> expected;
    for (std::int64_t a = 1; a < n; ++a)
      for (std::int64_t b = 1; b < n; ++b)
        if (a * b % n == 0) expected.emplace_back(a, b);
    CHECK(zero_divisors(n) == expected);
  }
  const auto z10 = zero_divisors(10);
  CHECK(std::find(z10.begin(), z10.end(), std::pair<std::int64_t, std::int64_t>{2, 5}) != z10.end());
  CHECK(zero_divisors(7).empty());
  const auto z6 = zero_divisors(6);
  CHECK(std::find(z6.begin(), z6.end(), std::pair<std::int64_t, std::int64_t>{2, 3}) != z6.end());
  CHECK(std::find(z6.begin(), z6.end(), std::pair<std::int64_t, std::int64_t>{3, 4}) != z6.end());
}

TEST_CASE("extending ring homomorphisms") {
  CHECK_FALSE(extend_ring_hom(4, 2).has_value());

  const auto f63 = extend_ring_hom(6, 3);
  REQUIRE(f63.has_value());
  CHECK(f63->op == "inv");
  CHECK(f63->args == std::vector<Element>{num(2)});
  CHECK(f63->mapped.is_bot());
  CHECK(f63->computed == num(2));

  const auto f62 = extend_ring_hom(6, 2);
  REQUIRE(f62.has_value());
  CHECK(f62->op == "inv");
  CHECK(f62->args == std::vector<Element>{num(3)});
  CHECK(f62->mapped.is_bot());
  CHECK(f62->computed == num(1));

  CHECK_THROWS_AS(extend_ring_hom(6, 4), HomError);

  // Brute-force oracle: the reduction respects inverses iff every unit mod m
  // lifts to a unit mod n.
  for (std::int64_t n = 2; n <= 24; ++n)
    for (std::int64_t m = 2; m <= n; ++m) {
      if (n % m) continue;
      bool ok = true;
      for (std::int64_t x = 0; x < n; ++x) {
        bool unit_n = false, unit_m = false;
        for (std::int64_t c = 0; c < n; ++c) unit_n = unit_n || x * c % n == 1 % n;
        for (std::int64_t c = 0; c < m; ++c) unit_m = unit_m || (x % m) * c % m == 1 % m;
        ok = ok && unit_n == unit_m;
      }
      CAPTURE(n);
      CAPTURE(m);
      CHECK(extend_ring_hom(n, m).has_value() == !ok);
    }
}

TEST_CASE("verify_hom finds failures") {
  const auto z4 = make_zn_inverse_division(4);
  const auto z2 = make_zn_inverse_division(2);
  const HomMap zero{z4, z2, [](const Element& e) { return e.is_bot() ? e : Element::of(0); }};
  const auto f = verify_hom(zero);
  REQUIRE(f.has_value());
  CHECK(f->op == "one");
}

TEST_CASE("saturation") {
  const auto z7 = make_zn_inverse_division(7);
  const Saturation s7 = saturate_to_cm(z7);
  CHECK(s7.steps.empty());
  CHECK(s7.algebra->size() == 8);

  const auto chain = table("gcm_f2_chain");
  const Saturation sc = saturate_to_cm(chain);
  CHECK(sc.steps == std::vector<std::string>{"c0"});
  CHECK(sc.algebra->size() == 3);
  CHECK(sc.map(label(*chain, "0")) == sc.map(label(*chain, "c0")));

  for (const char* name : {"gcm_f2_chain", "gcm_f3_chain", "gcm_f2_split", "gcm_idempotents"}) {
    const auto a = table(name);
    for (const auto& avoid : a->elements()) {
      if (avoid.is_bot() || a->mul(a->zero(), avoid) == a->zero()) continue;
      CAPTURE(name);
      CAPTURE(a->render(avoid));
      const Saturation s = saturate_to_cm(a, avoid);
      CHECK_FALSE(s.map(avoid).is_bot());
      CHECK(passes(*s.algebra, "e-ftc-cm+avl+nvl"));
      CHECK_FALSE(verify_hom(s.map).has_value());
    }
  }

  CHECK_THROWS_AS(saturate_to_cm(make_zn_inverse_division(10)), HomError);
  CHECK_THROWS_AS(saturate_to_cm(chain, label(*chain, "1")), HomError);
}

TEST_CASE("hom JSON") {
  const auto j = to_json(map_rho(make_zn_inverse_division(3)));
  CHECK(j["source"] == "zn:3");
  CHECK(j["map"].size() == 4);
  CHECK(j["map"][3] == nlohmann::json::array({"bot", "bot"}));
}
