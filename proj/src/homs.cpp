#include "meadow/homs.hpp"

#include <map>
#include <unordered_map>

#include "meadow/laws.hpp"

namespace meadow {

namespace {

void require_finite(const TotalAlgebra& a, const char* what) {
  if (!a.is_finite()) throw HomError(std::string(what) + " needs a finite carrier; " + a.name() + " is infinite");
}

std::string describe(const HomFailure& f, const TotalAlgebra& s, const TotalAlgebra& t) {
  std::string args;
  for (const Element& e : f.args) args += (args.empty() ? "" : ", ") + s.render(e);
  return f.op + "(" + args + "): h(f(...)) = " + t.render(f.mapped) + " but f(h(...)) = " + t.render(f.computed);
}

void check_laws_exhaustive(const TotalAlgebra& a, std::string_view set) {
  for (const Verdict& v : check_suite(a, law_set(set), Mode::exhaustive()))
    if (!v.holds) throw HomError(a.name() + " fails " + v.law);
}

/// Copy of a finite algebra as operation tables, labelled by its encoding.
std::shared_ptr<const TableAlgebra> to_table(const TotalAlgebra& a, const std::string& name) {
  auto elems = a.elements();
  std::unordered_map<Element, std::size_t> idx;
  for (std::size_t i = 0; i < elems.size(); ++i) idx.emplace(elems[i], i);
  auto at = [&](const Element& e) {
    auto it = idx.find(e);
    if (it == idx.end()) throw HomError("operation left the carrier of " + a.name());
    return it->second;
  };
  TableAlgebra::Tables t;
  const std::size_t n = elems.size();
  t.add.assign(n, std::vector<std::size_t>(n));
  t.mul = t.div = t.add;
  for (std::size_t i = 0; i < n; ++i) {
    t.labels.push_back(a.encode(elems[i]));
    t.neg.push_back(at(a.neg(elems[i])));
    for (std::size_t j = 0; j < n; ++j) {
      t.add[i][j] = at(a.add(elems[i], elems[j]));
      t.mul[i][j] = at(a.mul(elems[i], elems[j]));
      t.div[i][j] = at(a.div(elems[i], elems[j]));
    }
  }
  t.zero = at(a.zero());
  t.one = at(a.one());
  t.bot = at(a.bot());
  return std::make_shared<TableAlgebra>(name, std::move(t));
}

}  // namespace

std::optional<HomFailure> verify_hom(const HomMap& h, bool check_constants) {
  const TotalAlgebra& s = *h.source;
  const TotalAlgebra& t = *h.target;
  require_finite(s, "homomorphism check");
  auto fail = [](std::string op, std::vector<Element> args, Element m, Element c) {
    return HomFailure{std::move(op), std::move(args), std::move(m), std::move(c)};
  };
  if (check_constants) {
    if (h(s.zero()) != t.zero()) return fail("zero", {}, h(s.zero()), t.zero());
    if (h(s.one()) != t.one()) return fail("one", {}, h(s.one()), t.one());
  }
  if (h(s.bot()) != t.bot()) return fail("bot", {}, h(s.bot()), t.bot());
  const auto elems = s.elements();
  std::vector<Element> image;
  image.reserve(elems.size());
  for (const Element& e : elems) image.push_back(h(e));

  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j) {
      Element m = h(s.add(elems[i], elems[j])), c = t.add(image[i], image[j]);
      if (m != c) return fail("add", {elems[i], elems[j]}, m, c);
    }
  for (std::size_t i = 0; i < elems.size(); ++i) {
    Element m = h(s.neg(elems[i])), c = t.neg(image[i]);
    if (m != c) return fail("neg", {elems[i]}, m, c);
  }
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j) {
      Element m = h(s.mul(elems[i], elems[j])), c = t.mul(image[i], image[j]);
      if (m != c) return fail("mul", {elems[i], elems[j]}, m, c);
    }
  const Element one_image = h(s.one());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    Element m = h(s.div(s.one(), elems[i])), c = t.div(one_image, image[i]);
    if (m != c) return fail("inv", {elems[i]}, m, c);
  }
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j) {
      Element m = h(s.div(elems[i], elems[j])), c = t.div(image[i], image[j]);
      if (m != c) return fail("div", {elems[i], elems[j]}, m, c);
    }
  return std::nullopt;
}

std::vector<Element> zero_part(const TotalAlgebra& a) {
  require_finite(a, "zero_part");
  return zero_part(a, a.elements());
}

std::vector<Element> zero_part(const TotalAlgebra& a, const std::vector<Element>& probe) {
  std::vector<Element> out;
  for (const Element& e : probe)
    if (a.mul(a.zero(), e) == a.zero()) out.push_back(e);
  return out;
}

HomMap map_rho(TotalPtr a) {
  require_finite(*a, "rho");
  const auto m0 = zero_part(*a);
  std::unordered_map<Element, std::size_t> idx;
  for (std::size_t i = 0; i < m0.size(); ++i) idx.emplace(m0[i], i);
  const std::size_t n = m0.size() + 1, bot = m0.size();
  auto at = [&](const Element& e) {
    auto it = idx.find(e);
    if (it == idx.end()) throw HomError("zero part of " + a->name() + " is not closed under the ring operations");
    return it->second;
  };
  TableAlgebra::Tables t;
  t.add.assign(n, std::vector<std::size_t>(n, bot));
  t.mul = t.div = t.add;
  t.neg.assign(n, bot);
  std::vector<std::optional<std::size_t>> inverse(m0.size());
  for (std::size_t i = 0; i < m0.size(); ++i)
    for (std::size_t j = 0; j < m0.size(); ++j)
      if (a->mul(m0[i], m0[j]) == a->one()) inverse[i] = j;
  for (std::size_t i = 0; i < m0.size(); ++i) {
    t.labels.push_back(a->encode(m0[i]));
    t.neg[i] = at(a->neg(m0[i]));
    for (std::size_t j = 0; j < m0.size(); ++j) {
      t.add[i][j] = at(a->add(m0[i], m0[j]));
      t.mul[i][j] = at(a->mul(m0[i], m0[j]));
      if (inverse[j]) t.div[i][j] = at(a->mul(m0[i], m0[*inverse[j]]));
    }
  }
  t.labels.push_back("bot");
  t.zero = at(a->zero());
  t.one = at(a->one());
  t.bot = bot;
  auto target = std::make_shared<TableAlgebra>("rho(" + a->name() + ")", std::move(t));
  HomMap h{a, target, [idx, target](const Element& e) {
             auto it = idx.find(e);
             return it == idx.end() ? Element::bot() : target->element(it->second);
           }};
  if (auto f = verify_hom(h)) throw HomError("rho is not a homomorphism: " + describe(*f, *a, *target));
  return h;
}

HomMap map_phi(TotalPtr a, const Element& at, std::uint64_t samples) {
  if (at.is_bot()) throw HomError("phi: the parameter must not be bot");
  const Element shift = a->mul(a->zero(), at);
  const TotalAlgebra* raw = a.get();
  HomMap h{a, a, [raw, shift](const Element& b) { return raw->add(b, shift); }};
  if (a->is_finite()) {
    if (auto f = verify_hom(h, false)) throw HomError("phi is not a homomorphism: " + describe(*f, *a, *a));
    return h;
  }
  Rng rng(Mode::default_seed);
  for (std::uint64_t i = 0; i < samples; ++i) {
    Element x = a->sample(rng), y = a->sample(rng);
    bool ok = h(a->add(x, y)) == a->add(h(x), h(y)) && h(a->mul(x, y)) == a->mul(h(x), h(y)) &&
              h(a->div(x, y)) == a->div(h(x), h(y)) && h(a->neg(x)) == a->neg(h(x));
    if (!ok) throw HomError("phi is not a homomorphism at " + a->render(x) + ", " + a->render(y));
  }
  return h;
}

Quotient quotient_by(TotalPtr a, const Element& at, QuotientMode mode) {
  require_finite(*a, "quotient");
  if (at.is_bot()) throw HomError("quotient: the parameter must not be bot");
  const Element shift = a->mul(a->zero(), at);
  if (mode == QuotientMode::prime && shift == a->zero())
    throw HomError("prime quotient needs 0*a != 0");
  const auto elems = a->elements();
  std::unordered_map<Element, std::size_t> pos;
  for (std::size_t i = 0; i < elems.size(); ++i) pos.emplace(elems[i], i);
  auto index_of = [&](const Element& e) {
    auto it = pos.find(e);
    if (it == pos.end()) throw HomError("operation left the carrier of " + a->name());
    return it->second;
  };
  // Class key: an element index identifying the class.
  const std::size_t bot_key = index_of(a->bot());
  auto key = [&](const Element& e) -> std::size_t {
    Element moved = a->add(e, shift);
    if (mode == QuotientMode::by_level) return index_of(moved);
    return moved == e ? bot_key : index_of(e);
  };
  std::map<std::size_t, std::size_t> class_of_key;
  std::vector<std::size_t> cls(elems.size());
  Quotient q;
  std::vector<std::size_t> rep, key_of_class;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const std::size_t k = key(elems[i]);
    auto [it, fresh] = class_of_key.emplace(k, q.classes.size());
    if (fresh) {
      q.classes.emplace_back();
      rep.push_back(i);
      key_of_class.push_back(k);
    }
    cls[i] = it->second;
    q.classes[it->second].push_back(elems[i]);
  }
  const std::size_t n = q.classes.size();
  auto c = [&](const Element& e) { return cls[index_of(e)]; };
  TableAlgebra::Tables t;
  t.add.assign(n, std::vector<std::size_t>(n));
  t.mul = t.div = t.add;
  t.neg.resize(n);
  const std::size_t bot_class = cls[bot_key];
  for (std::size_t i = 0; i < n; ++i) {
    // Classes are named by their key: the member at the level of a.
    t.labels.push_back(i == bot_class ? nlohmann::json("bot") : a->encode(elems[key_of_class[i]]));
    t.neg[i] = c(a->neg(elems[rep[i]]));
    for (std::size_t j = 0; j < n; ++j) {
      t.add[i][j] = c(a->add(elems[rep[i]], elems[rep[j]]));
      t.mul[i][j] = c(a->mul(elems[rep[i]], elems[rep[j]]));
      t.div[i][j] = c(a->div(elems[rep[i]], elems[rep[j]]));
    }
  }
  // Congruence: every operation must agree with its value on representatives.
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (c(a->neg(elems[i])) != t.neg[cls[i]])
      throw HomError("not a congruence: neg(" + a->render(elems[i]) + ")");
    for (std::size_t j = 0; j < elems.size(); ++j) {
      const Element &x = elems[i], &y = elems[j];
      if (c(a->add(x, y)) != t.add[cls[i]][cls[j]] || c(a->mul(x, y)) != t.mul[cls[i]][cls[j]] ||
          c(a->div(x, y)) != t.div[cls[i]][cls[j]])
        throw HomError("not a congruence at (" + a->render(x) + ", " + a->render(y) + ")");
    }
  }
  t.zero = c(a->zero());
  t.one = c(a->one());
  t.bot = bot_class;
  if (t.zero == t.bot || t.one == t.bot) throw HomError("quotient is trivial: 0 or 1 collapses to bot");
  std::string name = (mode == QuotientMode::prime ? "quot'(" : "quot(") + a->name() + ", " + a->render(at) + ")";
  try {
    q.algebra = std::make_shared<TableAlgebra>(name, std::move(t));
  } catch (const AlgebraError& e) {
    throw HomError(std::string("quotient: ") + e.what());
  }
  auto target = q.algebra;
  std::unordered_map<Element, std::size_t> image;
  for (std::size_t i = 0; i < elems.size(); ++i) image.emplace(elems[i], cls[i]);
  q.map = HomMap{a, target, [image, target](const Element& e) { return target->element(image.at(e)); }};
  if (auto f = verify_hom(q.map)) throw HomError("natural map is not a homomorphism: " + describe(*f, *a, *target));
  check_laws_exhaustive(*target, "e-wcr-bot");
  return q;
}

std::optional<std::pair<Element, Element>> detect_bot_splitting(const TotalAlgebra& a) {
  require_finite(a, "bot-splitting search");
  return detect_bot_splitting(a, a.elements());
}

std::optional<std::pair<Element, Element>> detect_bot_splitting(const TotalAlgebra& a,
                                                                const std::vector<Element>& probe) {
  for (const Element& x : probe)
    for (const Element& y : probe)
      if (!x.is_bot() && !y.is_bot() && a.add(x, y).is_bot()) return std::make_pair(x, y);
  return std::nullopt;
}

std::vector<std::pair<std::int64_t, std::int64_t>> zero_divisors(std::int64_t n) {
  if (n < 2) throw HomError("modulus must be at least 2");
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t a = 1; a < n; ++a)
    for (std::int64_t b = 1; b < n; ++b)
      if (static_cast<__int128>(a) * b % n == 0) out.emplace_back(a, b);
  return out;
}

std::optional<HomFailure> extend_ring_hom(std::int64_t n, std::int64_t m) {
  if (n < 2 || m < 2) throw HomError("moduli must be at least 2");
  if (n % m != 0) throw HomError(std::to_string(m) + " does not divide " + std::to_string(n) +
                                 "; reduction mod m is not a ring homomorphism");
  TotalPtr s = make_zn_inverse_division(n), t = make_zn_inverse_division(m);
  HomMap h{s, t, [m](const Element& e) {
             if (e.is_bot()) return Element::bot();
             return Element::of(Rational(e.value().to_int64() % m));
           }};
  return verify_hom(h);
}

Saturation saturate_to_cm(TotalPtr a, std::optional<Element> avoid) {
  require_finite(*a, "saturation");
  for (const Verdict& v : check_suite(*a, law_set("e-ftc-cm+avl"), Mode::exhaustive()))
    if (!v.holds) throw HomError("saturation precondition: " + a->name() + " fails " + v.law);
  if (avoid) {
    if (avoid->is_bot()) throw HomError("saturation: avoid must not be bot");
    if (a->mul(a->zero(), *avoid) == a->zero()) throw HomError("saturation: avoid must satisfy 0*avoid != 0");
  }
  Saturation out;
  const auto source_elems = a->elements();
  std::vector<Element> image = source_elems;  // image of each source element in `cur`
  TotalPtr cur = a;
  auto step = [&](const Element& b) {
    out.steps.push_back(cur->render(b));
    Quotient q = quotient_by(cur, b);
    for (Element& e : image) e = q.map(e);
    cur = q.algebra;
  };
  if (avoid) step(*avoid);
  for (;;) {
    std::optional<Element> pick;
    for (const Element& b : cur->elements())
      if (!b.is_bot() && b != cur->zero() && cur->mul(cur->zero(), b) == b) {
        pick = b;
        break;
      }
    if (!pick) break;
    step(*pick);
  }
  out.algebra = std::dynamic_pointer_cast<const TableAlgebra>(cur);
  if (!out.algebra) out.algebra = to_table(*cur, cur->name());
  check_laws_exhaustive(*out.algebra, "e-ftc-cm+avl+nvl");
  std::unordered_map<Element, Element> map;
  for (std::size_t i = 0; i < source_elems.size(); ++i) map.emplace(source_elems[i], image[i]);
  // Re-label when the algebra was tabulated from a non-table source.
  if (cur != out.algebra) {
    for (auto& [from, to] : map) to = out.algebra->decode(cur->encode(to));
  }
  out.map = HomMap{a, out.algebra, [map](const Element& e) { return map.at(e); }};
  if (auto f = verify_hom(out.map)) throw HomError("saturation map is not a homomorphism: " + describe(*f, *a, *out.algebra));
  if (avoid && out.map(*avoid).is_bot()) throw HomError("saturation sent avoid to bot");
  return out;
}

nlohmann::json to_json(const HomMap& h) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const Element& e : h.source->elements()) pairs.push_back({h.source->encode(e), h.target->encode(h(e))});
  return {{"source", h.source->name()}, {"target", h.target->name()}, {"map", pairs}};
}

nlohmann::json to_json(const HomFailure& f, const TotalAlgebra& source, const TotalAlgebra& target) {
  nlohmann::json args = nlohmann::json::array();
  for (const Element& e : f.args) args.push_back(source.encode(e));
  return {{"op", f.op}, {"args", args}, {"mapped", target.encode(f.mapped)}, {"computed", target.encode(f.computed)}};
}

}  // namespace meadow
