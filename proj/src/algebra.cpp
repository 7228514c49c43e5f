#include "meadow/algebra.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace meadow {

namespace {

// Seeded draws shared by the infinite carriers: half from a small window so
// coincidences (zero divisors, equal denominators) are common, half wide.
BigInt sample_int(Rng& rng) {
  if (rng() & 1) return BigInt(static_cast<long>(std::uniform_int_distribution<int>(-4, 4)(rng)));
  return BigInt(static_cast<long>(std::uniform_int_distribution<int>(-1000, 1000)(rng)));
}

Rational sample_rational(Rng& rng) {
  BigInt num = sample_int(rng);
  int den = (rng() & 1) ? std::uniform_int_distribution<int>(1, 4)(rng)
                        : std::uniform_int_distribution<int>(1, 1000)(rng);
  return Rational(num, BigInt(static_cast<long>(den)));
}

bool sample_bot(Rng& rng) { return rng() % 16 == 0; }

bool is_bot_text(std::string_view s) { return s == "bot" || s == "_|_"; }

Rational value_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(static_cast<std::int64_t>(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return Rational(BigInt(std::to_string(j.get<std::uint64_t>())));
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw AlgebraError("cannot decode element from " + j.dump());
}

nlohmann::json int_json(const Rational& v) {
  if (v.fits_int64()) return v.to_int64();
  return v.str();
}

bool is_power_of_three(const BigInt& n) {
  BigInt m = abs(n);
  if (m == 0) return false;
  while (m % 3 == 0) m /= 3;
  return m == 1;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t n) {
  std::int64_t r0 = n, r1 = a, t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  if (r0 != 1) return -1;
  return ((t0 % n) + n) % n;
}

}  // namespace

// ---------------------------------------------------------------- defaults

bool TotalAlgebra::is_zero_like(const Element& y) const {
  return !y.is_bot() && mul(zero(), y) == y;
}

Element TotalAlgebra::cond(const Element& x, const Element& y, const Element& z) const {
  if (y.is_bot()) return bot();
  return add(is_zero_like(y) ? z : x, mul(zero(), y));
}

std::vector<Element> TotalAlgebra::elements() const {
  throw AlgebraError(name() + " has an infinite carrier");
}

Element TotalAlgebra::sample(Rng& rng) const {
  auto all = elements();
  return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
}

std::string TotalAlgebra::render(const Element& e) const {
  return e.is_bot() ? "bot" : e.value().str();
}

nlohmann::json TotalAlgebra::encode(const Element& e) const {
  if (e.is_bot()) return "bot";
  return e.value().is_integer() ? int_json(e.value()) : nlohmann::json(e.value().str());
}

Element TotalAlgebra::decode(const nlohmann::json& j) const {
  if (j.is_string() && is_bot_text(j.get<std::string>())) return bot();
  try {
    return parse_element(j.is_string() ? j.get<std::string>() : j.dump());
  } catch (const std::invalid_argument&) {
    throw AlgebraError("not an element of " + name() + ": " + j.dump());
  }
}

Element TotalAlgebra::parse_element(std::string_view text) const {
  if (is_bot_text(text)) return bot();
  Element e;
  try {
    e = Element::of(Rational::parse(text));
  } catch (const std::invalid_argument&) {
    throw AlgebraError("not an element of " + name() + ": " + std::string(text));
  }
  if (!e.value().is_integer() || !is_finite()) return e;
  for (const Element& c : elements())
    if (c == e) return e;
  throw AlgebraError("not an element of " + name() + ": " + std::string(text));
}

std::vector<Element> PartialAlgebra::elements() const {
  throw AlgebraError(name() + " has an infinite carrier");
}

Element PartialAlgebra::sample(Rng& rng) const {
  auto all = elements();
  return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
}

std::string PartialAlgebra::render(const Element& e) const {
  return e.is_bot() ? "bot" : e.value().str();
}

nlohmann::json PartialAlgebra::encode(const Element& e) const {
  if (e.is_bot()) return "bot";
  return e.value().is_integer() ? int_json(e.value()) : nlohmann::json(e.value().str());
}

Element PartialAlgebra::decode(const nlohmann::json& j) const {
  try {
    return parse_element(j.is_string() ? j.get<std::string>() : j.dump());
  } catch (const std::invalid_argument&) {
    throw AlgebraError("not an element of " + name() + ": " + j.dump());
  }
}

Element PartialAlgebra::parse_element(std::string_view text) const {
  try {
    return Element::of(Rational::parse(text));
  } catch (const std::invalid_argument&) {
    throw AlgebraError("not an element of " + name() + ": " + std::string(text));
  }
}

// ---------------------------------------------------------------- Enl / Pdt

namespace {

class Enlargement final : public TotalAlgebra {
 public:
  explicit Enlargement(PartialPtr p) : p_(std::move(p)) {}

  std::string name() const override { return "enl(" + p_->name() + ")"; }
  Element zero() const override { return p_->zero(); }
  Element one() const override { return p_->one(); }

  Element add(const Element& a, const Element& b) const override {
    if (a.is_bot() || b.is_bot()) return bot();
    return p_->add(a, b).value_or(bot());
  }
  Element mul(const Element& a, const Element& b) const override {
    if (a.is_bot() || b.is_bot()) return bot();
    return p_->mul(a, b).value_or(bot());
  }
  Element div(const Element& a, const Element& b) const override {
    if (a.is_bot() || b.is_bot()) return bot();
    return p_->div(a, b).value_or(bot());
  }
  Element neg(const Element& a) const override {
    if (a.is_bot()) return bot();
    return p_->neg(a).value_or(bot());
  }

  bool is_finite() const override { return p_->is_finite(); }
  std::vector<Element> elements() const override {
    auto all = p_->elements();
    all.push_back(bot());
    return all;
  }
  Element sample(Rng& rng) const override {
    if (sample_bot(rng)) return bot();
    return p_->sample(rng);
  }

  std::string render(const Element& e) const override { return e.is_bot() ? "bot" : p_->render(e); }
  nlohmann::json encode(const Element& e) const override {
    return e.is_bot() ? nlohmann::json("bot") : p_->encode(e);
  }
  Element decode(const nlohmann::json& j) const override {
    if (j.is_string() && is_bot_text(j.get<std::string>())) return bot();
    return p_->decode(j);
  }
  Element parse_element(std::string_view text) const override {
    if (is_bot_text(text)) return bot();
    return p_->parse_element(text);
  }

 private:
  PartialPtr p_;
};

class Restriction final : public PartialAlgebra {
 public:
  explicit Restriction(TotalPtr t) : t_(std::move(t)) {}

  std::string name() const override { return "pdt(" + t_->name() + ")"; }
  Element zero() const override { return t_->zero(); }
  Element one() const override { return t_->one(); }

  std::optional<Element> add(const Element& a, const Element& b) const override { return keep(t_->add(a, b)); }
  std::optional<Element> neg(const Element& a) const override { return keep(t_->neg(a)); }
  std::optional<Element> mul(const Element& a, const Element& b) const override { return keep(t_->mul(a, b)); }
  std::optional<Element> div(const Element& a, const Element& b) const override { return keep(t_->div(a, b)); }

  bool is_finite() const override { return t_->is_finite(); }
  std::vector<Element> elements() const override {
    auto all = t_->elements();
    std::erase_if(all, [](const Element& e) { return e.is_bot(); });
    return all;
  }
  Element sample(Rng& rng) const override {
    for (;;) {
      Element e = t_->sample(rng);
      if (!e.is_bot()) return e;
    }
  }

  std::string render(const Element& e) const override { return t_->render(e); }
  nlohmann::json encode(const Element& e) const override { return t_->encode(e); }
  Element decode(const nlohmann::json& j) const override { return non_bot(t_->decode(j), j.dump()); }
  Element parse_element(std::string_view text) const override {
    return non_bot(t_->parse_element(text), std::string(text));
  }

 private:
  static std::optional<Element> keep(Element e) {
    if (e.is_bot()) return std::nullopt;
    return e;
  }
  Element non_bot(Element e, const std::string& src) const {
    if (e.is_bot()) throw AlgebraError("bot is not an element of " + name() + ": " + src);
    return e;
  }

  TotalPtr t_;
};

}  // namespace

TotalPtr enlarge(PartialPtr p) {
  if (!p) throw AlgebraError("enlarge: null algebra");
  if (p->is_finite() && p->elements().size() < 2)
    throw AlgebraError("enlarge: " + p->name() + " has fewer than 2 elements");
  return std::make_shared<Enlargement>(std::move(p));
}

PartialPtr restrict(TotalPtr t) {
  if (!t) throw AlgebraError("restrict: null algebra");
  if (t->is_finite()) {
    auto all = t->elements();
    auto n = std::count_if(all.begin(), all.end(), [](const Element& e) { return !e.is_bot(); });
    if (n < 2) throw AlgebraError("restrict: " + t->name() + " has fewer than 2 non-bot elements");
  }
  return std::make_shared<Restriction>(std::move(t));
}

// ---------------------------------------------------------------- Z_n

namespace {

class ZnInverse final : public TotalAlgebra {
 public:
  explicit ZnInverse(std::int64_t n) : n_(n) {}

  std::string name() const override { return "zn:" + std::to_string(n_); }

  Element add(const Element& a, const Element& b) const override {
    if (a.is_bot() || b.is_bot()) return bot();
    return of((v(a) + v(b)) % n_);
  }
  Element neg(const Element& a) const override {
    if (a.is_bot()) return bot();
    return of((n_ - v(a)) % n_);
  }
  Element mul(const Element& a, const Element& b) const override {
    if (a.is_bot() || b.is_bot()) return bot();
    return of(mulmod(v(a), v(b)));
  }
  Element div(const Element& a, const Element& b) const override {
    if (a.is_bot() || b.is_bot()) return bot();
    std::int64_t inv = mod_inverse(v(b), n_);
    if (inv < 0) return bot();
    return of(mulmod(v(a), inv));
  }

  bool is_finite() const override { return true; }
  std::vector<Element> elements() const override {
    std::vector<Element> all;
    all.reserve(static_cast<std::size_t>(n_) + 1);
    for (std::int64_t i = 0; i < n_; ++i) all.push_back(of(i));
    all.push_back(bot());
    return all;
  }
  Element sample(Rng& rng) const override {
    std::int64_t i = std::uniform_int_distribution<std::int64_t>(0, n_)(rng);
    return i == n_ ? bot() : of(i);
  }
  Element parse_element(std::string_view text) const override {
    if (is_bot_text(text)) return bot();
    try {
      Rational r = Rational::parse(text);
      if (r.is_integer() && r.sign() >= 0 && r < Rational(n_)) return Element::of(r);
    } catch (const std::invalid_argument&) {
    }
    throw AlgebraError("not an element of " + name() + ": " + std::string(text));
  }

 private:
  static std::int64_t v(const Element& e) { return e.value().to_int64(); }
  static Element of(std::int64_t i) { return Element::of(Rational(i)); }
  std::int64_t mulmod(std::int64_t a, std::int64_t b) const {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % n_);
  }

  std::int64_t n_;
};

class IntInverse final : public TotalAlgebra {
 public:
  std::string name() const override { return "int-inv"; }

  Element add(const Element& a, const Element& b) const override {
    if (a.is_bot() || b.is_bot()) return bot();
    return Element::of(a.value() + b.value());
  }
  Element neg(const Element& a) const override {
    if (a.is_bot()) return bot();
    return Element::of(-a.value());
  }
  Element mul(const Element& a, const Element& b) const override {
    if (a.is_bot() || b.is_bot()) return bot();
    return Element::of(a.value() * b.value());
  }
  Element div(const Element& a, const Element& b) const override {
    if (a.is_bot() || b.is_bot()) return bot();
    if (b.value() == Rational(1)) return a;
    if (b.value() == Rational(-1)) return Element::of(-a.value());
    return bot();
  }

  bool is_finite() const override { return false; }
  Element sample(Rng& rng) const override {
    if (sample_bot(rng)) return bot();
    return Element::of(Rational(sample_int(rng)));
  }
  Element parse_element(std::string_view text) const override {
    Element e = TotalAlgebra::parse_element(text);
    if (!e.is_bot() && !e.value().is_integer())
      throw AlgebraError("not an element of " + name() + ": " + std::string(text));
    return e;
  }
};

class RationalCM final : public TotalAlgebra {
 public:
  std::string name() const override { return "rat-cm"; }

  Element add(const Element& a, const Element& b) const override {
    if (a.is_bot() || b.is_bot()) return bot();
    return Element::of(a.value() + b.value());
  }
  Element neg(const Element& a) const override {
    if (a.is_bot()) return bot();
    return Element::of(-a.value());
  }
  Element mul(const Element& a, const Element& b) const override {
    if (a.is_bot() || b.is_bot()) return bot();
    return Element::of(a.value() * b.value());
  }
  Element div(const Element& a, const Element& b) const override {
    if (a.is_bot() || b.is_bot() || b.value().is_zero()) return bot();
    return Element::of(a.value() / b.value());
  }

  bool is_finite() const override { return false; }
  Element sample(Rng& rng) const override {
    if (sample_bot(rng)) return bot();
    return Element::of(sample_rational(rng));
  }
  nlohmann::json encode(const Element& e) const override {
    return e.is_bot() ? "bot" : e.value().str();
  }
};

class IntDirect final : public PartialAlgebra {
 public:
  std::string name() const override { return "int-direct"; }

  std::optional<Element> add(const Element& a, const Element& b) const override {
    return Element::of(a.value() + b.value());
  }
  std::optional<Element> neg(const Element& a) const override { return Element::of(-a.value()); }
  std::optional<Element> mul(const Element& a, const Element& b) const override {
    return Element::of(a.value() * b.value());
  }
  std::optional<Element> div(const Element& a, const Element& b) const override {
    if (b.value().is_zero()) return std::nullopt;
    Rational q = a.value() / b.value();
    if (!q.is_integer()) return std::nullopt;
    return Element::of(q);
  }

  bool is_finite() const override { return false; }
  Element sample(Rng& rng) const override { return Element::of(Rational(sample_int(rng))); }
  Element parse_element(std::string_view text) const override {
    Element e = PartialAlgebra::parse_element(text);
    if (!e.value().is_integer()) throw AlgebraError("not an element of " + name() + ": " + std::string(text));
    return e;
  }
};

class BoundedQ final : public PartialAlgebra {
 public:
  explicit BoundedQ(Rational b) : b_(std::move(b)) {}

  std::string name() const override { return "bounded-q:" + b_.str(); }

  std::optional<Element> add(const Element& a, const Element& b) const override {
    return in_range(a.value() + b.value());
  }
  std::optional<Element> neg(const Element& a) const override { return in_range(-a.value()); }
  std::optional<Element> mul(const Element& a, const Element& b) const override {
    return in_range(a.value() * b.value());
  }
  std::optional<Element> div(const Element& a, const Element& b) const override {
    if (b.value().is_zero()) return std::nullopt;
    return in_range(a.value() / b.value());
  }

  bool is_finite() const override { return false; }
  Element sample(Rng& rng) const override {
    for (;;) {
      Rational r = sample_rational(rng);
      if (inside(r)) return Element::of(r);
    }
  }
  nlohmann::json encode(const Element& e) const override { return e.value().str(); }
  Element parse_element(std::string_view text) const override {
    Element e = PartialAlgebra::parse_element(text);
    if (!inside(e.value())) throw AlgebraError("not an element of " + name() + ": " + std::string(text));
    return e;
  }

 private:
  bool inside(const Rational& r) const { return -b_ < r && r < b_; }
  std::optional<Element> in_range(Rational r) const {
    if (!inside(r)) return std::nullopt;
    return Element::of(std::move(r));
  }

  Rational b_;
};

// Base level: Z[1/3]; upper level: Q. Mixed operands compute at the upper
// level; division by a non-unit of Z[1/3] moves the quotient up.
class ThreeLevelLattice final : public TotalAlgebra {
 public:
  std::string name() const override { return "lattice3"; }

  Element add(const Element& a, const Element& b) const override {
    if (a.is_bot() || b.is_bot()) return bot();
    return Element::of(a.value() + b.value(), join(a, b));
  }
  Element neg(const Element& a) const override {
    if (a.is_bot()) return bot();
    return Element::of(-a.value(), a.level());
  }
  Element mul(const Element& a, const Element& b) const override {
    if (a.is_bot() || b.is_bot()) return bot();
    return Element::of(a.value() * b.value(), join(a, b));
  }
  Element div(const Element& a, const Element& b) const override {
    if (a.is_bot() || b.is_bot() || b.value().is_zero()) return bot();
    Level level = join(a, b);
    if (level == Level::base && !is_unit(b.value())) level = Level::upper;
    return Element::of(a.value() / b.value(), level);
  }

  bool is_finite() const override { return false; }
  Element sample(Rng& rng) const override {
    if (sample_bot(rng)) return bot();
    if (rng() & 1) {
      static const long pow3[] = {1, 3, 9};
      long den = pow3[std::uniform_int_distribution<int>(0, 2)(rng)];
      return Element::of(Rational(sample_int(rng), BigInt(den)), Level::base);
    }
    return Element::of(sample_rational(rng), Level::upper);
  }

  std::string render(const Element& e) const override {
    if (e.is_bot()) return "bot";
    return std::string("{level: ") + (e.level() == Level::base ? "0" : "c") + ", value: " + e.value().str() + "}";
  }
  nlohmann::json encode(const Element& e) const override {
    if (e.is_bot()) return "bot";
    return {{"level", e.level() == Level::base ? "0" : "c"}, {"value", e.value().str()}};
  }
  Element decode(const nlohmann::json& j) const override {
    if (j.is_object()) {
      if (!j.contains("level") || !j.contains("value") || !j["level"].is_string())
        throw AlgebraError("lattice3 element needs level and value: " + j.dump());
      std::string level = j["level"].get<std::string>();
      if (level != "0" && level != "c") throw AlgebraError("lattice3 level must be \"0\" or \"c\": " + j.dump());
      Rational v;
      try {
        v = value_from_json(j["value"]);
      } catch (const std::invalid_argument&) {
        throw AlgebraError("bad lattice3 value: " + j.dump());
      }
      return checked(Element::of(v, level == "0" ? Level::base : Level::upper), j.dump());
    }
    if (j.is_string()) return parse_element(j.get<std::string>());
    throw AlgebraError("not an element of lattice3: " + j.dump());
  }
  /// "bot", "0:p/q", "c:p/q", a bare rational (base level), or the JSON form.
  Element parse_element(std::string_view text) const override {
    if (is_bot_text(text)) return bot();
    if (!text.empty() && text.front() == '{') {
      auto j = nlohmann::json::parse(text, nullptr, false);
      if (j.is_discarded()) throw AlgebraError("not an element of lattice3: " + std::string(text));
      return decode(j);
    }
    Level level = Level::base;
    if (text.size() > 2 && text[1] == ':') {
      if (text[0] == 'c') level = Level::upper;
      else if (text[0] != '0') throw AlgebraError("not an element of lattice3: " + std::string(text));
      text.remove_prefix(2);
    }
    try {
      return checked(Element::of(Rational::parse(text), level), std::string(text));
    } catch (const std::invalid_argument&) {
      throw AlgebraError("not an element of lattice3: " + std::string(text));
    }
  }

 private:
  static Level join(const Element& a, const Element& b) {
    return a.level() == Level::base && b.level() == Level::base ? Level::base : Level::upper;
  }
  static bool is_unit(const Rational& r) { return is_power_of_three(r.num()) && is_power_of_three(r.den()); }
  static Element checked(Element e, const std::string& src) {
    if (e.level() == Level::base && !is_power_of_three(e.value().den()))
      throw AlgebraError("base-level lattice3 values need a power-of-3 denominator: " + src);
    return e;
  }
};

}  // namespace

TotalPtr make_zn_inverse_division(std::int64_t n) {
  if (n < 2) throw AlgebraError("zn: modulus must be at least 2");
  if (n > (std::int64_t{1} << 62)) throw AlgebraError("zn: modulus too large");
  return std::make_shared<ZnInverse>(n);
}

TotalPtr make_int_inverse_division() { return std::make_shared<IntInverse>(); }
TotalPtr make_rational_cm() { return std::make_shared<RationalCM>(); }
PartialPtr make_int_direct_division() { return std::make_shared<IntDirect>(); }

PartialPtr make_bounded_q(const Rational& b) {
  if (b <= Rational(1)) throw AlgebraError("bounded-q: bound must exceed 1");
  return std::make_shared<BoundedQ>(b);
}

TotalPtr make_three_level_lattice() { return std::make_shared<ThreeLevelLattice>(); }

std::vector<std::int64_t> direct_division_solutions(std::int64_t n, std::int64_t a, std::int64_t b) {
  if (n < 2) throw AlgebraError("modulus must be at least 2");
  a = ((a % n) + n) % n;
  b = ((b % n) + n) % n;
  std::vector<std::int64_t> out;
  for (std::int64_t c = 0; c < n; ++c)
    if (static_cast<__int128>(b) * c % n == a) out.push_back(c);
  return out;
}

std::vector<std::int64_t> zn_units(std::int64_t n) {
  if (n < 2) throw AlgebraError("modulus must be at least 2");
  std::vector<std::int64_t> out;
  for (std::int64_t b = 0; b < n; ++b)
    if (std::gcd(b, n) == 1) out.push_back(b);
  return out;
}

// ---------------------------------------------------------------- tables

TableAlgebra::TableAlgebra(std::string name, Tables tables) : name_(std::move(name)), t_(std::move(tables)) {
  const std::size_t n = t_.labels.size();
  if (n < 2) throw AlgebraError("table algebra needs at least 2 elements");
  auto check_index = [&](std::size_t i, const char* what) {
    if (i >= n) throw AlgebraError(std::string("table index out of range in ") + what);
  };
  auto check_square = [&](const std::vector<std::vector<std::size_t>>& m, const char* what) {
    if (m.size() != n) throw AlgebraError(std::string("table ") + what + " has wrong row count");
    for (const auto& row : m) {
      if (row.size() != n) throw AlgebraError(std::string("table ") + what + " has wrong row length");
      for (std::size_t i : row) check_index(i, what);
    }
  };
  check_square(t_.add, "add");
  check_square(t_.mul, "mul");
  check_square(t_.div, "div");
  if (t_.neg.size() != n) throw AlgebraError("table neg has wrong length");
  for (std::size_t i : t_.neg) check_index(i, "neg");
  check_index(t_.zero, "zero");
  check_index(t_.one, "one");
  check_index(t_.bot, "bot");
  if (t_.zero == t_.bot || t_.one == t_.bot) throw AlgebraError("table bot must differ from zero and one");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (t_.labels[i] == t_.labels[j]) throw AlgebraError("duplicate carrier label " + t_.labels[i].dump());
}

std::shared_ptr<const TableAlgebra> TableAlgebra::from_json(const nlohmann::json& j, std::string name) {
  try {
    Tables t;
    for (const auto& l : j.at("carrier")) t.labels.push_back(l);
    t.add = j.at("add").get<std::vector<std::vector<std::size_t>>>();
    t.mul = j.at("mul").get<std::vector<std::vector<std::size_t>>>();
    t.div = j.at("div").get<std::vector<std::vector<std::size_t>>>();
    t.neg = j.at("neg").get<std::vector<std::size_t>>();
    t.zero = j.at("zero").get<std::size_t>();
    t.one = j.at("one").get<std::size_t>();
    t.bot = j.at("bot").get<std::size_t>();
    if (j.contains("name") && j["name"].is_string()) name = j["name"].get<std::string>();
    return std::make_shared<TableAlgebra>(std::move(name), std::move(t));
  } catch (const nlohmann::json::exception& e) {
    throw AlgebraError(std::string("malformed table algebra: ") + e.what());
  }
}

std::shared_ptr<const TableAlgebra> TableAlgebra::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AlgebraError("cannot open table file " + path);
  auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw AlgebraError("table file is not valid JSON: " + path);
  return from_json(j, "table:" + path);
}

nlohmann::json TableAlgebra::to_json() const {
  return {{"name", name_}, {"carrier", t_.labels}, {"add", t_.add},   {"mul", t_.mul}, {"neg", t_.neg},
          {"div", t_.div},  {"zero", t_.zero},      {"one", t_.one}, {"bot", t_.bot}};
}

Element TableAlgebra::element(std::size_t i) const {
  return i == t_.bot ? Element::bot() : Element::of(Rational(static_cast<std::int64_t>(i)));
}

std::size_t TableAlgebra::index(const Element& e) const {
  if (e.is_bot()) return t_.bot;
  if (!e.value().fits_int64()) throw AlgebraError("not an element of " + name_);
  auto i = e.value().to_int64();
  if (i < 0 || static_cast<std::size_t>(i) >= size() || static_cast<std::size_t>(i) == t_.bot)
    throw AlgebraError("not an element of " + name_);
  return static_cast<std::size_t>(i);
}

Element TableAlgebra::add(const Element& a, const Element& b) const { return element(t_.add[index(a)][index(b)]); }
Element TableAlgebra::mul(const Element& a, const Element& b) const { return element(t_.mul[index(a)][index(b)]); }
Element TableAlgebra::div(const Element& a, const Element& b) const { return element(t_.div[index(a)][index(b)]); }
Element TableAlgebra::neg(const Element& a) const { return element(t_.neg[index(a)]); }

std::vector<Element> TableAlgebra::elements() const {
  std::vector<Element> all;
  for (std::size_t i = 0; i < size(); ++i)
    if (i != t_.bot) all.push_back(element(i));
  all.push_back(bot());
  return all;
}

std::string TableAlgebra::render(const Element& e) const {
  const auto& l = t_.labels[index(e)];
  return l.is_string() ? l.get<std::string>() : l.dump();
}

nlohmann::json TableAlgebra::encode(const Element& e) const { return t_.labels[index(e)]; }

Element TableAlgebra::decode(const nlohmann::json& j) const {
  for (std::size_t i = 0; i < size(); ++i)
    if (t_.labels[i] == j) return element(i);
  if (j.is_string() && is_bot_text(j.get<std::string>())) return bot();
  throw AlgebraError("not an element of " + name_ + ": " + j.dump());
}

Element TableAlgebra::parse_element(std::string_view text) const {
  for (std::size_t i = 0; i < size(); ++i) {
    const auto& l = t_.labels[i];
    if ((l.is_string() && l.get<std::string>() == text) || l.dump() == text) return element(i);
  }
  if (is_bot_text(text)) return bot();
  throw AlgebraError("not an element of " + name_ + ": " + std::string(text));
}

// ---------------------------------------------------------------- registry

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

NamedAlgebra from_total(std::string name, TotalPtr t) {
  NamedAlgebra a{std::move(name), t, nullptr, false};
  try {
    a.partial = restrict(t);
  } catch (const AlgebraError&) {
  }
  return a;
}

NamedAlgebra from_partial(std::string name, PartialPtr p) {
  return NamedAlgebra{std::move(name), enlarge(p), p, true};
}

}  // namespace

NamedAlgebra make_algebra(std::string_view name) {
  std::string s(name);
  if (s.rfind("zn:", 0) == 0) {
    std::int64_t n = 0;
    try {
      std::size_t used = 0;
      n = std::stoll(s.substr(3), &used);
      if (used != s.size() - 3) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw AlgebraError("bad modulus in " + s);
    }
    return from_total(s, make_zn_inverse_division(n));
  }
  if (s == "int-inv") return from_total(s, make_int_inverse_division());
  if (s == "rat-cm") return from_total(s, make_rational_cm());
  if (s == "lattice3") return from_total(s, make_three_level_lattice());
  if (s == "int-direct") return from_partial(s, make_int_direct_division());
  if (s.rfind("bounded-q:", 0) == 0) {
    Rational b;
    try {
      b = Rational::parse(s.substr(10));
    } catch (const std::invalid_argument&) {
      throw AlgebraError("bad bound in " + s);
    }
    return from_partial(s, make_bounded_q(b));
  }
  if (s.rfind("table:", 0) == 0) return from_total(s, TableAlgebra::load(s.substr(6)));
  if (ends_with(s, ".json")) return from_total(s, TableAlgebra::load(s));
  throw AlgebraError("unknown algebra '" + s + "'");
}

std::vector<std::string> algebra_names() {
  return {"zn:<n>", "int-inv", "rat-cm", "int-direct", "bounded-q:<b>", "lattice3", "table:<file.json>"};
}

// ---------------------------------------------------------------- evaluation

namespace {

class TotalEvaluator {
 public:
  TotalEvaluator(const TotalAlgebra& a, const Valuation& v) : a_(a), v_(v) {}

  Element operator()(const Term& t) {
    if (auto it = memo_.find(t.id()); it != memo_.end()) return it->second;
    Element r = compute(t);
    if (t.size() > 1) memo_.emplace(t.id(), r);
    return r;
  }

 private:
  Element compute(const Term& t) {
    switch (t.op()) {
      case Op::var: {
        auto it = v_.find(t.name());
        if (it == v_.end()) throw AlgebraError("unbound variable '" + t.name() + "'");
        return it->second;
      }
      case Op::zero: return a_.zero();
      case Op::one: return a_.one();
      case Op::bot: return a_.bot();
      case Op::neg: return a_.neg((*this)(t.arg(0)));
      case Op::add: return a_.add((*this)(t.arg(0)), (*this)(t.arg(1)));
      case Op::mul: return a_.mul((*this)(t.arg(0)), (*this)(t.arg(1)));
      case Op::div: return a_.div((*this)(t.arg(0)), (*this)(t.arg(1)));
      case Op::cond: {
        Element y = (*this)(t.arg(1));
        if (y.is_bot()) return a_.bot();
        return a_.cond((*this)(t.arg(0)), y, (*this)(t.arg(2)));
      }
    }
    throw AlgebraError("corrupt term");
  }

  const TotalAlgebra& a_;
  const Valuation& v_;
  std::unordered_map<const void*, Element> memo_;
};

class PartialEvaluator {
 public:
  PartialEvaluator(const PartialAlgebra& p, const Valuation& v) : p_(p), v_(v) {}

  std::optional<Element> operator()(const Term& t) {
    if (auto it = memo_.find(t.id()); it != memo_.end()) return it->second;
    std::optional<Element> r = compute(t);
    if (t.size() > 1) memo_.emplace(t.id(), r);
    return r;
  }

 private:
  std::optional<Element> compute(const Term& t) {
    switch (t.op()) {
      case Op::var: {
        auto it = v_.find(t.name());
        if (it == v_.end()) throw AlgebraError("unbound variable '" + t.name() + "'");
        if (it->second.is_bot()) return std::nullopt;
        return it->second;
      }
      case Op::zero: return p_.zero();
      case Op::one: return p_.one();
      case Op::neg: {
        auto a = (*this)(t.arg(0));
        if (!a) return std::nullopt;
        return p_.neg(*a);
      }
      case Op::add:
      case Op::mul:
      case Op::div: {
        auto a = (*this)(t.arg(0));
        if (!a) return std::nullopt;
        auto b = (*this)(t.arg(1));
        if (!b) return std::nullopt;
        if (t.op() == Op::add) return p_.add(*a, *b);
        if (t.op() == Op::mul) return p_.mul(*a, *b);
        return p_.div(*a, *b);
      }
      case Op::bot:
      case Op::cond: break;
    }
    throw AlgebraError("partial evaluation does not accept bot or cond");
  }

  const PartialAlgebra& p_;
  const Valuation& v_;
  std::unordered_map<const void*, std::optional<Element>> memo_;
};

}  // namespace

Element eval(const Term& t, const TotalAlgebra& a, const Valuation& v) { return TotalEvaluator(a, v)(t); }

std::optional<Element> eval_partial(const Term& t, const PartialAlgebra& p, const Valuation& v) {
  if (!is_free_of(t, {Op::bot, Op::cond})) throw AlgebraError("partial evaluation does not accept bot or cond");
  return PartialEvaluator(p, v)(t);
}

bool eager_eq(const Term& t, const Term& r, const PartialAlgebra& p, const Valuation& v) {
  auto a = eval_partial(t, p, v);
  auto b = eval_partial(r, p, v);
  return !a || !b || *a == *b;
}

std::string render(const TotalAlgebra& a, const Valuation& v) {
  std::string out;
  for (const auto& [name, e] : v) {
    if (!out.empty()) out += ", ";
    out += name + "=" + a.render(e);
  }
  return out;
}

}  // namespace meadow
