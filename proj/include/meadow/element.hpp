#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

#include "meadow/rational.hpp"

namespace meadow {

/// Level tag used by level-structured algebras (the three-level lattice).
/// Flat algebras only ever use Level::base.
enum class Level : std::uint8_t { base, upper };

/// A carrier element of some algebra. The absorptive element is a distinct
/// state; every other element carries an exact value and a level tag.
/// Finite table algebras store their element index as the value.
class Element {
 public:
  Element() = default;

  static Element bot() {
    Element e;
    e.bot_ = true;
    return e;
  }
  static Element of(Rational v, Level level = Level::base) {
    Element e;
    e.value_ = std::move(v);
    e.level_ = level;
    return e;
  }

  bool is_bot() const { return bot_; }
  const Rational& value() const { return value_; }
  Level level() const { return level_; }

  friend bool operator==(const Element& a, const Element& b) {
    if (a.bot_ || b.bot_) return a.bot_ == b.bot_;
    return a.level_ == b.level_ && a.value_ == b.value_;
  }
  /// Total order used for canonical enumeration: non-bot elements by level
  /// then value, bot last.
  friend std::strong_ordering operator<=>(const Element& a, const Element& b) {
    if (a.bot_ || b.bot_) return static_cast<int>(a.bot_) <=> static_cast<int>(b.bot_);
    if (auto c = a.level_ <=> b.level_; c != 0) return c;
    return a.value_ <=> b.value_;
  }

  std::size_t hash() const {
    if (bot_) return 0xB07B07;
    return value_.hash() * 31 + static_cast<std::size_t>(level_);
  }

 private:
  bool bot_ = false;
  Level level_ = Level::base;
  Rational value_;
};

}  // namespace meadow

template <>
struct std::hash<meadow::Element> {
  std::size_t operator()(const meadow::Element& e) const { return e.hash(); }
};
