#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace meadow {

using BigInt = mpz_class;

/// Exact rational number, always stored in lowest terms with a positive
/// denominator, so structural comparison is value comparison.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(static_cast<long>(n)), den_(1) {}  // NOLINT: implicit by design of numerals
  Rational(BigInt n) : num_(std::move(n)), den_(1) {}                 // NOLINT
  Rational(BigInt n, BigInt d);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return sgn(num_); }

  /// Value as int64; only meaningful when is_integer() and it fits.
  std::int64_t to_int64() const;
  bool fits_int64() const;

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  /// Precondition: b != 0.
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// "p" for integers, "p/q" otherwise.
  std::string str() const;
  /// Accepts "p", "-p", "p/q"; throws std::invalid_argument otherwise.
  static Rational parse(std::string_view text);

  std::size_t hash() const;

 private:
  void normalize();

  BigInt num_;
  BigInt den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace meadow

template <>
struct std::hash<meadow::Rational> {
  std::size_t operator()(const meadow::Rational& r) const { return r.hash(); }
};
