#include "meadow/rational.hpp"

#include <limits>
#include <stdexcept>

namespace meadow {

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_ == 0) throw std::domain_error("rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (sgn(den_) < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  BigInt g;
  mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  if (g != 1 && g != 0) {
    mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
  if (num_ == 0) den_ = 1;
}

bool Rational::fits_int64() const {
  return is_integer() && num_.fits_slong_p() &&
         sizeof(long) == sizeof(std::int64_t);
}

std::int64_t Rational::to_int64() const {
  if (!fits_int64()) throw std::overflow_error("rational does not fit int64: " + str());
  return num_.get_si();
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.is_integer() && b.is_integer()) return Rational(BigInt(a.num_ + b.num_));
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (a.is_integer() && b.is_integer()) return Rational(BigInt(a.num_ * b.num_));
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("rational division by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  int c = cmp(a.num_ * b.den_, b.num_ * a.den_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  if (is_integer()) return num_.get_str();
  return num_.get_str() + "/" + den_.get_str();
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [](std::string_view s) {
    std::string_view digits = s;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (digits.empty()) throw std::invalid_argument("not a rational: '" + std::string(s) + "'");
    for (char c : digits)
      if (c < '0' || c > '9') throw std::invalid_argument("not a rational: '" + std::string(s) + "'");
    std::string buf(s);
    if (buf.front() == '+') buf.erase(0, 1);
    return BigInt(buf, 10);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  BigInt d = parse_int(text.substr(slash + 1));
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), d);
}

std::size_t Rational::hash() const {
  // Low limbs are enough for bucketing.
  auto limb = [](const BigInt& v) -> std::size_t {
    return mpz_size(v.get_mpz_t()) == 0 ? 0 : static_cast<std::size_t>(mpz_getlimbn(v.get_mpz_t(), 0));
  };
  std::size_t h = limb(num_) * 0x9E3779B97F4A7C15ULL ^ limb(den_);
  return sgn(num_) < 0 ? ~h : h;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace meadow
