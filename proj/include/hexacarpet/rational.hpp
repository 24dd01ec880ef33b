#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hexacarpet {

// Exact rational arithmetic on 64-bit numerator/denominator, always kept in
// lowest terms with a positive denominator. Every operation checks for
// overflow (intermediate products are taken in 128-bit) and throws
// std::overflow_error rather than silently wrapping. The geometric
// quantities in this library have denominators dividing 6^level with level
// capped in the single digits, so 64 bits leave a wide safety margin; the
// checks exist to make that claim enforced instead of assumed.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den) { assign(num, den); }
  // Intentional implicit conversion: lets integers participate in rational
  // arithmetic and comparisons directly.
  Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                     i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                     i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // "num/den", or just "num" when the denominator is 1.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  using i128 = __int128;

  void assign(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (den < 0) {
      if (num == INT64_MIN || den == INT64_MIN)
        throw std::overflow_error("Rational: negation overflow");
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    num_ = num;
    den_ = den;
  }

  static Rational from_i128(i128 num, i128 den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i128 g = gcd128(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
      throw std::overflow_error("Rational: 64-bit overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace hexacarpet
