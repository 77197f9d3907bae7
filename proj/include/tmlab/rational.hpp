#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tmlab {

// Exact rational number over 64-bit integers, always kept normalized
// (denominator > 0, gcd(|num|, den) == 1). Intermediate products go through
// 128-bit arithmetic and throw std::overflow_error if a result does not fit,
// so a probability can never silently wrap.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(long long num) : num_(num), den_(1) {}  // NOLINT: implicit by design
  Rational(long long num, long long den) : num_(num), den_(den) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  Rational operator-() const { return Rational(unchecked{}, -num_, den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 num = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
    __int128 den = i128(a.den_) * b.den_;
    return from_i128(num, den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + (-b);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

  // "3/4", "-3/4", or "3" when the denominator is 1.
  std::string to_string() const {
    std::string out = std::to_string(num_);
    if (den_ != 1) {
      out += '/';
      out += std::to_string(den_);
    }
    return out;
  }

  // Accepts the same forms to_string produces.
  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    try {
      if (slash == std::string_view::npos) {
        return Rational(std::stoll(std::string(text)));
      }
      long long num = std::stoll(std::string(text.substr(0, slash)));
      long long den = std::stoll(std::string(text.substr(slash + 1)));
      return Rational(num, den);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("Rational: cannot parse '" +
                                  std::string(text) + "'");
    } catch (const std::out_of_range&) {
      throw std::overflow_error("Rational: value out of range in '" +
                                std::string(text) + "'");
    }
  }

 private:
  struct unchecked {};
  Rational(unchecked, long long num, long long den) : num_(num), den_(den) {}

  static __int128 i128(long long v) { return static_cast<__int128>(v); }

  static Rational from_i128(__int128 num, __int128 den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 g = gcd_i128(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    constexpr __int128 lo = std::numeric_limits<long long>::min();
    constexpr __int128 hi = std::numeric_limits<long long>::max();
    if (num < lo || num > hi || den > hi) {
      throw std::overflow_error("Rational: 64-bit overflow");
    }
    return Rational(unchecked{}, static_cast<long long>(num),
                    static_cast<long long>(den));
  }

  static __int128 gcd_i128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  void normalize() {
    Rational r = from_i128(num_, den_);
    num_ = r.num_;
    den_ = r.den_;
  }

  long long num_ = 0;
  long long den_ = 1;
};

}  // namespace tmlab
