#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace parklot {

// Exact rational over 64-bit integers, always normalized: den > 0 and
// gcd(|num|, den) == 1. Intermediates use 128-bit arithmetic; a result whose
// reduced numerator or denominator no longer fits 64 bits throws
// std::overflow_error. All analytic quantities in this library are computed
// with this type; floating point appears only at reporting boundaries.
class Rational {
  using I128 = __int128;

 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // implicit by design
  Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

  // Accepts "p/q", "p", and plain decimals such as "0.25" or "-1.5".
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  // "p/q", or just "p" when the value is integral.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(I128(a.num_) * b.den_ + I128(b.num_) * a.den_,
                I128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(I128(a.num_) * b.den_ - I128(b.num_) * a.den_,
                I128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(I128(a.num_) * b.num_, I128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::invalid_argument("division by zero rational");
    return make(I128(a.num_) * b.den_, I128(a.den_) * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return I128(a.num_) * b.den_ < I128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

 private:
  static I128 abs128(I128 v) { return v < 0 ? -v : v; }

  static I128 gcd128(I128 a, I128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
      I128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational make(I128 n, I128 d) {
    Rational r;
    r.assign128(n, d);
    return r;
  }

  void assign(std::int64_t n, std::int64_t d) { assign128(n, d); }

  void assign128(I128 n, I128 d) {
    if (d == 0) throw std::invalid_argument("zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) {
      num_ = 0;
      den_ = 1;
      return;
    }
    I128 g = gcd128(n, d);
    n /= g;
    d /= g;
    constexpr I128 kMax = INT64_MAX;
    if (abs128(n) > kMax || d > kMax)
      throw std::overflow_error("rational out of 64-bit range");
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("cannot parse rational: '" +
                                std::string(text) + "'");
  };
  if (text.empty()) fail();
  std::string s(text);
  try {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      std::size_t p1 = 0, p2 = 0;
      std::int64_t num = std::stoll(s.substr(0, slash), &p1);
      std::int64_t den = std::stoll(s.substr(slash + 1), &p2);
      if (p1 != slash || p2 != s.size() - slash - 1) fail();
      return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      std::size_t frac_len = s.size() - dot - 1;
      if (frac_len == 0 || frac_len > 18) fail();
      std::size_t p = 0;
      std::int64_t num = std::stoll(digits, &p);
      if (p != digits.size()) fail();
      std::int64_t den = 1;
      for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
      return Rational(num, den);
    }
    std::size_t p = 0;
    std::int64_t v = std::stoll(s, &p);
    if (p != s.size()) fail();
    return Rational(v);
  } catch (const std::invalid_argument&) {
    fail();
  } catch (const std::out_of_range&) {
    fail();
  }
  return Rational();  // unreachable
}

}  // namespace parklot
