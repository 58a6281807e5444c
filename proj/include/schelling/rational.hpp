#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace schelling {

// Exact fraction over int64, always in lowest terms with positive
// denominator. All utility, welfare and potential arithmetic goes through
// this type; nothing in the library touches floating point.
//
// Intermediate products are computed in 128-bit; results that do not fit
// back into int64 after reduction throw overflow_error. The quantities in
// this domain (utilities i/j with i,j <= n, short welfare sums) stay far
// below that bound.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)

  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational: zero denominator");
    normalize_from(static_cast<__int128>(num), static_cast<__int128>(den));
  }

  static Rational from_string(std::string_view s);

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_integer() const { return den_ == 1; }

  // Always renders as "p/q", q > 0, reduced. Keeps files and reports
  // canonical and trivially parseable.
  std::string str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 num = static_cast<__int128>(a.num_) * b.den_ +
                   static_cast<__int128>(b.num_) * a.den_;
    __int128 den = static_cast<__int128>(a.den_) * b.den_;
    return Rational(num, den, raw_tag{});
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    __int128 num = static_cast<__int128>(a.num_) * b.den_ -
                   static_cast<__int128>(b.num_) * a.den_;
    __int128 den = static_cast<__int128>(a.den_) * b.den_;
    return Rational(num, den, raw_tag{});
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    __int128 num = static_cast<__int128>(a.num_) * b.num_;
    __int128 den = static_cast<__int128>(a.den_) * b.den_;
    return Rational(num, den, raw_tag{});
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational: division by zero");
    __int128 num = static_cast<__int128>(a.num_) * b.den_;
    __int128 den = static_cast<__int128>(a.den_) * b.num_;
    return Rational(num, den, raw_tag{});
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
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <
           static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

 private:
  struct raw_tag {};
  Rational(__int128 num, __int128 den, raw_tag) { normalize_from(num, den); }

  void normalize_from(__int128 num, __int128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 a = num < 0 ? -num : num;
    __int128 g = gcd128(a, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    constexpr __int128 lo = static_cast<__int128>(INT64_MIN);
    constexpr __int128 hi = static_cast<__int128>(INT64_MAX);
    if (num < lo || num > hi || den > hi)
      throw std::overflow_error("rational: value out of 64-bit range");
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  std::int64_t num_;
  std::int64_t den_;
};

inline Rational Rational::from_string(std::string_view s) {
  auto parse_int = [](std::string_view t) -> std::int64_t {
    if (t.empty()) throw std::invalid_argument("rational: empty component");
    std::size_t i = 0;
    bool neg = false;
    if (t[0] == '-' || t[0] == '+') {
      neg = t[0] == '-';
      i = 1;
    }
    if (i == t.size()) throw std::invalid_argument("rational: bad integer");
    std::int64_t v = 0;
    for (; i < t.size(); ++i) {
      if (t[i] < '0' || t[i] > '9')
        throw std::invalid_argument("rational: bad character in number");
      v = v * 10 + (t[i] - '0');
      if (v < 0) throw std::overflow_error("rational: literal too large");
    }
    return neg ? -v : v;
  };
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(s), 1);
  return Rational(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
}

}  // namespace schelling

template <>
struct std::hash<schelling::Rational> {
  std::size_t operator()(const schelling::Rational& r) const noexcept {
    std::size_t h = std::hash<std::int64_t>{}(r.numerator());
    h ^= std::hash<std::int64_t>{}(r.denominator()) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
    return h;
  }
};
