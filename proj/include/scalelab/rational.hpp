#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace scalelab {

struct RationalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact rational arithmetic with a distinguished +infinity (stored as 1/0);
// the reciprocal convention is 1/0 = +inf and 1/inf = 0, so Lebesgue-exponent
// formulas evaluate without special-casing. Negative infinity does not exist:
// any operation that would produce it throws. Canonical form: den > 0,
// gcd(|num|, den) = 1. Arithmetic throws on int64 overflow instead of wrapping.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(long long n, long long d);

  static Rational infinity() {
    Rational r;
    r.num_ = 1;
    r.den_ = 0;
    return r;
  }

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_infinite() const { return den_ == 0; }
  bool is_zero() const { return den_ != 0 && num_ == 0; }
  bool is_negative() const { return num_ < 0; }

  Rational operator-() const;
  Rational reciprocal() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  double to_double() const;
  std::string to_string() const;
  // accepts "n", "n/d", "inf"; throws RationalError on anything else
  static Rational parse(const std::string& text);

 private:
  static Rational make(__int128 n, __int128 d);
  long long num_;
  long long den_;
};

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace scalelab
