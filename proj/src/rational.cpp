#include "scalelab/rational.hpp"

#include <limits>

namespace scalelab {

namespace {

using I128 = __int128;

I128 abs128(I128 x) { return x < 0 ? -x : x; }

I128 gcd128(I128 a, I128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    I128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr I128 kMax = std::numeric_limits<long long>::max();
constexpr I128 kMin = std::numeric_limits<long long>::min();

}  // namespace

Rational Rational::make(I128 n, I128 d) {
  if (d == 0) {
    if (n > 0) return infinity();
    if (n == 0) throw RationalError("rational 0/0 is undefined");
    throw RationalError("negative infinity is not representable");
  }
  if (d < 0) {
    n = -n;
    d = -d;
  }
  I128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (n > kMax || n < kMin || d > kMax) throw RationalError("rational overflow");
  Rational r;
  r.num_ = static_cast<long long>(n);
  r.den_ = static_cast<long long>(d);
  return r;
}

Rational::Rational(long long n, long long d) { *this = make(n, d); }

Rational Rational::operator-() const {
  if (is_infinite()) throw RationalError("negative infinity is not representable");
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational Rational::reciprocal() const {
  if (is_infinite()) return Rational(0);
  return make(den_, num_);  // 1/0 = +inf, throws for negative input per make
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.is_infinite() || b.is_infinite()) return Rational::infinity();
  return Rational::make(I128(a.num_) * b.den_ + I128(b.num_) * a.den_, I128(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  if (b.is_infinite()) {
    if (a.is_infinite()) throw RationalError("infinity minus infinity is undefined");
    throw RationalError("negative infinity is not representable");
  }
  if (a.is_infinite()) return Rational::infinity();
  return Rational::make(I128(a.num_) * b.den_ - I128(b.num_) * a.den_, I128(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  if (a.is_infinite() || b.is_infinite()) {
    const Rational& finite = a.is_infinite() ? b : a;
    if (!a.is_infinite() || !b.is_infinite()) {
      if (finite.is_zero()) throw RationalError("zero times infinity is undefined");
      if (finite.is_negative()) throw RationalError("negative infinity is not representable");
    }
    return Rational::infinity();
  }
  return Rational::make(I128(a.num_) * b.num_, I128(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (a.is_infinite() && b.is_infinite()) throw RationalError("infinity over infinity is undefined");
  return a * b.reciprocal();
}

bool operator<(const Rational& a, const Rational& b) {
  if (a.is_infinite()) return false;
  if (b.is_infinite()) return true;
  return I128(a.num_) * b.den_ < I128(b.num_) * a.den_;
}

double Rational::to_double() const {
  if (is_infinite()) return std::numeric_limits<double>::infinity();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
  if (is_infinite()) return "inf";
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
  if (text.empty()) throw RationalError("empty rational literal");
  if (text == "inf" || text == "+inf" || text == "infinity") return infinity();
  std::size_t slash = text.find('/');
  try {
    std::size_t used = 0;
    long long n = std::stoll(text.substr(0, slash), &used);
    if (slash == std::string::npos) {
      if (used != text.size()) throw RationalError("trailing characters in rational literal: " + text);
      return Rational(n);
    }
    std::string dpart = text.substr(slash + 1);
    long long d = std::stoll(dpart, &used);
    if (used != dpart.size()) throw RationalError("trailing characters in rational literal: " + text);
    return Rational(n, d);
  } catch (const std::invalid_argument&) {
    throw RationalError("malformed rational literal: " + text);
  } catch (const std::out_of_range&) {
    throw RationalError("rational literal out of range: " + text);
  }
}

}  // namespace scalelab
