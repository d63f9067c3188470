#include "cusemi/rational.hpp"

namespace cusemi {

namespace mp = boost::multiprecision;

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  BigInt g = mp::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::parse(const std::string& text) {
  auto bad = [&] { return ParseError("malformed rational '" + text + "'"); };
  if (text.empty()) throw bad();
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    BigInt n(text.substr(0, slash));
    BigInt d(text.substr(slash + 1));
    if (d <= 0) throw bad();
    return Rational(n, d);
  } catch (const std::runtime_error&) {
    throw bad();
  }
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return Rational(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw std::invalid_argument("rational division by zero");
  return Rational(num_ * o.den_, den_ * o.num_);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
  BigInt lhs = num_ * o.den_;
  BigInt rhs = o.num_ * den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

BigInt lcm(const BigInt& a, const BigInt& b) { return a / mp::gcd(a, b) * b; }

}  // namespace cusemi
