#include "forminv/rational.hpp"

#include <regex>
#include <utility>

namespace forminv {

GaussianRational GaussianRational::from_ratio(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  return GaussianRational(Rational(num, den));
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  im_ = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  return *this *= o.inverse();
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  Rational n = norm();
  return GaussianRational(re_ / n, -im_ / n);
}

GaussianRational operator+(GaussianRational a, const GaussianRational& b) {
  a += b;
  return a;
}

GaussianRational operator-(GaussianRational a, const GaussianRational& b) {
  a -= b;
  return a;
}

GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
  GaussianRational r = a;
  r *= b;
  return r;
}

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  GaussianRational r = a;
  r /= b;
  return r;
}

GaussianRational pow(const GaussianRational& a, int k) {
  if (k < 0) throw DomainError("negative exponent");
  GaussianRational r(1);
  for (int j = 0; j < k; ++j) r *= a;
  return r;
}

namespace {

// One signed rational literal, e.g. "-7/3" or "+2" or "12".
Rational parse_rational_part(const std::string& text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::size_t slash = text.find('/', pos);
  BigInt num(text.substr(pos, slash == std::string::npos ? std::string::npos
                                                         : slash - pos));
  BigInt den(1);
  if (slash != std::string::npos) {
    den = BigInt(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
  }
  if (negative) num = -num;
  return Rational(num, den);
}

const std::regex kCoefficientGrammar(
    R"(^([+-]?[0-9]+(?:/[0-9]+)?)(?:([+-][0-9]+(?:/[0-9]+)?)i)?$)");

}  // namespace

GaussianRational GaussianRational::parse(std::string_view text) {
  std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, kCoefficientGrammar))
    throw ParseError("malformed coefficient '" + s + "'");
  Rational re = parse_rational_part(m[1].str());
  Rational im(0);
  if (m[2].matched) im = parse_rational_part(m[2].str());
  return GaussianRational(std::move(re), std::move(im));
}

std::string GaussianRational::str() const {
  if (im_ == 0) return re_.str();
  std::string out = re_.str();
  if (im_ > 0) out += '+';
  out += im_.str();
  out += 'i';
  return out;
}

}  // namespace forminv
