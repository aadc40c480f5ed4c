#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

#include "forminv/errors.hpp"

namespace forminv {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Element of Q(i): a complex number with exact rational real and imaginary
// parts. Both parts are kept in lowest terms with positive denominator by
// the backend.
class GaussianRational {
public:
  GaussianRational() = default;
  GaussianRational(long value) : re_(value) {}
  GaussianRational(Rational re) : re_(std::move(re)) {}
  GaussianRational(Rational re, Rational im)
      : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return GaussianRational(Rational(0), Rational(1)); }

  // num/den as an exact rational; den must be nonzero.
  static GaussianRational from_ratio(const BigInt& num, const BigInt& den);

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  GaussianRational operator-() const { return GaussianRational(-re_, -im_); }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  GaussianRational conjugate() const { return GaussianRational(re_, -im_); }

  // re^2 + im^2, zero iff the number is zero.
  Rational norm() const { return re_ * re_ + im_ * im_; }

  // Multiplicative inverse; the number must be nonzero.
  GaussianRational inverse() const;

  bool operator==(const GaussianRational& o) const {
    return re_ == o.re_ && im_ == o.im_;
  }
  bool operator!=(const GaussianRational& o) const { return !(*this == o); }

  // Grammar: [+-]N[/D][[+-]M[/D2]i] with decimal digit strings N, D, M, D2.
  // The real part is always present; "3/4+1/2i", "-2", "0+1i" are all valid.
  static GaussianRational parse(std::string_view text);

  // Canonical form accepted by parse(); format(parse(s)) is idempotent.
  std::string str() const;

private:
  Rational re_;
  Rational im_;
};

GaussianRational operator+(GaussianRational a, const GaussianRational& b);
GaussianRational operator-(GaussianRational a, const GaussianRational& b);
GaussianRational operator*(const GaussianRational& a, const GaussianRational& b);
GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);

// a^k for k >= 0 (a^0 = 1).
GaussianRational pow(const GaussianRational& a, int k);

}  // namespace forminv
