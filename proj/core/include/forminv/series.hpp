#pragma once

#include <initializer_list>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "forminv/rational.hpp"

namespace forminv {

// Sentinel order of the zero series.
inline constexpr int kInfiniteOrder = 1 << 30;

// Exponent vector of a monomial in a fixed number of variables.
struct Monomial {
  std::vector<int> exps;

  Monomial() = default;
  explicit Monomial(std::vector<int> e) : exps(std::move(e)) {}
  Monomial(std::initializer_list<int> e) : exps(e) {}

  int nvars() const { return static_cast<int>(exps.size()); }
  int degree() const;

  Monomial operator*(const Monomial& o) const;

  bool operator==(const Monomial& o) const { return exps == o.exps; }
  bool operator!=(const Monomial& o) const { return exps != o.exps; }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

// Ascending total degree, ties broken lexicographically on exponent vectors.
bool graded_lex_less(const Monomial& a, const Monomial& b);

// Exact multivariate polynomial over Q(i). Stores only nonzero terms.
class Poly {
public:
  using TermMap = std::unordered_map<Monomial, GaussianRational, MonomialHash>;

  explicit Poly(int nvars);

  static Poly constant(int nvars, GaussianRational c);
  static Poly variable(int nvars, int var);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  GaussianRational coeff(const Monomial& m) const;

  // Accumulates c onto the coefficient of m, erasing the term if it cancels.
  void add_term(const Monomial& m, const GaussianRational& c);

  // Minimal total degree of a nonzero term; kInfiniteOrder for zero.
  int order() const;
  // Maximal total degree of a nonzero term; -1 for zero.
  int degree() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly scaled(const GaussianRational& c) const;

  Poly derivative(int var) const;

  // Drops all terms of total degree > maxdeg (maxdeg may be negative).
  Poly truncated(int maxdeg) const;
  Poly homogeneous_part(int d) const;
  // Degree shared by all terms, or nullopt if mixed or zero.
  std::optional<int> homogeneous_degree() const;

  // Terms in graded lexicographic order.
  std::vector<std::pair<Monomial, GaussianRational>> sorted_terms() const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

private:
  int nvars_;
  TermMap terms_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
// Exact product.
Poly operator*(const Poly& a, const Poly& b);
// Product with all terms of total degree > window discarded during
// accumulation; the workhorse of every truncated computation.
Poly mul_window(const Poly& a, const Poly& b, int window);

// A polynomial known to agree with some power series below a truncation
// bound: terms of total degree <= trunc are authoritative, higher degrees
// are unknown. trunc = -1 means nothing is known.
class TruncatedSeries {
public:
  TruncatedSeries(Poly p, int trunc);

  static TruncatedSeries zero(int nvars, int trunc);
  static TruncatedSeries constant(int nvars, GaussianRational c, int trunc);
  static TruncatedSeries variable(int nvars, int var, int trunc);

  int nvars() const { return poly_.nvars(); }
  int trunc() const { return trunc_; }
  const Poly& poly() const { return poly_; }
  bool is_zero() const { return poly_.is_zero(); }
  int order() const { return poly_.order(); }
  GaussianRational coeff(const Monomial& m) const { return poly_.coeff(m); }

  // Lowers the truncation bound; raising it would claim unknown terms.
  TruncatedSeries truncated(int newtrunc) const;

  // Equality of the known parts including the bound itself.
  bool operator==(const TruncatedSeries& o) const;
  bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }

private:
  Poly poly_;
  int trunc_;
};

// Result truncation of every arithmetic operation is the pessimistic bound:
// min of the operands for + - *, one less for a derivative.
TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a);
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(const GaussianRational& c, const TruncatedSeries& a);

TruncatedSeries partial_derivative(const TruncatedSeries& a, int var);

// Homogeneous part of degree d; requires d <= trunc(a).
Poly homogeneous_component(const TruncatedSeries& a, int d);

// True when the known parts agree at every degree <= d; requires that both
// bounds reach d.
bool equal_through_degree(const TruncatedSeries& a, const TruncatedSeries& b, int d);

// Formal map C^n -> C^n: n truncated series in n variables sharing one
// truncation bound.
class FormalMap {
public:
  explicit FormalMap(std::vector<TruncatedSeries> comps);

  static FormalMap identity(int nvars, int trunc);
  static FormalMap zero(int nvars, int trunc);

  int nvars() const { return static_cast<int>(comps_.size()); }
  int trunc() const { return comps_.front().trunc(); }
  const TruncatedSeries& component(int i) const;
  const TruncatedSeries& operator[](int i) const { return component(i); }

  int order() const;
  bool is_zero() const;
  // True when no component has a constant term.
  bool constant_free() const;

  FormalMap truncated(int newtrunc) const;

  bool operator==(const FormalMap& o) const { return comps_ == o.comps_; }
  bool operator!=(const FormalMap& o) const { return !(*this == o); }

private:
  std::vector<TruncatedSeries> comps_;
};

FormalMap operator+(const FormalMap& a, const FormalMap& b);
FormalMap operator-(const FormalMap& a, const FormalMap& b);
FormalMap operator*(const GaussianRational& c, const FormalMap& a);

// Matrix with truncated-series entries (Jacobians, Hessians).
class SeriesMatrix {
public:
  SeriesMatrix(int rows, int cols, int nvars, int trunc);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nvars() const { return nvars_; }

  TruncatedSeries& at(int i, int j);
  const TruncatedSeries& at(int i, int j) const;

  SeriesMatrix operator*(const SeriesMatrix& o) const;
  SeriesMatrix operator+(const SeriesMatrix& o) const;
  // Square matrix applied to the component vector of a map.
  FormalMap apply(const FormalMap& v) const;
  // k-th power of a square matrix, k >= 1.
  SeriesMatrix power(int k) const;
  TruncatedSeries trace() const;
  SeriesMatrix transpose() const;

  bool is_zero() const;
  bool is_symmetric() const;

  bool operator==(const SeriesMatrix& o) const;

private:
  int rows_, cols_, nvars_;
  std::vector<TruncatedSeries> cells_;
};

// Vector of partial derivatives of a scalar series.
FormalMap gradient(const TruncatedSeries& a);
// Sum of componentwise products of two maps.
TruncatedSeries inner_product(const FormalMap& a, const FormalMap& b);
// Matrix of partial derivatives of the components of a map.
SeriesMatrix jacobian(const FormalMap& f);
// Symmetric matrix of second partials of a scalar series.
SeriesMatrix hessian(const TruncatedSeries& a);
// Sum of second partials of a scalar series.
TruncatedSeries laplacian(const TruncatedSeries& a);

// Substitution a(g1, ..., gn); every component of g must be constant-free.
TruncatedSeries compose(const TruncatedSeries& a, const FormalMap& g);
FormalMap compose(const FormalMap& f, const FormalMap& g);

}  // namespace forminv
