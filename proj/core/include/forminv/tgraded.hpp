#pragma once

#include <vector>

#include "forminv/series.hpp"

namespace forminv {

// Finite expansions in a formal deformation parameter t with truncated-series
// coefficients: value = sum slice(j) * t^j. Slices beyond the stored range
// are the caller's responsibility; every operation takes an explicit t-order
// cap and produces exactly tcap+1 slices.

class TSeries {
public:
  explicit TSeries(std::vector<TruncatedSeries> slices);
  static TSeries zero(int nvars, int trunc, int nslices);

  int nvars() const { return slices_.front().nvars(); }
  int slice_count() const { return static_cast<int>(slices_.size()); }
  // Coefficient of t^j; zero (with the trunc of slice 0) beyond the range.
  const TruncatedSeries& slice(int j) const;
  bool is_zero() const;

private:
  std::vector<TruncatedSeries> slices_;
  TruncatedSeries pad_;
};

class TMap {
public:
  explicit TMap(std::vector<FormalMap> slices);
  static TMap zero(int nvars, int trunc, int nslices);

  int nvars() const { return slices_.front().nvars(); }
  int slice_count() const { return static_cast<int>(slices_.size()); }
  const FormalMap& slice(int j) const;
  bool is_zero() const;

private:
  std::vector<FormalMap> slices_;
  FormalMap pad_;
};

class TMatrix {
public:
  explicit TMatrix(std::vector<SeriesMatrix> slices);

  int slice_count() const { return static_cast<int>(slices_.size()); }
  const SeriesMatrix& slice(int j) const;
  bool is_zero() const;

private:
  std::vector<SeriesMatrix> slices_;
};

TSeries add(const TSeries& a, const TSeries& b, int tcap);
TSeries sub(const TSeries& a, const TSeries& b, int tcap);
TSeries mul(const TSeries& a, const TSeries& b, int tcap);
// d/dt: slice j of the result is (j+1) * slice j+1 of the input.
TSeries dt(const TSeries& a);

TMap add(const TMap& a, const TMap& b, int tcap);
TMap sub(const TMap& a, const TMap& b, int tcap);
TMap dt(const TMap& a);

TSeries inner_product(const TMap& a, const TMap& b, int tcap);
TMatrix jacobian(const TMap& f);

TMatrix mul(const TMatrix& a, const TMatrix& b, int tcap);
TMatrix power(const TMatrix& a, int k, int tcap);
TSeries trace(const TMatrix& a);

// Substitution of a t-dependent map into a t-dependent scalar/map/matrix.
// Every slice of g must be constant-free with z-order >= 1 so z-degree
// truncation stays sound.
TSeries compose(const TSeries& a, const TMap& g, int tcap);
TSeries compose(const TruncatedSeries& a, const TMap& g, int tcap);
TMap compose(const TMap& f, const TMap& g, int tcap);
TMatrix compose(const TMatrix& m, const TMap& g, int tcap);

}  // namespace forminv
