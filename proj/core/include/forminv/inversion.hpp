#pragma once

#include <utility>
#include <vector>

#include "forminv/series.hpp"
#include "forminv/tgraded.hpp"

namespace forminv {

// Expansion of the inverse of the deformation z - t*H(z): the unique N with
// G = z + t*N solving G o (z - t*H) = z, computed term by term in t from
//   N_[1] = H,   (m-1) * N_[m] = sum_{k+l=m} JN_[k] * N_[l]   (m >= 2).
// term(m) is the coefficient of t^(m-1); every slice carries the full
// z-truncation bound of the source (the recurrence runs on window-exact
// polynomial arithmetic, sound because unknown tails only ever multiply
// factors of positive z-order).
class InverseExpansion {
public:
  InverseExpansion(FormalMap source, std::vector<FormalMap> terms);

  const FormalMap& source() const { return source_; }
  int window() const { return source_.trunc(); }
  int torder() const { return static_cast<int>(terms_.size()); }

  // 1-based: term(m) multiplies t^(m-1), 1 <= m <= torder().
  const FormalMap& term(int m) const;

  // N evaluated at a numeric deformation value: sum term(m) * t0^(m-1).
  // Requires o(source) >= 2 (else evaluation is not degree-finite) and
  // enough stored t-orders to make the sum exact below the window.
  FormalMap eval(const GaussianRational& t0) const;

  // The t-graded view, slice m-1 = term(m).
  TMap as_tmap() const;

  // Smallest z-order the dropped t-tail could contribute; kInfiniteOrder
  // when the source is zero.
  int tail_order() const;

private:
  FormalMap source_;
  std::vector<FormalMap> terms_;
};

// Runs the recurrence up to t-order torder >= 1. The source must be
// constant-free (z-order >= 1).
InverseExpansion expand_inverse(const FormalMap& h, int torder);

// G_{t0} = z + t0 * N_{t0} = z + sum term(m) * t0^m, the inverse of
// z - t0*H. t0 = 0 gives the identity. For t0 != 0 requires o(H) >= 2.
FormalMap assemble_inverse(const InverseExpansion& expansion,
                           const GaussianRational& t0);

// Checks G(F) = z and F(G) = z through the shared truncation bound.
// Both maps must be constant-free.
bool verify_inverse(const FormalMap& f, const FormalMap& g);

// Nilpotency evidence at a fixed power k, everything modulo the computed
// z- and t-orders.
struct NilpotencyReport {
  // (J source)^k = 0.
  bool source_power_zero = false;
  // Tr(J term(m)) = 0 for each m (index m-1).
  std::vector<bool> trace_zero;
  // Every t-slice of (JN)^k vanishes (index = t-power).
  std::vector<bool> power_slice_zero;

  bool all() const;
};

NilpotencyReport nilpotency_report(const InverseExpansion& expansion, int power);

// The one-parameter family of inverse pairs: for a step s from base point
// t0, U = z - s * N_{t0} and V = z + s * N_{t0 + s} are mutually inverse.
// Requires o(source) >= 2 and enough t-orders for window-exact evaluation.
std::pair<FormalMap, FormalMap> shifted_inverse_pair(
    const InverseExpansion& expansion, const GaussianRational& s,
    const GaussianRational& t0);

// t-adic coefficients of u(z + t*N_t(z)) through t-order torder; slice 0
// is u itself. Requires torder <= stored t-orders.
std::vector<TruncatedSeries> transport(const TruncatedSeries& u,
                                       const InverseExpansion& expansion,
                                       int torder);

}  // namespace forminv
