#pragma once

#include <vector>

#include "forminv/series.hpp"
#include "forminv/tgraded.hpp"

namespace forminv {

// Power-series solution of the inviscid Burgers problem
//   dQ/dt = (1/2) <grad Q, grad Q>,   Q|_{t=0} = P,
// via Q_[1] = P and Q_[m] = 1/(2(m-1)) sum_{k+l=m} <grad Q_[k], grad Q_[l]>.
// When the source of an inverse expansion is grad P, its terms are the
// gradients of these: N_[m] = grad Q_[m]. term(m) multiplies t^(m-1) and
// carries the full z-truncation of the potential (window-exact kernel, same
// soundness argument as the inverse recurrence).
class BurgersExpansion {
public:
  BurgersExpansion(TruncatedSeries potential, std::vector<TruncatedSeries> terms);

  const TruncatedSeries& potential() const { return potential_; }
  int window() const { return potential_.trunc(); }
  int torder() const { return static_cast<int>(terms_.size()); }

  // 1-based: term(m) multiplies t^(m-1).
  const TruncatedSeries& term(int m) const;

  // Q at a numeric deformation value. For t0 != 0 requires o(P) >= 3 (or
  // P = 0) and enough stored t-orders to be exact below the window.
  TruncatedSeries eval(const GaussianRational& t0) const;

  TSeries as_tseries() const;
  // Slices grad(term(m)).
  TMap gradient_tmap() const;

  // Smallest z-order the dropped t-tail could contribute.
  int tail_order() const;

private:
  TruncatedSeries potential_;
  std::vector<TruncatedSeries> terms_;
};

// Runs the recurrence up to t-order torder >= 1; the potential must have
// order >= 2.
BurgersExpansion expand_potential(const TruncatedSeries& p, int torder);

// Expansion plus an independent recomputation of the residual
// (m-1) Q_[m] - (1/2) sum <grad Q_[k], grad Q_[l]> for each 2 <= m <= M,
// through the generic truncated operations.
struct BurgersSolution {
  BurgersExpansion expansion;
  std::vector<bool> residual_zero;  // index m-2

  bool ok() const;
};

BurgersSolution solve_burgers(const TruncatedSeries& p, int torder);

// For f = |z|^2/2 - P with o(P) >= 3, the multidimensional Legendre
// conjugate is bar f = |z|^2/2 + Q_{t=1}; its gradient inverts grad f.
// Requires trunc(f) >= 2, o(f) >= 2 and quadratic part exactly |z|^2/2.
TruncatedSeries legendre_transform(const TruncatedSeries& f);

// Structural identities tying the Burgers solution to the potential, each
// checked slice by slice through the computed z- and t-orders:
// (i) (grad Q_t)(F_t) = grad P, (ii) Q_t(F_t) = P - (t/2) <grad P, grad P>,
// (iii) dQ/dt = (1/2) <grad Q, grad Q>; F_t = z - t grad P.
struct SymmetricIdentityReport {
  bool gradient_identity = false;
  bool potential_identity = false;
  bool time_identity = false;

  bool all() const {
    return gradient_identity && potential_identity && time_identity;
  }
};

SymmetricIdentityReport symmetric_identities_report(
    const BurgersExpansion& expansion);

// Harmonicity evidence at a fixed Hessian power k: Hes(P)^k = 0, the
// Laplacians of all slices vanish, and every t-slice of Hes(Q_t)^k vanishes.
struct HarmonicityReport {
  bool hessian_power_zero = false;
  std::vector<bool> laplacian_zero;           // index m-1
  std::vector<bool> hessian_power_slice_zero;  // index = t-power

  bool all() const;
};

HarmonicityReport harmonicity_report(const BurgersExpansion& expansion,
                                     int power);

// Finite scan for polynomial behavior of Q_t in t. For a homogeneous
// potential of degree d >= 2 with nilpotent Hessian, slices are scanned up
// to the given t-order; a run of zero_window consecutive zero slices after
// the last nonzero one is reported as a witness. A witness is evidence for
// the scanned range only; the scan never decides the general statement.
enum class ScanVerdict { kPolynomialWitnessed, kUndecided };

struct JcScanResult {
  ScanVerdict verdict = ScanVerdict::kUndecided;
  // Largest t-order with a nonzero slice (0 for the zero potential).
  int witness_order = 0;
  int scanned_torder = 0;
  // Zero slices observed after witness_order.
  int zero_run = 0;
};

JcScanResult jc_scan(const TruncatedSeries& p, int torder, int zero_window);

}  // namespace forminv
