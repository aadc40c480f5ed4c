#include "forminv/symmetric.hpp"

#include <algorithm>

#include "forminv/parallel.hpp"

namespace forminv {

namespace {

// Agreement of known parts through the shared bound; vacuous when nothing
// is shared.
bool agree(const TruncatedSeries& a, const TruncatedSeries& b) {
  int d = std::min(a.trunc(), b.trunc());
  if (d < 0) return true;
  return equal_through_degree(a, b, d);
}

bool agree(const FormalMap& a, const FormalMap& b) {
  if (a.nvars() != b.nvars()) return false;
  for (int i = 0; i < a.nvars(); ++i)
    if (!agree(a[i], b[i])) return false;
  return true;
}

void check_potential_order(const TruncatedSeries& p) {
  if (!p.is_zero() && p.order() < 2)
    throw DomainError("potential must have order >= 2");
}

std::vector<Poly> gradient_polys(const Poly& p) {
  std::vector<Poly> g;
  g.reserve(static_cast<std::size_t>(p.nvars()));
  for (int v = 0; v < p.nvars(); ++v) g.push_back(p.derivative(v));
  return g;
}

Poly half_square_norm(int nvars) {
  Poly p(nvars);
  for (int v = 0; v < nvars; ++v) {
    std::vector<int> e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(v)] = 2;
    p.add_term(Monomial(std::move(e)),
               GaussianRational(Rational(BigInt(1), BigInt(2))));
  }
  return p;
}

TSeries scale(const TSeries& a, const GaussianRational& c) {
  std::vector<TruncatedSeries> slices;
  slices.reserve(static_cast<std::size_t>(a.slice_count()));
  for (int j = 0; j < a.slice_count(); ++j) slices.push_back(c * a.slice(j));
  return TSeries(std::move(slices));
}

}  // namespace

BurgersExpansion::BurgersExpansion(TruncatedSeries potential,
                                   std::vector<TruncatedSeries> terms)
    : potential_(std::move(potential)), terms_(std::move(terms)) {
  if (terms_.empty()) throw DomainError("expansion needs at least one term");
  for (const auto& t : terms_)
    if (t.nvars() != potential_.nvars() || t.trunc() != potential_.trunc())
      throw DomainError("expansion term shape mismatch");
}

const TruncatedSeries& BurgersExpansion::term(int m) const {
  if (m < 1 || m > torder()) throw DomainError("t-order out of range");
  return terms_[static_cast<std::size_t>(m - 1)];
}

int BurgersExpansion::tail_order() const {
  int p0 = potential_.order();
  if (p0 == kInfiniteOrder) return kInfiniteOrder;
  if (p0 < 3) return 2;
  long long t = static_cast<long long>(p0 - 2) * (torder() + 1) + 2;
  return t > kInfiniteOrder ? kInfiniteOrder : static_cast<int>(t);
}

TruncatedSeries BurgersExpansion::eval(const GaussianRational& t0) const {
  int w = window();
  if (!t0.is_zero()) {
    if (!potential_.is_zero() && potential_.order() < 3)
      throw DomainError("numeric evaluation needs potential order >= 3");
    if (tail_order() <= w)
      throw DomainError("insufficient t-orders for window-exact evaluation");
  }
  TruncatedSeries acc = TruncatedSeries::zero(potential_.nvars(), w);
  GaussianRational p(1);
  for (int m = 1; m <= torder(); ++m) {
    acc = acc + p * term(m);
    p *= t0;
  }
  return acc;
}

TSeries BurgersExpansion::as_tseries() const { return TSeries(terms_); }

TMap BurgersExpansion::gradient_tmap() const {
  std::vector<FormalMap> slices;
  slices.reserve(terms_.size());
  for (const auto& t : terms_) slices.push_back(gradient(t));
  return TMap(std::move(slices));
}

BurgersExpansion expand_potential(const TruncatedSeries& p, int torder) {
  if (torder < 1) throw DomainError("t-order must be at least 1");
  check_potential_order(p);
  const int n = p.nvars();
  const int w = p.trunc();

  std::vector<Poly> terms;
  std::vector<std::vector<Poly>> grads;
  terms.reserve(static_cast<std::size_t>(torder));
  grads.reserve(static_cast<std::size_t>(torder));
  terms.push_back(p.poly());
  grads.push_back(gradient_polys(terms.front()));

  for (int m = 2; m <= torder; ++m) {
    std::vector<Poly> partials(static_cast<std::size_t>(m - 1), Poly(n));
    parallel_for(m - 1, [&](int idx) {
      int k = idx + 1, l = m - k;
      auto& out = partials[static_cast<std::size_t>(idx)];
      const auto& gk = grads[static_cast<std::size_t>(k - 1)];
      const auto& gl = grads[static_cast<std::size_t>(l - 1)];
      for (int v = 0; v < n; ++v)
        out += mul_window(gk[static_cast<std::size_t>(v)],
                          gl[static_cast<std::size_t>(v)], w);
    });
    Poly qm(n);
    for (const auto& part : partials) qm += part;
    qm = qm.scaled(GaussianRational(Rational(BigInt(1), BigInt(2 * (m - 1)))));
    grads.push_back(gradient_polys(qm));
    terms.push_back(std::move(qm));
  }

  std::vector<TruncatedSeries> slices;
  slices.reserve(terms.size());
  for (const auto& t : terms) slices.push_back(TruncatedSeries(t, w));
  return BurgersExpansion(p, std::move(slices));
}

bool BurgersSolution::ok() const {
  return std::all_of(residual_zero.begin(), residual_zero.end(),
                     [](bool b) { return b; });
}

BurgersSolution solve_burgers(const TruncatedSeries& p, int torder) {
  BurgersExpansion expansion = expand_potential(p, torder);

  std::vector<bool> residual;
  residual.reserve(static_cast<std::size_t>(std::max(0, torder - 1)));
  std::vector<FormalMap> grads;
  grads.reserve(static_cast<std::size_t>(torder));
  for (int m = 1; m <= torder; ++m) grads.push_back(gradient(expansion.term(m)));

  for (int m = 2; m <= torder; ++m) {
    TruncatedSeries rhs =
        inner_product(grads[0], grads[static_cast<std::size_t>(m - 2)]);
    for (int k = 2; k <= m - 1; ++k)
      rhs = rhs + inner_product(grads[static_cast<std::size_t>(k - 1)],
                                grads[static_cast<std::size_t>(m - k - 1)]);
    TruncatedSeries lhs =
        GaussianRational(2 * (m - 1)) * expansion.term(m);
    residual.push_back(agree(lhs, rhs));
  }
  return BurgersSolution{std::move(expansion), std::move(residual)};
}

TruncatedSeries legendre_transform(const TruncatedSeries& f) {
  const int n = f.nvars();
  const int d = f.trunc();
  if (d < 2) throw DomainError("truncation must reach the quadratic part");
  if (!f.poly().homogeneous_part(0).is_zero() ||
      !f.poly().homogeneous_part(1).is_zero())
    throw DomainError("order >= 2 required");
  Poly quad = half_square_norm(n);
  if (f.poly().homogeneous_part(2) != quad)
    throw DomainError("quadratic part must be half the squared norm");

  TruncatedSeries p(quad - f.poly(), d);
  if (p.is_zero()) return f;
  BurgersExpansion expansion = expand_potential(p, std::max(1, d - 2));
  TruncatedSeries q = expansion.eval(GaussianRational(1));
  return TruncatedSeries(quad + q.poly(), d);
}

SymmetricIdentityReport symmetric_identities_report(
    const BurgersExpansion& expansion) {
  const TruncatedSeries& p = expansion.potential();
  const int n = p.nvars();
  const int w = expansion.window();
  const int m = expansion.torder();
  SymmetricIdentityReport report;

  FormalMap grad_p = gradient(p);
  TMap f_t({FormalMap::identity(n, w), GaussianRational(-1) * grad_p});

  // (i) the composed gradient flow is t-independent.
  {
    TMap lhs = compose(expansion.gradient_tmap(), f_t, m - 1);
    bool ok = agree(lhs.slice(0), grad_p);
    for (int j = 1; j <= m - 1; ++j) ok = ok && lhs.slice(j).is_zero();
    report.gradient_identity = ok;
  }

  // (ii) the composed potential flow is affine in t.
  {
    TSeries lhs = compose(expansion.as_tseries(), f_t, m - 1);
    TruncatedSeries drift =
        GaussianRational(Rational(BigInt(-1), BigInt(2))) *
        inner_product(grad_p, grad_p);
    bool ok = agree(lhs.slice(0), p);
    if (m >= 2) ok = ok && agree(lhs.slice(1), drift);
    for (int j = 2; j <= m - 1; ++j) ok = ok && lhs.slice(j).is_zero();
    report.potential_identity = ok;
  }

  // (iii) the defining evolution equation, slice by slice.
  {
    TSeries lhs = dt(expansion.as_tseries());
    TSeries rhs = scale(
        inner_product(expansion.gradient_tmap(), expansion.gradient_tmap(),
                      std::max(0, m - 2)),
        GaussianRational(Rational(BigInt(1), BigInt(2))));
    bool ok = true;
    for (int j = 0; j <= m - 2; ++j) ok = ok && agree(lhs.slice(j), rhs.slice(j));
    report.time_identity = ok;
  }
  return report;
}

bool HarmonicityReport::all() const {
  if (!hessian_power_zero) return false;
  return std::all_of(laplacian_zero.begin(), laplacian_zero.end(),
                     [](bool b) { return b; }) &&
         std::all_of(hessian_power_slice_zero.begin(),
                     hessian_power_slice_zero.end(),
                     [](bool b) { return b; });
}

HarmonicityReport harmonicity_report(const BurgersExpansion& expansion,
                                     int power_k) {
  if (power_k < 1) throw DomainError("power must be at least 1");
  HarmonicityReport report;
  report.hessian_power_zero =
      hessian(expansion.potential()).power(power_k).is_zero();

  const int m = expansion.torder();
  report.laplacian_zero.reserve(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j)
    report.laplacian_zero.push_back(laplacian(expansion.term(j)).is_zero());

  std::vector<SeriesMatrix> slices;
  slices.reserve(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j) slices.push_back(hessian(expansion.term(j)));
  TMatrix pk = power(TMatrix(std::move(slices)), power_k, m - 1);
  report.hessian_power_slice_zero.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j)
    report.hessian_power_slice_zero.push_back(pk.slice(j).is_zero());
  return report;
}

namespace {

// Exact polynomial Hessian nilpotency; the scan treats its input polynomial
// as exact, so no truncation is involved.
bool hessian_nilpotent_exact(const Poly& p, int n) {
  std::vector<std::vector<Poly>> hes(
      static_cast<std::size_t>(n),
      std::vector<Poly>(static_cast<std::size_t>(n), Poly(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      hes[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          p.derivative(i).derivative(j);
  auto mul_mat = [n](const std::vector<std::vector<Poly>>& a,
                     const std::vector<std::vector<Poly>>& b) {
    std::vector<std::vector<Poly>> r(
        static_cast<std::size_t>(n),
        std::vector<Poly>(static_cast<std::size_t>(n), Poly(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
              a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
              b[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    return r;
  };
  std::vector<std::vector<Poly>> pow = hes;
  for (int s = 1; s < n; ++s) pow = mul_mat(pow, hes);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!pow[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
               .is_zero())
        return false;
  return true;
}

}  // namespace

JcScanResult jc_scan(const TruncatedSeries& p, int torder, int zero_window) {
  if (torder < 1) throw DomainError("t-order must be at least 1");
  if (zero_window < 1) throw DomainError("zero window must be at least 1");
  if (p.is_zero())
    return JcScanResult{ScanVerdict::kPolynomialWitnessed, 0, 0, 0};

  auto hd = p.poly().homogeneous_degree();
  if (!hd) throw DomainError("scan needs a homogeneous potential");
  int d = *hd;
  if (d < 2) throw DomainError("scan needs degree >= 2");
  if (p.trunc() < (d - 2) * torder + 2)
    throw DomainError("insufficient truncation for the requested t-order");
  if (!hessian_nilpotent_exact(p.poly(), p.nvars()))
    throw DomainError("scan needs a nilpotent Hessian");

  BurgersExpansion expansion = expand_potential(p, torder);
  int last_nonzero = 0;
  for (int m = 1; m <= torder; ++m)
    if (!expansion.term(m).is_zero()) last_nonzero = m;

  JcScanResult result;
  result.witness_order = last_nonzero;
  result.scanned_torder = torder;
  result.zero_run = torder - last_nonzero;
  result.verdict = result.zero_run >= zero_window
                       ? ScanVerdict::kPolynomialWitnessed
                       : ScanVerdict::kUndecided;
  return result;
}

}  // namespace forminv
