#include "forminv/inversion.hpp"

#include <algorithm>

#include "forminv/parallel.hpp"

namespace forminv {

namespace {

std::vector<std::vector<Poly>> jacobian_polys(const std::vector<Poly>& comp) {
  int n = static_cast<int>(comp.size());
  std::vector<std::vector<Poly>> j(
      static_cast<std::size_t>(n),
      std::vector<Poly>(static_cast<std::size_t>(n), Poly(n)));
  for (int i = 0; i < n; ++i)
    for (int v = 0; v < n; ++v)
      j[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)] =
          comp[static_cast<std::size_t>(i)].derivative(v);
  return j;
}

FormalMap wrap(const std::vector<Poly>& comp, int trunc) {
  std::vector<TruncatedSeries> out;
  out.reserve(comp.size());
  for (const auto& p : comp) out.push_back(TruncatedSeries(p, trunc));
  return FormalMap(std::move(out));
}

}  // namespace

InverseExpansion::InverseExpansion(FormalMap source,
                                   std::vector<FormalMap> terms)
    : source_(std::move(source)), terms_(std::move(terms)) {
  if (terms_.empty()) throw DomainError("expansion needs at least one term");
  for (const auto& t : terms_)
    if (t.nvars() != source_.nvars() || t.trunc() != source_.trunc())
      throw DomainError("expansion term shape mismatch");
}

const FormalMap& InverseExpansion::term(int m) const {
  if (m < 1 || m > torder()) throw DomainError("t-order out of range");
  return terms_[static_cast<std::size_t>(m - 1)];
}

int InverseExpansion::tail_order() const {
  int d0 = source_.order();
  if (d0 == kInfiniteOrder) return kInfiniteOrder;
  if (d0 < 2) return 1;
  long long t = static_cast<long long>(d0 - 1) * (torder() + 1) + 1;
  return t > kInfiniteOrder ? kInfiniteOrder : static_cast<int>(t);
}

FormalMap InverseExpansion::eval(const GaussianRational& t0) const {
  int n = source_.nvars(), w = window();
  if (!t0.is_zero()) {
    if (!source_.is_zero() && source_.order() < 2)
      throw DomainError("numeric evaluation needs source order >= 2");
    if (tail_order() <= w)
      throw DomainError("insufficient t-orders for window-exact evaluation");
  }
  FormalMap acc = FormalMap::zero(n, w);
  GaussianRational p(1);
  for (int m = 1; m <= torder(); ++m) {
    acc = acc + p * term(m);
    p *= t0;
  }
  return acc;
}

TMap InverseExpansion::as_tmap() const { return TMap(terms_); }

InverseExpansion expand_inverse(const FormalMap& h, int torder) {
  if (torder < 1) throw DomainError("t-order must be at least 1");
  if (!h.constant_free()) throw DomainError("source has a constant term");
  const int n = h.nvars();
  const int w = h.trunc();

  std::vector<std::vector<Poly>> terms;
  std::vector<std::vector<std::vector<Poly>>> jacs;
  terms.reserve(static_cast<std::size_t>(torder));
  jacs.reserve(static_cast<std::size_t>(torder));

  std::vector<Poly> first;
  first.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) first.push_back(h[i].poly());
  jacs.push_back(jacobian_polys(first));
  terms.push_back(std::move(first));

  for (int m = 2; m <= torder; ++m) {
    // One partial per split k + l = m, folded in fixed order below.
    std::vector<std::vector<Poly>> partials(
        static_cast<std::size_t>(m - 1),
        std::vector<Poly>(static_cast<std::size_t>(n), Poly(n)));
    parallel_for(m - 1, [&](int idx) {
      int k = idx + 1, l = m - k;
      auto& out = partials[static_cast<std::size_t>(idx)];
      const auto& jk = jacs[static_cast<std::size_t>(k - 1)];
      const auto& nl = terms[static_cast<std::size_t>(l - 1)];
      for (int i = 0; i < n; ++i)
        for (int v = 0; v < n; ++v)
          out[static_cast<std::size_t>(i)] +=
              mul_window(jk[static_cast<std::size_t>(i)]
                           [static_cast<std::size_t>(v)],
                         nl[static_cast<std::size_t>(v)], w);
    });
    GaussianRational scale(Rational(BigInt(1), BigInt(m - 1)));
    std::vector<Poly> nm(static_cast<std::size_t>(n), Poly(n));
    for (const auto& part : partials)
      for (int i = 0; i < n; ++i)
        nm[static_cast<std::size_t>(i)] += part[static_cast<std::size_t>(i)];
    for (int i = 0; i < n; ++i)
      nm[static_cast<std::size_t>(i)] =
          nm[static_cast<std::size_t>(i)].scaled(scale);
    jacs.push_back(jacobian_polys(nm));
    terms.push_back(std::move(nm));
  }

  std::vector<FormalMap> slices;
  slices.reserve(terms.size());
  for (const auto& t : terms) slices.push_back(wrap(t, w));
  return InverseExpansion(h, std::move(slices));
}

FormalMap assemble_inverse(const InverseExpansion& expansion,
                           const GaussianRational& t0) {
  int n = expansion.source().nvars(), w = expansion.window();
  if (t0.is_zero()) return FormalMap::identity(n, w);
  if (!expansion.source().is_zero() && expansion.source().order() < 2)
    throw DomainError("numeric evaluation needs source order >= 2");

  // Terms beyond the stored t-orders have z-order >= tail_order(), so the
  // assembled sum is exact strictly below it.
  int rtrunc = std::min(w, expansion.tail_order() - 1);
  std::vector<Poly> comp;
  comp.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) comp.push_back(Poly::variable(n, i));
  GaussianRational p = t0;
  for (int m = 1; m <= expansion.torder(); ++m) {
    for (int i = 0; i < n; ++i)
      comp[static_cast<std::size_t>(i)] +=
          expansion.term(m)[i].poly().scaled(p);
    p *= t0;
  }
  return wrap(comp, rtrunc);
}

bool verify_inverse(const FormalMap& f, const FormalMap& g) {
  if (f.nvars() != g.nvars()) throw DomainError("dimension mismatch");
  if (!f.constant_free() || !g.constant_free())
    throw DomainError("inverse verification needs constant-free maps");
  int d = std::min(f.trunc(), g.trunc());
  FormalMap fd = f.truncated(d), gd = g.truncated(d);
  FormalMap id = FormalMap::identity(f.nvars(), d);
  return compose(gd, fd) == id && compose(fd, gd) == id;
}

bool NilpotencyReport::all() const {
  if (!source_power_zero) return false;
  return std::all_of(trace_zero.begin(), trace_zero.end(),
                     [](bool b) { return b; }) &&
         std::all_of(power_slice_zero.begin(), power_slice_zero.end(),
                     [](bool b) { return b; });
}

NilpotencyReport nilpotency_report(const InverseExpansion& expansion,
                                   int power_k) {
  if (power_k < 1) throw DomainError("power must be at least 1");
  NilpotencyReport report;
  report.source_power_zero =
      jacobian(expansion.source()).power(power_k).is_zero();

  TMatrix jn = jacobian(expansion.as_tmap());
  int m = expansion.torder();
  report.trace_zero.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j)
    report.trace_zero.push_back(jn.slice(j).trace().is_zero());

  TMatrix pk = power(jn, power_k, m - 1);
  report.power_slice_zero.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j)
    report.power_slice_zero.push_back(pk.slice(j).is_zero());
  return report;
}

std::pair<FormalMap, FormalMap> shifted_inverse_pair(
    const InverseExpansion& expansion, const GaussianRational& s,
    const GaussianRational& t0) {
  if (!expansion.source().is_zero() && expansion.source().order() < 2)
    throw DomainError("shifted pair needs source order >= 2");
  int n = expansion.source().nvars(), w = expansion.window();
  FormalMap id = FormalMap::identity(n, w);
  if (s.is_zero()) return {id, id};
  FormalMap u = id - (s * expansion.eval(t0));
  FormalMap v = id + (s * expansion.eval(t0 + s));
  return {std::move(u), std::move(v)};
}

std::vector<TruncatedSeries> transport(const TruncatedSeries& u,
                                       const InverseExpansion& expansion,
                                       int torder) {
  if (torder < 0) throw DomainError("t-order must be non-negative");
  if (torder > expansion.torder())
    throw DomainError("t-order exceeds the stored expansion");
  if (u.nvars() != expansion.source().nvars())
    throw DomainError("dimension mismatch");

  std::vector<FormalMap> slices;
  slices.reserve(static_cast<std::size_t>(torder) + 1);
  slices.push_back(FormalMap::identity(u.nvars(), expansion.window()));
  for (int m = 1; m <= torder; ++m) slices.push_back(expansion.term(m));
  TSeries res = compose(u, TMap(std::move(slices)), torder);

  std::vector<TruncatedSeries> out;
  out.reserve(static_cast<std::size_t>(torder) + 1);
  for (int j = 0; j <= torder; ++j) out.push_back(res.slice(j));
  return out;
}

}  // namespace forminv
