#include "forminv/tgraded.hpp"

#include <algorithm>

namespace forminv {

namespace {

int fallback_trunc(const TruncatedSeries& a, const TruncatedSeries& b) {
  return std::min(a.trunc(), b.trunc());
}

}  // namespace

TSeries::TSeries(std::vector<TruncatedSeries> slices)
    : slices_(std::move(slices)),
      pad_(TruncatedSeries::zero(slices_.empty() ? 1 : slices_.front().nvars(),
                                 slices_.empty() ? 0 : slices_.front().trunc())) {
  if (slices_.empty()) throw DomainError("t-expansion needs at least one slice");
  for (const auto& s : slices_)
    if (s.nvars() != nvars()) throw DomainError("slice dimension mismatch");
}

TSeries TSeries::zero(int nvars, int trunc, int nslices) {
  if (nslices < 1) throw DomainError("t-expansion needs at least one slice");
  return TSeries(std::vector<TruncatedSeries>(
      static_cast<std::size_t>(nslices), TruncatedSeries::zero(nvars, trunc)));
}

const TruncatedSeries& TSeries::slice(int j) const {
  if (j < 0) throw DomainError("negative t-order");
  if (j >= slice_count()) return pad_;
  return slices_[static_cast<std::size_t>(j)];
}

bool TSeries::is_zero() const {
  return std::all_of(slices_.begin(), slices_.end(),
                     [](const TruncatedSeries& s) { return s.is_zero(); });
}

TMap::TMap(std::vector<FormalMap> slices)
    : slices_(std::move(slices)),
      pad_(FormalMap::zero(slices_.empty() ? 1 : slices_.front().nvars(),
                           slices_.empty() ? 0 : slices_.front().trunc())) {
  if (slices_.empty()) throw DomainError("t-expansion needs at least one slice");
  for (const auto& s : slices_)
    if (s.nvars() != nvars()) throw DomainError("slice dimension mismatch");
}

TMap TMap::zero(int nvars, int trunc, int nslices) {
  if (nslices < 1) throw DomainError("t-expansion needs at least one slice");
  return TMap(std::vector<FormalMap>(static_cast<std::size_t>(nslices),
                                     FormalMap::zero(nvars, trunc)));
}

const FormalMap& TMap::slice(int j) const {
  if (j < 0) throw DomainError("negative t-order");
  if (j >= slice_count()) return pad_;
  return slices_[static_cast<std::size_t>(j)];
}

bool TMap::is_zero() const {
  return std::all_of(slices_.begin(), slices_.end(),
                     [](const FormalMap& s) { return s.is_zero(); });
}

TMatrix::TMatrix(std::vector<SeriesMatrix> slices) : slices_(std::move(slices)) {
  if (slices_.empty()) throw DomainError("t-expansion needs at least one slice");
}

const SeriesMatrix& TMatrix::slice(int j) const {
  if (j < 0 || j >= slice_count()) throw DomainError("t-order out of range");
  return slices_[static_cast<std::size_t>(j)];
}

bool TMatrix::is_zero() const {
  return std::all_of(slices_.begin(), slices_.end(),
                     [](const SeriesMatrix& s) { return s.is_zero(); });
}

// Slices outside the stored range are exact zeros by contract, so sums and
// convolutions only touch stored slices; this keeps truncation bounds from
// being dragged down by synthetic zero operands.

TSeries add(const TSeries& a, const TSeries& b, int tcap) {
  std::vector<TruncatedSeries> out;
  out.reserve(static_cast<std::size_t>(tcap) + 1);
  for (int j = 0; j <= tcap; ++j) {
    bool ina = j < a.slice_count(), inb = j < b.slice_count();
    if (ina && inb)
      out.push_back(a.slice(j) + b.slice(j));
    else if (ina)
      out.push_back(a.slice(j));
    else if (inb)
      out.push_back(b.slice(j));
    else
      out.push_back(TruncatedSeries::zero(
          a.nvars(), fallback_trunc(a.slice(0), b.slice(0))));
  }
  return TSeries(std::move(out));
}

TSeries sub(const TSeries& a, const TSeries& b, int tcap) {
  std::vector<TruncatedSeries> out;
  out.reserve(static_cast<std::size_t>(tcap) + 1);
  for (int j = 0; j <= tcap; ++j) {
    bool ina = j < a.slice_count(), inb = j < b.slice_count();
    if (ina && inb)
      out.push_back(a.slice(j) - b.slice(j));
    else if (ina)
      out.push_back(a.slice(j));
    else if (inb)
      out.push_back(-b.slice(j));
    else
      out.push_back(TruncatedSeries::zero(
          a.nvars(), fallback_trunc(a.slice(0), b.slice(0))));
  }
  return TSeries(std::move(out));
}

TSeries mul(const TSeries& a, const TSeries& b, int tcap) {
  std::vector<TruncatedSeries> out;
  out.reserve(static_cast<std::size_t>(tcap) + 1);
  for (int j = 0; j <= tcap; ++j) {
    TruncatedSeries acc = TruncatedSeries::zero(
        a.nvars(), fallback_trunc(a.slice(0), b.slice(0)));
    bool first = true;
    for (int p = 0; p <= j; ++p) {
      int q = j - p;
      if (p >= a.slice_count() || q >= b.slice_count()) continue;
      TruncatedSeries prod = a.slice(p) * b.slice(q);
      acc = first ? std::move(prod) : acc + prod;
      first = false;
    }
    out.push_back(std::move(acc));
  }
  return TSeries(std::move(out));
}

TSeries dt(const TSeries& a) {
  std::vector<TruncatedSeries> out;
  if (a.slice_count() == 1) {
    out.push_back(TruncatedSeries::zero(a.nvars(), a.slice(0).trunc()));
  } else {
    for (int j = 1; j < a.slice_count(); ++j)
      out.push_back(GaussianRational(j) * a.slice(j));
  }
  return TSeries(std::move(out));
}

TMap add(const TMap& a, const TMap& b, int tcap) {
  std::vector<FormalMap> out;
  out.reserve(static_cast<std::size_t>(tcap) + 1);
  for (int j = 0; j <= tcap; ++j) {
    bool ina = j < a.slice_count(), inb = j < b.slice_count();
    if (ina && inb)
      out.push_back(a.slice(j) + b.slice(j));
    else if (ina)
      out.push_back(a.slice(j));
    else if (inb)
      out.push_back(b.slice(j));
    else
      out.push_back(FormalMap::zero(
          a.nvars(), std::min(a.slice(0).trunc(), b.slice(0).trunc())));
  }
  return TMap(std::move(out));
}

TMap sub(const TMap& a, const TMap& b, int tcap) {
  std::vector<FormalMap> out;
  out.reserve(static_cast<std::size_t>(tcap) + 1);
  for (int j = 0; j <= tcap; ++j) {
    bool ina = j < a.slice_count(), inb = j < b.slice_count();
    if (ina && inb)
      out.push_back(a.slice(j) - b.slice(j));
    else if (ina)
      out.push_back(a.slice(j));
    else if (inb)
      out.push_back(GaussianRational(-1) * b.slice(j));
    else
      out.push_back(FormalMap::zero(
          a.nvars(), std::min(a.slice(0).trunc(), b.slice(0).trunc())));
  }
  return TMap(std::move(out));
}

TMap dt(const TMap& a) {
  std::vector<FormalMap> out;
  if (a.slice_count() == 1) {
    out.push_back(FormalMap::zero(a.nvars(), a.slice(0).trunc()));
  } else {
    for (int j = 1; j < a.slice_count(); ++j)
      out.push_back(GaussianRational(j) * a.slice(j));
  }
  return TMap(std::move(out));
}

TSeries inner_product(const TMap& a, const TMap& b, int tcap) {
  std::vector<TruncatedSeries> out;
  out.reserve(static_cast<std::size_t>(tcap) + 1);
  for (int j = 0; j <= tcap; ++j) {
    TruncatedSeries acc = TruncatedSeries::zero(
        a.nvars(), std::min(a.slice(0).trunc(), b.slice(0).trunc()));
    bool first = true;
    for (int p = 0; p <= j; ++p) {
      int q = j - p;
      if (p >= a.slice_count() || q >= b.slice_count()) continue;
      TruncatedSeries prod = inner_product(a.slice(p), b.slice(q));
      acc = first ? std::move(prod) : acc + prod;
      first = false;
    }
    out.push_back(std::move(acc));
  }
  return TSeries(std::move(out));
}

TMatrix jacobian(const TMap& f) {
  std::vector<SeriesMatrix> out;
  out.reserve(static_cast<std::size_t>(f.slice_count()));
  for (int j = 0; j < f.slice_count(); ++j) out.push_back(jacobian(f.slice(j)));
  return TMatrix(std::move(out));
}

TMatrix mul(const TMatrix& a, const TMatrix& b, int tcap) {
  const SeriesMatrix& a0 = a.slice(0);
  std::vector<SeriesMatrix> out;
  out.reserve(static_cast<std::size_t>(tcap) + 1);
  for (int j = 0; j <= tcap; ++j) {
    bool first = true;
    SeriesMatrix acc(a0.rows(), b.slice(0).cols(), a0.nvars(), 0);
    for (int p = 0; p <= j; ++p) {
      int q = j - p;
      if (p >= a.slice_count() || q >= b.slice_count()) continue;
      SeriesMatrix prod = a.slice(p) * b.slice(q);
      acc = first ? std::move(prod) : acc + prod;
      first = false;
    }
    out.push_back(std::move(acc));
  }
  return TMatrix(std::move(out));
}

TMatrix power(const TMatrix& a, int k, int tcap) {
  if (k < 1) throw DomainError("matrix power needs k >= 1");
  TMatrix r = a;
  for (int j = 1; j < k; ++j) r = mul(r, a, tcap);
  return r;
}

TSeries trace(const TMatrix& a) {
  std::vector<TruncatedSeries> out;
  out.reserve(static_cast<std::size_t>(a.slice_count()));
  for (int j = 0; j < a.slice_count(); ++j) out.push_back(a.slice(j).trace());
  return TSeries(std::move(out));
}

namespace {

GaussianRational constant_coeff(const TruncatedSeries& s) {
  return s.coeff(Monomial(std::vector<int>(static_cast<std::size_t>(s.nvars()), 0)));
}

void check_substitutable(const TMap& g) {
  for (int j = 0; j < g.slice_count(); ++j) {
    const FormalMap& gj = g.slice(j);
    for (int v = 0; v < gj.nvars(); ++v)
      if (!constant_coeff(gj[v]).is_zero())
        throw DomainError("substituted map has a constant term");
  }
}

TSeries component_series(const TMap& g, int v) {
  std::vector<TruncatedSeries> slices;
  slices.reserve(static_cast<std::size_t>(g.slice_count()));
  for (int j = 0; j < g.slice_count(); ++j) slices.push_back(g.slice(j)[v]);
  return TSeries(std::move(slices));
}

TSeries tscale(const TSeries& a, const GaussianRational& c) {
  std::vector<TruncatedSeries> slices;
  slices.reserve(static_cast<std::size_t>(a.slice_count()));
  for (int j = 0; j < a.slice_count(); ++j) slices.push_back(c * a.slice(j));
  return TSeries(std::move(slices));
}

// Same prefix-product substitution walk as the plain compose, lifted to
// t-graded arithmetic.
class TComposeSession {
public:
  TComposeSession(const TMap& g, int tcap, int one_trunc)
      : tcap_(tcap), n_(g.nvars()) {
    check_substitutable(g);
    pow_.resize(static_cast<std::size_t>(n_));
    gs_.reserve(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) {
      gs_.push_back(component_series(g, v));
      pow_[static_cast<std::size_t>(v)].push_back(TSeries(
          {TruncatedSeries::constant(n_, GaussianRational(1), one_trunc)}));
    }
  }

  TSeries eval(const Poly& a) {
    TSeries out = TSeries::zero(n_, pow_[0][0].slice(0).trunc(), tcap_ + 1);
    using Term = std::pair<Monomial, GaussianRational>;
    std::vector<Term> terms;
    terms.reserve(a.term_count());
    for (const auto& [m, c] : a.terms()) terms.push_back({m, c});
    std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
      return x.first.exps < y.first.exps;
    });
    // Copy: power() may grow pow_ and invalidate references into it.
    TSeries one = pow_[0][0];
    walk(terms, 0, terms.size(), 0, one, out);
    return out;
  }

private:
  using Term = std::pair<Monomial, GaussianRational>;

  const TSeries& power(int var, int e) {
    auto& table = pow_[static_cast<std::size_t>(var)];
    while (static_cast<int>(table.size()) <= e)
      table.push_back(
          mul(table.back(), gs_[static_cast<std::size_t>(var)], tcap_));
    return table[static_cast<std::size_t>(e)];
  }

  void walk(const std::vector<Term>& terms, std::size_t lo, std::size_t hi,
            int var, const TSeries& prefix, TSeries& out) {
    if (lo >= hi || prefix.is_zero()) return;
    if (var == n_) {
      for (std::size_t k = lo; k < hi; ++k)
        out = add(out, tscale(prefix, terms[k].second), tcap_);
      return;
    }
    std::size_t k = lo;
    while (k < hi) {
      int e = terms[k].first.exps[static_cast<std::size_t>(var)];
      std::size_t j = k;
      while (j < hi && terms[j].first.exps[static_cast<std::size_t>(var)] == e)
        ++j;
      if (e == 0) {
        walk(terms, k, j, var + 1, prefix, out);
      } else {
        TSeries next = mul(prefix, power(var, e), tcap_);
        walk(terms, k, j, var + 1, next, out);
      }
      k = j;
    }
  }

  int tcap_;
  int n_;
  std::vector<TSeries> gs_;
  std::vector<std::vector<TSeries>> pow_;
};

int max_slice_trunc(const TMap& g) {
  int t = -1;
  for (int j = 0; j < g.slice_count(); ++j)
    t = std::max(t, g.slice(j).trunc());
  return t;
}

}  // namespace

TSeries compose(const TSeries& a, const TMap& g, int tcap) {
  if (a.nvars() != g.nvars()) throw DomainError("dimension mismatch");
  int one_trunc = max_slice_trunc(g);
  for (int j = 0; j < a.slice_count(); ++j)
    one_trunc = std::max(one_trunc, a.slice(j).trunc());
  TComposeSession session(g, tcap, one_trunc);
  TSeries out = TSeries::zero(a.nvars(), one_trunc, tcap + 1);
  for (int j = 0; j <= tcap && j < a.slice_count(); ++j) {
    TSeries sub = session.eval(a.slice(j).poly());
    // Multiply by t^j: shift slices and cap the slice-j trunc.
    std::vector<TruncatedSeries> shifted;
    shifted.reserve(static_cast<std::size_t>(tcap) + 1);
    for (int s = 0; s <= tcap; ++s) {
      if (s < j)
        shifted.push_back(TruncatedSeries::zero(a.nvars(), one_trunc));
      else {
        const TruncatedSeries& cell = sub.slice(s - j);
        int t = std::min(cell.trunc(), a.slice(j).trunc());
        shifted.push_back(TruncatedSeries(cell.poly(), t));
      }
    }
    out = add(out, TSeries(std::move(shifted)), tcap);
  }
  return out;
}

TSeries compose(const TruncatedSeries& a, const TMap& g, int tcap) {
  return compose(TSeries({a}), g, tcap);
}

TMap compose(const TMap& f, const TMap& g, int tcap) {
  if (f.nvars() != g.nvars()) throw DomainError("dimension mismatch");
  int n = f.nvars();
  std::vector<TSeries> per_comp;
  per_comp.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    per_comp.push_back(compose(component_series(f, v), g, tcap));
  std::vector<FormalMap> slices;
  slices.reserve(static_cast<std::size_t>(tcap) + 1);
  for (int j = 0; j <= tcap; ++j) {
    int t = per_comp[0].slice(j).trunc();
    for (int v = 1; v < n; ++v) t = std::min(t, per_comp[v].slice(j).trunc());
    std::vector<TruncatedSeries> comps;
    comps.reserve(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
      comps.push_back(TruncatedSeries(per_comp[v].slice(j).poly(), t));
    slices.push_back(FormalMap(std::move(comps)));
  }
  return TMap(std::move(slices));
}

TMatrix compose(const TMatrix& m, const TMap& g, int tcap) {
  const SeriesMatrix& m0 = m.slice(0);
  int rows = m0.rows(), cols = m0.cols(), n = m0.nvars();
  std::vector<SeriesMatrix> slices(
      static_cast<std::size_t>(tcap) + 1,
      SeriesMatrix(rows, cols, n, 0));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      std::vector<TruncatedSeries> cell_slices;
      cell_slices.reserve(static_cast<std::size_t>(m.slice_count()));
      for (int s = 0; s < m.slice_count(); ++s)
        cell_slices.push_back(m.slice(s).at(i, j));
      TSeries composed = compose(TSeries(std::move(cell_slices)), g, tcap);
      for (int s = 0; s <= tcap; ++s)
        slices[static_cast<std::size_t>(s)].at(i, j) = composed.slice(s);
    }
  return TMatrix(std::move(slices));
}

}  // namespace forminv
