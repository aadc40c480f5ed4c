#include "forminv/series.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace forminv {

int Monomial::degree() const {
  return std::accumulate(exps.begin(), exps.end(), 0);
}

Monomial Monomial::operator*(const Monomial& o) const {
  if (exps.size() != o.exps.size())
    throw DomainError("monomial dimension mismatch");
  Monomial r(*this);
  for (std::size_t v = 0; v < exps.size(); ++v) r.exps[v] += o.exps[v];
  return r;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int e : m.exps) {
    h ^= static_cast<std::size_t>(e) + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return h;
}

bool graded_lex_less(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return std::lexicographical_compare(a.exps.begin(), a.exps.end(),
                                      b.exps.begin(), b.exps.end());
}

Poly::Poly(int nvars) : nvars_(nvars) {
  if (nvars < 1) throw DomainError("polynomial needs at least one variable");
}

Poly Poly::constant(int nvars, GaussianRational c) {
  Poly p(nvars);
  p.add_term(Monomial(std::vector<int>(nvars, 0)), c);
  return p;
}

Poly Poly::variable(int nvars, int var) {
  Poly p(nvars);
  if (var < 0 || var >= nvars) throw DomainError("variable index out of range");
  std::vector<int> e(nvars, 0);
  e[var] = 1;
  p.add_term(Monomial(std::move(e)), GaussianRational(1));
  return p;
}

GaussianRational Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussianRational() : it->second;
}

void Poly::add_term(const Monomial& m, const GaussianRational& c) {
  if (m.nvars() != nvars_) throw DomainError("monomial dimension mismatch");
  for (int e : m.exps)
    if (e < 0) throw DomainError("negative exponent");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int Poly::order() const {
  int o = kInfiniteOrder;
  for (const auto& [m, c] : terms_) o = std::min(o, m.degree());
  return o;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

Poly Poly::operator-() const {
  Poly r(nvars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (nvars_ != o.nvars_) throw DomainError("dimension mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (nvars_ != o.nvars_) throw DomainError("dimension mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly Poly::scaled(const GaussianRational& c) const {
  Poly r(nvars_);
  if (c.is_zero()) return r;
  for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
  return r;
}

Poly Poly::derivative(int var) const {
  if (var < 0 || var >= nvars_) throw DomainError("variable index out of range");
  Poly r(nvars_);
  for (const auto& [m, c] : terms_) {
    int e = m.exps[var];
    if (e == 0) continue;
    Monomial dm(m);
    --dm.exps[var];
    r.terms_.emplace(std::move(dm), c * GaussianRational(e));
  }
  return r;
}

Poly Poly::truncated(int maxdeg) const {
  Poly r(nvars_);
  for (const auto& [m, c] : terms_)
    if (m.degree() <= maxdeg) r.terms_.emplace(m, c);
  return r;
}

Poly Poly::homogeneous_part(int d) const {
  Poly r(nvars_);
  for (const auto& [m, c] : terms_)
    if (m.degree() == d) r.terms_.emplace(m, c);
  return r;
}

std::optional<int> Poly::homogeneous_degree() const {
  std::optional<int> d;
  for (const auto& [m, c] : terms_) {
    int md = m.degree();
    if (!d)
      d = md;
    else if (*d != md)
      return std::nullopt;
  }
  return d;
}

std::vector<std::pair<Monomial, GaussianRational>> Poly::sorted_terms() const {
  std::vector<std::pair<Monomial, GaussianRational>> out(terms_.begin(),
                                                         terms_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return graded_lex_less(a.first, b.first);
  });
  return out;
}

bool Poly::operator==(const Poly& o) const {
  return nvars_ == o.nvars_ && terms_ == o.terms_;
}

Poly operator+(Poly a, const Poly& b) {
  a += b;
  return a;
}

Poly operator-(Poly a, const Poly& b) {
  a -= b;
  return a;
}

Poly mul_window(const Poly& a, const Poly& b, int window) {
  if (a.nvars() != b.nvars()) throw DomainError("dimension mismatch");
  Poly out(a.nvars());
  if (a.is_zero() || b.is_zero() || window < 0) return out;

  // Bucket one factor by total degree so whole blocks drop out once the
  // degree budget is spent.
  std::map<int, std::vector<std::pair<const Monomial*, const GaussianRational*>>>
      buckets;
  for (const auto& [m, c] : b.terms()) buckets[m.degree()].push_back({&m, &c});

  for (const auto& [ma, ca] : a.terms()) {
    int da = ma.degree();
    if (da > window) continue;
    for (const auto& [db, block] : buckets) {
      if (da + db > window) break;
      for (const auto& [mb, cb] : block) out.add_term(ma * *mb, ca * *cb);
    }
  }
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) {
    if (a.nvars() != b.nvars()) throw DomainError("dimension mismatch");
    return Poly(a.nvars());
  }
  return mul_window(a, b, a.degree() + b.degree());
}

TruncatedSeries::TruncatedSeries(Poly p, int trunc)
    : poly_(std::move(p)), trunc_(trunc) {
  if (trunc < -1) throw DomainError("truncation below -1");
  poly_ = poly_.truncated(trunc_);
}

TruncatedSeries TruncatedSeries::zero(int nvars, int trunc) {
  return TruncatedSeries(Poly(nvars), trunc);
}

TruncatedSeries TruncatedSeries::constant(int nvars, GaussianRational c,
                                          int trunc) {
  return TruncatedSeries(Poly::constant(nvars, std::move(c)), trunc);
}

TruncatedSeries TruncatedSeries::variable(int nvars, int var, int trunc) {
  return TruncatedSeries(Poly::variable(nvars, var), trunc);
}

TruncatedSeries TruncatedSeries::truncated(int newtrunc) const {
  if (newtrunc > trunc_)
    throw DomainError("cannot raise a truncation bound");
  return TruncatedSeries(poly_, newtrunc);
}

bool TruncatedSeries::operator==(const TruncatedSeries& o) const {
  return trunc_ == o.trunc_ && poly_ == o.poly_;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.nvars() != b.nvars()) throw DomainError("dimension mismatch");
  return TruncatedSeries(a.poly() + b.poly(), std::min(a.trunc(), b.trunc()));
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.nvars() != b.nvars()) throw DomainError("dimension mismatch");
  return TruncatedSeries(a.poly() - b.poly(), std::min(a.trunc(), b.trunc()));
}

TruncatedSeries operator-(const TruncatedSeries& a) {
  return TruncatedSeries(-a.poly(), a.trunc());
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.nvars() != b.nvars()) throw DomainError("dimension mismatch");
  int t = std::min(a.trunc(), b.trunc());
  return TruncatedSeries(mul_window(a.poly(), b.poly(), t), t);
}

TruncatedSeries operator*(const GaussianRational& c, const TruncatedSeries& a) {
  return TruncatedSeries(a.poly().scaled(c), a.trunc());
}

TruncatedSeries partial_derivative(const TruncatedSeries& a, int var) {
  int t = a.trunc() < 0 ? -1 : a.trunc() - 1;
  return TruncatedSeries(a.poly().derivative(var), t);
}

Poly homogeneous_component(const TruncatedSeries& a, int d) {
  if (d < 0) throw DomainError("negative degree");
  if (d > a.trunc())
    throw DomainError("homogeneous component beyond truncation");
  return a.poly().homogeneous_part(d);
}

bool equal_through_degree(const TruncatedSeries& a, const TruncatedSeries& b,
                          int d) {
  if (a.nvars() != b.nvars()) throw DomainError("dimension mismatch");
  if (d > a.trunc() || d > b.trunc())
    throw DomainError("comparison beyond truncation");
  return a.poly().truncated(d) == b.poly().truncated(d);
}

FormalMap::FormalMap(std::vector<TruncatedSeries> comps)
    : comps_(std::move(comps)) {
  if (comps_.empty()) throw DomainError("map needs at least one component");
  int n = static_cast<int>(comps_.size());
  for (const auto& c : comps_) {
    if (c.nvars() != n) throw DomainError("component dimension mismatch");
    if (c.trunc() != comps_.front().trunc())
      throw DomainError("components must share one truncation bound");
  }
}

FormalMap FormalMap::identity(int nvars, int trunc) {
  std::vector<TruncatedSeries> comps;
  comps.reserve(nvars);
  for (int v = 0; v < nvars; ++v)
    comps.push_back(TruncatedSeries::variable(nvars, v, trunc));
  return FormalMap(std::move(comps));
}

FormalMap FormalMap::zero(int nvars, int trunc) {
  std::vector<TruncatedSeries> comps(
      static_cast<std::size_t>(nvars),
      TruncatedSeries::zero(nvars, trunc));
  return FormalMap(std::move(comps));
}

const TruncatedSeries& FormalMap::component(int i) const {
  if (i < 0 || i >= nvars()) throw DomainError("component index out of range");
  return comps_[static_cast<std::size_t>(i)];
}

int FormalMap::order() const {
  int o = kInfiniteOrder;
  for (const auto& c : comps_) o = std::min(o, c.order());
  return o;
}

bool FormalMap::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(),
                     [](const TruncatedSeries& c) { return c.is_zero(); });
}

bool FormalMap::constant_free() const {
  Monomial zero(std::vector<int>(nvars(), 0));
  return std::all_of(comps_.begin(), comps_.end(),
                     [&](const TruncatedSeries& c) {
                       return c.coeff(zero).is_zero();
                     });
}

FormalMap FormalMap::truncated(int newtrunc) const {
  std::vector<TruncatedSeries> comps;
  comps.reserve(comps_.size());
  for (const auto& c : comps_) comps.push_back(c.truncated(newtrunc));
  return FormalMap(std::move(comps));
}

FormalMap operator+(const FormalMap& a, const FormalMap& b) {
  if (a.nvars() != b.nvars()) throw DomainError("dimension mismatch");
  std::vector<TruncatedSeries> comps;
  comps.reserve(a.nvars());
  for (int i = 0; i < a.nvars(); ++i) comps.push_back(a[i] + b[i]);
  return FormalMap(std::move(comps));
}

FormalMap operator-(const FormalMap& a, const FormalMap& b) {
  if (a.nvars() != b.nvars()) throw DomainError("dimension mismatch");
  std::vector<TruncatedSeries> comps;
  comps.reserve(a.nvars());
  for (int i = 0; i < a.nvars(); ++i) comps.push_back(a[i] - b[i]);
  return FormalMap(std::move(comps));
}

FormalMap operator*(const GaussianRational& c, const FormalMap& a) {
  std::vector<TruncatedSeries> comps;
  comps.reserve(a.nvars());
  for (int i = 0; i < a.nvars(); ++i) comps.push_back(c * a[i]);
  return FormalMap(std::move(comps));
}

SeriesMatrix::SeriesMatrix(int rows, int cols, int nvars, int trunc)
    : rows_(rows), cols_(cols), nvars_(nvars) {
  if (rows < 1 || cols < 1) throw DomainError("empty matrix");
  cells_.assign(static_cast<std::size_t>(rows) * cols,
                TruncatedSeries::zero(nvars, trunc));
}

TruncatedSeries& SeriesMatrix::at(int i, int j) {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
    throw DomainError("matrix index out of range");
  return cells_[static_cast<std::size_t>(i) * cols_ + j];
}

const TruncatedSeries& SeriesMatrix::at(int i, int j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
    throw DomainError("matrix index out of range");
  return cells_[static_cast<std::size_t>(i) * cols_ + j];
}

SeriesMatrix SeriesMatrix::operator*(const SeriesMatrix& o) const {
  if (cols_ != o.rows_ || nvars_ != o.nvars_)
    throw DomainError("matrix dimension mismatch");
  SeriesMatrix r(rows_, o.cols_, nvars_, 0);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < o.cols_; ++j) {
      TruncatedSeries acc = at(i, 0) * o.at(0, j);
      for (int k = 1; k < cols_; ++k) acc = acc + at(i, k) * o.at(k, j);
      r.at(i, j) = std::move(acc);
    }
  return r;
}

SeriesMatrix SeriesMatrix::operator+(const SeriesMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || nvars_ != o.nvars_)
    throw DomainError("matrix dimension mismatch");
  SeriesMatrix r(rows_, cols_, nvars_, 0);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j) + o.at(i, j);
  return r;
}

FormalMap SeriesMatrix::apply(const FormalMap& v) const {
  if (rows_ != cols_ || cols_ != v.nvars() || nvars_ != v.nvars())
    throw DomainError("matrix dimension mismatch");
  std::vector<TruncatedSeries> comps;
  comps.reserve(rows_);
  for (int i = 0; i < rows_; ++i) {
    TruncatedSeries acc = at(i, 0) * v[0];
    for (int j = 1; j < cols_; ++j) acc = acc + at(i, j) * v[j];
    comps.push_back(std::move(acc));
  }
  return FormalMap(std::move(comps));
}

SeriesMatrix SeriesMatrix::power(int k) const {
  if (rows_ != cols_) throw DomainError("power of a non-square matrix");
  if (k < 1) throw DomainError("matrix power needs k >= 1");
  SeriesMatrix r = *this;
  for (int j = 1; j < k; ++j) r = r * *this;
  return r;
}

TruncatedSeries SeriesMatrix::trace() const {
  if (rows_ != cols_) throw DomainError("trace of a non-square matrix");
  TruncatedSeries acc = at(0, 0);
  for (int i = 1; i < rows_; ++i) acc = acc + at(i, i);
  return acc;
}

SeriesMatrix SeriesMatrix::transpose() const {
  SeriesMatrix r(cols_, rows_, nvars_, 0);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool SeriesMatrix::is_zero() const {
  return std::all_of(cells_.begin(), cells_.end(),
                     [](const TruncatedSeries& c) { return c.is_zero(); });
}

bool SeriesMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j) {
      int d = std::min(at(i, j).trunc(), at(j, i).trunc());
      if (d < 0) continue;
      if (!equal_through_degree(at(i, j), at(j, i), d)) return false;
    }
  return true;
}

bool SeriesMatrix::operator==(const SeriesMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && cells_ == o.cells_;
}

FormalMap gradient(const TruncatedSeries& a) {
  std::vector<TruncatedSeries> comps;
  comps.reserve(a.nvars());
  for (int v = 0; v < a.nvars(); ++v)
    comps.push_back(partial_derivative(a, v));
  return FormalMap(std::move(comps));
}

TruncatedSeries inner_product(const FormalMap& a, const FormalMap& b) {
  if (a.nvars() != b.nvars()) throw DomainError("dimension mismatch");
  TruncatedSeries acc = a[0] * b[0];
  for (int i = 1; i < a.nvars(); ++i) acc = acc + a[i] * b[i];
  return acc;
}

SeriesMatrix jacobian(const FormalMap& f) {
  int n = f.nvars();
  SeriesMatrix m(n, n, n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = partial_derivative(f[i], j);
  return m;
}

SeriesMatrix hessian(const TruncatedSeries& a) {
  return jacobian(gradient(a));
}

TruncatedSeries laplacian(const TruncatedSeries& a) {
  TruncatedSeries acc = partial_derivative(partial_derivative(a, 0), 0);
  for (int v = 1; v < a.nvars(); ++v)
    acc = acc + partial_derivative(partial_derivative(a, v), v);
  return acc;
}

namespace {

// Shared substitution machinery: lazily built power tables per variable and
// a prefix-product walk over the terms grouped variable by variable.
class ComposeSession {
public:
  ComposeSession(const FormalMap& g, int window) : window_(window) {
    int n = g.nvars();
    comps_.reserve(n);
    for (int v = 0; v < n; ++v)
      comps_.push_back(g[v].poly().truncated(window));
    pow_.resize(n);
    for (int v = 0; v < n; ++v)
      pow_[v].push_back(Poly::constant(n, GaussianRational(1)));
  }

  Poly eval(const Poly& a) {
    Poly out(static_cast<int>(comps_.size()));
    if (window_ < 0) return out;
    std::vector<Term> terms;
    terms.reserve(a.term_count());
    for (const auto& [m, c] : a.terms())
      if (m.degree() <= window_) terms.push_back({m, c});
    std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
      return x.first.exps < y.first.exps;
    });
    Poly one = Poly::constant(static_cast<int>(comps_.size()),
                              GaussianRational(1));
    walk(terms, 0, terms.size(), 0, one, out);
    return out;
  }

private:
  using Term = std::pair<Monomial, GaussianRational>;

  const Poly& power(int var, int e) {
    auto& table = pow_[var];
    while (static_cast<int>(table.size()) <= e)
      table.push_back(mul_window(table.back(), comps_[var], window_));
    return table[static_cast<std::size_t>(e)];
  }

  void walk(const std::vector<Term>& terms, std::size_t lo, std::size_t hi,
            int var, const Poly& prefix, Poly& out) {
    if (lo >= hi || prefix.is_zero()) return;
    if (var == static_cast<int>(comps_.size())) {
      for (std::size_t k = lo; k < hi; ++k)
        out += prefix.scaled(terms[k].second);
      return;
    }
    std::size_t k = lo;
    while (k < hi) {
      int e = terms[k].first.exps[var];
      std::size_t j = k;
      while (j < hi && terms[j].first.exps[var] == e) ++j;
      if (e == 0) {
        walk(terms, k, j, var + 1, prefix, out);
      } else {
        Poly next = mul_window(prefix, power(var, e), window_);
        walk(terms, k, j, var + 1, next, out);
      }
      k = j;
    }
  }

  int window_;
  std::vector<Poly> comps_;
  std::vector<std::vector<Poly>> pow_;
};

void check_composable(int anvars, const FormalMap& g) {
  if (anvars != g.nvars()) throw DomainError("dimension mismatch");
  if (!g.constant_free())
    throw DomainError("substituted map has a constant term");
}

}  // namespace

TruncatedSeries compose(const TruncatedSeries& a, const FormalMap& g) {
  check_composable(a.nvars(), g);
  int t = std::min(a.trunc(), g.trunc());
  ComposeSession session(g, t);
  return TruncatedSeries(session.eval(a.poly()), t);
}

FormalMap compose(const FormalMap& f, const FormalMap& g) {
  check_composable(f.nvars(), g);
  int t = std::min(f.trunc(), g.trunc());
  ComposeSession session(g, t);
  std::vector<TruncatedSeries> comps;
  comps.reserve(f.nvars());
  for (int i = 0; i < f.nvars(); ++i)
    comps.push_back(TruncatedSeries(session.eval(f[i].poly()), t));
  return FormalMap(std::move(comps));
}

}  // namespace forminv
