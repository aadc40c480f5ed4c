#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "forminv/rational.hpp"
#include "forminv/series.hpp"

namespace forminv::testing {

struct TermSpec {
  std::vector<int> exps;
  std::string coeff;
};

inline GaussianRational q(const std::string& text) {
  return GaussianRational::parse(text);
}

inline Poly make_poly(int nvars, const std::vector<TermSpec>& terms) {
  Poly p(nvars);
  for (const auto& t : terms) p.add_term(Monomial(t.exps), q(t.coeff));
  return p;
}

inline TruncatedSeries make_series(int nvars, int trunc,
                                   const std::vector<TermSpec>& terms) {
  return TruncatedSeries(make_poly(nvars, terms), trunc);
}

inline FormalMap make_map(int trunc,
                          const std::vector<std::vector<TermSpec>>& comps) {
  int nvars = static_cast<int>(comps.size());
  std::vector<TruncatedSeries> cs;
  cs.reserve(comps.size());
  for (const auto& c : comps) cs.push_back(make_series(nvars, trunc, c));
  return FormalMap(std::move(cs));
}

// Small exact coefficients; complex entries keep Q(i) honest.
inline GaussianRational random_coeff(std::mt19937& rng) {
  static const char* const palette[] = {
      "1",    "-1",   "2",    "-2",     "3",    "1/2",      "-1/2", "1/3",
      "-2/3", "0+1i", "0-1i", "1+1i",   "-1+2i", "1/2-1/2i", "5",    "-3/4"};
  constexpr std::size_t n = sizeof(palette) / sizeof(palette[0]);
  return q(palette[rng() % n]);
}

inline Monomial random_monomial(std::mt19937& rng, int nvars, int degree) {
  std::vector<int> exps(nvars, 0);
  for (int u = 0; u < degree; ++u) exps[rng() % nvars] += 1;
  return Monomial(exps);
}

// Accumulation may cancel terms, so the result has order >= min_deg or is
// zero; it never gains terms below min_deg.
inline Poly random_poly(std::mt19937& rng, int nvars, int min_deg, int max_deg,
                        int terms) {
  Poly p(nvars);
  for (int k = 0; k < terms; ++k) {
    int d = min_deg + static_cast<int>(rng() % (max_deg - min_deg + 1));
    p.add_term(random_monomial(rng, nvars, d), random_coeff(rng));
  }
  return p;
}

inline TruncatedSeries random_series(std::mt19937& rng, int nvars, int trunc,
                                     int min_deg, int max_deg, int terms) {
  return TruncatedSeries(random_poly(rng, nvars, min_deg, max_deg, terms),
                         trunc);
}

inline FormalMap random_map(std::mt19937& rng, int nvars, int trunc,
                            int min_deg, int max_deg, int terms_per_comp) {
  std::vector<TruncatedSeries> comps;
  comps.reserve(nvars);
  for (int i = 0; i < nvars; ++i)
    comps.push_back(
        random_series(rng, nvars, trunc, min_deg, max_deg, terms_per_comp));
  return FormalMap(std::move(comps));
}

}  // namespace forminv::testing
