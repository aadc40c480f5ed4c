#pragma once

#include <string>
#include <vector>

#include "forminv/series.hpp"

namespace forminv {

// JSON wire format. A polynomial document is
//   {"vars": n, "trunc": d, "terms": [{"exps": [..], "coeff": "c"}, ..]}
// with coeff in the coefficient grammar, exps of length vars with
// non-negative entries, total degree <= trunc, no duplicate monomials and
// no zero coefficients. A map document replaces "terms" with "components",
// an array of vars term-lists. Formatting is canonical: two-space indent,
// alphabetically ordered keys, terms sorted by ascending total degree and
// then lexicographically on exponent vectors; equal inputs produce
// byte-identical output.

TruncatedSeries parse_poly_document(const std::string& text);
std::string format_poly_document(const TruncatedSeries& s);

FormalMap parse_map_document(const std::string& text);
std::string format_map_document(const FormalMap& f);

// Array of polynomial documents (expansion slices).
std::string format_poly_document_list(const std::vector<TruncatedSeries>& list);

}  // namespace forminv
