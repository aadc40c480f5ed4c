#include "forminv/document.hpp"

#include <set>

#include <json.hpp>

namespace forminv {

namespace {

using nlohmann::json;

void expect_object(const json& j, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ParseError("document must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) throw ParseError("unknown document key '" + key + "'");
  }
}

int expect_int(const json& j, const char* what, int minimum) {
  if (!j.is_number_integer())
    throw ParseError(std::string(what) + " must be an integer");
  long long v = j.get<long long>();
  if (v < minimum || v > (1 << 24))
    throw ParseError(std::string(what) + " out of range");
  return static_cast<int>(v);
}

Poly parse_terms(const json& j, int nvars, int trunc) {
  if (!j.is_array()) throw ParseError("terms must be an array");
  Poly p(nvars);
  std::set<std::vector<int>> seen;
  for (const json& t : j) {
    expect_object(t, {"exps", "coeff"});
    if (!t.contains("exps") || !t.contains("coeff"))
      throw ParseError("term needs exps and coeff");
    const json& je = t.at("exps");
    if (!je.is_array() || static_cast<int>(je.size()) != nvars)
      throw ParseError("exps must list one exponent per variable");
    std::vector<int> exps;
    exps.reserve(je.size());
    for (const json& e : je) exps.push_back(expect_int(e, "exponent", 0));
    Monomial m(std::move(exps));
    if (m.degree() > trunc)
      throw ParseError("term degree exceeds the truncation bound");
    if (!seen.insert(m.exps).second) throw ParseError("duplicate monomial");
    if (!t.at("coeff").is_string())
      throw ParseError("coeff must be a string");
    GaussianRational c = GaussianRational::parse(t.at("coeff").get<std::string>());
    if (c.is_zero()) throw ParseError("zero coefficient");
    p.add_term(m, c);
  }
  return p;
}

json format_terms(const Poly& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.sorted_terms()) {
    json t;
    t["exps"] = m.exps;
    t["coeff"] = c.str();
    terms.push_back(std::move(t));
  }
  return terms;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void check_formattable(int trunc) {
  if (trunc < 0) throw DomainError("cannot format a document with unknown content");
}

}  // namespace

TruncatedSeries parse_poly_document(const std::string& text) {
  json j = parse_json(text);
  expect_object(j, {"vars", "trunc", "terms"});
  if (!j.contains("vars") || !j.contains("trunc") || !j.contains("terms"))
    throw ParseError("document needs vars, trunc and terms");
  int nvars = expect_int(j.at("vars"), "vars", 1);
  int trunc = expect_int(j.at("trunc"), "trunc", 0);
  return TruncatedSeries(parse_terms(j.at("terms"), nvars, trunc), trunc);
}

std::string format_poly_document(const TruncatedSeries& s) {
  check_formattable(s.trunc());
  json j;
  j["vars"] = s.nvars();
  j["trunc"] = s.trunc();
  j["terms"] = format_terms(s.poly());
  return dump(j);
}

FormalMap parse_map_document(const std::string& text) {
  json j = parse_json(text);
  expect_object(j, {"vars", "trunc", "components"});
  if (!j.contains("vars") || !j.contains("trunc") || !j.contains("components"))
    throw ParseError("document needs vars, trunc and components");
  int nvars = expect_int(j.at("vars"), "vars", 1);
  int trunc = expect_int(j.at("trunc"), "trunc", 0);
  const json& jc = j.at("components");
  if (!jc.is_array() || static_cast<int>(jc.size()) != nvars)
    throw ParseError("components must list one term-list per variable");
  std::vector<TruncatedSeries> comps;
  comps.reserve(jc.size());
  for (const json& c : jc)
    comps.push_back(TruncatedSeries(parse_terms(c, nvars, trunc), trunc));
  return FormalMap(std::move(comps));
}

std::string format_map_document(const FormalMap& f) {
  check_formattable(f.trunc());
  json j;
  j["vars"] = f.nvars();
  j["trunc"] = f.trunc();
  json comps = json::array();
  for (int i = 0; i < f.nvars(); ++i)
    comps.push_back(format_terms(f[i].poly()));
  j["components"] = std::move(comps);
  return dump(j);
}

std::string format_poly_document_list(const std::vector<TruncatedSeries>& list) {
  json out = json::array();
  for (const auto& s : list) {
    check_formattable(s.trunc());
    json j;
    j["vars"] = s.nvars();
    j["trunc"] = s.trunc();
    j["terms"] = format_terms(s.poly());
    out.push_back(std::move(j));
  }
  return dump(out);
}

}  // namespace forminv
