#ifndef UTN_IO_HPP
#define UTN_IO_HPP

// JSON encodings of products, kernel bases and classification results, and
// RFC-4180 CSV output.

#include <cstddef>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "algebra.hpp"
#include "classify3.hpp"
#include "identity.hpp"

namespace utn {

using Json = nlohmann::json;

// --- encoding --------------------------------------------------------------

inline Json index_to_json(BasisIndex e) { return Json::array({e.i, e.j}); }

/// [[[s,t],"coef"], ...] in basis order.
inline Json element_to_json(const Element& x) {
  Json out = Json::array();
  for (const auto& [e, c] : x.terms()) out.push_back(Json::array({index_to_json(e), c.to_string()}));
  return out;
}

inline Json product_to_json(const Product& p) {
  Json entries = Json::array();
  for (const auto& [key, value] : p.table())
    entries.push_back({{"a", index_to_json(key.first)}, {"b", index_to_json(key.second)}, {"out", element_to_json(value)}});
  return {{"n", p.dim().n()}, {"field", p.field().to_string()}, {"entries", std::move(entries)}};
}

inline std::string product_to_string(const Product& p) { return product_to_json(p).dump(); }

// --- decoding --------------------------------------------------------------

namespace detail {

[[noreturn]] inline void json_fail(const std::string& path, const std::string& why) {
  throw ParseError("invalid product JSON at " + (path.empty() ? std::string("/") : path) + ": " + why);
}

inline const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) json_fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) json_fail(path, std::string("missing key \"") + key + "\"");
  return *it;
}

inline BasisIndex index_from_json(const Json& j, Dimension dim, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    json_fail(path, "expected a pair [i,j] of integers");
  BasisIndex e{j[0].get<int>(), j[1].get<int>()};
  if (!valid_index(dim, e))
    json_fail(path, "[" + std::to_string(e.i) + "," + std::to_string(e.j) + "] is not a matrix unit of UT_" +
                        std::to_string(dim.n()));
  return e;
}

inline Scalar scalar_from_json(const Json& j, FieldSpec field, const std::string& path) {
  if (!j.is_string()) json_fail(path, "expected a coefficient string");
  try {
    return parse_scalar(j.get<std::string>(), field);
  } catch (const ParseError& e) {
    json_fail(path, e.what());
  }
}

}  // namespace detail

inline Element element_from_json(const Json& j, Dimension dim, FieldSpec field, const std::string& path = "") {
  if (!j.is_array()) detail::json_fail(path, "expected a list of [[i,j],\"coef\"] terms");
  std::vector<std::pair<BasisIndex, Scalar>> terms;
  for (std::size_t k = 0; k < j.size(); ++k) {
    std::string at = path + "/" + std::to_string(k);
    if (!j[k].is_array() || j[k].size() != 2) detail::json_fail(at, "expected [[i,j],\"coef\"]");
    terms.emplace_back(detail::index_from_json(j[k][0], dim, at + "/0"),
                       detail::scalar_from_json(j[k][1], field, at + "/1"));
  }
  return Element::from_terms(dim, field, terms);
}

inline Product product_from_json(const Json& j) {
  const Json& n = detail::member(j, "n", "");
  if (!n.is_number_integer() || n.get<long>() < 3 || n.get<long>() > 64) detail::json_fail("/n", "expected an integer n >= 3");
  Dimension dim(n.get<int>());
  const Json& f = detail::member(j, "field", "");
  if (!f.is_string()) detail::json_fail("/field", "expected \"Q\" or \"Fp:<p>\"");
  FieldSpec field = FieldSpec::rationals();
  try {
    field = FieldSpec::parse(f.get<std::string>());
  } catch (const ParseError& e) {
    detail::json_fail("/field", e.what());
  }
  const Json& entries = detail::member(j, "entries", "");
  if (!entries.is_array()) detail::json_fail("/entries", "expected a list");
  Product::Table table;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    std::string at = "/entries/" + std::to_string(k);
    BasisIndex a = detail::index_from_json(detail::member(entries[k], "a", at), dim, at + "/a");
    BasisIndex b = detail::index_from_json(detail::member(entries[k], "b", at), dim, at + "/b");
    Element value = element_from_json(detail::member(entries[k], "out", at), dim, field, at + "/out");
    if (!table.emplace(Product::Key{a, b}, std::move(value)).second)
      detail::json_fail(at, "duplicate entry for " + a.to_string() + "*" + b.to_string());
  }
  return Product::from_table(dim, field, std::move(table));
}

inline Product product_from_string(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return product_from_json(j);
}

// --- kernel bases and classification ---------------------------------------

inline Json kernel_to_json(const KernelBasis& b) {
  std::size_t m = b.dim.basis_size();
  std::vector<BasisIndex> units = basis(b.dim);
  Json pivots = Json::array();
  for (std::size_t col : b.pivots)
    pivots.push_back({{"a", index_to_json(units[col / (m * m)])},
                      {"b", index_to_json(units[(col / m) % m])},
                      {"out", index_to_json(units[col % m])}});
  Json products = Json::array();
  for (const Product& p : b.products) products.push_back(product_to_json(p));
  return {{"kind", kind_token(b.kind)}, {"n", b.dim.n()},        {"field", b.field.to_string()},
          {"dimension", b.dimension()}, {"pivots", std::move(pivots)}, {"basis", std::move(products)}};
}

inline Json classification_to_json(const CanonicalResult& r) {
  Json params = Json::array();
  for (const Scalar& s : r.cls.params) params.push_back(s.to_string());
  return {{"kind", kind_token(r.cls.kind)},
          {"case", r.cls.case_tag},
          {"params", std::move(params)},
          {"witness",
           {{"a11", r.witness.a11.to_string()},
            {"a22", r.witness.a22.to_string()},
            {"a31", r.witness.a31.to_string()},
            {"a32", r.witness.a32.to_string()}}}};
}

// --- CSV -------------------------------------------------------------------

inline std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// One CSV record terminated by CRLF.
inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t k = 0; k < fields.size(); ++k) out += (k ? "," : "") + csv_field(fields[k]);
  return out + "\r\n";
}

}  // namespace utn

#endif  // UTN_IO_HPP
