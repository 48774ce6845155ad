#ifndef UTN_FAMILIES_HPP
#define UTN_FAMILIES_HPP

// Explicit product families spanning each solution space on UT_n, their counts,
// and the constructor of a product from a single value a*b = c.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "identity.hpp"

namespace utn {

enum class Series { Mid1, Mid2, Mid3, Mid4, M12_1, M12_2, M12_3, M12_4, I1, I2, I3, I4, T1, T2 };

inline constexpr std::array<Series, 14> kAllSeries = {Series::Mid1,  Series::Mid2,  Series::Mid3,  Series::Mid4,
                                                      Series::M12_1, Series::M12_2, Series::M12_3, Series::M12_4,
                                                      Series::I1,    Series::I2,    Series::I3,    Series::I4,
                                                      Series::T1,    Series::T2};

inline std::string series_name(Series s) {
  static constexpr std::array<std::string_view, 14> names = {"Mid1",  "Mid2",  "Mid3",  "Mid4", "M12_1",
                                                             "M12_2", "M12_3", "M12_4", "I1",   "I2",
                                                             "I3",    "I4",    "T1",    "T2"};
  return std::string(names[static_cast<std::size_t>(s)]);
}

inline IdentityKind series_kind(Series s) {
  switch (s) {
    case Series::Mid1: case Series::Mid2: case Series::Mid3: case Series::Mid4:
      return IdentityKind::MatchId;
    case Series::M12_1: case Series::M12_2: case Series::M12_3: case Series::M12_4:
      return IdentityKind::MatchTwelve;
    case Series::I1: case Series::I2: case Series::I3: case Series::I4:
      return IdentityKind::Interchangeable;
    case Series::T1: case Series::T2:
      return IdentityKind::TotallyCompatible;
  }
  return IdentityKind::Compatible;
}

inline std::size_t series_arity(Series s) {
  switch (s) {
    case Series::M12_4: case Series::I4: case Series::T2:
      return 0;
    case Series::M12_2: case Series::I2: case Series::I3:
      return 1;
    default:
      return 2;
  }
}

/// A member of a series, e.g. Mid1[2,1] or T2.
struct FamilyId {
  Series series;
  std::vector<int> indices;

  friend bool operator==(const FamilyId&, const FamilyId&) = default;

  /// "Mid1[i,j]", "M12_2[i]", "T2".
  std::string to_string() const {
    std::string out = series_name(series);
    if (indices.empty()) return out;
    out += "[";
    for (std::size_t k = 0; k < indices.size(); ++k) out += (k ? "," : "") + std::to_string(indices[k]);
    return out + "]";
  }

  static FamilyId parse(std::string_view text) {
    auto bracket = text.find('[');
    std::string_view head = text.substr(0, bracket);
    std::optional<Series> series;
    for (Series s : kAllSeries)
      if (head == series_name(s)) series = s;
    if (!series) throw ParseError("unknown family series '" + std::string(head) + "'");
    FamilyId id{*series, {}};
    if (bracket != std::string_view::npos) {
      if (text.back() != ']') throw ParseError("family name '" + std::string(text) + "' lacks a closing ']'");
      std::string_view body = text.substr(bracket + 1, text.size() - bracket - 2);
      while (true) {
        auto comma = body.find(',');
        std::string_view part = body.substr(0, comma);
        if (part.empty() || part.find_first_not_of("0123456789") != std::string_view::npos || part.size() > 4)
          throw ParseError("malformed index list in family name '" + std::string(text) + "'");
        id.indices.push_back(std::stoi(std::string(part)));
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
      }
    }
    if (id.indices.size() != series_arity(id.series))
      throw ParseError("family " + series_name(id.series) + " takes " + std::to_string(series_arity(id.series)) +
                       " indices");
    return id;
  }
};

namespace detail {

/// Empty when valid; otherwise the violated index restriction.
inline std::optional<std::string> family_violation(const FamilyId& id, Dimension dim) {
  int n = dim.n();
  if (id.indices.size() != series_arity(id.series))
    return series_name(id.series) + " takes " + std::to_string(series_arity(id.series)) + " indices";
  int i = id.indices.empty() ? 0 : id.indices[0];
  int j = id.indices.size() < 2 ? 0 : id.indices[1];
  auto need = [](bool ok, const std::string& rule) -> std::optional<std::string> {
    if (ok) return std::nullopt;
    return rule;
  };
  switch (id.series) {
    case Series::Mid1:
    case Series::M12_1:
    case Series::I1:
    case Series::T1:
      return need(1 < i && i <= n && 1 <= j && j < n, "requires 1<i<=n and 1<=j<n");
    case Series::Mid2:
      return need(1 < i && i <= n && 1 <= j && j < n && !(i == 2 && j == n - 1),
                  "requires 1<i<=n, 1<=j<n and (i,j) != (2,n-1)");
    case Series::Mid3:
      return need(2 < i && i <= j + 1 && j + 1 < n, "requires 2<i<=j+1<n");
    case Series::Mid4:
      return need(2 < i && i <= n && 1 <= j && j < n - 1, "requires 2<i<=n and 1<=j<n-1");
    case Series::M12_2:
      return need(1 <= i && i < n, "requires 1<=i<n");
    case Series::M12_3:
      return need(1 <= i && i < j && j <= n && j > i + 2, "requires 1<=i<j<=n and j>i+2");
    case Series::M12_4:
      return need(n >= 4, "requires n>=4");
    case Series::I2:
    case Series::I3:
      return need(1 <= i && i < n - 1, "requires 1<=i<n-1");
    case Series::I4:
    case Series::T2:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace detail

inline bool family_valid(const FamilyId& id, Dimension dim) { return !detail::family_violation(id, dim); }

inline Product make_family(const FamilyId& id, Dimension dim, FieldSpec field) {
  if (auto why = detail::family_violation(id, dim))
    throw UsageError(id.to_string() + " is not defined on UT_" + std::to_string(dim.n()) + ": " + *why);
  int n = dim.n();
  int i = id.indices.empty() ? 0 : id.indices[0];
  int j = id.indices.size() < 2 ? 0 : id.indices[1];
  Scalar one = Scalar::one(field);
  std::vector<std::pair<Product::Key, std::vector<std::pair<BasisIndex, Scalar>>>> entries;
  auto put = [&](BasisIndex a, BasisIndex b, BasisIndex out) { entries.push_back({{a, b}, {{out, one}}}); };
  auto every_path = [&](auto target) {
    for (int r = 1; r <= n; ++r)
      for (int k = r + 1; k <= n; ++k)
        for (int s = k + 1; s <= n; ++s)
          if (auto out = target(r, s)) put({r, k}, {k, s}, *out);
  };
  switch (id.series) {
    case Series::Mid1:
      for (int l = j + 1; l <= n; ++l) put({i - 1, i}, {j, l}, {1, l});
      break;
    case Series::Mid2:
      for (int k = 1; k < i; ++k) put({k, i}, {j, j + 1}, {k, n});
      break;
    case Series::Mid3:
      for (int k = 1; k < i; ++k)
        for (int l = j + 1; l <= n; ++l) put({k, i}, {j, l}, {k, l});
      break;
    case Series::Mid4:
    case Series::M12_1:
    case Series::I1:
    case Series::T1:
      put({i - 1, i}, {j, j + 1}, {1, n});
      break;
    case Series::M12_2:
      put({1, 2}, {i, i + 1}, {1, n - 1});
      put({i, i + 1}, {n - 1, n}, {2, n});
      break;
    case Series::M12_3:
      for (int k = i + 1; k < j; ++k) put({i, k}, {k, j}, {1, n});
      break;
    case Series::M12_4:
      every_path([&](int r, int s) -> std::optional<BasisIndex> {
        if (r == 1 && s == n) return std::nullopt;
        return BasisIndex{r, s};
      });
      break;
    case Series::I2:
      put({1, 2}, {i, i + 2}, {1, n});
      put({i, i + 1}, {i + 1, i + 2}, {2, n});
      break;
    case Series::I3:
      put({i, i + 2}, {n - 1, n}, {1, n});
      put({i, i + 1}, {i + 1, i + 2}, {1, n - 1});
      break;
    case Series::I4:
    case Series::T2:
      every_path([](int r, int s) -> std::optional<BasisIndex> { return BasisIndex{r, s}; });
      break;
  }
  return Product::from_entries(dim, field, entries);
}

inline std::vector<Series> kind_series(IdentityKind kind) {
  std::vector<Series> out;
  for (Series s : kAllSeries)
    if (series_kind(s) == kind) out.push_back(s);
  if (out.empty()) throw UsageError("no product families are known for the " + kind_name(kind) + " identity");
  return out;
}

/// Family members spanning the solution space of `kind`: series order, then
/// lexicographic indices. M12_4 and I4 join only for n>4, T2 only for n>3.
inline std::vector<FamilyId> family_ids(IdentityKind kind, Dimension dim) {
  int n = dim.n();
  std::vector<FamilyId> out;
  for (Series s : kind_series(kind)) {
    switch (series_arity(s)) {
      case 0: {
        bool redundant = ((s == Series::M12_4 || s == Series::I4) && n <= 4) || (s == Series::T2 && n <= 3);
        if (!redundant) out.push_back({s, {}});
        break;
      }
      case 1:
        for (int i = 1; i <= n; ++i)
          if (FamilyId id{s, {i}}; family_valid(id, dim)) out.push_back(id);
        break;
      default:
        for (int i = 1; i <= n; ++i)
          for (int j = 1; j <= n; ++j)
            if (FamilyId id{s, {i, j}}; family_valid(id, dim)) out.push_back(id);
        break;
    }
  }
  return out;
}

inline std::vector<Product> family_basis(IdentityKind kind, Dimension dim, FieldSpec field) {
  std::vector<Product> out;
  for (const FamilyId& id : family_ids(kind, dim)) out.push_back(make_family(id, dim, field));
  return out;
}

/// Closed-form size of family_basis(kind, n).
inline std::size_t expected_count(IdentityKind kind, Dimension dim) {
  long n = dim.n();
  switch (kind) {
    case IdentityKind::MatchId:
      return static_cast<std::size_t>(7 * (n - 2) * (n - 1) / 2 + 1);
    case IdentityKind::MatchTwelve:
      return static_cast<std::size_t>(n * (3 * n - 7) / 2 + 3 + (n > 4 ? 1 : 0));
    case IdentityKind::Interchangeable:
      return static_cast<std::size_t>(n * n - 3 + (n > 4 ? 1 : 0));
    case IdentityKind::TotallyCompatible:
      return static_cast<std::size_t>((n - 1) * (n - 1) + (n > 3 ? 1 : 0));
    case IdentityKind::Compatible:
      break;
  }
  throw UsageError("no closed-form count is known for the " + kind_name(kind) + " identity");
}

/// Product determined by a = e_{i-1,i}, b = e_{j,j+1} and a*b = c: writing
/// x = p.a + u and y = b.q + v with p, q in the unitization, x*y = p.c.q.
inline Product product_from_triple(Dimension dim, int i, int j, const Element& c) {
  int n = dim.n();
  if (!(1 < i && i <= n && 1 <= j && j < n))
    throw UsageError("product_from_triple requires 1<i<=n and 1<=j<n, got i=" + std::to_string(i) +
                     ", j=" + std::to_string(j));
  if (!(c.dim() == dim)) throw UsageError("value c lives in a different dimension");
  FieldSpec field = c.field();
  Element zero(dim, field);
  auto left = [&](BasisIndex x) -> std::optional<UnitizedElement> {
    if (x.i == i - 1 && x.j == i) return UnitizedElement{Scalar::one(field), zero};
    if (x.j == i && x.i < i - 1) return UnitizedElement{Scalar::zero(field), Element::unit(dim, field, {x.i, i - 1})};
    return std::nullopt;
  };
  auto right = [&](BasisIndex y) -> std::optional<UnitizedElement> {
    if (y.i == j && y.j == j + 1) return UnitizedElement{Scalar::one(field), zero};
    if (y.i == j && y.j > j + 1) return UnitizedElement{Scalar::zero(field), Element::unit(dim, field, {j + 1, y.j})};
    return std::nullopt;
  };
  Product::Table table;
  for (BasisIndex x : basis(dim)) {
    auto p = left(x);
    if (!p) continue;
    for (BasisIndex y : basis(dim)) {
      auto q = right(y);
      if (!q) continue;
      Element v = dot(dot(*p, c), *q);
      if (!v.is_zero()) table.emplace(Product::Key{x, y}, std::move(v));
    }
  }
  return Product::from_table(dim, field, std::move(table));
}

}  // namespace utn

#endif  // UTN_FAMILIES_HPP
