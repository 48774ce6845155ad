#ifndef UTN_IDENTITY_HPP
#define UTN_IDENTITY_HPP

// Compatibility identities between the matrix product "." and an unknown product
// "*", as residual checks and as linear systems in the structure constants of *.
//
// With a, b, c basis units, the four monomials are
//   T1 = (a.b)*c   T2 = (a*b).c   T3 = a.(b*c)   T4 = a*(b.c)
// and each kind is a set of linear relations among them.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "linalg.hpp"

namespace utn {

enum class IdentityKind { Compatible, MatchId, MatchTwelve, Interchangeable, TotallyCompatible };

inline constexpr std::array<IdentityKind, 5> kAllKinds = {IdentityKind::Compatible, IdentityKind::MatchId,
                                                          IdentityKind::MatchTwelve, IdentityKind::Interchangeable,
                                                          IdentityKind::TotallyCompatible};

/// Command-line token: compat, id, 12, inter, total.
inline std::string kind_token(IdentityKind kind) {
  switch (kind) {
    case IdentityKind::Compatible: return "compat";
    case IdentityKind::MatchId: return "id";
    case IdentityKind::MatchTwelve: return "12";
    case IdentityKind::Interchangeable: return "inter";
    case IdentityKind::TotallyCompatible: return "total";
  }
  return "?";
}

inline std::string kind_name(IdentityKind kind) {
  switch (kind) {
    case IdentityKind::Compatible: return "Compatible";
    case IdentityKind::MatchId: return "MatchId";
    case IdentityKind::MatchTwelve: return "MatchTwelve";
    case IdentityKind::Interchangeable: return "Interchangeable";
    case IdentityKind::TotallyCompatible: return "TotallyCompatible";
  }
  return "?";
}

/// Accepts either the token or the long name.
inline IdentityKind parse_kind(std::string_view text) {
  for (IdentityKind k : kAllKinds)
    if (text == kind_token(k) || text == kind_name(k)) return k;
  throw ParseError("unknown identity kind '" + std::string(text) + "' (expected id|12|inter|total|compat)");
}

namespace detail {

enum Monomial { kT1, kT2, kT3, kT4 };

struct Equation {
  std::string tag;
  std::vector<std::pair<Monomial, int>> terms;  // signed sum that must vanish
};

inline const std::vector<Equation>& equations(IdentityKind kind) {
  static const std::map<IdentityKind, std::vector<Equation>> table = {
      {IdentityKind::Compatible,
       {{"C (a.b)*c + (a*b).c = a.(b*c) + a*(b.c)", {{kT1, 1}, {kT2, 1}, {kT3, -1}, {kT4, -1}}}}},
      {IdentityKind::MatchId,
       {{"E1 (a.b)*c = a.(b*c)", {{kT1, 1}, {kT3, -1}}}, {"E2 (a*b).c = a*(b.c)", {{kT2, 1}, {kT4, -1}}}}},
      {IdentityKind::MatchTwelve,
       {{"E1 (a.b)*c = a*(b.c)", {{kT1, 1}, {kT4, -1}}}, {"E2 (a*b).c = a.(b*c)", {{kT2, 1}, {kT3, -1}}}}},
      {IdentityKind::Interchangeable,
       {{"E1 (a.b)*c = (a*b).c", {{kT1, 1}, {kT2, -1}}}, {"E2 a.(b*c) = a*(b.c)", {{kT3, 1}, {kT4, -1}}}}},
      {IdentityKind::TotallyCompatible,
       {{"E1 (a.b)*c = (a*b).c", {{kT1, 1}, {kT2, -1}}},
        {"E2 (a.b)*c = a.(b*c)", {{kT1, 1}, {kT3, -1}}},
        {"E3 (a.b)*c = a*(b.c)", {{kT1, 1}, {kT4, -1}}}}},
  };
  return table.at(kind);
}

inline std::optional<BasisIndex> unit_dot(BasisIndex x, BasisIndex y) {
  if (x.j != y.i) return std::nullopt;
  return BasisIndex{x.i, y.j};
}

/// Dense lookup of a product's values on basis pairs.
class ProductView {
 public:
  explicit ProductView(const Product& p)
      : dim_(p.dim()), m_(p.dim().basis_size()), zero_(p.dim(), p.field()), slots_(m_ * m_, &zero_) {
    for (const auto& [key, value] : p.table()) slots_[position(dim_, key.first) * m_ + position(dim_, key.second)] = &value;
  }

  const Element& at(BasisIndex a, BasisIndex b) const {
    return *slots_[position(dim_, a) * m_ + position(dim_, b)];
  }

 private:
  Dimension dim_;
  std::size_t m_;
  Element zero_;
  std::vector<const Element*> slots_;
};

inline std::array<Element, 4> monomials(const ProductView& p, const Element& zero, BasisIndex a, BasisIndex b,
                                        BasisIndex c) {
  Dimension dim = zero.dim();
  FieldSpec field = zero.field();
  auto ab = unit_dot(a, b);
  auto bc = unit_dot(b, c);
  Element t1 = ab ? p.at(*ab, c) : zero;
  Element t2 = dot(p.at(a, b), Element::unit(dim, field, c));
  Element t3 = dot(Element::unit(dim, field, a), p.at(b, c));
  Element t4 = bc ? p.at(a, *bc) : zero;
  return {std::move(t1), std::move(t2), std::move(t3), std::move(t4)};
}

inline Element combine(const std::array<Element, 4>& t, const Equation& eq) {
  Element out = t[0] - t[0];
  FieldSpec field = out.field();
  for (const auto& [mono, sign] : eq.terms) out = out + Scalar::from_int(field, sign) * t[mono];
  return out;
}

}  // namespace detail

struct ResidualEntry {
  BasisTriple triple;
  std::string tag;
  Element value;
};

/// Nonzero residuals, sorted by triple then tag; empty iff the identity holds.
struct ResidualReport {
  std::vector<ResidualEntry> entries;
  bool holds() const { return entries.empty(); }
};

/// Evaluates every defining equation of `kind` on all basis triples, with the
/// matrix product as "." and `p` as "*". Stops after `limit` failures when set.
inline ResidualReport residual(IdentityKind kind, const Product& p, std::optional<std::size_t> limit = std::nullopt) {
  ResidualReport report;
  detail::ProductView view(p);
  Element zero(p.dim(), p.field());
  const auto& eqs = detail::equations(kind);
  std::vector<BasisIndex> units = basis(p.dim());
  for (BasisIndex a : units)
    for (BasisIndex b : units)
      for (BasisIndex c : units) {
        auto t = detail::monomials(view, zero, a, b, c);
        for (const auto& eq : eqs) {
          Element v = detail::combine(t, eq);
          if (v.is_zero()) continue;
          report.entries.push_back({BasisTriple{a, b, c}, eq.tag, std::move(v)});
          if (limit && report.entries.size() >= *limit) return report;
        }
      }
  return report;
}

inline bool satisfies(IdentityKind kind, const Product& p) { return residual(kind, p, 1).holds(); }

/// Linear constraints on the m^3 structure constants of *; column order as in
/// Product::coordinate.
struct ConstraintSystem {
  IdentityKind kind;
  Dimension dim;
  FieldSpec field;
  std::size_t columns;
  std::vector<SparseVector> rows;
};

inline ConstraintSystem assemble(IdentityKind kind, Dimension dim, FieldSpec field) {
  ConstraintSystem sys{kind, dim, field, dim.basis_size() * dim.basis_size() * dim.basis_size(), {}};
  std::vector<BasisIndex> units = basis(dim);
  const auto& eqs = detail::equations(kind);
  for (BasisIndex a : units)
    for (BasisIndex b : units)
      for (BasisIndex c : units) {
        auto ab = detail::unit_dot(a, b);
        auto bc = detail::unit_dot(b, c);
        for (BasisIndex o : units) {
          // Each monomial's o-coordinate is a single structure constant (or 0).
          std::array<std::optional<std::size_t>, 4> col;
          if (ab) col[detail::kT1] = Product::coordinate(dim, *ab, c, o);
          if (o.j == c.j && o.i < c.i) col[detail::kT2] = Product::coordinate(dim, a, b, {o.i, c.i});
          if (o.i == a.i && o.j > a.j) col[detail::kT3] = Product::coordinate(dim, b, c, {a.j, o.j});
          if (bc) col[detail::kT4] = Product::coordinate(dim, a, *bc, o);
          for (const auto& eq : eqs) {
            std::map<std::size_t, Scalar> row;
            for (const auto& [mono, sign] : eq.terms) {
              if (!col[mono]) continue;
              auto [it, fresh] = row.emplace(*col[mono], Scalar::from_int(field, sign));
              if (!fresh) it->second += Scalar::from_int(field, sign);
            }
            SparseVector sparse = make_sparse(std::move(row));
            if (!sparse.empty()) sys.rows.push_back(std::move(sparse));
          }
        }
      }
  return sys;
}

/// Reduced-echelon basis of a solution space: each pivot coordinate is 1 in
/// exactly one vector and 0 in the others.
struct KernelBasis {
  IdentityKind kind;
  Dimension dim;
  FieldSpec field;
  std::vector<SparseVector> vectors;
  std::vector<std::size_t> pivots;
  std::vector<Product> products;

  std::size_t dimension() const { return vectors.size(); }
};

inline KernelBasis kernel(const ConstraintSystem& sys) {
  EchelonBasis echelon;
  for (const auto& row : sys.rows) echelon.insert(row);
  KernelBasis out{sys.kind, sys.dim, sys.field, nullspace(echelon.reduced_rows(), sys.columns, sys.field), {}, {}};
  for (const auto& v : out.vectors) {
    out.pivots.push_back(v.front().first);
    out.products.push_back(Product::from_coordinates(sys.dim, sys.field, v));
    if (!satisfies(sys.kind, out.products.back()))
      throw Error("internal: kernel vector fails the " + kind_name(sys.kind) + " identity");
  }
  return out;
}

inline KernelBasis kernel(IdentityKind kind, Dimension dim, FieldSpec field) {
  return kernel(assemble(kind, dim, field));
}

inline std::size_t dimension(IdentityKind kind, Dimension dim, FieldSpec field) {
  return kernel(kind, dim, field).dimension();
}

/// Coordinates of p in the basis, or nullopt when p lies outside its span.
inline std::optional<std::vector<Scalar>> membership(const Product& p, const KernelBasis& b) {
  if (!(p.dim() == b.dim) || !(p.field() == b.field)) throw UsageError("product and kernel basis disagree");
  SparseVector v = p.coordinates();
  std::map<std::size_t, Scalar> dense(v.begin(), v.end());
  std::vector<Scalar> coords;
  SparseVector rest = v;
  for (std::size_t k = 0; k < b.vectors.size(); ++k) {
    auto it = dense.find(b.pivots[k]);
    Scalar c = it == dense.end() ? Scalar::zero(b.field) : it->second;
    if (!c.is_zero()) rest = detail::axpy(rest, -c, b.vectors[k]);
    coords.push_back(std::move(c));
  }
  if (!rest.empty()) return std::nullopt;
  return coords;
}

/// Rank of the restriction of the MatchId solution space to the generator pairs
/// (e_{i,i+1}, e_{j,j+1}).
inline std::size_t generator_restriction_rank(const KernelBasis& b) {
  if (b.kind != IdentityKind::MatchId) throw UsageError("generator restriction is defined for MatchId only");
  EchelonBasis echelon;
  for (const Product& p : b.products) {
    std::map<std::size_t, Scalar> restricted;
    for (const auto& [key, value] : p.table()) {
      if (key.first.j != key.first.i + 1 || key.second.j != key.second.i + 1) continue;
      for (const auto& [e, c] : value.terms()) restricted.emplace(Product::coordinate(b.dim, key.first, key.second, e), c);
    }
    echelon.insert(make_sparse(std::move(restricted)));
  }
  return echelon.rank();
}

inline std::size_t generator_restriction_rank(Dimension dim, FieldSpec field) {
  return generator_restriction_rank(kernel(IdentityKind::MatchId, dim, field));
}

}  // namespace utn

#endif  // UTN_IDENTITY_HPP
