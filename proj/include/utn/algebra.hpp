#ifndef UTN_ALGEBRA_HPP
#define UTN_ALGEBRA_HPP

// UT_n(K): matrix-unit basis, elements, bilinear products as structure-constant
// tables, linear maps, and the product constructions built on them.

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "scalar.hpp"

namespace utn {

/// Matrix size n of UT_n; n >= 3.
class Dimension {
 public:
  explicit Dimension(int n) : n_(n) {
    if (n < 3) throw UsageError("dimension n = " + std::to_string(n) + " must be at least 3");
  }

  int n() const { return n_; }
  /// m = n(n-1)/2.
  std::size_t basis_size() const { return static_cast<std::size_t>(n_ * (n_ - 1) / 2); }

  friend bool operator==(Dimension, Dimension) = default;

 private:
  int n_;
};

/// Matrix unit e_{ij}, 1-based, i < j.
struct BasisIndex {
  int i = 1;
  int j = 2;

  friend auto operator<=>(const BasisIndex&, const BasisIndex&) = default;

  std::string to_string() const {
    return "e" + std::to_string(i) + (i > 9 || j > 9 ? "," : "") + std::to_string(j);
  }
};

inline bool valid_index(Dimension dim, BasisIndex e) { return 1 <= e.i && e.i < e.j && e.j <= dim.n(); }

inline void require_index(Dimension dim, BasisIndex e) {
  if (!valid_index(dim, e))
    throw UsageError("(" + std::to_string(e.i) + "," + std::to_string(e.j) +
                     ") is not a matrix unit of UT_" + std::to_string(dim.n()));
}

/// 0-based position of e_{ij} in the lexicographic basis order.
inline std::size_t position(Dimension dim, BasisIndex e) {
  require_index(dim, e);
  int n = dim.n();
  int before = (e.i - 1) * n - (e.i - 1) * e.i / 2;
  return static_cast<std::size_t>(before + (e.j - e.i - 1));
}

inline std::vector<BasisIndex> basis(Dimension dim) {
  std::vector<BasisIndex> out;
  out.reserve(dim.basis_size());
  for (int i = 1; i <= dim.n(); ++i)
    for (int j = i + 1; j <= dim.n(); ++j) out.push_back({i, j});
  return out;
}

inline BasisIndex index_at(Dimension dim, std::size_t pos) { return basis(dim).at(pos); }

/// Element of UT_n(K) as a sparse coefficient map with no stored zeros.
class Element {
 public:
  using Terms = std::map<BasisIndex, Scalar>;

  Element(Dimension dim, FieldSpec field) : dim_(dim), field_(field) {}

  /// Sums repeated indices; drops zeros.
  static Element from_terms(Dimension dim, FieldSpec field, const std::vector<std::pair<BasisIndex, Scalar>>& terms) {
    Element out(dim, field);
    for (const auto& [e, c] : terms) {
      require_index(dim, e);
      if (c.field() != field) throw UsageError("coefficient field " + c.field().to_string() + " differs from " + field.to_string());
      auto [it, fresh] = out.terms_.emplace(e, c);
      if (!fresh) it->second += c;
    }
    out.strip();
    return out;
  }

  static Element unit(Dimension dim, FieldSpec field, BasisIndex e) {
    return from_terms(dim, field, {{e, Scalar::one(field)}});
  }

  Dimension dim() const { return dim_; }
  FieldSpec field() const { return field_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// a(i,j).
  Scalar coeff(BasisIndex e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar::zero(field_) : it->second;
  }

  friend Element operator+(const Element& x, const Element& y) {
    x.require_compatible(y);
    Element out = x;
    for (const auto& [e, c] : y.terms_) {
      auto [it, fresh] = out.terms_.emplace(e, c);
      if (!fresh) it->second += c;
    }
    out.strip();
    return out;
  }

  friend Element operator*(const Scalar& c, const Element& x) {
    Element out(x.dim_, x.field_);
    if (c.is_zero()) return out;
    for (const auto& [e, v] : x.terms_) out.terms_.emplace(e, c * v);
    return out;
  }

  Element operator-() const { return Scalar::from_int(field_, -1) * *this; }
  friend Element operator-(const Element& x, const Element& y) { return x + (-y); }

  friend bool operator==(const Element& x, const Element& y) {
    return x.dim_ == y.dim_ && x.field_ == y.field_ && x.terms_ == y.terms_;
  }

  /// "0", or terms like "2*e13 + -1/2*e23".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      if (!c.is_one()) os << c.to_string() << "*";
      os << e.to_string();
    }
    return os.str();
  }

  void require_compatible(const Element& y) const {
    if (!(dim_ == y.dim_)) throw UsageError("elements live in different dimensions");
    if (!(field_ == y.field_)) throw UsageError("elements live over different fields");
  }

 private:
  void strip() {
    for (auto it = terms_.begin(); it != terms_.end();) it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }

  Dimension dim_;
  FieldSpec field_;
  Terms terms_;
};

/// Bilinear product on UT_n(K), given by its values on basis pairs. Zero values
/// are never stored, so structural and mathematical equality coincide.
class Product {
 public:
  using Key = std::pair<BasisIndex, BasisIndex>;
  using Table = std::map<Key, Element>;

  Product(Dimension dim, FieldSpec field) : dim_(dim), field_(field) {}

  static Product from_table(Dimension dim, FieldSpec field, Table table) {
    Product out(dim, field);
    for (auto& [key, value] : table) {
      require_index(dim, key.first);
      require_index(dim, key.second);
      if (!(value.dim() == dim) || !(value.field() == field))
        throw UsageError("product value at (" + key.first.to_string() + "," + key.second.to_string() +
                         ") has mismatched dimension or field");
      if (!value.is_zero()) out.table_.emplace(key, std::move(value));
    }
    return out;
  }

  /// Convenience for literal tables: {{a, b}, {{out, coef}, ...}}.
  static Product from_entries(
      Dimension dim, FieldSpec field,
      const std::vector<std::pair<Key, std::vector<std::pair<BasisIndex, Scalar>>>>& entries) {
    Table table;
    for (const auto& [key, terms] : entries) {
      Element value = Element::from_terms(dim, field, terms);
      auto [it, fresh] = table.emplace(key, value);
      if (!fresh) it->second = it->second + value;
    }
    return from_table(dim, field, std::move(table));
  }

  Dimension dim() const { return dim_; }
  FieldSpec field() const { return field_; }
  const Table& table() const { return table_; }
  bool is_zero() const { return table_.empty(); }

  Element at(BasisIndex a, BasisIndex b) const {
    auto it = table_.find({a, b});
    return it == table_.end() ? Element(dim_, field_) : it->second;
  }

  friend Product operator+(const Product& x, const Product& y) {
    x.require_compatible(y);
    Table table = x.table_;
    for (const auto& [key, value] : y.table_) {
      auto [it, fresh] = table.emplace(key, value);
      if (!fresh) it->second = it->second + value;
    }
    return from_table(x.dim_, x.field_, std::move(table));
  }

  friend Product operator*(const Scalar& c, const Product& x) {
    Table table;
    for (const auto& [key, value] : x.table_) table.emplace(key, c * value);
    return from_table(x.dim_, x.field_, std::move(table));
  }

  Product operator-() const { return Scalar::from_int(field_, -1) * *this; }
  friend Product operator-(const Product& x, const Product& y) { return x + (-y); }

  friend bool operator==(const Product& x, const Product& y) {
    return x.dim_ == y.dim_ && x.field_ == y.field_ && x.table_ == y.table_;
  }

  /// Column of c^{out}_{a,b} among the m^3 structure constants: (a*m + b)*m + out.
  static std::size_t coordinate(Dimension dim, BasisIndex a, BasisIndex b, BasisIndex out) {
    std::size_t m = dim.basis_size();
    return (position(dim, a) * m + position(dim, b)) * m + position(dim, out);
  }

  SparseVector coordinates() const {
    SparseVector v;
    for (const auto& [key, value] : table_)
      for (const auto& [e, c] : value.terms()) v.emplace_back(coordinate(dim_, key.first, key.second, e), c);
    return v;  // table and term order are both lexicographic, so v is sorted
  }

  static Product from_coordinates(Dimension dim, FieldSpec field, const SparseVector& v) {
    std::size_t m = dim.basis_size();
    std::vector<BasisIndex> units = basis(dim);
    std::map<Key, std::vector<std::pair<BasisIndex, Scalar>>> grouped;
    for (const auto& [col, c] : v) {
      if (col >= m * m * m) throw UsageError("structure-constant column out of range");
      grouped[{units[col / (m * m)], units[(col / m) % m]}].emplace_back(units[col % m], c);
    }
    Table table;
    for (const auto& [key, terms] : grouped) table.emplace(key, Element::from_terms(dim, field, terms));
    return from_table(dim, field, std::move(table));
  }

  std::string to_string() const {
    if (table_.empty()) return "{}";
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [key, value] : table_) {
      os << (first ? "" : ", ") << key.first.to_string() << "*" << key.second.to_string() << "=" << value.to_string();
      first = false;
    }
    os << "}";
    return os.str();
  }

  void require_compatible(const Product& y) const {
    if (!(dim_ == y.dim_)) throw UsageError("products live in different dimensions");
    if (!(field_ == y.field_)) throw UsageError("products live over different fields");
  }

 private:
  Dimension dim_;
  FieldSpec field_;
  Table table_;
};

/// Element of the unitization: delta times the identity plus a body in UT_n.
struct UnitizedElement {
  Scalar delta;
  Element body;
};

// --- canonical product -----------------------------------------------------

/// x . y under the matrix product e_{ij} e_{kl} = delta_{jk} e_{il}.
inline Element dot(const Element& x, const Element& y) {
  x.require_compatible(y);
  std::vector<std::pair<BasisIndex, Scalar>> terms;
  for (const auto& [a, ca] : x.terms())
    for (const auto& [b, cb] : y.terms())
      if (a.j == b.i) terms.emplace_back(BasisIndex{a.i, b.j}, ca * cb);
  return Element::from_terms(x.dim(), x.field(), terms);
}

inline Element dot(const UnitizedElement& u, const Element& x) { return u.delta * x + dot(u.body, x); }
inline Element dot(const Element& x, const UnitizedElement& u) { return u.delta * x + dot(x, u.body); }

inline Product canonical_product(Dimension dim, FieldSpec field) {
  Product::Table table;
  for (BasisIndex a : basis(dim))
    for (int l = a.j + 1; l <= dim.n(); ++l)
      table.emplace(Product::Key{a, {a.j, l}}, Element::unit(dim, field, {a.i, l}));
  return Product::from_table(dim, field, std::move(table));
}

// --- evaluation ------------------------------------------------------------

inline Element eval(const Product& p, const Element& x, const Element& y) {
  x.require_compatible(y);
  if (!(p.dim() == x.dim()) || !(p.field() == x.field()))
    throw UsageError("product and elements disagree on dimension or field");
  Element out(p.dim(), p.field());
  if (x.is_zero() || y.is_zero()) return out;
  std::vector<std::pair<BasisIndex, Scalar>> terms;
  for (const auto& [a, ca] : x.terms())
    for (const auto& [b, cb] : y.terms()) {
      auto it = p.table().find({a, b});
      if (it == p.table().end()) continue;
      Scalar c = ca * cb;
      for (const auto& [e, v] : it->second.terms()) terms.emplace_back(e, c * v);
    }
  return Element::from_terms(p.dim(), p.field(), terms);
}

/// [a,b,c] = (a*b)*c - a*(b*c).
inline Element associator(const Product& p, const Element& a, const Element& b, const Element& c) {
  return eval(p, eval(p, a, b), c) - eval(p, a, eval(p, b, c));
}

struct BasisTriple {
  BasisIndex a, b, c;
  friend auto operator<=>(const BasisTriple&, const BasisTriple&) = default;

  std::string to_string() const { return "(" + a.to_string() + "," + b.to_string() + "," + c.to_string() + ")"; }
};

struct AssociativityReport {
  bool associative = true;
  /// Lexicographically first basis triple with a nonzero associator.
  std::optional<BasisTriple> first_failure;
  std::optional<Element> failing_value;
};

inline AssociativityReport is_associative(const Product& p) {
  std::vector<BasisIndex> units = basis(p.dim());
  auto unit = [&](BasisIndex e) { return Element::unit(p.dim(), p.field(), e); };
  for (BasisIndex a : units)
    for (BasisIndex b : units)
      for (BasisIndex c : units) {
        Element value = associator(p, unit(a), unit(b), unit(c));
        if (!value.is_zero()) return {false, BasisTriple{a, b, c}, value};
      }
  return {};
}

// --- constructions ---------------------------------------------------------

/// a *_x b = a . x . b.
inline Product mutation_product(const Element& x) {
  Dimension dim = x.dim();
  Product::Table table;
  std::vector<BasisIndex> units = basis(dim);
  for (BasisIndex a : units)
    for (BasisIndex b : units) {
      Element v = dot(dot(Element::unit(dim, x.field(), a), x), Element::unit(dim, x.field(), b));
      if (!v.is_zero()) table.emplace(Product::Key{a, b}, std::move(v));
    }
  return Product::from_table(dim, x.field(), std::move(table));
}

/// e_{i,i+1} * e_{j,j+1} = mu[i-1][j-1] e_{1n}; all other basis pairs give 0.
inline Product annihilator_structure(Dimension dim, FieldSpec field, const std::vector<std::vector<Scalar>>& mu) {
  std::size_t k = static_cast<std::size_t>(dim.n() - 1);
  if (mu.size() != k) throw UsageError("annihilator matrix must be " + std::to_string(k) + "x" + std::to_string(k));
  Product::Table table;
  for (std::size_t r = 0; r < k; ++r) {
    if (mu[r].size() != k)
      throw UsageError("annihilator matrix must be " + std::to_string(k) + "x" + std::to_string(k));
    for (std::size_t c = 0; c < k; ++c) {
      int i = static_cast<int>(r) + 1;
      int j = static_cast<int>(c) + 1;
      table.emplace(Product::Key{{i, i + 1}, {j, j + 1}},
                    Element::from_terms(dim, field, {{{1, dim.n()}, mu[r][c]}}));
    }
  }
  return Product::from_table(dim, field, std::move(table));
}

// --- linear maps -----------------------------------------------------------

/// Square matrix in the lexicographic basis; column k is the image of basis k.
class LinearMap {
 public:
  using Matrix = std::vector<std::vector<Scalar>>;

  static LinearMap identity(Dimension dim, FieldSpec field) {
    std::size_t m = dim.basis_size();
    Matrix a(m, std::vector<Scalar>(m, Scalar::zero(field)));
    for (std::size_t k = 0; k < m; ++k) a[k][k] = Scalar::one(field);
    return LinearMap(dim, field, std::move(a));
  }

  /// images[k] is the image of the k-th basis unit.
  static LinearMap from_images(Dimension dim, FieldSpec field, const std::vector<Element>& images) {
    std::size_t m = dim.basis_size();
    if (images.size() != m) throw UsageError("linear map needs one image per basis unit");
    Matrix a(m, std::vector<Scalar>(m, Scalar::zero(field)));
    for (std::size_t c = 0; c < m; ++c) {
      if (!(images[c].dim() == dim) || !(images[c].field() == field))
        throw UsageError("image has mismatched dimension or field");
      for (const auto& [e, v] : images[c].terms()) a[position(dim, e)][c] = v;
    }
    return LinearMap(dim, field, std::move(a));
  }

  Dimension dim() const { return dim_; }
  FieldSpec field() const { return field_; }
  const Matrix& matrix() const { return a_; }

  Element apply(const Element& x) const {
    if (!(x.dim() == dim_) || !(x.field() == field_)) throw UsageError("linear map and element disagree");
    std::vector<BasisIndex> units = basis(dim_);
    std::vector<std::pair<BasisIndex, Scalar>> terms;
    for (const auto& [e, c] : x.terms()) {
      std::size_t col = position(dim_, e);
      for (std::size_t r = 0; r < units.size(); ++r)
        if (!a_[r][col].is_zero()) terms.emplace_back(units[r], a_[r][col] * c);
    }
    return Element::from_terms(dim_, field_, terms);
  }

  /// (*this) after `inner`.
  LinearMap compose(const LinearMap& inner) const {
    std::size_t m = a_.size();
    Matrix c(m, std::vector<Scalar>(m, Scalar::zero(field_)));
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t k = 0; k < m; ++k) {
        if (a_[r][k].is_zero()) continue;
        for (std::size_t col = 0; col < m; ++col) c[r][col] += a_[r][k] * inner.a_[k][col];
      }
    return LinearMap(dim_, field_, std::move(c));
  }

  /// Exact Gauss-Jordan inverse.
  LinearMap inverse() const {
    std::size_t m = a_.size();
    Matrix left = a_;
    Matrix right = identity(dim_, field_).a_;
    for (std::size_t col = 0; col < m; ++col) {
      std::size_t piv = col;
      while (piv < m && left[piv][col].is_zero()) ++piv;
      if (piv == m) throw SingularMapError();
      std::swap(left[piv], left[col]);
      std::swap(right[piv], right[col]);
      Scalar s = left[col][col].inv();
      for (std::size_t k = 0; k < m; ++k) {
        left[col][k] *= s;
        right[col][k] *= s;
      }
      for (std::size_t r = 0; r < m; ++r) {
        if (r == col || left[r][col].is_zero()) continue;
        Scalar f = left[r][col];
        for (std::size_t k = 0; k < m; ++k) {
          left[r][k] -= f * left[col][k];
          right[r][k] -= f * right[col][k];
        }
      }
    }
    return LinearMap(dim_, field_, std::move(right));
  }

  friend bool operator==(const LinearMap& x, const LinearMap& y) {
    return x.dim_ == y.dim_ && x.field_ == y.field_ && x.a_ == y.a_;
  }

 private:
  LinearMap(Dimension dim, FieldSpec field, Matrix a) : dim_(dim), field_(field), a_(std::move(a)) {}

  Dimension dim_;
  FieldSpec field_;
  Matrix a_;
};

/// e_{ij} -> e_{n-j+1, n-i+1}; an antiautomorphism of (UT_n, .).
inline LinearMap involution_map(Dimension dim, FieldSpec field) {
  std::vector<Element> images;
  int n = dim.n();
  for (BasisIndex e : basis(dim)) images.push_back(Element::unit(dim, field, {n - e.j + 1, n - e.i + 1}));
  return LinearMap::from_images(dim, field, images);
}

namespace detail {

inline Product transport(const Product& p, const LinearMap& l, bool opposite) {
  if (!(p.dim() == l.dim()) || !(p.field() == l.field())) throw UsageError("product and map disagree");
  LinearMap inv = l.inverse();
  Dimension dim = p.dim();
  std::vector<BasisIndex> units = basis(dim);
  std::vector<Element> pre;
  for (BasisIndex e : units) pre.push_back(inv.apply(Element::unit(dim, p.field(), e)));
  Product::Table table;
  for (std::size_t a = 0; a < units.size(); ++a)
    for (std::size_t b = 0; b < units.size(); ++b) {
      Element v = opposite ? eval(p, pre[b], pre[a]) : eval(p, pre[a], pre[b]);
      if (!v.is_zero()) table.emplace(Product::Key{units[a], units[b]}, l.apply(v));
    }
  return Product::from_table(dim, p.field(), std::move(table));
}

}  // namespace detail

/// a * b = L(P(L^-1 a, L^-1 b)).
inline Product pushforward(const Product& p, const LinearMap& l) { return detail::transport(p, l, false); }

/// a * b = L(P(L^-1 b, L^-1 a)).
inline Product opposite_pushforward(const Product& p, const LinearMap& l) { return detail::transport(p, l, true); }

}  // namespace utn

#endif  // UTN_ALGEBRA_HPP
