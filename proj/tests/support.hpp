#ifndef UTN_TESTS_SUPPORT_HPP
#define UTN_TESTS_SUPPORT_HPP

#include <array>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <utn/utn.hpp>

namespace testing_support {

using namespace utn;

inline FieldSpec Q() { return FieldSpec::rationals(); }
inline FieldSpec F(std::uint64_t p) { return FieldSpec::prime(p); }

inline Scalar S(FieldSpec f, long num, long den = 1) { return Scalar::from_ratio(f, num, den); }

inline Element unit(int n, FieldSpec f, int i, int j) { return Element::unit(Dimension(n), f, {i, j}); }

/// Literal product with unit coefficients: {{a, b, out}, ...}.
inline Product table(int n, FieldSpec f, const std::vector<std::array<BasisIndex, 3>>& rows) {
  std::vector<std::pair<Product::Key, std::vector<std::pair<BasisIndex, Scalar>>>> entries;
  for (const auto& r : rows) entries.push_back({{r[0], r[1]}, {{r[2], Scalar::one(f)}}});
  return Product::from_entries(Dimension(n), f, entries);
}

inline Product family(const std::string& name, int n, FieldSpec f = Q()) {
  return make_family(FamilyId::parse(name), Dimension(n), f);
}

inline Element random_element(std::mt19937_64& rng, Dimension dim, FieldSpec f) {
  std::vector<std::pair<BasisIndex, Scalar>> terms;
  for (BasisIndex e : basis(dim)) terms.emplace_back(e, random_scalar(rng, f));
  return Element::from_terms(dim, f, terms);
}

inline Product random_combination(std::mt19937_64& rng, const std::vector<Product>& ps) {
  Product out = Scalar::zero(ps.front().field()) * ps.front();
  for (const Product& p : ps) out = out + random_scalar(rng, p.field()) * p;
  return out;
}

inline Product random_product(std::mt19937_64& rng, Dimension dim, FieldSpec f) {
  Product::Table t;
  for (BasisIndex a : basis(dim))
    for (BasisIndex b : basis(dim)) t.emplace(Product::Key{a, b}, random_element(rng, dim, f));
  return Product::from_table(dim, f, std::move(t));
}

/// Inner automorphism x -> g x g^{-1} of (UT_n, .) with g = 1 + t e_{kl}.
inline LinearMap elementary_conjugation(Dimension dim, FieldSpec f, BasisIndex kl, const Scalar& t) {
  std::vector<Element> images;
  for (BasisIndex e : basis(dim)) {
    Element x = Element::unit(dim, f, e);
    if (kl.j == e.i) x = x + t * Element::unit(dim, f, {kl.i, e.j});
    if (e.j == kl.i) x = x - t * Element::unit(dim, f, {e.i, kl.j});
    images.push_back(x);
  }
  return LinearMap::from_images(dim, f, images);
}

/// Automorphism e_{ij} -> (d_i / d_j) e_{ij}.
inline LinearMap diagonal_conjugation(Dimension dim, const std::vector<Scalar>& d) {
  FieldSpec f = d.front().field();
  std::vector<Element> images;
  for (BasisIndex e : basis(dim))
    images.push_back((d[static_cast<std::size_t>(e.i - 1)] / d[static_cast<std::size_t>(e.j - 1)]) * Element::unit(dim, f, e));
  return LinearMap::from_images(dim, f, images);
}

/// A random automorphism of (UT_n, .): a diagonal scaling after a few
/// elementary conjugations.
inline LinearMap random_automorphism(std::mt19937_64& rng, Dimension dim, FieldSpec f) {
  std::vector<Scalar> d;
  for (int k = 0; k < dim.n(); ++k) d.push_back(random_nonzero_scalar(rng, f));
  LinearMap l = diagonal_conjugation(dim, d);
  std::vector<BasisIndex> units = basis(dim);
  std::uniform_int_distribution<std::size_t> pick(0, units.size() - 1);
  for (int k = 0; k < 3; ++k) l = l.compose(elementary_conjugation(dim, f, units[pick(rng)], random_scalar(rng, f)));
  return l;
}

}  // namespace testing_support

#endif  // UTN_TESTS_SUPPORT_HPP
