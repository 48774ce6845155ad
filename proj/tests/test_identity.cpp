#include <gtest/gtest.h>

#include "oracle.hpp"
#include "support.hpp"

using namespace utn;
using namespace testing_support;

namespace {

oracle::Kind to_oracle(IdentityKind kind) {
  switch (kind) {
    case IdentityKind::Compatible: return oracle::Kind::Compatible;
    case IdentityKind::MatchId: return oracle::Kind::MatchId;
    case IdentityKind::MatchTwelve: return oracle::Kind::MatchTwelve;
    case IdentityKind::Interchangeable: return oracle::Kind::Interchangeable;
    case IdentityKind::TotallyCompatible: return oracle::Kind::TotallyCompatible;
  }
  return oracle::Kind::Compatible;
}

// e13*e34 = e14 and e12*e24 = e14 break both id equations on (e12,e23,e34).
Product id_violator() {
  return table(4, Q(), {{BasisIndex{1, 3}, BasisIndex{3, 4}, BasisIndex{1, 4}},
                        {BasisIndex{1, 2}, BasisIndex{2, 4}, BasisIndex{1, 4}}});
}

bool in_span(const KernelBasis& kb, const Product& p) { return membership(p, kb).has_value(); }

TEST(Kinds, TokensRoundTrip) {
  for (IdentityKind kind : kAllKinds) EXPECT_EQ(parse_kind(kind_token(kind)), kind);
  EXPECT_EQ(kind_token(IdentityKind::MatchTwelve), "12");
  EXPECT_THROW(parse_kind("twelve"), ParseError);
}

TEST(Residual, Examples) {
  EXPECT_TRUE(residual(IdentityKind::Interchangeable, canonical_product(Dimension(3), Q())).holds());
  EXPECT_TRUE(residual(IdentityKind::TotallyCompatible, family("Mid4[3,1]", 3)).holds());
  EXPECT_TRUE(residual(IdentityKind::MatchTwelve, family("M12_2[1]", 3)).holds());
  EXPECT_TRUE(residual(IdentityKind::MatchId, family("Mid1[2,1]", 3)).holds());
  for (IdentityKind kind : kAllKinds) EXPECT_TRUE(residual(kind, Product::from_table(Dimension(4), Q(), {})).holds());
}

TEST(Residual, ReportsNonzeroEntriesInOrder) {
  ResidualReport r = residual(IdentityKind::MatchId, id_violator());
  ASSERT_GE(r.entries.size(), 2u);
  for (const auto& e : r.entries) EXPECT_FALSE(e.value.is_zero());
  for (std::size_t k = 1; k < r.entries.size(); ++k)
    EXPECT_TRUE(std::tie(r.entries[k - 1].triple, r.entries[k - 1].tag) < std::tie(r.entries[k].triple, r.entries[k].tag));
  EXPECT_EQ(residual(IdentityKind::MatchId, id_violator(), 1).entries.size(), 1u);
}

TEST(Residual, AgreesWithDirectMonomials) {
  // (a.b)*c - a.(b*c) and (a*b).c - a*(b.c) evaluated by hand on random products.
  std::mt19937_64 rng(3);
  Dimension d(3);
  Product dotp = canonical_product(d, F(5));
  for (int k = 0; k < 10; ++k) {
    Product p = random_product(rng, d, F(5));
    bool holds = true;
    for (BasisIndex a : basis(d))
      for (BasisIndex b : basis(d))
        for (BasisIndex c : basis(d)) {
          Element x = Element::unit(d, F(5), a), y = Element::unit(d, F(5), b), z = Element::unit(d, F(5), c);
          Element t1 = eval(p, eval(dotp, x, y), z), t2 = eval(dotp, eval(p, x, y), z);
          Element t3 = eval(dotp, x, eval(p, y, z)), t4 = eval(p, x, eval(dotp, y, z));
          if (!(t1 == t3) || !(t2 == t4)) holds = false;
        }
    EXPECT_EQ(satisfies(IdentityKind::MatchId, p), holds);
  }
}

TEST(ConstraintSystem, Shape) {
  ConstraintSystem sys = assemble(IdentityKind::MatchId, Dimension(3), Q());
  EXPECT_EQ(sys.columns, 27u);
  for (const auto& row : sys.rows) EXPECT_FALSE(row.empty());
}

TEST(Kernel, DimensionsAtSmallN) {
  const std::map<IdentityKind, std::vector<std::size_t>> expected = {
      {IdentityKind::MatchId, {8, 22, 43}},
      {IdentityKind::MatchTwelve, {6, 13, 24}},
      {IdentityKind::Interchangeable, {6, 13, 23}},
      {IdentityKind::TotallyCompatible, {4, 10, 17}},
      {IdentityKind::Compatible, {10, 40, 109}},
  };
  for (const auto& [kind, dims] : expected)
    for (int n = 3; n <= 5; ++n)
      for (FieldSpec f : {Q(), F(2), F(5)})
        EXPECT_EQ(dimension(kind, Dimension(n), f), dims[static_cast<std::size_t>(n - 3)])
            << kind_name(kind) << " n=" << n << " " << f.to_string();
}

TEST(Kernel, DimensionsAtSixOverF5) {
  const std::map<IdentityKind, std::size_t> expected = {
      {IdentityKind::MatchId, 71},         {IdentityKind::MatchTwelve, 37},
      {IdentityKind::Interchangeable, 34}, {IdentityKind::TotallyCompatible, 26},
      {IdentityKind::Compatible, 242},
  };
  for (const auto& [kind, dim] : expected) EXPECT_EQ(dimension(kind, Dimension(6), F(5)), dim) << kind_name(kind);
}

TEST(KernelOracle, DenseEliminationAgrees) {
  for (int n = 3; n <= 4; ++n)
    for (IdentityKind kind : kAllKinds)
      for (std::uint64_t p : {2ull, 5ull, 2147483647ull})
        EXPECT_EQ(dimension(kind, Dimension(n), F(p)), oracle::kernel_dimension(to_oracle(kind), n, static_cast<oracle::Int>(p)))
            << kind_name(kind) << " n=" << n << " p=" << p;
}

TEST(KernelOracle, DenseEliminationAgreesAtFive) {
  for (IdentityKind kind : kAllKinds)
    EXPECT_EQ(dimension(kind, Dimension(5), F(7)), oracle::kernel_dimension(to_oracle(kind), 5, 7)) << kind_name(kind);
}

TEST(Kernel, ReducedEchelonShape) {
  for (IdentityKind kind : kAllKinds) {
    KernelBasis kb = kernel(kind, Dimension(4), Q());
    ASSERT_EQ(kb.pivots.size(), kb.vectors.size());
    for (std::size_t k = 1; k < kb.pivots.size(); ++k) EXPECT_LT(kb.pivots[k - 1], kb.pivots[k]);
    for (std::size_t r = 0; r < kb.vectors.size(); ++r) {
      std::map<std::size_t, Scalar> v(kb.vectors[r].begin(), kb.vectors[r].end());
      for (std::size_t k = 0; k < kb.pivots.size(); ++k) {
        auto it = v.find(kb.pivots[k]);
        if (k == r) {
          ASSERT_NE(it, v.end());
          EXPECT_TRUE(it->second.is_one());
        } else {
          EXPECT_EQ(it, v.end());
        }
      }
      EXPECT_EQ(kb.products[r].coordinates(), kb.vectors[r]);
      EXPECT_TRUE(satisfies(kind, kb.products[r]));
    }
  }
}

TEST(Kernel, Deterministic) {
  KernelBasis a = kernel(IdentityKind::MatchTwelve, Dimension(4), Q());
  KernelBasis b = kernel(IdentityKind::MatchTwelve, Dimension(4), Q());
  EXPECT_EQ(a.vectors, b.vectors);
  EXPECT_EQ(a.pivots, b.pivots);
}

TEST(Membership, Examples) {
  KernelBasis kb = kernel(IdentityKind::MatchId, Dimension(3), Q());
  auto coords = membership(family("Mid1[2,1]", 3), kb);
  ASSERT_TRUE(coords.has_value());
  Product rebuilt = Product::from_table(Dimension(3), Q(), {});
  for (std::size_t k = 0; k < coords->size(); ++k) rebuilt = rebuilt + (*coords)[k] * kb.products[k];
  EXPECT_EQ(rebuilt, family("Mid1[2,1]", 3));

  auto zero = membership(Product::from_table(Dimension(3), Q(), {}), kb);
  ASSERT_TRUE(zero.has_value());
  for (const Scalar& c : *zero) EXPECT_TRUE(c.is_zero());

  EXPECT_FALSE(membership(id_violator(), kernel(IdentityKind::MatchId, Dimension(4), Q())));
  EXPECT_THROW(membership(family("Mid1[2,1]", 4), kb), UsageError);
}

TEST(Membership, RandomCombinationsReconstruct) {
  std::mt19937_64 rng(21);
  KernelBasis kb = kernel(IdentityKind::Interchangeable, Dimension(4), F(13));
  for (int k = 0; k < 20; ++k) {
    std::vector<Scalar> c;
    Product p = Product::from_table(Dimension(4), F(13), {});
    for (const Product& b : kb.products) {
      c.push_back(random_scalar(rng, F(13)));
      p = p + c.back() * b;
    }
    auto got = membership(p, kb);
    ASSERT_TRUE(got.has_value());
    EXPECT_EQ(*got, c);
  }
}

TEST(KernelProperty, InclusionChain) {
  for (int n = 3; n <= 5; ++n) {
    Dimension d(n);
    KernelBasis total = kernel(IdentityKind::TotallyCompatible, d, Q());
    KernelBasis compat = kernel(IdentityKind::Compatible, d, Q());
    for (IdentityKind kind : {IdentityKind::MatchId, IdentityKind::MatchTwelve, IdentityKind::Interchangeable}) {
      KernelBasis mid = kernel(kind, d, Q());
      for (const Product& p : total.products) EXPECT_TRUE(in_span(mid, p)) << kind_name(kind) << " n=" << n;
      if (kind == IdentityKind::Interchangeable) continue;  // T1=T2, T3=T4 does not force T1+T2=T3+T4
      for (const Product& p : mid.products) EXPECT_TRUE(in_span(compat, p)) << kind_name(kind) << " n=" << n;
    }
  }
}

TEST(KernelProperty, IdSolutionsOnGeneratorsHaveRestrictedSupport) {
  for (int n = 3; n <= 6; ++n) {
    Dimension d(n);
    KernelBasis kb = kernel(IdentityKind::MatchId, d, Q());
    for (const Product& p : kb.products)
      for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) {
          std::set<BasisIndex> allowed = {{1, j + 1}, {1, n}, {i, n}};
          if (i < j + 1) allowed.insert({i, j + 1});
          Element value = p.at({i, i + 1}, {j, j + 1});
          for (const auto& [e, c] : value.terms())
            EXPECT_TRUE(allowed.count(e)) << "n=" << n << " pair " << i << "," << j << " term " << e.to_string();
        }
  }
}

TEST(KernelProperty, InterchangeableProductsOfDotOrthogonalPairsLieInAnnihilator) {
  for (int n = 3; n <= 6; ++n) {
    Dimension d(n);
    KernelBasis kb = kernel(IdentityKind::Interchangeable, d, Q());
    for (const Product& p : kb.products)
      for (BasisIndex a : basis(d))
        for (BasisIndex b : basis(d)) {
          if (a.j == b.i) continue;
          Element value = p.at(a, b);
          for (const auto& [e, c] : value.terms()) EXPECT_EQ(e, (BasisIndex{1, n})) << "n=" << n;
        }
  }
}

TEST(KernelProperty, InterchangeableFiveExpressionsAgree) {
  std::mt19937_64 rng(31);
  for (int n = 3; n <= 5; ++n) {
    Dimension d(n);
    KernelBasis kb = kernel(IdentityKind::Interchangeable, d, Q());
    for (int k = 0; k < 10; ++k) {
      Product p = random_combination(rng, kb.products);
      Element a = random_element(rng, d, Q()), b = random_element(rng, d, Q());
      Element c = random_element(rng, d, Q()), e = random_element(rng, d, Q());
      Element first = dot(eval(p, a, b), dot(c, e));
      EXPECT_EQ(first, eval(p, dot(a, b), dot(c, e)));
      EXPECT_EQ(first, dot(dot(a, b), eval(p, c, e)));
      EXPECT_EQ(first, eval(p, dot(dot(a, b), c), e));
      EXPECT_EQ(first, eval(p, a, dot(dot(b, c), e)));
    }
  }
}

TEST(GeneratorRestriction, RankEqualsDimension) {
  for (int n = 3; n <= 5; ++n) {
    KernelBasis kb = kernel(IdentityKind::MatchId, Dimension(n), Q());
    EXPECT_EQ(generator_restriction_rank(kb), kb.dimension()) << n;
  }
  EXPECT_THROW(generator_restriction_rank(kernel(IdentityKind::MatchTwelve, Dimension(3), Q())), UsageError);
}

}  // namespace
