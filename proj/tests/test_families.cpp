#include <gtest/gtest.h>

#include "support.hpp"

using namespace utn;
using namespace testing_support;

namespace {

const BasisIndex e12{1, 2}, e13{1, 3}, e23{2, 3};

std::vector<std::string> names(const std::vector<FamilyId>& ids) {
  std::vector<std::string> out;
  for (const auto& id : ids) out.push_back(id.to_string());
  return out;
}

TEST(Families, Examples) {
  EXPECT_EQ(family("Mid1[2,1]", 3), table(3, Q(), {{e12, e12, e12}, {e12, e13, e13}}));
  BasisIndex e14{1, 4}, e34{3, 4};
  EXPECT_EQ(family("I3[1]", 4), table(4, Q(), {{e13, e34, e14}, {e12, e23, e13}}));
  EXPECT_EQ(family("T2", 3), table(3, Q(), {{e12, e23, e13}}));
  EXPECT_EQ(family("T2", 3), family("T1[2,2]", 3));
}

TEST(Families, IdListAtThree) {
  std::vector<Product> expected = {
      table(3, Q(), {{e12, e12, e12}, {e12, e13, e13}}),  // Mid1[2,1]
      table(3, Q(), {{e12, e23, e13}}),                   // Mid1[2,2]
      table(3, Q(), {{e23, e12, e12}, {e23, e13, e13}}),  // Mid1[3,1]
      table(3, Q(), {{e23, e23, e13}}),                   // Mid1[3,2]
      table(3, Q(), {{e12, e12, e13}}),                   // Mid2[2,1]
      table(3, Q(), {{e13, e12, e13}, {e23, e12, e23}}),  // Mid2[3,1]
      table(3, Q(), {{e13, e23, e13}, {e23, e23, e23}}),  // Mid2[3,2]
      table(3, Q(), {{e23, e12, e13}}),                   // Mid4[3,1]
  };
  EXPECT_EQ(family_basis(IdentityKind::MatchId, Dimension(3), Q()), expected);
  EXPECT_EQ(names(family_ids(IdentityKind::MatchId, Dimension(3))),
            (std::vector<std::string>{"Mid1[2,1]", "Mid1[2,2]", "Mid1[3,1]", "Mid1[3,2]", "Mid2[2,1]", "Mid2[3,1]",
                                      "Mid2[3,2]", "Mid4[3,1]"}));
}

TEST(Families, TwelveListAtThree) {
  std::vector<Product> expected = {
      table(3, Q(), {{e12, e12, e13}}), table(3, Q(), {{e12, e23, e13}}),
      table(3, Q(), {{e23, e12, e13}}), table(3, Q(), {{e23, e23, e13}}),
      table(3, Q(), {{e12, e12, e12}, {e12, e23, e23}}),  // M12_2[1]
      table(3, Q(), {{e12, e23, e12}, {e23, e23, e23}}),  // M12_2[2]
  };
  EXPECT_EQ(family_basis(IdentityKind::MatchTwelve, Dimension(3), Q()), expected);
}

TEST(Families, InterchangeableListAtThree) {
  std::vector<Product> expected = {
      table(3, Q(), {{e12, e12, e13}}), table(3, Q(), {{e12, e23, e13}}),
      table(3, Q(), {{e23, e12, e13}}), table(3, Q(), {{e23, e23, e13}}),
      table(3, Q(), {{e12, e13, e13}, {e12, e23, e23}}),  // I2[1]
      table(3, Q(), {{e13, e23, e13}, {e12, e23, e12}}),  // I3[1]
  };
  EXPECT_EQ(family_basis(IdentityKind::Interchangeable, Dimension(3), Q()), expected);
}

TEST(Families, ExpectedCounts) {
  EXPECT_EQ(expected_count(IdentityKind::MatchId, Dimension(3)), 8u);
  EXPECT_EQ(expected_count(IdentityKind::MatchId, Dimension(6)), 71u);
  EXPECT_EQ(expected_count(IdentityKind::MatchTwelve, Dimension(4)), 13u);
  EXPECT_EQ(expected_count(IdentityKind::MatchTwelve, Dimension(5)), 24u);
  EXPECT_EQ(expected_count(IdentityKind::Interchangeable, Dimension(5)), 23u);
  EXPECT_EQ(expected_count(IdentityKind::TotallyCompatible, Dimension(3)), 4u);
  EXPECT_EQ(expected_count(IdentityKind::TotallyCompatible, Dimension(4)), 10u);
  EXPECT_THROW(expected_count(IdentityKind::Compatible, Dimension(3)), UsageError);
  EXPECT_THROW(family_ids(IdentityKind::Compatible, Dimension(3)), UsageError);
  for (IdentityKind kind : {IdentityKind::MatchId, IdentityKind::MatchTwelve, IdentityKind::Interchangeable,
                            IdentityKind::TotallyCompatible})
    for (int n = 3; n <= 8; ++n) EXPECT_EQ(family_ids(kind, Dimension(n)).size(), expected_count(kind, Dimension(n)));
}

TEST(Families, InvalidIndicesNameTheRestriction) {
  auto message = [](const std::string& name, int n) -> std::string {
    try {
      family(name, n);
    } catch (const UsageError& e) {
      return e.what();
    }
    return "";
  };
  EXPECT_NE(message("Mid2[2,2]", 3).find("(i,j) != (2,n-1)"), std::string::npos);
  EXPECT_NE(message("Mid3[3,2]", 3).find("2<i<=j+1<n"), std::string::npos);
  EXPECT_NE(message("Mid4[3,2]", 3).find("1<=j<n-1"), std::string::npos);
  EXPECT_NE(message("M12_3[1,3]", 5).find("j>i+2"), std::string::npos);
  EXPECT_NE(message("M12_4", 3).find("n>=4"), std::string::npos);
  EXPECT_NE(message("I2[3]", 4).find("1<=i<n-1"), std::string::npos);
  EXPECT_NE(message("Mid1[1,1]", 4).find("1<i<=n"), std::string::npos);
  EXPECT_EQ(message("Mid1[2,1]", 4), "");
}

TEST(Families, NoMid3AtThree) {
  for (const FamilyId& id : family_ids(IdentityKind::MatchId, Dimension(3))) EXPECT_NE(id.series, Series::Mid3);
}

TEST(Families, NamesRoundTrip) {
  for (IdentityKind kind : {IdentityKind::MatchId, IdentityKind::MatchTwelve, IdentityKind::Interchangeable,
                            IdentityKind::TotallyCompatible})
    for (const FamilyId& id : family_ids(kind, Dimension(6))) EXPECT_EQ(FamilyId::parse(id.to_string()), id);
  EXPECT_EQ(FamilyId::parse("M12_2[3]").to_string(), "M12_2[3]");
  EXPECT_EQ(FamilyId::parse("T2").indices.size(), 0u);
  for (const char* bad : {"", "Mid5[1,1]", "Mid1", "Mid1[2]", "Mid1[2,1", "Mid1[2,]", "Mid1[a,1]", "T2[1]", "I4[]",
                          "M12_2[1,2]", "mid1[2,1]", "Mid1[-2,1]"})
    EXPECT_THROW(FamilyId::parse(bad), ParseError) << bad;
}

TEST(Families, OrderedAndDistinct) {
  for (int n = 3; n <= 6; ++n)
    for (IdentityKind kind : {IdentityKind::MatchId, IdentityKind::MatchTwelve, IdentityKind::Interchangeable,
                              IdentityKind::TotallyCompatible}) {
      std::vector<Product> ps = family_basis(kind, Dimension(n), Q());
      for (std::size_t a = 0; a < ps.size(); ++a)
        for (std::size_t b = a + 1; b < ps.size(); ++b) EXPECT_FALSE(ps[a] == ps[b]);
    }
  std::vector<std::string> ids = names(family_ids(IdentityKind::MatchTwelve, Dimension(5)));
  EXPECT_EQ(ids.front(), "M12_1[2,1]");
  EXPECT_EQ(ids.back(), "M12_4");
}

TEST(FamilyCoincidences, SmallDimensions) {
  EXPECT_EQ(family("M12_4", 4), family("M12_2[2]", 4));
  EXPECT_EQ(family("I4", 4), family("I2[2]", 4) + family("I3[1]", 4));
  EXPECT_FALSE(family("I4", 4) == family("I2[2]", 4) + family("I3[2]", 4));
  EXPECT_EQ(family("I4", 3), family("I1[2,2]", 3));
  EXPECT_EQ(family("T2", 3), family("T1[2,2]", 3));
  for (int n = 3; n <= 6; ++n) {
    // The excluded Mid2[2,n-1] would be e12 * e_{n-1,n} = e_{1n}.
    Product mid2 = table(n, Q(), {{BasisIndex{1, 2}, BasisIndex{n - 1, n}, BasisIndex{1, n}}});
    EXPECT_EQ(family("Mid1[2," + std::to_string(n - 1) + "]", n), mid2) << n;
  }
  for (int n = 4; n <= 6; ++n)
    for (int i = 1; i + 2 <= n; ++i) {
      // The excluded M12_3[i,i+2] would be e_{i,i+1} * e_{i+1,i+2} = e_{1n}.
      Product m3 = table(n, Q(), {{BasisIndex{i, i + 1}, BasisIndex{i + 1, i + 2}, BasisIndex{1, n}}});
      EXPECT_EQ(family("M12_1[" + std::to_string(i + 1) + "," + std::to_string(i + 1) + "]", n), m3);
    }
}

TEST(FamilyProperty, MembersSolveTheirIdentity) {
  for (int n = 3; n <= 6; ++n)
    for (IdentityKind kind : {IdentityKind::MatchId, IdentityKind::MatchTwelve, IdentityKind::Interchangeable,
                              IdentityKind::TotallyCompatible})
      for (const FamilyId& id : family_ids(kind, Dimension(n)))
        EXPECT_TRUE(residual(kind, make_family(id, Dimension(n), Q())).holds()) << id.to_string() << " n=" << n;
}

TEST(FamilyProperty, SpanEqualsKernel) {
  for (int n = 3; n <= 5; ++n)
    for (IdentityKind kind : {IdentityKind::MatchId, IdentityKind::MatchTwelve, IdentityKind::Interchangeable,
                              IdentityKind::TotallyCompatible}) {
      Dimension d(n);
      std::vector<Product> ps = family_basis(kind, d, Q());
      KernelBasis kb = kernel(kind, d, Q());
      EchelonBasis echelon;
      for (const Product& p : ps) EXPECT_TRUE(echelon.insert(p.coordinates()));
      EXPECT_EQ(echelon.rank(), kb.dimension());
      for (const Product& p : ps) EXPECT_TRUE(membership(p, kb).has_value());
      for (const Product& p : kb.products) EXPECT_TRUE(echelon.reduce(p.coordinates()).empty());
    }
}

TEST(FamilyProperty, TotallyCompatibleCombinationsAreAssociative) {
  std::mt19937_64 rng(5);
  for (int n = 3; n <= 5; ++n) {
    std::vector<Product> ps = family_basis(IdentityKind::TotallyCompatible, Dimension(n), Q());
    for (int k = 0; k < 20; ++k) {
      Product p = random_combination(rng, ps);
      EXPECT_TRUE(is_associative(p).associative);
      EXPECT_TRUE(residual(IdentityKind::TotallyCompatible, p).holds());
    }
  }
}

TEST(TripleConstructor, ReproducesMidSeries) {
  for (int n = 3; n <= 6; ++n) {
    Dimension d(n);
    for (int i = 2; i <= n; ++i)
      for (int j = 1; j < n; ++j) {
        auto u = [&](int r, int s) { return Element::unit(d, Q(), {r, s}); };
        auto check = [&](Series s, const Element& c) {
          FamilyId id{s, {i, j}};
          if (!family_valid(id, d)) return;
          EXPECT_EQ(product_from_triple(d, i, j, c), make_family(id, d, Q())) << id.to_string() << " n=" << n;
        };
        check(Series::Mid1, u(1, j + 1));
        check(Series::Mid2, u(i - 1, n));
        if (i - 1 < j + 1) check(Series::Mid3, u(i - 1, j + 1));
        check(Series::Mid4, u(1, n));
      }
  }
}

TEST(TripleConstructor, EdgeCases) {
  Dimension d(4);
  EXPECT_TRUE(product_from_triple(d, 2, 1, Element(d, Q())).is_zero());
  EXPECT_THROW(product_from_triple(d, 1, 1, unit(4, Q(), 1, 4)), UsageError);
  EXPECT_THROW(product_from_triple(d, 2, 4, unit(4, Q(), 1, 4)), UsageError);
  EXPECT_THROW(product_from_triple(d, 2, 1, unit(3, Q(), 1, 3)), UsageError);
}

}  // namespace
