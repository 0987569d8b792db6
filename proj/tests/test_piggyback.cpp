#include <gtest/gtest.h>

#include "defbil.hpp"

using namespace defbil;

TEST(Carriers, AreLatticeHomsAndSeparate) {
  for (int n = 1; n <= 4; ++n) {
    const auto cs = build_carriers(n);
    EXPECT_EQ(cs.size(), static_cast<std::size_t>(2 * (n + 1)));
    for (const auto& w : cs) {
      const auto L = lattice_reduct(build_mk(n, w.sort));
      EXPECT_TRUE(is_hom_to_two(L, w.map)) << w.name();
    }
    EXPECT_TRUE(check_sep(n));
  }
}

TEST(Carriers, DroppingOneBreaksSeparation) {
  const int n = 2;
  const auto cs = build_carriers(n);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    auto fewer = cs;
    fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
    EXPECT_TRUE(sep_failure(n, fewer).has_value()) << cs[i].name();
  }
}

TEST(SRelations, TwoDescriptionsAgree) {
  for (int j = 0; j <= 3; ++j)
    for (int k = 0; k <= 3; ++k) {
      const auto a = build_S_relations(j, k);
      const auto b = explicit_S_relations(j, k);
      EXPECT_EQ(a.first, b.first) << j << k;
      EXPECT_EQ(a.second, b.second) << j << k;
      EXPECT_EQ(a.first.converse(), build_S_relations(k, j).second);
    }
}

TEST(SRelations, AreSubuniverses) {
  SubuniverseCache cache(3);
  for (int j = 0; j <= 3; ++j)
    for (int k = 0; k <= 3; ++k) {
      const auto [le, ge] = build_S_relations(j, k);
      EXPECT_TRUE(cache.get(j, k).contains(le.pairs));
      EXPECT_TRUE(cache.get(j, k).contains(ge.pairs));
    }
}

TEST(RelationTable, MatchesAtSeveralN) {
  for (int n = 1; n <= 4; ++n) {
    const auto rows = relation_table(n);
    EXPECT_EQ(rows.size(), static_cast<std::size_t>(4 * (n + 1) * (n + 1)));
    for (const auto& r : rows) EXPECT_TRUE(r.matches()) << r.w1.name() << "," << r.w2.name();
  }
}

TEST(RelationTable, OffDiagonalPairsNeverBothNonempty) {
  const auto rows = relation_table(3);
  const std::size_t m = 8;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      const auto& x = rows[a * m + b];
      const auto& y = rows[b * m + a];
      if (x.w1.sort == x.w2.sort) continue;
      EXPECT_TRUE(x.computed.empty() || y.computed.empty()) << x.w1.name() << "," << x.w2.name();
    }
}

TEST(Subuniverses, FamilySizesMeetIrreduciblesAndBottoms) {
  SubuniverseCache cache(3);
  for (int j = 0; j <= 3; ++j)
    for (int k = 0; k <= 3; ++k) {
      const std::size_t want = (j == 0 && k == 0) ? 4 : (j == 0 || k == 0) ? 4 : (j == k) ? 7 : 5;
      EXPECT_EQ(cache.get(j, k).size(), want) << j << k;
      EXPECT_EQ(meet_irreducible_names(cache, j, k), expected_meet_irreducibles(j, k)) << j << k;
      EXPECT_EQ(subuniverse_bottom(cache, j, k), expected_bottom(j, k)) << j << k;
    }
}

TEST(Catalogue, UnknownRelationThrows) {
  SortedRelation r{1, 1, Bitset(36)};
  r.pairs.set(0);
  EXPECT_THROW(relation_name(r), InvariantViolation);
}

TEST(CarrierSpace, EtaIsIsomorphismOnCorpus) {
  for (const auto& [name, A] : algebra_corpus(5)) {
    const auto r = verify_piggyback_iso(A);
    EXPECT_TRUE(r.ok()) << name << ": " << r.failure;
  }
  const auto F = free_algebra_one_generator(1);
  EXPECT_TRUE(verify_piggyback_iso(F.algebra.algebra).ok());
}

TEST(CarrierSpace, PointCountIsTwiceTheDual) {
  const auto A = build_jn(2);
  const auto Y = build_carrier_space(A);
  EXPECT_EQ(Y.order.size(), 2 * Y.dual.structure.total_size());
}
