#include <gtest/gtest.h>

#include <random>

#include "defbil.hpp"

using namespace defbil;

namespace {

// All sort-respecting maps X -> Y, filtered by a direct reading of the morphism conditions.
std::vector<MultiMorphism> brute_morphisms(const MultiSortedStructure& X, const MultiSortedStructure& Y) {
  std::vector<std::pair<int, std::size_t>> slots;
  for (int k = 0; k <= X.n; ++k)
    for (std::size_t x = 0; x < X.sort_size(k); ++x) slots.emplace_back(k, x);
  for (const auto& [k, x] : slots)
    if (Y.sort_size(k) == 0) return {};
  std::vector<std::size_t> v(slots.size(), 0);
  std::vector<MultiMorphism> out;
  while (true) {
    MultiMorphism phi(X.sorts.size());
    for (std::size_t i = 0; i < slots.size(); ++i) phi[static_cast<std::size_t>(slots[i].first)].push_back(v[i]);
    bool ok = true;
    for (int k = 1; k <= X.n && ok; ++k)
      for (std::size_t x = 0; x < X.sort_size(k) && ok; ++x)
        ok = phi[0][X.g_of(k, x)] == Y.g_of(k, phi[static_cast<std::size_t>(k)][x]);
    for (int j = 0; j <= X.n && ok; ++j)
      for (int k = 0; k <= X.n && ok; ++k) {
        if (j != k && (j == 0 || k == 0 || j > k)) continue;
        for (std::size_t a = 0; a < X.sort_size(j) && ok; ++a)
          for (std::size_t b = 0; b < X.sort_size(k) && ok; ++b)
            if (X.leq(j, a, k, b))
              ok = Y.leq(j, phi[static_cast<std::size_t>(j)][a], k, phi[static_cast<std::size_t>(k)][b]);
      }
    if (ok) out.push_back(phi);
    std::size_t i = v.size();
    while (i > 0 && v[i - 1] + 1 == Y.sort_size(slots[i - 1].first)) v[--i] = 0;
    if (i == 0) break;
    ++v[i - 1];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(AlterEgo, RelationShapes) {
  EXPECT_EQ(alter_ego_pairs(0, 0).size(), 9u);
  EXPECT_EQ(alter_ego_pairs(1, 1).size(), 8u);
  EXPECT_EQ(alter_ego_pairs(1, 3), alter_ego_pairs(2, 2));
  EXPECT_THROW(alter_ego_pairs(2, 1), InvalidInput);
  EXPECT_THROW(alter_ego_pairs(0, 1), InvalidInput);
}

TEST(AlterEgo, SatisfiesEveryAxiom) {
  for (int n = 1; n <= 5; ++n) {
    const auto r = check_axioms(build_alter_ego(n));
    EXPECT_TRUE(r.ok()) << r.summary();
    EXPECT_EQ(r[3].vacuous, n < 2);
    EXPECT_EQ(r[5].vacuous, n < 3);
  }
}

TEST(AlterEgo, RelationsAreSubuniversesOfProducts) {
  const int n = 3;
  for (int j = 0; j <= n; ++j)
    for (int k = j; k <= n; ++k) {
      if (j == 0 && k > 0) continue;
      const auto P = product({build_mk(n, j), build_mk(n, k)});
      Bitset s(P.size());
      for (auto [a, b] : alter_ego_pairs(j, k)) s.set(a * (k == 0 ? 4 : 6) + b);
      EXPECT_EQ(close_subset(P, s), s) << j << "," << k;
    }
}

TEST(NaturalDual, SortsAreHomSets) {
  for (int n = 1; n <= 2; ++n) {
    const auto ms = build_generators(n);
    for (const auto& A : {build_jn(n), ms.back()}) {
      const auto D = natural_dual(A);
      for (int k = 0; k <= n; ++k)
        EXPECT_EQ(D.homs[static_cast<std::size_t>(k)], enumerate_homs(A, ms[static_cast<std::size_t>(k)]));
      EXPECT_TRUE(check_axioms(D.structure).ok());
    }
  }
}

TEST(NaturalDual, FunctorialOnHoms) {
  const int n = 2;
  const auto J = build_jn(n);
  const auto sq = product({J, J});
  const std::vector<Elem> gens{5, 17};
  const auto S = generated_subalgebra(sq, gens).algebra;
  const auto DS = natural_dual(S), DJ = natural_dual(J), DM = natural_dual(build_mk(n, 2));
  for (const auto& u : enumerate_homs(S, J))
    for (const auto& v : enumerate_homs(J, build_mk(n, 2))) {
      ElemMap vu(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) vu[i] = v[u[i]];
      const auto Du = dual_morphism(u, DS, DJ), Dv = dual_morphism(v, DJ, DM);
      EXPECT_TRUE(is_morphism(Du, DJ.structure, DS.structure));
      EXPECT_EQ(dual_morphism(vu, DS, DM), compose(Du, Dv));
    }
  ElemMap id(J.size());
  for (Elem i = 0; i < J.size(); ++i) id[i] = i;
  EXPECT_EQ(dual_morphism(id, DJ, DJ), identity_morphism(DJ.structure));
}

TEST(Morphisms, EnumerationMatchesBruteForce) {
  std::mt19937_64 rng(kDefaultSeed + 5);
  std::vector<MultiSortedStructure> xs;
  for (int i = 0; i < 12; ++i) xs.push_back(random_power_substructure(1 + i % 2, rng, 2));
  for (const auto& X : xs)
    for (const auto& Y : xs) {
      if (X.n != Y.n) continue;
      auto got = enumerate_morphisms(X, Y);
      std::sort(got.begin(), got.end());
      EXPECT_EQ(got, brute_morphisms(X, Y));
    }
}

TEST(Duality, UnitIsIsomorphismOnCorpus) {
  for (const auto& [name, A] : algebra_corpus(4)) {
    const auto r = verify_unit_iso(A);
    EXPECT_TRUE(r.ok) << name << ": " << r.failure;
    EXPECT_EQ(r.algebra_size, r.dual_algebra_size) << name;
  }
}

TEST(Duality, AlterEgoIsDualOfFreeAlgebra) {
  for (int n = 1; n <= 2; ++n) {
    const auto F = free_algebra_one_generator(n);
    EXPECT_TRUE(find_multisorted_isomorphism(natural_dual(F.algebra.algebra).structure, build_alter_ego(n)).has_value());
    EXPECT_EQ(hom_algebra_E(build_alter_ego(n)).algebra.algebra.size(), F.algebra.algebra.size());
  }
}

TEST(Axioms, DetectTargetedViolations) {
  auto X = build_alter_ego(2);
  // drop reflexivity on sort 1: A6
  auto a6 = X;
  a6.rel[1].set(0, 0, false);
  EXPECT_FALSE(check_axioms(a6)[6].holds);
  // relate points with different g-images: A2
  auto a2 = X;
  a2.rel[1].set(Mk::f, Mk::t);
  EXPECT_FALSE(check_axioms(a2)[2].holds);
  // cross-sort pair with different g-images: A3
  auto a3 = X;
  a3.rel_jk.at({1, 2}).set(Mk::f, Mk::one);
  EXPECT_FALSE(check_axioms(a3)[3].holds);
  EXPECT_FALSE(membership_by_separation(a3).ok);
}

TEST(Axioms, A7MethodsAndSeparationAgree) {
  const auto corpus = structure_corpus(150, kDefaultSeed + 6);
  std::size_t in = 0;
  for (const auto& X : corpus) {
    const bool a = check_axioms(X).ok();
    EXPECT_EQ(a, check_axioms(X, A7Method::literal).ok());
    EXPECT_EQ(a, membership_by_separation(X).ok);
    in += a;
  }
  EXPECT_GT(in, 0u);
  EXPECT_LT(in, corpus.size());
}

TEST(Axioms, PowerSubstructuresAreMembers) {
  std::mt19937_64 rng(kDefaultSeed + 7);
  for (int i = 0; i < 40; ++i) {
    const auto X = random_power_substructure(1 + i % 2, rng);
    EXPECT_TRUE(check_axioms(X).ok());
    EXPECT_TRUE(membership_by_separation(X).ok);
  }
}

TEST(Axioms, LeastIncreasingFamilyIsIncreasing) {
  const auto X = build_alter_ego(3);
  for (int j = 1; j <= 3; ++j)
    for (int k = j; k <= 3; ++k)
      for (std::size_t x = 0; x < X.sort_size(j); ++x) {
        const auto U = least_increasing_family(X, j, k, x);
        EXPECT_TRUE(U[0].test(x));  // U[i] is sort j + i
        for (int a = j; a <= k; ++a)
          for (int b = a; b <= k; ++b)
            U[static_cast<std::size_t>(a - j)].for_each([&](std::size_t p) {
              for (std::size_t q = 0; q < X.sort_size(b); ++q)
                if (X.leq(a, p, b, q)) {
                  EXPECT_TRUE(U[static_cast<std::size_t>(b - j)].test(q));
                }
            });
      }
}
