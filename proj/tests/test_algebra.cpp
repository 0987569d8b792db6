#include <gtest/gtest.h>

#include <set>

#include "defbil.hpp"

using namespace defbil;

namespace {

// Exhaustive map scan, independent of the staged search.
std::vector<ElemMap> scan_homs(const FiniteAlgebra& A, const FiniteAlgebra& B) {
  std::vector<ElemMap> out;
  ElemMap m(A.size(), 0);
  auto ok = [&] {
    for (std::size_t c = 0; c < A.signature().constant_count(); ++c)
      if (m[A.constant(c)] != B.constant(c)) return false;
    for (Elem x = 0; x < A.size(); ++x) {
      if (m[A.neg(x)] != B.neg(m[x])) return false;
      for (Elem y = 0; y < A.size(); ++y)
        for (BinaryOp op : kBinaryOps)
          if (m[A.apply(op, x, y)] != B.apply(op, m[x], m[y])) return false;
    }
    return true;
  };
  while (true) {
    if (ok()) out.push_back(m);
    std::size_t i = m.size();
    while (i > 0 && m[i - 1] + 1 == B.size()) m[--i] = 0;
    if (i == 0) return out;
    ++m[i - 1];
  }
}

bool closed(const FiniteAlgebra& A, const Bitset& s) {
  for (std::size_t c = 0; c < A.signature().constant_count(); ++c)
    if (!s.test(A.constant(c))) return false;
  bool ok = true;
  s.for_each([&](std::size_t x) {
    if (!s.test(A.neg(static_cast<Elem>(x)))) ok = false;
    s.for_each([&](std::size_t y) {
      for (BinaryOp op : kBinaryOps)
        if (!s.test(A.apply(op, static_cast<Elem>(x), static_cast<Elem>(y)))) ok = false;
    });
  });
  return ok;
}

std::vector<FiniteAlgebra> small_algebras() {
  std::vector<FiniteAlgebra> out;
  for (int n = 0; n <= 3; ++n) {
    for (auto& M : build_generators(n)) out.push_back(M);
    out.push_back(build_jn(n));
  }
  return out;
}

}  // namespace

TEST(Jn, HasTwoNPlusFourElements) {
  for (int n = 0; n <= 8; ++n) EXPECT_EQ(build_jn(n).size(), static_cast<std::size_t>(2 * n + 4));
}

TEST(Mk, SizesAndNames) {
  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k <= n; ++k) {
      const auto M = build_mk(n, k);
      EXPECT_EQ(M.size(), k == 0 ? 4u : 6u);
      EXPECT_EQ(M.name(0), "bot" + std::to_string(k));
    }
  EXPECT_THROW(build_mk(2, 3), InvalidInput);
  EXPECT_THROW(build_mk(2, -1), InvalidInput);
}

TEST(Mk, TruthAndKnowledgeOrders) {
  const auto M = build_mk(3, 2);
  // 0 < f < {top, bot} < t < 1
  EXPECT_TRUE(M.leq_t(Mk::zero, Mk::f));
  EXPECT_TRUE(M.leq_t(Mk::f, Mk::top) && M.leq_t(Mk::f, Mk::bot));
  EXPECT_FALSE(M.leq_t(Mk::top, Mk::bot) || M.leq_t(Mk::bot, Mk::top));
  EXPECT_TRUE(M.leq_t(Mk::top, Mk::t) && M.leq_t(Mk::t, Mk::one));
  // bot < f < 0 < top and bot < t < 1 < top
  EXPECT_TRUE(M.leq_k(Mk::bot, Mk::f) && M.leq_k(Mk::f, Mk::zero) && M.leq_k(Mk::zero, Mk::top));
  EXPECT_TRUE(M.leq_k(Mk::t, Mk::one) && M.leq_k(Mk::one, Mk::top));
  EXPECT_FALSE(M.leq_k(Mk::f, Mk::t) || M.leq_k(Mk::zero, Mk::one));
}

TEST(Mk, DefaultConstantsFollowPriority) {
  const int n = 3;
  const SignatureN sig{n};
  for (int k = 1; k <= n; ++k) {
    const auto M = build_mk(n, k);
    for (int i = 0; i <= n; ++i) {
      EXPECT_EQ(M.constant(sig.f(i)), i < k ? Mk::zero : Mk::f);
      EXPECT_EQ(M.constant(sig.t(i)), i < k ? Mk::one : Mk::t);
    }
  }
}

TEST(Bilattice, LawsHoldOnGenerators) {
  for (const auto& A : small_algebras()) EXPECT_FALSE(check_bilattice_laws(A).has_value()) << A.name(0);
}

TEST(Bilattice, NegationIsInvolutionReversingTruthPreservingKnowledge) {
  for (const auto& A : small_algebras())
    for (Elem a = 0; a < A.size(); ++a) {
      EXPECT_EQ(A.neg(A.neg(a)), a);
      for (Elem b = 0; b < A.size(); ++b) {
        EXPECT_EQ(A.leq_t(a, b), A.leq_t(A.neg(b), A.neg(a)));
        EXPECT_EQ(A.leq_k(a, b), A.leq_k(A.neg(a), A.neg(b)));
      }
    }
}

TEST(Bilattice, LawCheckerRejectsBrokenNegation) {
  const auto M = build_mk(1, 1);
  std::vector<Elem> neg = M.neg_table();
  std::swap(neg[Mk::f], neg[Mk::t]);
  neg[Mk::bot] = Mk::top;
  std::array<std::vector<Elem>, 4> tables = {M.table(BinaryOp::meet_t), M.table(BinaryOp::join_t),
                                             M.table(BinaryOp::meet_k), M.table(BinaryOp::join_k)};
  const FiniteAlgebra broken(1, M.names(), tables, neg, M.constants());
  EXPECT_TRUE(check_bilattice_laws(broken).has_value());
}

TEST(Homs, StagedSearchMatchesExhaustiveScan) {
  for (int n = 1; n <= 2; ++n) {
    std::vector<FiniteAlgebra> as = build_generators(n);
    as.push_back(build_jn(n));
    for (const auto& A : as)
      for (const auto& B : as) EXPECT_EQ(enumerate_homs(A, B), scan_homs(A, B));
  }
}

TEST(Homs, GkIsTheOnlyHomIntoM0) {
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k <= n; ++k) {
      const auto homs = enumerate_homs(build_mk(n, k), build_mk(n, 0));
      ASSERT_EQ(homs.size(), 1u);
      EXPECT_EQ(homs[0], g_map(k));
    }
}

TEST(Homs, SignatureMismatchThrows) {
  EXPECT_THROW(enumerate_homs(build_jn(1), build_jn(2)), InvalidInput);
}

TEST(Closure, GeneratedSubalgebraIsLeastClosedSuperset) {
  const auto J = build_jn(2);
  const auto sq = product({J, J});
  for (Elem g = 0; g < sq.size(); g += 7) {
    const std::vector<Elem> gens{g};
    const auto sub = generated_subalgebra(sq, gens);
    Bitset s(sq.size());
    for (Elem e : sub.embedding) s.set(e);
    EXPECT_TRUE(closed(sq, s));
    EXPECT_TRUE(s.test(g));
    EXPECT_EQ(close_subset(sq, s), s);
    Bitset seed(sq.size());
    seed.set(g);
    EXPECT_EQ(close_subset(sq, seed), s);
  }
}

TEST(Closure, ProductProjectionsAreHoms) {
  const auto A = build_mk(2, 1), B = build_mk(2, 2);
  const auto P = product({A, B});
  ASSERT_EQ(P.size(), A.size() * B.size());
  ElemMap p1(P.size()), p2(P.size());
  for (Elem i = 0; i < P.size(); ++i) {
    p1[i] = static_cast<Elem>(i / B.size());
    p2[i] = static_cast<Elem>(i % B.size());
  }
  EXPECT_TRUE(is_homomorphism(p1, P, A));
  EXPECT_TRUE(is_homomorphism(p2, P, B));
}

TEST(Closure, ProductGuard) {
  const auto J = build_jn(3);
  EXPECT_THROW(product({J, J, J, J, J}), GuardExceeded);
}

TEST(Subuniverses, MatchBruteForceOnSmallAlgebras) {
  const std::vector<FiniteAlgebra> as = {build_mk(1, 0), build_mk(1, 1), build_mk(2, 2),
                                         product({build_mk(1, 0), build_mk(1, 0)})};
  for (const auto& A : as) {
    std::set<Bitset> brute;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << A.size()); ++mask) {
      Bitset s(A.size());
      for (std::size_t i = 0; i < A.size(); ++i)
        if (mask >> i & 1U) s.set(i);
      if (closed(A, s)) brute.insert(s);
    }
    const auto S = enumerate_subuniverses(A);
    EXPECT_EQ(std::set<Bitset>(S.members.begin(), S.members.end()), brute);
    for (std::size_t i = 0; i < S.size(); ++i) {
      Bitset meet = Bitset::full(A.size());
      std::size_t supersets = 0;
      for (const auto& t : S.members)
        if (t != S.members[i] && S.members[i].is_subset_of(t)) {
          meet &= t;
          ++supersets;
        }
      EXPECT_EQ(static_cast<bool>(S.meet_irreducible[i]), supersets > 0 && meet != S.members[i]);
    }
  }
}

TEST(Lattice, ReductsAreDistributiveBoundedLattices) {
  for (const auto& A : small_algebras()) {
    const auto L = lattice_reduct(A);
    EXPECT_FALSE(check_bounded_lattice(L).has_value());
    EXPECT_FALSE(distributivity_failure(L).has_value());
  }
}

TEST(Lattice, DetectsN5) {
  // 0 < a < b < 1, 0 < c < 1
  const auto leq = detail::order_from_covers(5, {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}});
  auto [m, j] = detail::lattice_tables(leq, "N5");
  BoundedLattice L{{"0", "a", "b", "c", "1"}, m, j, 0, 4};
  EXPECT_FALSE(check_bounded_lattice(L).has_value());
  EXPECT_TRUE(distributivity_failure(L).has_value());
  EXPECT_THROW(priestley_dual_of_lattice(L), InvalidInput);
}

TEST(Lattice, NonLatticeOrderRejected) {
  // two incomparable maxima
  const auto leq = detail::order_from_covers(3, {{0, 1}, {0, 2}});
  EXPECT_THROW(detail::lattice_tables(leq, "V"), InvalidInput);
}
