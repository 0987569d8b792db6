#pragma once

// Multi-sorted structures in the signature of the alter ego: sorts X_0..X_n,
// maps g_k: X_k -> X_0 and relations <=^k on X_k and <=^{jk} (j < k, both >= 1).

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "defbil/algebra.hpp"
#include "defbil/bits.hpp"
#include "defbil/closure.hpp"
#include "defbil/errors.hpp"
#include "defbil/homomorphism.hpp"

namespace defbil {

struct MultiSortedStructure {
  int n = 1;
  std::vector<std::vector<std::string>> sorts;      // sorts[k] = names of X_k, k in [0, n]
  std::vector<std::vector<std::size_t>> g;          // g[k]: X_k -> X_0; g[0] is the identity
  std::vector<BitMatrix> rel;                       // rel[k] on X_k
  std::map<std::pair<int, int>, BitMatrix> rel_jk;  // (j, k), 1 <= j < k <= n, X_j x X_k

  std::size_t sort_size(int k) const { return sorts[static_cast<std::size_t>(k)].size(); }
  std::size_t total_size() const {
    std::size_t s = 0;
    for (const auto& v : sorts) s += v.size();
    return s;
  }

  /// <=^{jk} for j <= k, with <=^{kk} = <=^k.
  const BitMatrix& relation(int j, int k) const {
    if (j == k) return rel[static_cast<std::size_t>(k)];
    return rel_jk.at({j, k});
  }
  bool leq(int j, std::size_t x, int k, std::size_t y) const { return relation(j, k)(x, y); }
  std::size_t g_of(int k, std::size_t x) const { return g[static_cast<std::size_t>(k)][x]; }

  /// Shape checks: sorts, g total into X_0 with g_0 = id, relation dimensions.
  void validate() const {
    if (n < 1) throw InvalidInput("multi-sorted structure needs n >= 1");
    const auto N = static_cast<std::size_t>(n) + 1;
    if (sorts.size() != N || g.size() != N || rel.size() != N)
      throw InvalidInput("multi-sorted structure must have n + 1 sorts, maps and relations");
    if (total_size() == 0) throw InvalidInput("multi-sorted structure has every sort empty");
    for (std::size_t k = 0; k < N; ++k) {
      if (g[k].size() != sorts[k].size()) throw InvalidInput("g_" + std::to_string(k) + " is not total");
      for (std::size_t x = 0; x < g[k].size(); ++x) {
        if (g[k][x] >= sorts[0].size()) throw InvalidInput("g_" + std::to_string(k) + " leaves X_0");
        if (k == 0 && g[k][x] != x) throw InvalidInput("g_0 must be the identity");
      }
      if (rel[k].rows() != sorts[k].size() || rel[k].cols() != sorts[k].size())
        throw InvalidInput("relation on sort " + std::to_string(k) + " has wrong shape");
    }
    for (int j = 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) {
        auto it = rel_jk.find({j, k});
        if (it == rel_jk.end()) throw InvalidInput("missing relation " + std::to_string(j) + "," + std::to_string(k));
        if (it->second.rows() != sort_size(j) || it->second.cols() != sort_size(k))
          throw InvalidInput("relation " + std::to_string(j) + "," + std::to_string(k) + " has wrong shape");
      }
    if (rel_jk.size() != static_cast<std::size_t>(n * (n - 1) / 2))
      throw InvalidInput("unexpected relation between sorts");
  }

  friend bool operator==(const MultiSortedStructure&, const MultiSortedStructure&) = default;
};

/// Per-sort maps phi_k: X_k -> Y_k.
using MultiMorphism = std::vector<std::vector<std::size_t>>;

inline bool is_morphism(const MultiMorphism& phi, const MultiSortedStructure& X, const MultiSortedStructure& Y) {
  if (X.n != Y.n || phi.size() != X.sorts.size()) return false;
  for (int k = 0; k <= X.n; ++k) {
    const auto& m = phi[static_cast<std::size_t>(k)];
    if (m.size() != X.sort_size(k)) return false;
    for (std::size_t x = 0; x < m.size(); ++x) {
      if (m[x] >= Y.sort_size(k)) return false;
      if (phi[0][X.g_of(k, x)] != Y.g_of(k, m[x])) return false;
    }
  }
  for (int j = 0; j <= X.n; ++j)
    for (int k = j; k <= X.n; ++k) {
      if (j == 0 && k > 0) continue;
      const auto& R = X.relation(j, k);
      const auto& S = Y.relation(j, k);
      const auto& pj = phi[static_cast<std::size_t>(j)];
      const auto& pk = phi[static_cast<std::size_t>(k)];
      for (std::size_t x = 0; x < R.rows(); ++x) {
        bool ok = true;
        R.row(x).for_each([&](std::size_t y) { ok = ok && S(pj[x], pk[y]); });
        if (!ok) return false;
      }
    }
  return true;
}

namespace detail {

// Backtracking over sorts 0..n, points in index order. With `iso`, maps are
// injective onto equal-sized sorts and reflect every relation.
inline void search_morphisms(const MultiSortedStructure& X, const MultiSortedStructure& Y, bool iso,
                             std::size_t guard, bool first_only, std::vector<MultiMorphism>& out) {
  const int N = X.n;
  MultiMorphism phi(static_cast<std::size_t>(N) + 1);
  std::vector<std::vector<bool>> used(static_cast<std::size_t>(N) + 1);
  for (int k = 0; k <= N; ++k) {
    phi[static_cast<std::size_t>(k)].assign(X.sort_size(k), 0);
    used[static_cast<std::size_t>(k)].assign(Y.sort_size(k), false);
  }
  // the pair (x in sort j, y in sort k), j <= k, both assigned: does phi respect it?
  auto pair_ok = [&](int j, std::size_t x, int k, std::size_t y) {
    const bool a = X.leq(j, x, k, y);
    const bool b = Y.leq(j, phi[static_cast<std::size_t>(j)][x], k, phi[static_cast<std::size_t>(k)][y]);
    return iso ? a == b : (!a || b);
  };
  auto ok_new = [&](int k, std::size_t x) {
    const std::size_t v = phi[static_cast<std::size_t>(k)][x];
    if (phi[0][X.g_of(k, x)] != Y.g_of(k, v)) return false;
    for (std::size_t w = 0; w <= x; ++w)
      if (!pair_ok(k, w, k, x) || !pair_ok(k, x, k, w)) return false;
    if (k >= 1)
      for (int j = 1; j < k; ++j)
        for (std::size_t w = 0; w < X.sort_size(j); ++w)
          if (!pair_ok(j, w, k, x)) return false;
    return true;
  };
  bool stop = false;
  auto go = [&](auto& self, int k, std::size_t x) -> void {
    if (stop) return;
    if (k > N) {
      out.push_back(phi);
      if (out.size() > guard) throw GuardExceeded("morphism enumeration exceeds " + std::to_string(guard));
      if (first_only) stop = true;
      return;
    }
    if (x == X.sort_size(k)) {
      self(self, k + 1, 0);
      return;
    }
    const auto K = static_cast<std::size_t>(k);
    for (std::size_t v = 0; v < Y.sort_size(k) && !stop; ++v) {
      if (iso && used[K][v]) continue;
      phi[K][x] = v;
      if (!ok_new(k, x)) continue;
      used[K][v] = true;
      self(self, k, x + 1);
      used[K][v] = false;
    }
  };
  if (iso)
    for (int k = 0; k <= N; ++k)
      if (X.sort_size(k) != Y.sort_size(k)) return;
  go(go, 0, 0);
}

}  // namespace detail

/// All morphisms X -> Y in lexicographic order (sort 0 first).
inline std::vector<MultiMorphism> enumerate_morphisms(const MultiSortedStructure& X, const MultiSortedStructure& Y,
                                                      std::size_t guard = 1'000'000) {
  if (X.n != Y.n) throw InvalidInput("morphism: structures differ in n");
  std::vector<MultiMorphism> out;
  detail::search_morphisms(X, Y, false, guard, false, out);
  return out;
}

inline std::optional<MultiMorphism> find_multisorted_isomorphism(const MultiSortedStructure& X,
                                                                 const MultiSortedStructure& Y) {
  if (X.n != Y.n) return std::nullopt;
  std::vector<MultiMorphism> out;
  detail::search_morphisms(X, Y, true, 1, true, out);
  if (out.empty()) return std::nullopt;
  return out.front();
}

inline MultiMorphism identity_morphism(const MultiSortedStructure& X) {
  MultiMorphism id(X.sorts.size());
  for (std::size_t k = 0; k < X.sorts.size(); ++k)
    for (std::size_t x = 0; x < X.sorts[k].size(); ++x) id[k].push_back(x);
  return id;
}

inline MultiMorphism compose(const MultiMorphism& psi, const MultiMorphism& phi) {
  MultiMorphism r(phi.size());
  for (std::size_t k = 0; k < phi.size(); ++k)
    for (std::size_t v : phi[k]) r[k].push_back(psi[k][v]);
  return r;
}

/// Pairs (a, b) of M_j x M_k in <=^{jk} (j <= k), as element index pairs.
inline std::vector<std::pair<Elem, Elem>> alter_ego_pairs(int j, int k) {
  if (j == 0 && k == 0) {
    std::vector<std::pair<Elem, Elem>> out;
    for (Elem a = 0; a < 4; ++a) {
      out.emplace_back(a, M0::top);
      if (a != M0::top) out.emplace_back(M0::bot, a);
    }
    out.emplace_back(M0::f, M0::f);
    out.emplace_back(M0::t, M0::t);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  if (j < 1 || k < j) throw InvalidInput("alter ego relation needs 1 <= j <= k or j = k = 0");
  return {{Mk::top, Mk::top}, {Mk::bot, Mk::bot}, {Mk::f, Mk::f}, {Mk::f, Mk::zero},
          {Mk::zero, Mk::zero}, {Mk::t, Mk::t}, {Mk::t, Mk::one}, {Mk::one, Mk::one}};
}

inline BitMatrix alter_ego_relation(int j, int k) {
  BitMatrix m(j == 0 ? 4 : 6, k == 0 ? 4 : 6);
  for (auto [a, b] : alter_ego_pairs(j, k)) m.set(a, b);
  return m;
}

/// The alter ego on M_0 + M_1 + ... + M_n.
inline MultiSortedStructure build_alter_ego(int n) {
  if (n < 1) throw InvalidInput("alter ego needs n >= 1");
  MultiSortedStructure X;
  X.n = n;
  for (int k = 0; k <= n; ++k) {
    X.sorts.push_back(build_mk(n, k).names());
    auto gm = g_map(k);
    X.g.emplace_back(gm.begin(), gm.end());
    X.rel.push_back(alter_ego_relation(k, k));
  }
  for (int j = 1; j <= n; ++j)
    for (int k = j + 1; k <= n; ++k) X.rel_jk.emplace(std::make_pair(j, k), alter_ego_relation(j, k));
  X.validate();
  return X;
}

/// D(A) together with the homomorphisms that make up each sort.
struct NaturalDual {
  MultiSortedStructure structure;
  std::vector<std::vector<ElemMap>> homs;  // homs[k][x]: A -> M_k
};

inline NaturalDual natural_dual(const FiniteAlgebra& A) {
  const int n = A.n();
  if (n < 1) throw InvalidInput("natural dual needs n >= 1");
  auto ms = build_generators(n);
  NaturalDual D;
  auto& X = D.structure;
  X.n = n;
  for (int k = 0; k <= n; ++k) {
    D.homs.push_back(enumerate_homs(A, ms[static_cast<std::size_t>(k)]));
    std::vector<std::string> names;
    for (std::size_t i = 0; i < D.homs.back().size(); ++i)
      names.push_back("x" + std::to_string(k) + "_" + std::to_string(i));
    X.sorts.push_back(std::move(names));
  }
  std::map<ElemMap, std::size_t> index0;
  for (std::size_t i = 0; i < D.homs[0].size(); ++i) index0.emplace(D.homs[0][i], i);
  auto pointwise = [&](int j, int k) {
    BitMatrix m(D.homs[static_cast<std::size_t>(j)].size(), D.homs[static_cast<std::size_t>(k)].size());
    const BitMatrix r = alter_ego_relation(j, k);
    for (std::size_t x = 0; x < m.rows(); ++x)
      for (std::size_t y = 0; y < m.cols(); ++y) {
        const auto& hx = D.homs[static_cast<std::size_t>(j)][x];
        const auto& hy = D.homs[static_cast<std::size_t>(k)][y];
        bool all = true;
        for (Elem a = 0; a < A.size() && all; ++a) all = r(hx[a], hy[a]);
        m.set(x, y, all);
      }
    return m;
  };
  for (int k = 0; k <= n; ++k) {
    const auto gk = g_map(k);
    std::vector<std::size_t> gx;
    for (const auto& h : D.homs[static_cast<std::size_t>(k)]) {
      ElemMap composed(h.size());
      for (std::size_t a = 0; a < h.size(); ++a) composed[a] = gk[h[a]];
      auto it = index0.find(composed);
      if (it == index0.end()) throw InvariantViolation("g_k composed with a hom is not a hom into M_0");
      gx.push_back(it->second);
    }
    X.g.push_back(std::move(gx));
    X.rel.push_back(pointwise(k, k));
  }
  for (int j = 1; j <= n; ++j)
    for (int k = j + 1; k <= n; ++k) X.rel_jk.emplace(std::make_pair(j, k), pointwise(j, k));
  X.validate();
  return D;
}

/// D(u) for a homomorphism u: A -> B, by precomposition, as a map D(B) -> D(A).
inline MultiMorphism dual_morphism(const ElemMap& u, const NaturalDual& DA, const NaturalDual& DB) {
  MultiMorphism phi(DB.homs.size());
  for (std::size_t k = 0; k < DB.homs.size(); ++k) {
    std::map<ElemMap, std::size_t> index;
    for (std::size_t i = 0; i < DA.homs[k].size(); ++i) index.emplace(DA.homs[k][i], i);
    for (const auto& y : DB.homs[k]) {
      ElemMap comp(u.size());
      for (std::size_t a = 0; a < u.size(); ++a) comp[a] = y[u[a]];
      auto it = index.find(comp);
      if (it == index.end()) throw InvariantViolation("precomposition left the hom-set");
      phi[k].push_back(it->second);
    }
  }
  return phi;
}

/// E(X): morphisms X -> alter ego with pointwise operations. A morphism is
/// flattened to the tuple of its values, sort 0 first.
struct HomAlgebra {
  EmbeddedAlgebra<Tuple> algebra;
  std::vector<FiniteAlgebra> generators;
};

inline TupleAlgebra flattened_view(const MultiSortedStructure& X, const std::vector<FiniteAlgebra>& ms) {
  std::vector<const FiniteAlgebra*> factors;
  for (int k = 0; k <= X.n; ++k)
    for (std::size_t x = 0; x < X.sort_size(k); ++x) factors.push_back(&ms[static_cast<std::size_t>(k)]);
  return TupleAlgebra(std::move(factors));
}

inline Tuple flatten(const MultiMorphism& phi) {
  Tuple t;
  for (const auto& m : phi)
    for (auto v : m) t.push_back(static_cast<Elem>(v));
  return t;
}

inline HomAlgebra hom_algebra_E(const MultiSortedStructure& X, std::size_t guard = 100'000) {
  X.validate();
  auto gens = build_generators(X.n);
  auto homs = enumerate_morphisms(X, build_alter_ego(X.n), guard);
  std::vector<Tuple> elems;
  for (const auto& phi : homs) elems.push_back(flatten(phi));
  std::sort(elems.begin(), elems.end());
  auto algebra = materialize(flattened_view(X, gens), std::move(elems));
  return {std::move(algebra), std::move(gens)};
}

struct UnitReport {
  bool ok = false;
  std::size_t algebra_size = 0, dual_algebra_size = 0;
  std::string failure;
};

/// e_A: a -> (x -> x(a)) is an isomorphism A -> E(D(A)).
inline UnitReport verify_unit_iso(const FiniteAlgebra& A, std::size_t guard = 100'000) {
  UnitReport r;
  r.algebra_size = A.size();
  auto D = natural_dual(A);
  auto E = hom_algebra_E(D.structure, guard);
  r.dual_algebra_size = E.algebra.algebra.size();
  std::map<Tuple, Elem> index;
  for (std::size_t i = 0; i < E.algebra.embedding.size(); ++i)
    index.emplace(E.algebra.embedding[i], static_cast<Elem>(i));
  ElemMap e(A.size());
  std::vector<bool> hit(E.algebra.algebra.size(), false);
  for (Elem a = 0; a < A.size(); ++a) {
    Tuple t;
    for (const auto& sort : D.homs)
      for (const auto& x : sort) t.push_back(x[a]);
    auto it = index.find(t);
    if (it == index.end()) {
      r.failure = "evaluation at " + A.name(a) + " is not a morphism";
      return r;
    }
    if (hit[it->second]) {
      r.failure = "evaluation is not injective at " + A.name(a);
      return r;
    }
    hit[it->second] = true;
    e[a] = it->second;
  }
  if (A.size() != E.algebra.algebra.size()) {
    r.failure = "evaluation is not surjective";
    return r;
  }
  if (!is_homomorphism(e, A, E.algebra.algebra)) {
    r.failure = "evaluation is not a homomorphism";
    return r;
  }
  r.ok = true;
  return r;
}

}  // namespace defbil
