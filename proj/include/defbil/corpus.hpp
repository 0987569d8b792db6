#pragma once

// Seeded test corpora: algebras, multi-sorted structures, posets.

#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "defbil/algebra.hpp"
#include "defbil/closure.hpp"
#include "defbil/multisorted.hpp"
#include "defbil/poset.hpp"

namespace defbil {

inline constexpr std::uint64_t kDefaultSeed = 20200601;

/// Uniform draw from [0, bound) that is identical across standard libraries.
inline std::size_t draw(std::mt19937_64& rng, std::size_t bound) { return static_cast<std::size_t>(rng() % bound); }

/// Subalgebras of J_n x J_n generated by one or two random pairs. Generator
/// sets that repeat an earlier carrier are skipped, so results are distinct.
inline std::vector<FiniteAlgebra> sampled_subalgebras_of_square(int n, std::size_t count, std::uint64_t seed) {
  const auto J = build_jn(n);
  const auto sq = product({J, J});
  std::mt19937_64 rng(seed);
  std::vector<FiniteAlgebra> out;
  std::set<std::vector<Elem>> seen;
  for (std::size_t attempt = 0; out.size() < count && attempt < 50 * count; ++attempt) {
    std::vector<Elem> gens{static_cast<Elem>(draw(rng, sq.size()))};
    if (draw(rng, 2) == 1) gens.push_back(static_cast<Elem>(draw(rng, sq.size())));
    auto sub = generated_subalgebra(sq, gens);
    if (!seen.insert(sub.embedding).second && attempt < 10 * count) continue;
    out.push_back(std::move(sub.algebra));
  }
  return out;
}

/// M_0..M_n and J_n for n in {1, 2}.
inline std::vector<std::pair<std::string, FiniteAlgebra>> base_algebras() {
  std::vector<std::pair<std::string, FiniteAlgebra>> out;
  for (int n = 1; n <= 2; ++n) {
    for (int k = 0; k <= n; ++k) out.emplace_back("M" + std::to_string(k) + " (n=" + std::to_string(n) + ")", build_mk(n, k));
    out.emplace_back("J" + std::to_string(n), build_jn(n));
  }
  return out;
}

/// M_0..M_n and J_n at one n, plus `samples` seeded subalgebras of J_n^2.
inline std::vector<std::pair<std::string, FiniteAlgebra>> algebras_for(int n, std::size_t samples, std::uint64_t seed) {
  std::vector<std::pair<std::string, FiniteAlgebra>> out;
  for (int k = 0; k <= n; ++k) out.emplace_back("M" + std::to_string(k), build_mk(n, k));
  out.emplace_back("J" + std::to_string(n), build_jn(n));
  auto subs = sampled_subalgebras_of_square(n, samples, seed);
  for (std::size_t i = 0; i < subs.size(); ++i)
    out.emplace_back("sub" + std::to_string(i) + "(J" + std::to_string(n) + "^2)", std::move(subs[i]));
  return out;
}

/// Base algebras plus `per_square` sampled subalgebras of each J_n^2.
inline std::vector<std::pair<std::string, FiniteAlgebra>> algebra_corpus(std::size_t per_square = 4,
                                                                         std::uint64_t seed = kDefaultSeed) {
  auto out = base_algebras();
  for (int n = 1; n <= 2; ++n) {
    auto subs = sampled_subalgebras_of_square(n, per_square, seed + static_cast<std::uint64_t>(n));
    for (std::size_t i = 0; i < subs.size(); ++i)
      out.emplace_back("sub" + std::to_string(i) + "(J" + std::to_string(n) + "^2)", std::move(subs[i]));
  }
  return out;
}

namespace detail {

inline BitMatrix pointwise_relation(const std::vector<std::vector<Elem>>& xs, const std::vector<std::vector<Elem>>& ys,
                                    const BitMatrix& r) {
  BitMatrix m(xs.size(), ys.size());
  for (std::size_t a = 0; a < xs.size(); ++a)
    for (std::size_t b = 0; b < ys.size(); ++b) {
      bool all = true;
      for (std::size_t s = 0; s < xs[a].size() && all; ++s) all = r(xs[a][s], ys[b][s]);
      m.set(a, b, all);
    }
  return m;
}

}  // namespace detail

/// A substructure of a power of the alter ego with exponent 1 or 2 and at most
/// `max_sort` points per sort.
inline MultiSortedStructure random_power_substructure(int n, std::mt19937_64& rng, std::size_t max_sort = 3) {
  const std::size_t S = 1 + draw(rng, 2);
  std::vector<std::vector<std::vector<Elem>>> pts(static_cast<std::size_t>(n) + 1);
  auto random_tuple = [&](int k) {
    std::vector<Elem> t(S);
    for (auto& v : t) v = static_cast<Elem>(draw(rng, k == 0 ? 4 : 6));
    return t;
  };
  auto add_unique = [](std::vector<std::vector<Elem>>& v, std::vector<Elem> t) {
    for (const auto& u : v)
      if (u == t) return false;
    v.push_back(std::move(t));
    return true;
  };
  const std::size_t want0 = 1 + draw(rng, max_sort);
  for (std::size_t tries = 0; pts[0].size() < want0 && tries < 50; ++tries) add_unique(pts[0], random_tuple(0));
  for (int k = 1; k <= n; ++k) {
    const auto gk = g_map(k);
    const std::size_t want = draw(rng, max_sort + 1);
    for (std::size_t tries = 0; pts[static_cast<std::size_t>(k)].size() < want && tries < 200; ++tries) {
      auto t = random_tuple(k);
      std::vector<Elem> img(S);
      for (std::size_t s = 0; s < S; ++s) img[s] = gk[t[s]];
      bool inside = false;
      for (const auto& u : pts[0]) inside = inside || u == img;
      if (inside) add_unique(pts[static_cast<std::size_t>(k)], std::move(t));
    }
  }
  MultiSortedStructure X;
  X.n = n;
  for (int k = 0; k <= n; ++k) {
    const auto K = static_cast<std::size_t>(k);
    const auto gk = g_map(k);
    std::vector<std::string> names;
    std::vector<std::size_t> g;
    for (std::size_t i = 0; i < pts[K].size(); ++i) {
      names.push_back("p" + std::to_string(k) + "_" + std::to_string(i));
      std::vector<Elem> img(S);
      for (std::size_t s = 0; s < S; ++s) img[s] = gk[pts[K][i][s]];
      for (std::size_t z = 0; z < pts[0].size(); ++z)
        if (pts[0][z] == img) g.push_back(z);
    }
    X.sorts.push_back(std::move(names));
    X.g.push_back(std::move(g));
    X.rel.push_back(detail::pointwise_relation(pts[K], pts[K], alter_ego_relation(k, k)));
  }
  for (int j = 1; j <= n; ++j)
    for (int k = j + 1; k <= n; ++k)
      X.rel_jk.emplace(std::make_pair(j, k), detail::pointwise_relation(pts[static_cast<std::size_t>(j)],
                                                                         pts[static_cast<std::size_t>(k)],
                                                                         alter_ego_relation(j, k)));
  X.validate();
  return X;
}

/// Flips one relation bit or redirects one g-value.
inline MultiSortedStructure perturb(MultiSortedStructure X, std::mt19937_64& rng) {
  std::vector<std::pair<int, int>> rels;
  for (int k = 0; k <= X.n; ++k)
    if (X.sort_size(k) > 0) rels.emplace_back(k, k);
  for (const auto& [key, m] : X.rel_jk)
    if (m.rows() > 0 && m.cols() > 0) rels.push_back(key);
  const bool redirect = X.sort_size(0) > 1 && draw(rng, 4) == 0;
  if (redirect) {
    std::vector<int> ks;
    for (int k = 1; k <= X.n; ++k)
      if (X.sort_size(k) > 0) ks.push_back(k);
    if (!ks.empty()) {
      const int k = ks[draw(rng, ks.size())];
      auto& gk = X.g[static_cast<std::size_t>(k)];
      const std::size_t x = draw(rng, gk.size());
      gk[x] = (gk[x] + 1 + draw(rng, X.sort_size(0) - 1)) % X.sort_size(0);
      return X;
    }
  }
  const auto [j, k] = rels[draw(rng, rels.size())];
  BitMatrix& m = j == k ? X.rel[static_cast<std::size_t>(k)] : X.rel_jk.at({j, k});
  const std::size_t a = draw(rng, m.rows()), b = draw(rng, m.cols());
  m.set(a, b, !m(a, b));
  return X;
}

/// Arbitrary g-maps and relations; relations within a sort are reflexive.
inline MultiSortedStructure random_structure(int n, std::mt19937_64& rng, std::size_t max_sort = 3) {
  MultiSortedStructure X;
  X.n = n;
  for (int k = 0; k <= n; ++k) {
    const std::size_t sz = k == 0 ? 1 + draw(rng, max_sort) : draw(rng, max_sort + 1);
    std::vector<std::string> names;
    std::vector<std::size_t> g;
    BitMatrix r(sz);
    for (std::size_t i = 0; i < sz; ++i) {
      names.push_back("r" + std::to_string(k) + "_" + std::to_string(i));
      g.push_back(k == 0 ? i : draw(rng, X.sort_size(0)));
      for (std::size_t j = 0; j < sz; ++j) r.set(i, j, i == j || draw(rng, 4) == 0);
    }
    X.sorts.push_back(std::move(names));
    X.g.push_back(std::move(g));
    X.rel.push_back(std::move(r));
  }
  for (int j = 1; j <= n; ++j)
    for (int k = j + 1; k <= n; ++k) {
      BitMatrix m(X.sort_size(j), X.sort_size(k));
      for (std::size_t a = 0; a < m.rows(); ++a)
        for (std::size_t b = 0; b < m.cols(); ++b) m.set(a, b, draw(rng, 3) == 0);
      X.rel_jk.emplace(std::make_pair(j, k), std::move(m));
    }
  X.validate();
  return X;
}

/// Mixed corpus: power substructures, their perturbations, random structures.
/// `only_n` = 0 alternates n between 1 and 2.
inline std::vector<MultiSortedStructure> structure_corpus(std::size_t count, std::uint64_t seed = kDefaultSeed,
                                                          int only_n = 0) {
  std::mt19937_64 rng(seed);
  std::vector<MultiSortedStructure> out;
  for (std::size_t i = 0; i < count; ++i) {
    const int n = only_n > 0 ? only_n : 1 + static_cast<int>(i % 2);
    switch (i % 5) {
      case 0:
      case 1: out.push_back(random_power_substructure(n, rng)); break;
      case 2:
      case 3: out.push_back(perturb(random_power_substructure(n, rng), rng)); break;
      default: out.push_back(random_structure(n, rng)); break;
    }
  }
  return out;
}

/// Random poset on m points: a random relation on a random linear extension, closed.
inline Poset random_poset(std::size_t m, std::mt19937_64& rng, std::size_t density_percent = 25) {
  std::vector<std::size_t> perm(m);
  for (std::size_t i = 0; i < m; ++i) perm[i] = i;
  for (std::size_t i = m; i > 1; --i) std::swap(perm[i - 1], perm[draw(rng, i)]);
  BitMatrix r(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      if (draw(rng, 100) < density_percent) r.set(perm[a], perm[b]);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) names.push_back("p" + std::to_string(i));
  return Poset(std::move(names), reflexive_transitive_closure(std::move(r)));
}

}  // namespace defbil
