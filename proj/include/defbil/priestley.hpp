#pragma once

// Finite Priestley duality: H(L) from prime filters or homs into 2, and
// K(P) as the lattice of up-sets. Finite topology is discrete, so every
// up-set is clopen.

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "defbil/bits.hpp"
#include "defbil/downsets.hpp"
#include "defbil/errors.hpp"
#include "defbil/lattice.hpp"
#include "defbil/poset.hpp"

namespace defbil {

inline Bitset principal_filter(const BoundedLattice& L, Elem a) {
  Bitset f(L.size());
  for (Elem x = 0; x < L.size(); ++x)
    if (L.leq(a, x)) f.set(x);
  return f;
}

inline bool is_prime_filter(const BoundedLattice& L, const Bitset& f) {
  if (!f.test(L.top) || f.test(L.bottom)) return false;
  const Elem sz = static_cast<Elem>(L.size());
  for (Elem x = 0; x < sz; ++x)
    for (Elem y = 0; y < sz; ++y) {
      const bool both = f.test(x) && f.test(y);
      if (f.test(L.meet(x, y)) != both) return false;
      if (f.test(L.join(x, y)) != (f.test(x) || f.test(y))) return false;
    }
  return true;
}

/// Join-irreducibles: not the bottom and not the join of the elements strictly below.
inline std::vector<Elem> join_irreducibles(const BoundedLattice& L) {
  std::vector<Elem> out;
  for (Elem j = 0; j < L.size(); ++j) {
    if (j == L.bottom) continue;
    Elem below = L.bottom;
    for (Elem x = 0; x < L.size(); ++x)
      if (x != j && L.leq(x, j)) below = L.join(below, x);
    if (below != j) out.push_back(j);
  }
  return out;
}

/// Finite dual space. Point i is the prime filter filters[i], equivalently the
/// hom L -> 2 sending x to filters[i].test(x); order is inclusion.
struct PriestleyDual {
  Poset poset;
  std::vector<Bitset> filters;
  std::vector<Elem> generators;  // filters[i] = up(generators[i])
};

namespace detail {
inline PriestleyDual dual_from_generators(const BoundedLattice& L, std::vector<Elem> gens) {
  std::vector<Bitset> filters;
  std::vector<std::string> names;
  for (Elem j : gens) {
    filters.push_back(principal_filter(L, j));
    names.push_back("up(" + L.names[j] + ")");
  }
  BitMatrix leq(gens.size());
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = 0; b < gens.size(); ++b)
      if (filters[a].is_subset_of(filters[b])) leq.set(a, b);
  return {Poset(std::move(names), std::move(leq)), std::move(filters), std::move(gens)};
}
}  // namespace detail

/// H(L) by scanning principal filters for primality (finite filters are principal).
inline PriestleyDual prime_filter_space(const BoundedLattice& L) {
  std::vector<Elem> gens;
  for (Elem a = 0; a < L.size(); ++a)
    if (is_prime_filter(L, principal_filter(L, a))) gens.push_back(a);
  return detail::dual_from_generators(L, std::move(gens));
}

/// Bounded-lattice homs L -> 2 as value vectors, from join-irreducibles.
inline std::vector<std::vector<bool>> homs_to_two(const BoundedLattice& L) {
  std::vector<std::vector<bool>> out;
  for (Elem j : join_irreducibles(L)) {
    std::vector<bool> h(L.size());
    for (Elem x = 0; x < L.size(); ++x) h[x] = L.leq(j, x);
    out.push_back(std::move(h));
  }
  return out;
}

inline bool is_hom_to_two(const BoundedLattice& L, const std::vector<bool>& h) {
  if (h.size() != L.size() || h[L.bottom] || !h[L.top]) return false;
  for (Elem x = 0; x < L.size(); ++x)
    for (Elem y = 0; y < L.size(); ++y)
      if (h[L.meet(x, y)] != (h[x] && h[y]) || h[L.join(x, y)] != (h[x] || h[y])) return false;
  return true;
}

/// The natural map x -> {points whose filter contains x}, into the up-sets of H(L).
inline std::vector<Bitset> evaluation_upsets(const BoundedLattice& L, const PriestleyDual& H) {
  std::vector<Bitset> image(L.size(), Bitset(H.filters.size()));
  for (std::size_t i = 0; i < H.filters.size(); ++i) H.filters[i].for_each([&](std::size_t x) { image[x].set(i); });
  return image;
}

/// Checks that x -> {F : x in F} is a bounded-lattice isomorphism L -> K(H(L)).
/// Holding is equivalent to L being distributive.
inline std::optional<std::string> verify_natural_iso(const BoundedLattice& L, const PriestleyDual& H,
                                                     std::uint64_t budget = kDefaultDownsetBudget) {
  auto image = evaluation_upsets(L, H);
  for (const auto& u : image)
    if (!H.poset.is_upset(u)) return "image of an element is not an up-set";
  const std::size_t upsets = count_downsets(dual(H.poset), budget);
  if (upsets != L.size()) return "|K(H(L))| = " + std::to_string(upsets) + " but |L| = " + std::to_string(L.size());
  std::unordered_set<Bitset, BitsetHash> distinct(image.begin(), image.end());
  if (distinct.size() != L.size()) return "natural map is not injective";
  for (Elem x = 0; x < L.size(); ++x)
    for (Elem y = 0; y < L.size(); ++y) {
      if (image[L.meet(x, y)] != (image[x] & image[y])) return "natural map fails to preserve meet";
      if (image[L.join(x, y)] != (image[x] | image[y])) return "natural map fails to preserve join";
    }
  return std::nullopt;
}

/// H(L) for a finite distributive lattice. Distributivity is checked directly
/// up to `guard` elements and through the natural iso L -> K(H(L)) beyond it.
inline PriestleyDual priestley_dual_of_lattice(const BoundedLattice& L, std::size_t guard = 600) {
  if (auto bad = check_bounded_lattice(L)) throw InvalidInput("not a bounded lattice: " + *bad);
  if (L.size() <= guard) {
    if (auto w = distributivity_failure(L, guard))
      throw InvalidInput("lattice is not distributive at (" + L.names[(*w)[0]] + ", " + L.names[(*w)[1]] + ", " +
                         L.names[(*w)[2]] + ")");
  }
  auto H = detail::dual_from_generators(L, join_irreducibles(L));
  if (L.size() > guard)
    if (auto bad = verify_natural_iso(L, H)) throw InvalidInput("lattice is not distributive: " + *bad);
  return H;
}

/// O(P): down-sets under union and intersection.
inline BoundedLattice lattice_of_downsets(const Poset& p, std::uint64_t guard = 100'000) {
  std::vector<Bitset> sets;
  for_each_downset(p, [&](const Bitset& u) { sets.push_back(u); }, guard);
  return lattice_of_sets(sets, p.names());
}

/// K(P): up-sets (all clopen in the discrete topology).
inline BoundedLattice lattice_of_upsets(const Poset& p, std::uint64_t guard = 100'000) {
  std::vector<Bitset> sets;
  for_each_downset(dual(p), [&](const Bitset& u) { sets.push_back(u); }, guard);
  return lattice_of_sets(sets, p.names());
}

/// Whether f: L -> M is a bijection preserving meet, join and bounds.
inline bool is_lattice_isomorphism(const BoundedLattice& L, const BoundedLattice& M, const std::vector<Elem>& f) {
  if (L.size() != M.size() || f.size() != L.size()) return false;
  std::vector<bool> hit(M.size(), false);
  for (Elem v : f) {
    if (v >= M.size() || hit[v]) return false;
    hit[v] = true;
  }
  if (f[L.bottom] != M.bottom || f[L.top] != M.top) return false;
  for (Elem x = 0; x < L.size(); ++x)
    for (Elem y = 0; y < L.size(); ++y)
      if (f[L.meet(x, y)] != M.meet(f[x], f[y]) || f[L.join(x, y)] != M.join(f[x], f[y])) return false;
  return true;
}

}  // namespace defbil
