#pragma once

// The A1-A7 axioms for multi-sorted structures and the separation test.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "defbil/bits.hpp"
#include "defbil/errors.hpp"
#include "defbil/multisorted.hpp"
#include "defbil/poset.hpp"

namespace defbil {

/// A point of a multi-sorted structure.
struct SortedPoint {
  int sort = 0;
  std::size_t index = 0;
  friend bool operator==(const SortedPoint&, const SortedPoint&) = default;
};

struct AxiomVerdict {
  bool holds = true;
  bool vacuous = false;  // no instance of the quantifier exists for this n
  std::vector<SortedPoint> witness;
  std::string detail;
};

struct AxiomReport {
  std::array<AxiomVerdict, 7> axioms;  // A1..A7 at positions 0..6
  bool ok() const {
    for (const auto& a : axioms)
      if (!a.holds) return false;
    return true;
  }
  const AxiomVerdict& operator[](int i) const { return axioms[static_cast<std::size_t>(i - 1)]; }
  std::string summary() const {
    std::string s;
    for (int i = 1; i <= 7; ++i) {
      const auto& v = (*this)[i];
      s += "A" + std::to_string(i) + (v.holds ? (v.vacuous ? " vacuous" : " ok") : " FAIL " + v.detail) + "\n";
    }
    return s;
  }
};

/// Single-sorted order of all points: sort k occupies [offset[k], offset[k+1]).
struct AmalgamatedOrder {
  std::vector<std::size_t> offset;
  BitMatrix leq;  // union of <=^k and <=^{jk}; not closed
};

inline AmalgamatedOrder amalgamate(const MultiSortedStructure& X) {
  AmalgamatedOrder a;
  a.offset.push_back(0);
  for (int k = 0; k <= X.n; ++k) a.offset.push_back(a.offset.back() + X.sort_size(k));
  a.leq = BitMatrix(a.offset.back());
  auto add = [&](int j, int k) {
    const auto& R = X.relation(j, k);
    for (std::size_t x = 0; x < R.rows(); ++x)
      R.row(x).for_each([&](std::size_t y) {
        a.leq.set(a.offset[static_cast<std::size_t>(j)] + x, a.offset[static_cast<std::size_t>(k)] + y);
      });
  };
  for (int k = 0; k <= X.n; ++k) add(k, k);
  for (int j = 1; j <= X.n; ++j)
    for (int k = j + 1; k <= X.n; ++k) add(j, k);
  return a;
}

/// Least mutually increasing family on sorts [j, k] containing x, as the
/// fixpoint of pushing points forward along <=^{il}, j <= i <= l <= k.
inline std::vector<Bitset> least_increasing_family(const MultiSortedStructure& X, int j, int k, std::size_t x) {
  std::vector<Bitset> U;
  for (int l = j; l <= k; ++l) U.emplace_back(X.sort_size(l));
  U[0].set(x);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = j; i <= k; ++i)
      for (int l = i; l <= k; ++l) {
        const auto& R = X.relation(i, l);
        Bitset grow(X.sort_size(l));
        U[static_cast<std::size_t>(i - j)].for_each([&](std::size_t p) { grow |= R.row(p); });
        Bitset& target = U[static_cast<std::size_t>(l - j)];
        if (!grow.is_subset_of(target)) {
          target |= grow;
          changed = true;
        }
      }
  }
  return U;
}

/// Literal A7 oracle: searches every family of subsets U_j..U_k for one that is
/// mutually increasing, contains x and misses y. Exponential; small sorts only.
inline bool a7_separates_literal(const MultiSortedStructure& X, int j, int k, std::size_t x, std::size_t y) {
  std::size_t bits = 0;
  for (int l = j; l <= k; ++l) bits += X.sort_size(l);
  if (bits > 20) throw GuardExceeded("literal A7 search limited to 20 points");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
    std::vector<Bitset> U;
    std::size_t pos = 0;
    for (int l = j; l <= k; ++l) {
      Bitset b(X.sort_size(l));
      for (std::size_t p = 0; p < X.sort_size(l); ++p, ++pos)
        if (mask >> pos & 1U) b.set(p);
      U.push_back(std::move(b));
    }
    if (!U.front().test(x) || U.back().test(y)) continue;
    bool increasing = true;
    for (int i = j; i <= k && increasing; ++i)
      for (int l = i; l <= k && increasing; ++l) {
        const auto& R = X.relation(i, l);
        U[static_cast<std::size_t>(i - j)].for_each([&](std::size_t p) {
          if (!R.row(p).is_subset_of(U[static_cast<std::size_t>(l - j)])) increasing = false;
        });
      }
    if (increasing) return true;
  }
  return false;
}

enum class A7Method { single_sorted, literal };

/// Evaluates A1-A7 exhaustively. Finite structures carry the discrete topology,
/// so A1 holds and "clopen up-set" means "up-set".
inline AxiomReport check_axioms(const MultiSortedStructure& X, A7Method method = A7Method::single_sorted) {
  X.validate();
  AxiomReport r;
  const auto amalgamated = amalgamate(X);
  // points reachable from p along the amalgamated relation: the least up-set holding p
  auto reach = [&](std::size_t p) {
    Bitset seen(amalgamated.offset.back());
    Bitset frontier = seen;
    frontier.set(p);
    while (frontier.any()) {
      seen |= frontier;
      Bitset next(seen.size());
      frontier.for_each([&](std::size_t q) { next |= amalgamated.leq.row(q); });
      frontier = next - seen;
    }
    return seen;
  };
  const int n = X.n;
  auto fail = [](AxiomVerdict& v, std::vector<SortedPoint> w, std::string d) {
    if (!v.holds) return;
    v.holds = false;
    v.witness = std::move(w);
    v.detail = std::move(d);
  };
  r.axioms[0].detail = "finite discrete topology";

  // A2
  for (int k = 1; k <= n; ++k)
    for (std::size_t x = 0; x < X.sort_size(k); ++x)
      X.relation(k, k).row(x).for_each([&](std::size_t y) {
        if (X.g_of(k, x) != X.g_of(k, y)) fail(r.axioms[1], {{k, x}, {k, y}}, "x <=^k y with g_k(x) != g_k(y)");
      });
  // A3, A4, A7 quantify over j < k in [1, n]; A5 over j < k < l
  r.axioms[2].vacuous = r.axioms[3].vacuous = r.axioms[6].vacuous = (n < 2);
  r.axioms[4].vacuous = (n < 3);
  for (int j = 1; j <= n; ++j)
    for (int k = j + 1; k <= n; ++k) {
      const auto& R = X.relation(j, k);
      for (std::size_t x = 0; x < R.rows(); ++x)
        R.row(x).for_each([&](std::size_t y) {
          if (X.g_of(j, x) != X.g_of(k, y)) fail(r.axioms[2], {{j, x}, {k, y}}, "x <=^{jk} y with g_j(x) != g_k(y)");
        });
      // A4: x <=^j y <=^{jk} u <=^k v implies x <=^{jk} v
      for (std::size_t x = 0; x < X.sort_size(j); ++x)
        X.relation(j, j).row(x).for_each([&](std::size_t y) {
          R.row(y).for_each([&](std::size_t u) {
            X.relation(k, k).row(u).for_each([&](std::size_t v) {
              if (!R(x, v)) fail(r.axioms[3], {{j, x}, {j, y}, {k, u}, {k, v}}, "composite not in <=^{jk}");
            });
          });
        });
      // A5
      for (int l = k + 1; l <= n; ++l) {
        const auto& S = X.relation(k, l);
        const auto& T = X.relation(j, l);
        for (std::size_t x = 0; x < R.rows(); ++x)
          R.row(x).for_each([&](std::size_t y) {
            S.row(y).for_each([&](std::size_t z) {
              if (!T(x, z)) fail(r.axioms[4], {{j, x}, {k, y}, {l, z}}, "<=^{jk} then <=^{kl} not in <=^{jl}");
            });
          });
      }
    }
  // A6
  for (int k = 0; k <= n; ++k)
    if (auto v = check_poset(X.relation(k, k))) {
      std::vector<SortedPoint> w{{k, v->a}, {k, v->b}};
      if (v->kind == PosetViolation::Kind::transitivity) w.push_back({k, v->c});
      fail(r.axioms[5], std::move(w), "sort " + std::to_string(k) + ": " + v->describe(&X.sorts[static_cast<std::size_t>(k)]));
    }
  // A7
  for (int j = 1; j <= n; ++j)
    for (int k = j + 1; k <= n; ++k)
      for (std::size_t x = 0; x < X.sort_size(j); ++x)
        for (std::size_t y = 0; y < X.sort_size(k); ++y) {
          if (X.leq(j, x, k, y)) continue;
          bool separated;
          if (method == A7Method::literal) {
            separated = a7_separates_literal(X, j, k, x, y);
          } else {
            const auto& off = amalgamated.offset;
            separated = !reach(off[static_cast<std::size_t>(j)] + x).test(off[static_cast<std::size_t>(k)] + y);
          }
          if (!separated) fail(r.axioms[6], {{j, x}, {k, y}}, "no mutually increasing up-sets separate the pair");
        }
  return r;
}

struct SeparationReport {
  bool ok = false;
  std::size_t morphism_count = 0;
  std::string failure;
};

/// Membership in the class of closed substructures of powers, decided by
/// whether morphisms into the alter ego exist, separate points and separate
/// every relation failure.
inline SeparationReport membership_by_separation(const MultiSortedStructure& X, std::size_t guard = 200'000) {
  X.validate();
  SeparationReport r;
  const auto M = build_alter_ego(X.n);
  const auto homs = enumerate_morphisms(X, M, guard);
  r.morphism_count = homs.size();
  if (homs.empty()) {
    r.failure = "no morphism into the alter ego";
    return r;
  }
  const int n = X.n;
  for (int k = 0; k <= n; ++k)
    for (std::size_t x = 0; x < X.sort_size(k); ++x)
      for (std::size_t y = 0; y < X.sort_size(k); ++y) {
        const auto K = static_cast<std::size_t>(k);
        if (x != y) {
          bool sep = false;
          for (const auto& phi : homs)
            if (phi[K][x] != phi[K][y]) {
              sep = true;
              break;
            }
          if (!sep) {
            r.failure = "points " + X.sorts[K][x] + ", " + X.sorts[K][y] + " not separated";
            return r;
          }
        }
        if (!X.leq(k, x, k, y)) {
          bool sep = false;
          for (const auto& phi : homs)
            if (!M.leq(k, phi[K][x], k, phi[K][y])) {
              sep = true;
              break;
            }
          if (!sep) {
            r.failure = "failure of <=^" + std::to_string(k) + " not separated";
            return r;
          }
        }
      }
  for (int j = 1; j <= n; ++j)
    for (int k = j + 1; k <= n; ++k)
      for (std::size_t x = 0; x < X.sort_size(j); ++x)
        for (std::size_t y = 0; y < X.sort_size(k); ++y) {
          if (X.leq(j, x, k, y)) continue;
          bool sep = false;
          for (const auto& phi : homs)
            if (!M.leq(j, phi[static_cast<std::size_t>(j)][x], k, phi[static_cast<std::size_t>(k)][y])) {
              sep = true;
              break;
            }
          if (!sep) {
            r.failure = "failure of <=^{" + std::to_string(j) + std::to_string(k) + "} not separated";
            return r;
          }
        }
  r.ok = true;
  return r;
}

/// The morphism sending each X_k constantly to t^k.
inline MultiMorphism constant_t_morphism(const MultiSortedStructure& X) {
  MultiMorphism phi(X.sorts.size());
  for (int k = 0; k <= X.n; ++k)
    phi[static_cast<std::size_t>(k)].assign(X.sort_size(k), k == 0 ? M0::t : Mk::t);
  return phi;
}

}  // namespace defbil
