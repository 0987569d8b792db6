#pragma once

// The doubled space P(X) = F(X) + hat F(X), free-algebra size formulas and
// the partitioned down-set tallies of P of the alter ego.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "defbil/downsets.hpp"
#include "defbil/errors.hpp"
#include "defbil/isomorphism.hpp"
#include "defbil/lattice.hpp"
#include "defbil/multisorted.hpp"
#include "defbil/poset.hpp"
#include "defbil/priestley.hpp"
#include "defbil/ranked.hpp"

namespace defbil {

/// Hatted names carry this prefix.
inline const std::string kHat = "^";

/// P(X) on X + hat X: index i is x_i, index |X| + i is hat x_i, both in F(X) order.
inline Poset construct_P(const MultiSortedStructure& X) {
  const RankedPriestleySpace Y = functor_F(X);
  const std::size_t N = Y.size();
  auto le = [&](std::size_t a, std::size_t b) { return Y.leq(a, b); };
  auto in0 = [&](std::size_t a) { return Y.rank[a] == 0; };
  BitMatrix m(2 * N);
  for (std::size_t x = 0; x < N; ++x)
    for (std::size_t y = 0; y < N; ++y) {
      const std::size_t gx = Y.g[x], gy = Y.g[y];
      // (1) and (2)
      m.set(x, y, le(x, y));
      m.set(N + x, N + y, le(y, x));
      // (3) x outside X_0, y in X_0
      if (!in0(x) && in0(y)) m.set(x, y, le(gx, y));
      // (4) x outside X_0, hat y in hat X_0
      if (!in0(x) && in0(y) && le(y, gx)) m.set(x, N + y);
      // (5) x in X_0, hat y outside hat X_0
      if (in0(x) && !in0(y) && le(x, gy)) m.set(x, N + y);
      // (6) hat x in hat X_0, hat y outside hat X_0
      if (in0(x) && !in0(y) && le(gy, x)) m.set(N + x, N + y);
      // (7) x outside X_0, hat y outside hat X_0
      if (!in0(x) && !in0(y) && (le(gx, gy) || le(gy, gx))) m.set(x, N + y);
    }
  std::vector<std::string> names = Y.names;
  for (std::size_t x = 0; x < N; ++x) names.push_back(kHat + Y.names[x]);
  if (auto v = check_poset(m)) throw InvariantViolation("P(X) is not an order: " + v->describe(&names));
  return Poset(std::move(names), std::move(m));
}

/// P(phi): x -> phi(x), hat x -> hat phi(x), as a flat index map.
inline std::vector<std::size_t> transport_morphism(const MultiMorphism& phi, const MultiSortedStructure& source,
                                                   const MultiSortedStructure& target) {
  auto flat = flatten_morphism(phi, target);
  const std::size_t N = target.total_size();
  std::vector<std::size_t> out = flat;
  for (auto v : flat) out.push_back(N + v);
  (void)source;
  return out;
}

inline bool is_order_preserving(const Poset& p, const Poset& q, const std::vector<std::size_t>& f) {
  if (f.size() != p.size()) return false;
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (f[a] >= q.size()) return false;
    bool ok = true;
    p.up(a).for_each([&](std::size_t b) { ok = ok && q.leq(f[a], f[b]); });
    if (!ok) return false;
  }
  return true;
}

struct TranslationReport {
  bool ok = false;
  std::size_t points = 0;
  std::vector<std::size_t> witness;  // P(D(A)) -> H(A^flat)
  std::string failure;
};

/// H(A^flat) is order-isomorphic to P(D(A)).
inline TranslationReport verify_translation(const FiniteAlgebra& A) {
  TranslationReport r;
  const Poset P = construct_P(natural_dual(A).structure);
  const auto H = priestley_dual_of_lattice(lattice_reduct(A));
  r.points = P.size();
  auto w = find_isomorphism(P, H.poset);
  if (!w) {
    r.failure = "P(D(A)) with " + std::to_string(P.size()) + " points is not isomorphic to H(A) with " +
                std::to_string(H.poset.size());
    return r;
  }
  if (!is_order_preserving(P, H.poset, *w)) {
    r.failure = "witness does not preserve order";
    return r;
  }
  std::vector<std::size_t> inv(w->size());
  for (std::size_t i = 0; i < w->size(); ++i) inv[(*w)[i]] = i;
  if (!is_order_preserving(H.poset, P, inv)) {
    r.failure = "witness inverse does not preserve order";
    return r;
  }
  r.witness = std::move(*w);
  r.ok = true;
  return r;
}

// ---- free-algebra sizes

__extension__ using Int128 = __int128;
__extension__ using UInt128 = unsigned __int128;

inline std::string to_string(Int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  UInt128 u = neg ? static_cast<UInt128>(-v) : static_cast<UInt128>(v);
  std::string s;
  while (u > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  return neg ? "-" + s : s;
}

struct FreeSize {
  Int128 f, g, total;
};

/// Counts of down-sets avoiding and meeting the top block, and their sum.
inline FreeSize free_size_formula(std::int64_t n) {
  if (n < 1) throw InvalidInput("free size formula needs n >= 1");
  if (n > 1'000'000) throw InvalidInput("free size formula limited to n <= 10^6");
  const Int128 x = n;
  const Int128 x2 = x * x, x3 = x2 * x, x4 = x3 * x, x5 = x4 * x, x6 = x5 * x;
  const Int128 f4 = x6 + 10 * x5 + 41 * x4 + 96 * x3 + 148 * x2 + 148 * x + 144;
  const Int128 g4 = x6 + 10 * x5 + 43 * x4 + 108 * x3 + 166 * x2 + 148 * x;
  const Int128 t2 = x6 + 10 * x5 + 42 * x4 + 102 * x3 + 157 * x2 + 148 * x + 72;
  if (f4 % 4 != 0 || g4 % 4 != 0 || t2 % 2 != 0) throw InvariantViolation("size polynomial not integral");
  FreeSize s{f4 / 4, g4 / 4, t2 / 2};
  if (s.f + s.g != s.total) throw InvariantViolation("f(n) + g(n) != total");
  return s;
}

/// |O(2 x m)|.
inline Int128 grid_downsets_formula(std::int64_t m) { return Int128{m + 1} * (m + 2) / 2; }

// ---- partitioned counting on P of the alter ego

/// Blocks of P(X): C = X_0 + hat X_0, B = X - X_0, T = hat X - hat X_0.
struct DoubledBlocks {
  Bitset bottom, centre, top, min_top;
};

inline DoubledBlocks doubled_blocks(const MultiSortedStructure& X, const Poset& P) {
  const std::size_t N = X.total_size(), n0 = X.sort_size(0);
  DoubledBlocks b{Bitset(2 * N), Bitset(2 * N), Bitset(2 * N), Bitset(2 * N)};
  for (std::size_t i = 0; i < N; ++i) {
    if (i < n0) {
      b.centre.set(i);
      b.centre.set(N + i);
    } else {
      b.bottom.set(i);
      b.top.set(N + i);
    }
  }
  b.min_top = P.minimal(b.top);
  return b;
}

/// Key of a subset: sorted element names joined by commas, in braces.
inline std::string set_key(const Poset& P, const Bitset& s) {
  std::set<std::string> names;
  s.for_each([&](std::size_t i) { names.insert(P.name(i)); });
  std::string k = "{";
  for (const auto& nm : names) k += (k.size() > 1 ? "," : "") + nm;
  return k + "}";
}

inline std::string set_key(std::set<std::string> names) {
  std::string k = "{";
  for (const auto& nm : names) k += (k.size() > 1 ? "," : "") + nm;
  return k + "}";
}

struct PartitionedCount {
  std::uint64_t avoiding_top = 0, meeting_top = 0;
  std::map<std::string, std::uint64_t> by_centre;   // keyed by U n C, T-avoiding U
  std::map<std::string, std::uint64_t> by_min_top;  // keyed by U n min(T), T-meeting U
};

inline PartitionedCount partitioned_downset_count(int n, std::uint64_t budget = kDefaultDownsetBudget) {
  const auto X = build_alter_ego(n);
  const Poset P = construct_P(X);
  const auto blocks = doubled_blocks(X, P);
  PartitionedCount pc;
  for_each_downset(
      P,
      [&](const Bitset& u) {
        if (u.intersects(blocks.top)) {
          ++pc.meeting_top;
          ++pc.by_min_top[set_key(P, u & blocks.min_top)];
        } else {
          ++pc.avoiding_top;
          ++pc.by_centre[set_key(P, u & blocks.centre)];
        }
      },
      budget);
  return pc;
}

/// The 36 down-sets of the centre, as keys.
inline std::vector<std::string> centre_downset_keys(int n) {
  const auto X = build_alter_ego(n);
  const Poset P = construct_P(X);
  const auto blocks = doubled_blocks(X, P);
  auto [C, idx] = P.restrict_to(blocks.centre);
  std::vector<std::string> keys;
  for_each_downset(C, [&](const Bitset& u) { keys.push_back(set_key(C, u)); });
  return keys;
}

/// Closed-form tally for U n C in the T-avoiding class.
inline Int128 centre_table_entry(std::int64_t n, const std::string& key) {
  const Int128 a = n + 1, h = Int128{n + 1} * (n + 2) / 2;
  const std::string bot = "bot0", f = "f0", t = "t0", top = kHat + "top0", fh = kHat + "f0", th = kHat + "t0";
  const std::map<std::string, Int128> table = {
      {set_key({}), h * h * a * a},
      {set_key({bot}), h * h * a},
      {set_key({top}), h * h * a},
      {set_key({bot, f}), h * a},
      {set_key({bot, t}), h * a},
      {set_key({top, fh}), h * a},
      {set_key({top, th}), h * a},
      {set_key({bot, f, t}), a},
      {set_key({top, fh, th}), a},
      {set_key({bot, top}), h * h},
      {set_key({bot, top, fh}), h},
      {set_key({bot, top, th}), h},
      {set_key({bot, f, top}), h},
      {set_key({bot, t, top}), h},
      {set_key({bot, f, top, fh}), h},
      {set_key({bot, t, top, th}), h},
  };
  auto it = table.find(key);
  return it == table.end() ? Int128{1} : it->second;
}

/// Closed-form tally for U n min(T) in the T-meeting class.
inline Int128 min_top_table_entry(std::int64_t n, const std::string& key) {
  const std::string N = std::to_string(n);
  const std::string z = kHat + "0" + N, o = kHat + "1" + N, b = kHat + "bot" + N, t = kHat + "top" + N;
  const Int128 m = n, h1 = Int128{n + 1} * (n + 2) / 2 - 1;
  const std::map<std::string, Int128> table = {
      {set_key({z}), h1 * (h1 + 9)},
      {set_key({o}), h1 * (h1 + 9)},
      {set_key({b}), 5 * m},
      {set_key({t}), 5 * m},
      {set_key({z, o}), 4 * h1 * h1},
      {set_key({z, t}), 3 * m * h1},
      {set_key({z, b}), 3 * m * h1},
      {set_key({t, o}), 3 * m * h1},
      {set_key({b, o}), 3 * m * h1},
      {set_key({t, b}), m * m},
      {set_key({b, t, o}), m * m * h1},
      {set_key({z, t, b}), m * m * h1},
      {set_key({z, t, o}), 2 * m * h1 * h1},
      {set_key({z, b, o}), 2 * m * h1 * h1},
      {set_key({z, b, t, o}), m * m * h1 * h1},
  };
  auto it = table.find(key);
  if (it == table.end()) throw InvalidInput("not a nonempty subset of min(T): " + key);
  return it->second;
}

inline std::vector<std::string> min_top_keys(int n) {
  const std::string N = std::to_string(n);
  const std::vector<std::string> pts = {kHat + "0" + N, kHat + "1" + N, kHat + "bot" + N, kHat + "top" + N};
  std::vector<std::string> keys;
  for (unsigned mask = 1; mask < 16; ++mask) {
    std::set<std::string> s;
    for (unsigned i = 0; i < 4; ++i)
      if (mask >> i & 1U) s.insert(pts[i]);
    keys.push_back(set_key(s));
  }
  return keys;
}

}  // namespace defbil
