#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <unordered_set>
#include <vector>

#include "defbil/algebra.hpp"
#include "defbil/bits.hpp"
#include "defbil/closure.hpp"
#include "defbil/errors.hpp"

namespace defbil {

struct SubuniverseSet {
  std::size_t ambient_size = 0;
  std::vector<Bitset> members;          // sorted by cardinality, then by Bitset order
  std::vector<bool> meet_irreducible;   // parallel to members

  std::size_t size() const { return members.size(); }
  std::vector<Bitset> meet_irreducibles() const {
    std::vector<Bitset> out;
    for (std::size_t i = 0; i < members.size(); ++i)
      if (meet_irreducible[i]) out.push_back(members[i]);
    return out;
  }
  bool contains(const Bitset& s) const { return std::find(members.begin(), members.end(), s) != members.end(); }
};

/// Every subuniverse of A. Breadth-first from the subuniverse generated by the
/// constants: each member S spawns close(S + {x}) for every x outside S.
inline SubuniverseSet enumerate_subuniverses(const FiniteAlgebra& A, std::size_t guard = 64) {
  if (A.size() > guard)
    throw GuardExceeded("enumerate_subuniverses: carrier of " + std::to_string(A.size()) + " exceeds guard " +
                        std::to_string(guard));
  SubuniverseSet out;
  out.ambient_size = A.size();
  std::unordered_set<Bitset, BitsetHash> seen;
  std::deque<Bitset> frontier;
  Bitset seed = close_subset(A, Bitset(A.size()));
  seen.insert(seed);
  frontier.push_back(seed);
  while (!frontier.empty()) {
    Bitset s = std::move(frontier.front());
    frontier.pop_front();
    Bitset outside = s.complement();
    outside.for_each([&](std::size_t x) {
      Bitset t = s;
      t.set(x);
      t = close_subset(A, std::move(t));
      if (seen.insert(t).second) frontier.push_back(std::move(t));
    });
    out.members.push_back(std::move(s));
  }
  std::sort(out.members.begin(), out.members.end(), [](const Bitset& a, const Bitset& b) {
    const auto ca = a.count(), cb = b.count();
    return ca != cb ? ca < cb : a < b;
  });
  // meet-irreducible: not the top and not the meet of its strict supersets
  const Bitset top = Bitset::full(A.size());
  out.meet_irreducible.assign(out.members.size(), false);
  for (std::size_t i = 0; i < out.members.size(); ++i) {
    const Bitset& m = out.members[i];
    if (m == top) continue;
    Bitset meet = top;
    for (const auto& other : out.members)
      if (other != m && m.is_subset_of(other)) meet &= other;
    out.meet_irreducible[i] = (meet != m);
  }
  return out;
}

}  // namespace defbil
