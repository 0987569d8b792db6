#pragma once

#include <cstddef>
#include <array>
#include <optional>
#include <unordered_map>
#include <string>
#include <vector>

#include "defbil/algebra.hpp"
#include "defbil/bits.hpp"
#include "defbil/errors.hpp"

namespace defbil {

/// Finite bounded lattice given by meet/join tables.
struct BoundedLattice {
  std::vector<std::string> names;
  std::vector<Elem> meet_table;
  std::vector<Elem> join_table;
  Elem bottom = 0;
  Elem top = 0;

  std::size_t size() const { return names.size(); }
  Elem meet(Elem a, Elem b) const { return meet_table[a * size() + b]; }
  Elem join(Elem a, Elem b) const { return join_table[a * size() + b]; }
  bool leq(Elem a, Elem b) const { return meet(a, b) == a; }
};

/// The bounded lattice <A; and, or, f_0, t_0>.
inline BoundedLattice lattice_reduct(const FiniteAlgebra& A) {
  SignatureN sig = A.signature();
  return {A.names(), A.table(BinaryOp::meet_t), A.table(BinaryOp::join_t), A.constant(sig.f(0)),
          A.constant(sig.t(0))};
}

/// Exhaustive lattice-axiom and bound check; returns a failure description.
inline std::optional<std::string> check_bounded_lattice(const BoundedLattice& L) {
  const Elem sz = static_cast<Elem>(L.size());
  if (L.meet_table.size() != L.size() * L.size() || L.join_table.size() != L.size() * L.size())
    return "table shape";
  for (Elem x = 0; x < sz; ++x) {
    if (L.meet(x, x) != x || L.join(x, x) != x) return "idempotence at " + L.names[x];
    if (L.meet(L.bottom, x) != L.bottom || L.join(L.top, x) != L.top) return "bounds at " + L.names[x];
    for (Elem y = 0; y < sz; ++y) {
      if (L.meet(x, y) != L.meet(y, x) || L.join(x, y) != L.join(y, x)) return "commutativity";
      if (L.meet(x, L.join(x, y)) != x || L.join(x, L.meet(x, y)) != x) return "absorption";
      for (Elem z = 0; z < sz; ++z)
        if (L.meet(x, L.meet(y, z)) != L.meet(L.meet(x, y), z) || L.join(x, L.join(y, z)) != L.join(L.join(x, y), z))
          return "associativity";
    }
  }
  return std::nullopt;
}

/// Distributivity witness (x, y, z) with x and (y or z) != (x and y) or (x and z).
inline std::optional<std::array<Elem, 3>> distributivity_failure(const BoundedLattice& L,
                                                                  std::size_t guard = 2048) {
  if (L.size() > guard) throw GuardExceeded("distributivity check: lattice exceeds guard");
  const Elem sz = static_cast<Elem>(L.size());
  for (Elem x = 0; x < sz; ++x)
    for (Elem y = 0; y < sz; ++y)
      for (Elem z = y; z < sz; ++z)
        if (L.meet(x, L.join(y, z)) != L.join(L.meet(x, y), L.meet(x, z))) return std::array<Elem, 3>{x, y, z};
  return std::nullopt;
}

/// Lattice of a family of subsets closed under union and intersection.
inline BoundedLattice lattice_of_sets(const std::vector<Bitset>& sets, const std::vector<std::string>& point_names) {
  BoundedLattice L;
  const std::size_t sz = sets.size();
  std::unordered_map<Bitset, Elem, BitsetHash> index;
  for (std::size_t i = 0; i < sz; ++i) index.emplace(sets[i], static_cast<Elem>(i));
  auto lookup = [&](const Bitset& b) {
    auto it = index.find(b);
    if (it == index.end()) throw InvalidInput("set family is not a lattice of sets");
    return it->second;
  };
  L.meet_table.resize(sz * sz);
  L.join_table.resize(sz * sz);
  for (std::size_t a = 0; a < sz; ++a)
    for (std::size_t b = 0; b < sz; ++b) {
      L.meet_table[a * sz + b] = lookup(sets[a] & sets[b]);
      L.join_table[a * sz + b] = lookup(sets[a] | sets[b]);
    }
  const std::size_t universe = sets.empty() ? 0 : sets.front().size();
  L.bottom = lookup(Bitset(universe));
  L.top = lookup(Bitset::full(universe));
  for (const auto& s : sets) {
    std::string nm = "{";
    bool first = true;
    s.for_each([&](std::size_t i) {
      if (!first) nm += ',';
      first = false;
      nm += point_names[i];
    });
    L.names.push_back(nm + "}");
  }
  return L;
}

}  // namespace defbil
