#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "defbil/algebra.hpp"
#include "defbil/bits.hpp"
#include "defbil/errors.hpp"

namespace defbil {

/// A map between carriers, indexed by source element.
using ElemMap = std::vector<Elem>;

inline void require_same_signature(const FiniteAlgebra& A, const FiniteAlgebra& B) {
  if (A.signature() != B.signature())
    throw InvalidInput("signature mismatch: n = " + std::to_string(A.n()) + " vs n = " + std::to_string(B.n()));
}

/// True iff `map` preserves every operation of A, constants included.
inline bool is_homomorphism(const ElemMap& map, const FiniteAlgebra& A, const FiniteAlgebra& B) {
  require_same_signature(A, B);
  if (map.size() != A.size()) throw InvalidInput("map size differs from source carrier");
  for (Elem x : map)
    if (x >= B.size()) return false;
  for (std::size_t c = 0; c < A.signature().constant_count(); ++c)
    if (map[A.constant(c)] != B.constant(c)) return false;
  const Elem sz = static_cast<Elem>(A.size());
  for (Elem x = 0; x < sz; ++x) {
    if (map[A.neg(x)] != B.neg(map[x])) return false;
    for (Elem y = 0; y < sz; ++y)
      for (BinaryOp op : kBinaryOps)
        if (map[A.apply(op, x, y)] != B.apply(op, map[x], map[y])) return false;
  }
  return true;
}

namespace detail {

// One closure step: `result` is first produced as op(lhs, rhs) (or neg(lhs)).
struct Derivation {
  Elem result;
  int op;  // 0..3 binary ops, 4 = negation
  Elem lhs, rhs;
};

// Extends `members` to the subuniverse it generates, appending each newly
// reached element with the step that produced it.
inline void close_with_derivation(const FiniteAlgebra& A, Bitset& members, std::vector<Elem>& order,
                                  std::vector<Derivation>& steps) {
  auto add = [&](Elem r, int op, Elem a, Elem b) {
    if (!members.test(r)) {
      members.set(r);
      order.push_back(r);
      steps.push_back({r, op, a, b});
    }
  };
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Elem x = order[i];
    add(A.neg(x), 4, x, x);
    for (std::size_t j = 0; j <= i; ++j) {
      const Elem y = order[j];
      for (int op = 0; op < 4; ++op) {
        add(A.apply(static_cast<BinaryOp>(op), x, y), op, x, y);
        add(A.apply(static_cast<BinaryOp>(op), y, x), op, y, x);
      }
    }
  }
}

inline Elem apply_step(const FiniteAlgebra& B, const Derivation& d, const std::vector<Elem>& img) {
  if (d.op == 4) return B.neg(img[d.lhs]);
  return B.apply(static_cast<BinaryOp>(d.op), img[d.lhs], img[d.rhs]);
}

}  // namespace detail

/// All homomorphisms A -> B in lexicographic order of the map.
///
/// Constants fix their images first. The remaining carrier is covered by a
/// chain of generators g_1..g_m, each stage being the subuniverse generated by
/// the constants and g_1..g_i; the search branches only on generator images,
/// derives every other image from the closure steps, and prunes as soon as a
/// stage fails to be preserved.
inline std::vector<ElemMap> enumerate_homs(const FiniteAlgebra& A, const FiniteAlgebra& B) {
  require_same_signature(A, B);
  const std::size_t sz = A.size();
  constexpr Elem unset = static_cast<Elem>(-1);
  std::vector<Elem> img(sz, unset);

  Bitset members(sz);
  std::vector<Elem> order;
  for (std::size_t c = 0; c < A.signature().constant_count(); ++c) {
    const Elem a = A.constant(c), b = B.constant(c);
    if (img[a] != unset && img[a] != b) return {};
    img[a] = b;
    if (!members.test(a)) {
      members.set(a);
      order.push_back(a);
    }
  }

  struct Stage {
    Elem generator;
    std::size_t first_new;  // offset into `order` where this stage starts
    std::vector<detail::Derivation> steps;
  };
  std::vector<detail::Derivation> base_steps;
  detail::close_with_derivation(A, members, order, base_steps);
  const std::size_t base_end = order.size();
  std::vector<Stage> stages;
  std::vector<std::size_t> stage_end;
  while (order.size() < sz) {
    const Elem g = static_cast<Elem>(members.complement().first());
    Stage st{g, order.size(), {}};
    members.set(g);
    order.push_back(g);
    detail::close_with_derivation(A, members, order, st.steps);
    stages.push_back(std::move(st));
    stage_end.push_back(order.size());
  }

  // checks op-preservation for pairs with at least one element in order[from, to)
  auto preserved = [&](std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i) {
      const Elem x = order[i];
      if (img[A.neg(x)] != B.neg(img[x])) return false;
      for (std::size_t j = 0; j < to; ++j) {
        const Elem y = order[j];
        for (BinaryOp op : kBinaryOps) {
          if (img[A.apply(op, x, y)] != B.apply(op, img[x], img[y])) return false;
          if (img[A.apply(op, y, x)] != B.apply(op, img[y], img[x])) return false;
        }
      }
    }
    return true;
  };

  for (const auto& d : base_steps) img[d.result] = detail::apply_step(B, d, img);
  std::vector<ElemMap> out;
  if (!preserved(0, base_end)) return out;

  auto search = [&](auto&& self, std::size_t s) -> void {
    if (s == stages.size()) {
      out.push_back(img);
      return;
    }
    const Stage& st = stages[s];
    for (Elem b = 0; b < B.size(); ++b) {
      img[st.generator] = b;
      for (const auto& d : st.steps) img[d.result] = detail::apply_step(B, d, img);
      if (preserved(st.first_new, stage_end[s])) self(self, s + 1);
    }
  };
  search(search, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace defbil
