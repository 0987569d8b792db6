#pragma once

// Order-isomorphism of finite posets: colour refinement, then backtracking.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "defbil/errors.hpp"
#include "defbil/poset.hpp"

namespace defbil {

namespace detail {

/// Stable colouring of the disjoint union of p and q so that colours are
/// comparable across the two posets.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> refine_colours(const Poset& p, const Poset& q) {
  const std::size_t np = p.size(), total = p.size() + q.size();
  auto poset_of = [&](std::size_t v) -> const Poset& { return v < np ? p : q; };
  auto local = [&](std::size_t v) { return v < np ? v : v - np; };
  std::vector<std::size_t> colour(total, 0);
  std::size_t classes = 1;
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> sig_ids;
    std::vector<std::size_t> next(total);
    for (std::size_t v = 0; v < total; ++v) {
      const Poset& P = poset_of(v);
      const std::size_t off = v < np ? 0 : np;
      std::vector<std::size_t> ups, downs;
      P.up(local(v)).for_each([&](std::size_t w) {
        if (w != local(v)) ups.push_back(colour[off + w]);
      });
      P.down(local(v)).for_each([&](std::size_t w) {
        if (w != local(v)) downs.push_back(colour[off + w]);
      });
      std::sort(ups.begin(), ups.end());
      std::sort(downs.begin(), downs.end());
      std::vector<std::size_t> sig{colour[v], ups.size(), downs.size()};
      sig.insert(sig.end(), ups.begin(), ups.end());
      sig.push_back(static_cast<std::size_t>(-1));
      sig.insert(sig.end(), downs.begin(), downs.end());
      next[v] = sig_ids.emplace(std::move(sig), sig_ids.size()).first->second;
    }
    colour = std::move(next);
    if (sig_ids.size() == classes) break;
    classes = sig_ids.size();
  }
  return {std::vector<std::size_t>(colour.begin(), colour.begin() + static_cast<std::ptrdiff_t>(np)),
          std::vector<std::size_t>(colour.begin() + static_cast<std::ptrdiff_t>(np), colour.end())};
}

}  // namespace detail

/// True iff f is a bijection with a <= b exactly when f(a) <= f(b).
inline bool is_order_isomorphism(const Poset& p, const Poset& q, const std::vector<std::size_t>& f) {
  if (p.size() != q.size() || f.size() != p.size()) return false;
  std::vector<bool> hit(q.size(), false);
  for (auto v : f) {
    if (v >= q.size() || hit[v]) return false;
    hit[v] = true;
  }
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b)
      if (p.leq(a, b) != q.leq(f[a], f[b])) return false;
  return true;
}

/// An order-isomorphism p -> q, if one exists. Above 64 points the search is
/// refused unless refinement leaves every colour class tiny.
inline std::optional<std::vector<std::size_t>> find_isomorphism(const Poset& p, const Poset& q) {
  if (p.size() != q.size()) return std::nullopt;
  if (p.matrix().count() != q.matrix().count()) return std::nullopt;
  const std::size_t n = p.size();
  auto [cp, cq] = detail::refine_colours(p, q);
  std::map<std::size_t, std::vector<std::size_t>> class_p, class_q;
  for (std::size_t v = 0; v < n; ++v) class_p[cp[v]].push_back(v);
  for (std::size_t v = 0; v < n; ++v) class_q[cq[v]].push_back(v);
  if (class_p.size() != class_q.size()) return std::nullopt;
  std::size_t widest = 0;
  for (auto& [c, vs] : class_p) {
    auto it = class_q.find(c);
    if (it == class_q.end() || it->second.size() != vs.size()) return std::nullopt;
    widest = std::max(widest, vs.size());
  }
  if (n > 64 && widest > 4)
    throw GuardExceeded("poset isomorphism refused: " + std::to_string(n) + " points with colour class of " +
                        std::to_string(widest));

  // assign the most constrained points first: small classes, then index
  std::vector<std::size_t> order(n);
  for (std::size_t v = 0; v < n; ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return class_p[cp[a]].size() < class_p[cp[b]].size(); });
  std::vector<std::size_t> f(n, n);
  std::vector<bool> used(n, false);
  std::vector<std::size_t> placed;
  auto consistent = [&](std::size_t a, std::size_t fa) {
    for (std::size_t b : placed)
      if (p.leq(a, b) != q.leq(fa, f[b]) || p.leq(b, a) != q.leq(f[b], fa)) return false;
    return true;
  };
  auto search = [&](auto& self, std::size_t depth) -> bool {
    if (depth == n) return true;
    const std::size_t a = order[depth];
    for (std::size_t cand : class_q[cp[a]]) {
      if (used[cand] || !consistent(a, cand)) continue;
      f[a] = cand;
      used[cand] = true;
      placed.push_back(a);
      if (self(self, depth + 1)) return true;
      placed.pop_back();
      used[cand] = false;
    }
    f[a] = n;
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  if (!is_order_isomorphism(p, q, f)) throw InvariantViolation("isomorphism search produced an invalid witness");
  return f;
}

inline bool are_isomorphic(const Poset& p, const Poset& q) { return find_isomorphism(p, q).has_value(); }

}  // namespace defbil
