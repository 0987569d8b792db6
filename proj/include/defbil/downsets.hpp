#pragma once

// Counting and enumerating down-sets of finite posets.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>

#include "defbil/bits.hpp"
#include "defbil/errors.hpp"
#include "defbil/poset.hpp"

namespace defbil {

inline constexpr std::uint64_t kDefaultDownsetBudget = 100'000'000;

namespace detail {

class DownsetCounter {
 public:
  DownsetCounter(const Poset& p, std::uint64_t budget) : p_(p), budget_(budget) {}

  std::uint64_t count(const Bitset& s) {
    if (s.none()) return 1;
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    if (++nodes_ > budget_)
      throw GuardExceeded("down-set counting exceeded node budget " + std::to_string(budget_));
    std::uint64_t result = 0;
    auto comps = p_.components(s);
    if (comps.size() > 1) {
      result = 1;
      for (const auto& c : comps) result = mul(result, count(c));
    } else {
      // branch on a minimal element m: m absent kills up(m); m present leaves s - {m}
      const std::size_t m = pick_minimal(s);
      Bitset without = s;
      without.reset(m);
      result = add(count(s - p_.up(m)), count(without));
    }
    memo_.emplace(s, result);
    return result;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  // the minimal element with the largest up-set inside s
  std::size_t pick_minimal(const Bitset& s) const {
    std::size_t best = s.first(), best_up = 0;
    s.for_each([&](std::size_t a) {
      if ((p_.down(a) & s).count() != 1) return;
      const std::size_t u = (p_.up(a) & s).count();
      if (u > best_up) {
        best = a;
        best_up = u;
      }
    });
    return best;
  }
  static std::uint64_t add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw GuardExceeded("down-set count overflows 64 bits");
    return r;
  }
  static std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw GuardExceeded("down-set count overflows 64 bits");
    return r;
  }

  const Poset& p_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::unordered_map<Bitset, std::uint64_t, BitsetHash> memo_;
};

}  // namespace detail

/// |O(P)|, exact.
inline std::uint64_t count_downsets(const Poset& p, std::uint64_t budget = kDefaultDownsetBudget) {
  detail::DownsetCounter c(p, budget);
  return c.count(Bitset::full(p.size()));
}

/// Down-sets of P contained in `within` (which need not be a down-set).
inline std::uint64_t count_downsets_within(const Poset& p, const Bitset& within,
                                           std::uint64_t budget = kDefaultDownsetBudget) {
  detail::DownsetCounter c(p, budget);
  return c.count(within);
}

/// Calls visit(U) for every down-set U of P, each exactly once. The visit
/// budget bounds the number of down-sets emitted.
inline void for_each_downset(const Poset& p, const std::function<void(const Bitset&)>& visit,
                             std::uint64_t budget = kDefaultDownsetBudget) {
  std::uint64_t emitted = 0;
  Bitset current(p.size());
  // rest: points still undecided; every point of current lies below none of rest's removed points
  std::function<void(Bitset&)> go = [&](Bitset& rest) {
    Bitset mins = p.minimal(rest);
    if (mins.none()) {
      if (++emitted > budget) throw GuardExceeded("down-set enumeration exceeded budget");
      visit(current);
      return;
    }
    const std::size_t m = mins.first();
    Bitset excl = rest - p.up(m);
    go(excl);
    Bitset incl = rest;
    incl.reset(m);
    current.set(m);
    go(incl);
    current.reset(m);
  };
  Bitset all = Bitset::full(p.size());
  go(all);
}

/// Brute-force count over all 2^|P| subsets; small posets only.
inline std::uint64_t count_downsets_brute_force(const Poset& p) {
  if (p.size() > 24) throw GuardExceeded("brute-force down-set count limited to 24 points");
  std::uint64_t c = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p.size()); ++mask) {
    Bitset s(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
      if (mask >> i & 1U) s.set(i);
    if (p.is_downset(s)) ++c;
  }
  return c;
}

}  // namespace defbil
