#pragma once

// Single-sorted ranked spaces <Y; <=, g, rank> and the functors F and G.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "defbil/axioms.hpp"
#include "defbil/bits.hpp"
#include "defbil/errors.hpp"
#include "defbil/multisorted.hpp"
#include "defbil/poset.hpp"

namespace defbil {

struct RankedPriestleySpace {
  int n = 1;
  std::vector<std::string> names;
  BitMatrix leq;
  std::vector<std::size_t> g;
  std::vector<int> rank;

  std::size_t size() const { return names.size(); }
  friend bool operator==(const RankedPriestleySpace&, const RankedPriestleySpace&) = default;
};

struct BReport {
  std::array<bool, 6> holds{true, true, true, true, true, true};  // B1..B6
  std::array<std::string, 6> detail;
  bool partition_axiom = true;  // first-order replacement for B5
  bool ok() const {
    for (bool b : holds)
      if (!b) return false;
    return true;
  }
  bool operator[](int i) const { return holds[static_cast<std::size_t>(i - 1)]; }
};

/// Order components: connected components of the comparability graph.
inline std::vector<std::size_t> order_components(const BitMatrix& leq) {
  const std::size_t sz = leq.rows();
  std::vector<std::size_t> comp(sz, sz);
  std::size_t next = 0;
  for (std::size_t s = 0; s < sz; ++s) {
    if (comp[s] != sz) continue;
    std::vector<std::size_t> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < sz; ++b)
        if ((leq(a, b) || leq(b, a)) && comp[b] == sz) {
          comp[b] = next;
          stack.push_back(b);
        }
    }
    ++next;
  }
  return comp;
}

inline BReport check_axioms_B(const RankedPriestleySpace& Y) {
  BReport r;
  const std::size_t sz = Y.size();
  auto fail = [&](int i, std::string d) {
    auto& h = r.holds[static_cast<std::size_t>(i - 1)];
    if (!h) return;
    h = false;
    r.detail[static_cast<std::size_t>(i - 1)] = std::move(d);
  };
  if (Y.leq.rows() != sz || Y.g.size() != sz || Y.rank.size() != sz)
    throw InvalidInput("ranked space: component sizes differ");
  for (std::size_t x = 0; x < sz; ++x) {
    if (Y.g[x] >= sz) throw InvalidInput("ranked space: g leaves the carrier");
    if (Y.rank[x] < 0 || Y.rank[x] > Y.n) throw InvalidInput("ranked space: rank outside [0, n]");
  }
  if (auto v = check_poset(Y.leq)) fail(1, v->describe(&Y.names));
  for (std::size_t x = 0; x < sz; ++x)
    if (Y.g[Y.g[x]] != Y.g[x]) fail(2, "g(g(" + Y.names[x] + ")) != g(" + Y.names[x] + ")");
  for (std::size_t x = 0; x < sz; ++x)
    Y.leq.row(x).for_each([&](std::size_t y) {
      // B3 constrains only points outside g(Y); on g(Y) the retraction is the identity
      if (Y.rank[x] > 0 && Y.g[x] != Y.g[y]) fail(3, Y.names[x] + " <= " + Y.names[y] + " with different g-images");
      if (Y.rank[x] > Y.rank[y]) fail(5, "rank drops from " + Y.names[x] + " to " + Y.names[y]);
    });
  // B4: every component meeting g(Y) lies inside g(Y)
  Bitset image(sz);
  for (std::size_t x = 0; x < sz; ++x) image.set(Y.g[x]);
  const auto comp = order_components(Y.leq);
  for (std::size_t x = 0; x < sz; ++x)
    for (std::size_t y = 0; y < sz; ++y)
      if (comp[x] == comp[y] && image.test(x) && !image.test(y))
        fail(4, "component of " + Y.names[x] + " leaves g(Y) at " + Y.names[y]);
  for (std::size_t x = 0; x < sz; ++x)
    if (image.test(x) != (Y.rank[x] == 0)) fail(6, "g(Y) and rank 0 differ at " + Y.names[x]);
  // partition form: x in Y_k and x <= y put y in Y_k or above
  for (std::size_t x = 0; x < sz; ++x)
    Y.leq.row(x).for_each([&](std::size_t y) {
      if (Y.rank[y] < Y.rank[x]) r.partition_axiom = false;
    });
  if (r.partition_axiom != r.holds[4]) throw InvariantViolation("partition axiom and B5 disagree");
  return r;
}

/// F(X): sorts concatenated in order, rank = sort, g_0 = id, order amalgamated.
inline RankedPriestleySpace functor_F(const MultiSortedStructure& X) {
  auto report = check_axioms(X);
  if (!report.ok()) throw InvalidInput("functor F: structure fails the axioms\n" + report.summary());
  RankedPriestleySpace Y;
  Y.n = X.n;
  auto am = amalgamate(X);
  Y.leq = std::move(am.leq);
  for (int k = 0; k <= X.n; ++k)
    for (std::size_t x = 0; x < X.sort_size(k); ++x) {
      Y.names.push_back(X.sorts[static_cast<std::size_t>(k)][x]);
      Y.g.push_back(X.g_of(k, x));
      Y.rank.push_back(k);
    }
  return Y;
}

/// G(Y): X_k = rank^{-1}(k) in increasing index order, everything restricted.
inline MultiSortedStructure functor_G(const RankedPriestleySpace& Y) {
  auto report = check_axioms_B(Y);
  if (!report.ok()) throw InvalidInput("functor G: space fails B1-B6");
  MultiSortedStructure X;
  X.n = Y.n;
  const auto N = static_cast<std::size_t>(Y.n) + 1;
  std::vector<std::vector<std::size_t>> members(N);
  std::vector<std::size_t> local(Y.size());
  for (std::size_t y = 0; y < Y.size(); ++y) {
    auto& m = members[static_cast<std::size_t>(Y.rank[y])];
    local[y] = m.size();
    m.push_back(y);
  }
  auto restrict_rel = [&](std::size_t j, std::size_t k) {
    BitMatrix m(members[j].size(), members[k].size());
    for (std::size_t a = 0; a < members[j].size(); ++a)
      for (std::size_t b = 0; b < members[k].size(); ++b) m.set(a, b, Y.leq(members[j][a], members[k][b]));
    return m;
  };
  for (std::size_t k = 0; k < N; ++k) {
    std::vector<std::string> names;
    std::vector<std::size_t> g;
    for (std::size_t y : members[k]) {
      names.push_back(Y.names[y]);
      g.push_back(local[Y.g[y]]);
    }
    X.sorts.push_back(std::move(names));
    X.g.push_back(std::move(g));
    X.rel.push_back(restrict_rel(k, k));
  }
  for (std::size_t j = 1; j < N; ++j)
    for (std::size_t k = j + 1; k < N; ++k)
      X.rel_jk.emplace(std::make_pair(static_cast<int>(j), static_cast<int>(k)), restrict_rel(j, k));
  X.validate();
  return X;
}

/// Flat index map of a multi-sorted morphism on F(X) -> F(X').
inline std::vector<std::size_t> flatten_morphism(const MultiMorphism& phi, const MultiSortedStructure& target) {
  std::vector<std::size_t> offset{0};
  for (int k = 0; k <= target.n; ++k) offset.push_back(offset.back() + target.sort_size(k));
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < phi.size(); ++k)
    for (std::size_t v : phi[k]) out.push_back(offset[k] + v);
  return out;
}

/// Inverse of flatten_morphism for rank-preserving maps between F-images.
inline std::optional<MultiMorphism> unflatten_morphism(const std::vector<std::size_t>& f,
                                                       const MultiSortedStructure& source,
                                                       const MultiSortedStructure& target) {
  std::vector<std::size_t> offset{0};
  for (int k = 0; k <= target.n; ++k) offset.push_back(offset.back() + target.sort_size(k));
  MultiMorphism phi(source.sorts.size());
  std::size_t pos = 0;
  for (int k = 0; k <= source.n; ++k)
    for (std::size_t x = 0; x < source.sort_size(k); ++x, ++pos) {
      const auto K = static_cast<std::size_t>(k);
      if (f[pos] < offset[K] || f[pos] >= offset[K + 1]) return std::nullopt;
      phi[K].push_back(f[pos] - offset[K]);
    }
  return phi;
}

/// Whether f preserves <=, g and rank.
inline bool is_ranked_morphism(const std::vector<std::size_t>& f, const RankedPriestleySpace& A,
                               const RankedPriestleySpace& B) {
  if (f.size() != A.size()) return false;
  for (std::size_t x = 0; x < A.size(); ++x) {
    if (f[x] >= B.size()) return false;
    if (B.rank[f[x]] != A.rank[x]) return false;
    if (f[A.g[x]] != B.g[f[x]]) return false;
  }
  for (std::size_t x = 0; x < A.size(); ++x) {
    bool ok = true;
    A.leq.row(x).for_each([&](std::size_t y) { ok = ok && B.leq(f[x], f[y]); });
    if (!ok) return false;
  }
  return true;
}

}  // namespace defbil
