#pragma once

// Carriers, piggyback relations and the carrier-space dual.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "defbil/algebra.hpp"
#include "defbil/bits.hpp"
#include "defbil/closure.hpp"
#include "defbil/doubled.hpp"
#include "defbil/errors.hpp"
#include "defbil/isomorphism.hpp"
#include "defbil/lattice.hpp"
#include "defbil/multisorted.hpp"
#include "defbil/poset.hpp"
#include "defbil/priestley.hpp"
#include "defbil/subuniverse.hpp"

namespace defbil {

enum class CarrierKind { gamma, delta };

struct Carrier {
  int sort = 0;
  CarrierKind kind = CarrierKind::gamma;
  std::vector<bool> map;  // M_k -> {0, 1}

  std::string name() const { return std::string(kind == CarrierKind::gamma ? "gamma" : "delta") + std::to_string(sort); }
  bool operator()(Elem a) const { return map[a]; }
  friend bool operator==(const Carrier&, const Carrier&) = default;
};

inline Carrier prime(const Carrier& w, const std::vector<Carrier>& all) {
  for (const auto& c : all)
    if (c.sort == w.sort && c.kind != w.kind) return c;
  throw InvalidInput("carrier has no partner");
}

/// gamma_k, delta_k for k = 0..n, in that order.
inline std::vector<Carrier> build_carriers(int n) {
  if (n < 1) throw InvalidInput("carriers need n >= 1");
  std::vector<Carrier> out;
  for (int k = 0; k <= n; ++k) {
    const std::size_t sz = k == 0 ? 4 : 6;
    Carrier g{k, CarrierKind::gamma, std::vector<bool>(sz, false)};
    Carrier d{k, CarrierKind::delta, std::vector<bool>(sz, false)};
    if (k == 0) {
      g.map[M0::top] = g.map[M0::t] = true;
      d.map[M0::bot] = d.map[M0::t] = true;
    } else {
      g.map[Mk::one] = true;
      d.map.assign(sz, true);
      d.map[Mk::zero] = false;
    }
    const auto L = lattice_reduct(build_mk(n, k));
    if (!is_hom_to_two(L, g.map) || !is_hom_to_two(L, d.map))
      throw InvariantViolation("carrier is not a bounded-lattice homomorphism at sort " + std::to_string(k));
    out.push_back(std::move(g));
    out.push_back(std::move(d));
  }
  return out;
}

/// First pair of one sort separated neither by a carrier of that sort nor,
/// after g_k, by a carrier of sort 0.
inline std::optional<std::pair<SortedPoint, SortedPoint>> sep_failure(int n, const std::vector<Carrier>& carriers) {
  for (int k = 0; k <= n; ++k) {
    const auto gk = g_map(k);
    const Elem sz = k == 0 ? 4 : 6;
    for (Elem a = 0; a < sz; ++a)
      for (Elem b = a + 1; b < sz; ++b) {
        bool sep = false;
        for (const auto& w : carriers) {
          if (w.sort == k && w(a) != w(b)) sep = true;
          if (w.sort == 0 && w(gk[a]) != w(gk[b])) sep = true;
        }
        if (!sep) return std::make_pair(SortedPoint{k, a}, SortedPoint{k, b});
      }
  }
  return std::nullopt;
}

inline bool check_sep(int n) { return !sep_failure(n, build_carriers(n)); }

/// A binary relation from M_j to M_k; pair (a, b) sits at a * |M_k| + b.
struct SortedRelation {
  int j = 0, k = 0;
  Bitset pairs;

  std::size_t width() const { return k == 0 ? 4 : 6; }
  std::size_t height() const { return j == 0 ? 4 : 6; }
  bool contains(Elem a, Elem b) const { return pairs.test(a * width() + b); }
  SortedRelation converse() const {
    SortedRelation r{k, j, Bitset(pairs.size())};
    for (Elem a = 0; a < height(); ++a)
      for (Elem b = 0; b < width(); ++b)
        if (contains(a, b)) r.pairs.set(b * height() + a);
    return r;
  }
  friend bool operator==(const SortedRelation&, const SortedRelation&) = default;
};

inline std::size_t sort_size(int k) { return k == 0 ? 4 : 6; }

template <class Pred>
SortedRelation relation_where(int j, int k, Pred&& pred) {
  SortedRelation r{j, k, Bitset(sort_size(j) * sort_size(k))};
  for (Elem a = 0; a < sort_size(j); ++a)
    for (Elem b = 0; b < sort_size(k); ++b)
      if (pred(a, b)) r.pairs.set(a * sort_size(k) + b);
  return r;
}

/// (w1, w2)^{-1}(<=), checked to be a bounded sublattice of the product reduct.
inline SortedRelation preimage_sublattice(int n, const Carrier& w1, const Carrier& w2) {
  auto r = relation_where(w1.sort, w2.sort, [&](Elem a, Elem b) { return !w1(a) || w2(b); });
  const auto A = build_mk(n, w1.sort), B = build_mk(n, w2.sort);
  const SignatureN sig{n};
  for (Elem a = 0; a < A.size(); ++a)
    for (Elem b = 0; b < B.size(); ++b) {
      if (!r.contains(a, b)) continue;
      for (Elem c = 0; c < A.size(); ++c)
        for (Elem d = 0; d < B.size(); ++d) {
          if (!r.contains(c, d)) continue;
          if (!r.contains(A.meet_t(a, c), B.meet_t(b, d)) || !r.contains(A.join_t(a, c), B.join_t(b, d)))
            throw InvariantViolation("carrier preimage is not a sublattice");
        }
    }
  if (!r.contains(A.constant(sig.f(0)), B.constant(sig.f(0))) || !r.contains(A.constant(sig.t(0)), B.constant(sig.t(0))))
    throw InvariantViolation("carrier preimage misses a bound");
  return r;
}

/// S_<=^{jk} and S_>=^{jk} from g_j, g_k and <=^0.
inline std::pair<SortedRelation, SortedRelation> build_S_relations(int j, int k) {
  const auto gj = g_map(j), gk = g_map(k);
  const BitMatrix le0 = alter_ego_relation(0, 0);
  auto le = relation_where(j, k, [&](Elem a, Elem b) { return le0(gj[a], gk[b]); });
  auto ge = relation_where(j, k, [&](Elem a, Elem b) { return le0(gk[b], gj[a]); });
  return {le, ge};
}

/// The (false x false) + (true x true) + bound-row/column description.
inline std::pair<SortedRelation, SortedRelation> explicit_S_relations(int j, int k) {
  const Elem botj = j == 0 ? M0::bot : Mk::bot, topj = j == 0 ? M0::top : Mk::top;
  const Elem botk = k == 0 ? M0::bot : Mk::bot, topk = k == 0 ? M0::top : Mk::top;
  auto F = [](int s, Elem a) {
    auto v = false_constants(s);
    return std::find(v.begin(), v.end(), a) != v.end();
  };
  auto T = [](int s, Elem a) {
    auto v = true_constants(s);
    return std::find(v.begin(), v.end(), a) != v.end();
  };
  auto common = [&](Elem a, Elem b) { return (F(j, a) && F(k, b)) || (T(j, a) && T(k, b)); };
  auto le = relation_where(j, k, [&](Elem a, Elem b) { return b == topk || a == botj || common(a, b); });
  auto ge = relation_where(j, k, [&](Elem a, Elem b) { return b == botk || a == topj || common(a, b); });
  return {le, ge};
}

inline SortedRelation relation_from_matrix(int j, int k, const BitMatrix& m) {
  return relation_where(j, k, [&](Elem a, Elem b) { return m(a, b); });
}

/// Named relations from M_j to M_k used to label subuniverses.
inline std::vector<std::pair<std::string, SortedRelation>> relation_catalogue(int j, int k) {
  const std::string J = std::to_string(j), K = std::to_string(k), JK = "{" + J + K + "}";
  std::vector<std::pair<std::string, SortedRelation>> cat;
  if (j == k) {
    const auto le = relation_from_matrix(k, k, alter_ego_relation(k, k));
    cat.emplace_back("<=^" + K, le);
    cat.emplace_back(">=^" + K, le.converse());
  } else if (j >= 1 && k >= 1 && j < k) {
    cat.emplace_back("<=^" + JK, relation_from_matrix(j, k, alter_ego_relation(j, k)));
  } else if (j >= 1 && k >= 1) {
    cat.emplace_back(">=^" + JK, relation_from_matrix(k, j, alter_ego_relation(k, j)).converse());
  }
  auto [sle, sge] = build_S_relations(j, k);
  cat.emplace_back("S<=^" + JK, sle);
  cat.emplace_back("S>=^" + JK, sge);
  cat.emplace_back("Delta/K_" + JK, relation_where(j, k, [&](Elem a, Elem b) { return j == k && a == b; }));
  if (j == 0 && k > 0) {
    const auto gk = g_map(k);
    cat.back() = {"K_" + JK, relation_where(j, k, [&](Elem a, Elem b) { return gk[b] == a; })};
  } else if (k == 0 && j > 0) {
    const auto gj = g_map(j);
    cat.back() = {"K_" + JK, relation_where(j, k, [&](Elem a, Elem b) { return gj[a] == b; })};
  } else if (j != k) {
    cat.pop_back();
  }
  cat.emplace_back("M" + J + "xM" + K, relation_where(j, k, [](Elem, Elem) { return true; }));
  return cat;
}

/// Catalogue name of a relation; throws if it is not catalogued.
inline std::string relation_name(const SortedRelation& r) {
  for (const auto& [name, rel] : relation_catalogue(r.j, r.k))
    if (rel == r) return name;
  throw InvariantViolation("relation between sorts " + std::to_string(r.j) + " and " + std::to_string(r.k) +
                           " is not in the catalogue");
}

/// Subuniverses of M_j x M_k, memoised per (j, k).
class SubuniverseCache {
 public:
  explicit SubuniverseCache(int n) : n_(n) {}
  const SubuniverseSet& get(int j, int k) {
    auto it = cache_.find({j, k});
    if (it != cache_.end()) return it->second;
    const auto prod = product({build_mk(n_, j), build_mk(n_, k)});
    return cache_.emplace(std::make_pair(j, k), enumerate_subuniverses(prod)).first->second;
  }
  int n() const { return n_; }

 private:
  int n_;
  std::map<std::pair<int, int>, SubuniverseSet> cache_;
};

inline std::vector<SortedRelation> as_relations(int j, int k, const std::vector<Bitset>& sets) {
  std::vector<SortedRelation> out;
  for (const auto& s : sets) out.push_back({j, k, s});
  return out;
}

/// R_{w1 w2}: maximal subuniverses of M_j x M_k inside (w1, w2)^{-1}(<=).
inline std::vector<SortedRelation> piggyback_relations(SubuniverseCache& cache, const Carrier& w1, const Carrier& w2) {
  const auto pre = preimage_sublattice(cache.n(), w1, w2);
  const auto& subs = cache.get(w1.sort, w2.sort);
  std::vector<Bitset> inside;
  for (const auto& s : subs.members)
    if (s.is_subset_of(pre.pairs)) inside.push_back(s);
  std::vector<Bitset> maximal;
  for (const auto& s : inside) {
    bool is_max = true;
    for (const auto& t : inside)
      if (t != s && s.is_subset_of(t)) is_max = false;
    if (is_max) maximal.push_back(s);
  }
  return as_relations(w1.sort, w2.sort, maximal);
}

inline std::vector<std::string> relation_names(const std::vector<SortedRelation>& rs) {
  std::vector<std::string> out;
  for (const auto& r : rs) out.push_back(relation_name(r));
  std::sort(out.begin(), out.end());
  return out;
}

/// The table's cell for (w1, w2), blank cells extended along the j < k pattern.
inline std::vector<std::string> expected_piggyback_cell(const Carrier& w1, const Carrier& w2) {
  const int a = w1.sort, b = w2.sort;
  const bool g1 = w1.kind == CarrierKind::gamma, g2 = w2.kind == CarrierKind::gamma;
  const std::string AB = "{" + std::to_string(a) + std::to_string(b) + "}";
  const std::string A = std::to_string(a);
  std::vector<std::string> out;
  if (a == 0 && b == 0) {
    if (g1 && g2) out = {"<=^0"};
    if (!g1 && !g2) out = {">=^0"};
  } else if (a == 0) {
    if (!g2) out = {g1 ? "S<=^" + AB : "S>=^" + AB};
  } else if (b == 0) {
    if (g1) out = {g2 ? "S<=^" + AB : "S>=^" + AB};
  } else if (a == b) {
    if (g1 && g2) out = {"<=^" + A};
    if (g1 && !g2) out = {"S<=^" + AB, "S>=^" + AB};
    if (!g1 && !g2) out = {">=^" + A};
  } else if (a < b) {
    if (g1 && g2) out = {"<=^" + AB};
    if (g1 && !g2) out = {"S<=^" + AB, "S>=^" + AB};
  } else {
    if (g1 && !g2) out = {"S<=^" + AB, "S>=^" + AB};
    if (!g1 && !g2) out = {">=^" + AB};
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct RelationTableRow {
  Carrier w1, w2;
  std::vector<std::string> computed, expected;
  bool matches() const { return computed == expected; }
};

inline std::vector<RelationTableRow> relation_table(int n) {
  SubuniverseCache cache(n);
  const auto carriers = build_carriers(n);
  std::vector<RelationTableRow> rows;
  for (const auto& w1 : carriers)
    for (const auto& w2 : carriers)
      rows.push_back({w1, w2, relation_names(piggyback_relations(cache, w1, w2)), expected_piggyback_cell(w1, w2)});
  return rows;
}

/// Meet-irreducibles of Sub(M_j x M_k) by catalogue name, and the expected set.
inline std::vector<std::string> meet_irreducible_names(SubuniverseCache& cache, int j, int k) {
  return relation_names(as_relations(j, k, cache.get(j, k).meet_irreducibles()));
}

inline std::vector<std::string> expected_meet_irreducibles(int j, int k) {
  const std::string JK = "{" + std::to_string(j) + std::to_string(k) + "}";
  std::vector<std::string> out = {"S<=^" + JK, "S>=^" + JK};
  if (j == 0 && k == 0) out = {"<=^0", ">=^0"};
  else if (j == k) out = {"<=^" + std::to_string(k), ">=^" + std::to_string(k), "S<=^" + JK, "S>=^" + JK};
  else if (j >= 1 && k >= 1) out.push_back((j < k ? "<=^" : ">=^") + JK);
  std::sort(out.begin(), out.end());
  return out;
}

/// Bottom of Sub(M_j x M_k): the subuniverse generated by the constants.
inline SortedRelation subuniverse_bottom(SubuniverseCache& cache, int j, int k) {
  return {j, k, cache.get(j, k).members.front()};
}

inline SortedRelation expected_bottom(int j, int k) {
  if (j == k) return relation_where(j, k, [](Elem a, Elem b) { return a == b; });
  if (j == 0) {
    const auto gk = g_map(k);
    return relation_where(j, k, [&](Elem a, Elem b) { return gk[b] == a; });
  }
  if (k == 0) {
    const auto gj = g_map(j);
    return relation_where(j, k, [&](Elem a, Elem b) { return gj[a] == b; });
  }
  if (j < k) return relation_from_matrix(j, k, alter_ego_relation(j, k));
  return relation_from_matrix(k, j, alter_ego_relation(k, j)).converse();
}

/// Y = union of X_k x Omega_k with the piggyback quasi-order. Point layout
/// matches construct_P: (x, gamma) at the flat index of x, (x, delta) after all
/// gammas, so eta is the identity on indices.
struct CarrierSpace {
  NaturalDual dual;
  Poset order;
};

inline CarrierSpace build_carrier_space(const FiniteAlgebra& A) {
  const int n = A.n();
  auto D = natural_dual(A);
  const auto carriers = build_carriers(n);
  SubuniverseCache cache(n);
  struct Pt {
    int sort;
    std::size_t x;
    const Carrier* w;
  };
  std::vector<Pt> pts;
  for (int pass = 0; pass < 2; ++pass)
    for (int k = 0; k <= n; ++k)
      for (std::size_t x = 0; x < D.structure.sort_size(k); ++x)
        pts.push_back({k, x, &carriers[static_cast<std::size_t>(2 * k + pass)]});
  std::map<std::pair<std::string, std::string>, std::vector<SortedRelation>> R;
  for (const auto& w1 : carriers)
    for (const auto& w2 : carriers) R[{w1.name(), w2.name()}] = piggyback_relations(cache, w1, w2);
  const std::size_t sz = pts.size();
  BitMatrix leq(sz);
  for (std::size_t p = 0; p < sz; ++p)
    for (std::size_t q = 0; q < sz; ++q) {
      const auto& hx = D.homs[static_cast<std::size_t>(pts[p].sort)][pts[p].x];
      const auto& hy = D.homs[static_cast<std::size_t>(pts[q].sort)][pts[q].x];
      for (const auto& rel : R[{pts[p].w->name(), pts[q].w->name()}]) {
        bool all = true;
        for (Elem a = 0; a < A.size() && all; ++a) all = rel.contains(hx[a], hy[a]);
        if (all) {
          leq.set(p, q);
          break;
        }
      }
    }
  std::vector<std::string> names;
  for (const auto& p : pts)
    names.push_back("(" + D.structure.sorts[static_cast<std::size_t>(p.sort)][p.x] + "," + p.w->name() + ")");
  if (auto v = check_poset(leq)) {
    if (v->kind == PosetViolation::Kind::antisymmetry)
      throw InvariantViolation("piggyback quasi-order is not antisymmetric: " + v->describe(&names));
    throw InvariantViolation("piggyback relation is not a quasi-order: " + v->describe(&names));
  }
  return {std::move(D), Poset(std::move(names), std::move(leq))};
}

struct PiggybackReport {
  bool eta_iso = false, priestley_iso = false;
  std::size_t points = 0;
  std::string failure;
  bool ok() const { return eta_iso && priestley_iso; }
};

/// eta: P(D(A)) -> carrier space is an order-isomorphism, and the carrier
/// space is isomorphic to H(A^flat).
inline PiggybackReport verify_piggyback_iso(const FiniteAlgebra& A) {
  PiggybackReport r;
  const auto Y = build_carrier_space(A);
  const Poset P = construct_P(Y.dual.structure);
  r.points = Y.order.size();
  std::vector<std::size_t> eta(P.size());
  for (std::size_t i = 0; i < eta.size(); ++i) eta[i] = i;
  r.eta_iso = is_order_isomorphism(P, Y.order, eta);
  if (!r.eta_iso) r.failure = "eta is not an order-isomorphism";
  const auto H = priestley_dual_of_lattice(lattice_reduct(A));
  r.priestley_iso = find_isomorphism(Y.order, H.poset).has_value();
  if (!r.priestley_iso) r.failure += (r.failure.empty() ? "" : "; ") + std::string("carrier space is not H(A)");
  return r;
}

}  // namespace defbil
