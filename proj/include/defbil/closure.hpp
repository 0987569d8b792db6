#pragma once

// Generated subalgebras, products and one-generator free algebras.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "defbil/algebra.hpp"
#include "defbil/bits.hpp"
#include "defbil/errors.hpp"

namespace defbil {

/// Anything that can evaluate the J_n operations on its values.
template <class V>
concept AlgebraView = requires(const V& v, const typename V::value_type& x, BinaryOp op, std::size_t c) {
  { v.n() } -> std::convertible_to<int>;
  { v.apply(op, x, x) } -> std::same_as<typename V::value_type>;
  { v.neg(x) } -> std::same_as<typename V::value_type>;
  { v.constant(c) } -> std::same_as<typename V::value_type>;
  { v.name(x) } -> std::convertible_to<std::string>;
};

/// A FiniteAlgebra viewed through its element indices.
struct IndexView {
  using value_type = Elem;
  const FiniteAlgebra* algebra;

  int n() const { return algebra->n(); }
  Elem apply(BinaryOp op, Elem a, Elem b) const { return algebra->apply(op, a, b); }
  Elem neg(Elem a) const { return algebra->neg(a); }
  Elem constant(std::size_t c) const { return algebra->constant(c); }
  std::string name(Elem a) const { return algebra->name(a); }
};

using Tuple = std::vector<Elem>;

struct TupleHash {
  std::size_t operator()(const Tuple& t) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Elem e : t) h = (h ^ e) * 0x100000001b3ULL;
    return h;
  }
};

/// Product of factor algebras evaluated coordinatewise, never materialized.
/// Coordinates may repeat a factor, so powers are lists with repetition.
class TupleAlgebra {
 public:
  using value_type = Tuple;

  explicit TupleAlgebra(std::vector<const FiniteAlgebra*> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw InvalidInput("product needs at least one factor");
    for (const auto* f : factors_)
      if (f->signature() != factors_.front()->signature()) throw InvalidInput("product factors differ in signature");
  }

  int n() const { return factors_.front()->n(); }
  std::size_t arity() const { return factors_.size(); }
  const FiniteAlgebra& factor(std::size_t i) const { return *factors_[i]; }

  Tuple apply(BinaryOp op, const Tuple& a, const Tuple& b) const {
    Tuple r(a.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = factors_[i]->apply(op, a[i], b[i]);
    return r;
  }
  Tuple neg(const Tuple& a) const {
    Tuple r(a.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = factors_[i]->neg(a[i]);
    return r;
  }
  Tuple constant(std::size_t c) const {
    Tuple r(factors_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = factors_[i]->constant(c);
    return r;
  }
  std::string name(const Tuple& a) const {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i) s += ',';
      s += factors_[i]->name(a[i]);
    }
    return s + ")";
  }

 private:
  std::vector<const FiniteAlgebra*> factors_;
};

/// A subalgebra together with the ambient value of each of its elements.
template <class Value>
struct EmbeddedAlgebra {
  FiniteAlgebra algebra;
  std::vector<Value> embedding;  // index in `algebra` -> ambient value
};

namespace detail {

template <AlgebraView V>
using ValueIndex = std::conditional_t<std::is_same_v<typename V::value_type, Tuple>,
                                      std::unordered_map<Tuple, Elem, TupleHash>,
                                      std::unordered_map<typename V::value_type, Elem>>;

}  // namespace detail

/// Materializes the subalgebra on `elements` (which must be closed). Elements
/// keep the given order.
template <AlgebraView V>
EmbeddedAlgebra<typename V::value_type> materialize(const V& view, std::vector<typename V::value_type> elements) {
  const std::size_t sz = elements.size();
  detail::ValueIndex<V> index;
  for (std::size_t i = 0; i < sz; ++i) index.emplace(elements[i], static_cast<Elem>(i));
  if (index.size() != sz) throw InvalidInput("materialize: repeated element");
  auto lookup = [&](const typename V::value_type& v) {
    auto it = index.find(v);
    if (it == index.end()) throw InvalidInput("materialize: element set is not closed");
    return it->second;
  };
  std::array<std::vector<Elem>, 4> tables;
  for (BinaryOp op : kBinaryOps) {
    auto& t = tables[static_cast<std::size_t>(op)];
    t.resize(sz * sz);
    for (std::size_t a = 0; a < sz; ++a)
      for (std::size_t b = 0; b < sz; ++b) t[a * sz + b] = lookup(view.apply(op, elements[a], elements[b]));
  }
  std::vector<Elem> neg(sz);
  for (std::size_t a = 0; a < sz; ++a) neg[a] = lookup(view.neg(elements[a]));
  SignatureN sig{view.n()};
  std::vector<Elem> consts(sig.constant_count());
  for (std::size_t c = 0; c < consts.size(); ++c) consts[c] = lookup(view.constant(c));
  std::vector<std::string> names;
  names.reserve(sz);
  for (const auto& v : elements) names.push_back(view.name(v));
  return {FiniteAlgebra(view.n(), std::move(names), std::move(tables), std::move(neg), std::move(consts)),
          std::move(elements)};
}

/// Least subuniverse containing `generators` and every constant, by
/// breadth-first closure. Elements of the result are sorted by ambient value.
template <AlgebraView V>
EmbeddedAlgebra<typename V::value_type> generated_subalgebra(const V& view,
                                                             std::span<const typename V::value_type> generators,
                                                             std::size_t guard = 1'000'000) {
  using T = typename V::value_type;
  std::vector<T> found;
  detail::ValueIndex<V> seen;
  auto add = [&](T v) {
    if (seen.emplace(v, static_cast<Elem>(found.size())).second) {
      found.push_back(std::move(v));
      if (found.size() > guard) throw GuardExceeded("generated subalgebra exceeds " + std::to_string(guard) + " elements");
    }
  };
  for (std::size_t c = 0; c < SignatureN{view.n()}.constant_count(); ++c) add(view.constant(c));
  for (const auto& g : generators) add(g);
  for (std::size_t i = 0; i < found.size(); ++i) {
    add(view.neg(found[i]));
    for (std::size_t j = 0; j <= i; ++j) {
      for (BinaryOp op : kBinaryOps) {
        add(view.apply(op, found[i], found[j]));
        add(view.apply(op, found[j], found[i]));
      }
    }
  }
  std::sort(found.begin(), found.end());
  return materialize(view, std::move(found));
}

inline EmbeddedAlgebra<Elem> generated_subalgebra(const FiniteAlgebra& A, std::span<const Elem> generators) {
  for (Elem g : generators)
    if (g >= A.size()) throw InvalidInput("generator out of range");
  return generated_subalgebra(IndexView{&A}, generators, A.size());
}

/// Subuniverse closure of an element set (constants included).
inline Bitset close_subset(const FiniteAlgebra& A, Bitset members) {
  for (std::size_t c = 0; c < A.signature().constant_count(); ++c) members.set(A.constant(c));
  std::vector<Elem> order;
  members.for_each([&](std::size_t i) { order.push_back(static_cast<Elem>(i)); });
  auto add = [&](Elem r) {
    if (!members.test(r)) {
      members.set(r);
      order.push_back(r);
    }
  };
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Elem x = order[i];
    add(A.neg(x));
    for (std::size_t j = 0; j <= i; ++j) {
      const Elem y = order[j];
      for (BinaryOp op : kBinaryOps) {
        add(A.apply(op, x, y));
        add(A.apply(op, y, x));
      }
    }
  }
  return members;
}

/// Subalgebra of A on a closed subset, elements in increasing index order.
inline EmbeddedAlgebra<Elem> subalgebra_on(const FiniteAlgebra& A, const Bitset& subset) {
  std::vector<Elem> elems;
  subset.for_each([&](std::size_t i) { elems.push_back(static_cast<Elem>(i)); });
  return materialize(IndexView{&A}, std::move(elems));
}

/// Materialized direct product with lexicographic tuple indexing (first
/// factor most significant). Binary tables are quadratic in the carrier, so
/// the default guard is far below what the lazy TupleAlgebra tolerates.
inline FiniteAlgebra product(std::span<const FiniteAlgebra> algebras, std::size_t guard = 4096) {
  if (algebras.empty()) throw InvalidInput("product of an empty list");
  std::size_t total = 1;
  for (const auto& a : algebras) {
    total *= a.size();
    if (total > guard) throw GuardExceeded("product carrier exceeds " + std::to_string(guard) + " elements");
  }
  std::vector<const FiniteAlgebra*> fs;
  for (const auto& a : algebras) fs.push_back(&a);
  TupleAlgebra view(fs);
  std::vector<Tuple> elems;
  elems.reserve(total);
  Tuple cur(algebras.size(), 0);
  for (std::size_t i = 0; i < total; ++i) {
    elems.push_back(cur);
    for (std::size_t c = cur.size(); c-- > 0;) {
      if (++cur[c] < algebras[c].size()) break;
      cur[c] = 0;
    }
  }
  if (algebras.size() == 1) {
    // unary product keeps the factor's names
    return algebras.front();
  }
  return materialize(view, std::move(elems)).algebra;
}

inline FiniteAlgebra product(std::initializer_list<FiniteAlgebra> algebras, std::size_t guard = 4096) {
  std::vector<FiniteAlgebra> v(algebras);
  return product(std::span<const FiniteAlgebra>(v), guard);
}

/// Coordinates of the power that contains F_{V_n}(1): one coordinate per pair
/// (k, a) with a in M_k, so the generator is the tuple of all a.
struct FreeAlgebraCoordinates {
  std::vector<FiniteAlgebra> generators;  // M_0..M_n
  std::vector<std::pair<int, Elem>> coordinates;
};

inline FreeAlgebraCoordinates free_algebra_coordinates(int n) {
  FreeAlgebraCoordinates fc{build_generators(n), {}};
  for (int k = 0; k <= n; ++k)
    for (Elem a = 0; a < fc.generators[k].size(); ++a) fc.coordinates.emplace_back(k, a);
  return fc;
}

struct FreeAlgebra {
  EmbeddedAlgebra<Tuple> algebra;
  Elem generator;  // index of the free generator in algebra.algebra
};

/// The one-generated free algebra of V_n, as the subalgebra of
/// prod_k M_k^{M_k} generated by the tuple of identity projections.
inline FreeAlgebra free_algebra_one_generator(int n, std::size_t guard = 1'000'000) {
  if (n < 0) throw InvalidInput("free algebra: n must be nonnegative");
  auto fc = free_algebra_coordinates(n);
  std::vector<const FiniteAlgebra*> factors;
  Tuple generator;
  for (auto [k, a] : fc.coordinates) {
    factors.push_back(&fc.generators[k]);
    generator.push_back(a);
  }
  TupleAlgebra view(factors);
  std::vector<Tuple> gens{generator};
  auto res = generated_subalgebra(view, std::span<const Tuple>(gens), guard);
  auto it = std::lower_bound(res.embedding.begin(), res.embedding.end(), generator);
  const auto g = static_cast<Elem>(it - res.embedding.begin());
  return {std::move(res), g};
}

}  // namespace defbil
