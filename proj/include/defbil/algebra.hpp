#pragma once

// Finite algebras in the signature of the prioritised default bilattice J_n:
// binary meet/join for the truth order (and, or) and the knowledge order
// (consensus, gullibility), the involution neg, and 2n+4 constants.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "defbil/bits.hpp"
#include "defbil/errors.hpp"

namespace defbil {

using Elem = std::uint32_t;

enum class BinaryOp : std::uint8_t { meet_t = 0, join_t = 1, meet_k = 2, join_k = 3 };

inline constexpr std::array<BinaryOp, 4> kBinaryOps = {BinaryOp::meet_t, BinaryOp::join_t,
                                                       BinaryOp::meet_k, BinaryOp::join_k};

inline constexpr std::string_view binary_op_name(BinaryOp op) {
  switch (op) {
    case BinaryOp::meet_t: return "meet_t";
    case BinaryOp::join_t: return "join_t";
    case BinaryOp::meet_k: return "meet_k";
    case BinaryOp::join_k: return "join_k";
  }
  return "?";
}

/// Operation symbols of J_n. Constants are numbered top, bot, f_0..f_n, t_0..t_n.
struct SignatureN {
  int n = 0;

  std::size_t constant_count() const { return 2 * static_cast<std::size_t>(n) + 4; }
  std::size_t top() const { return 0; }
  std::size_t bot() const { return 1; }
  std::size_t f(int i) const { return 2 + static_cast<std::size_t>(i); }
  std::size_t t(int i) const { return 3 + static_cast<std::size_t>(n) + static_cast<std::size_t>(i); }

  std::string constant_name(std::size_t c) const {
    if (c == 0) return "top";
    if (c == 1) return "bot";
    if (c < f(n) + 1) return "f_" + std::to_string(c - 2);
    return "t_" + std::to_string(c - t(0));
  }

  std::optional<std::size_t> constant_index(std::string_view name) const {
    for (std::size_t c = 0; c < constant_count(); ++c)
      if (constant_name(c) == name) return c;
    return std::nullopt;
  }

  friend bool operator==(const SignatureN&, const SignatureN&) = default;
};

class FiniteAlgebra {
 public:
  FiniteAlgebra() = default;

  /// Binary tables are row-major size x size. Throws InvalidInput on any
  /// out-of-range entry or shape mismatch.
  FiniteAlgebra(int n, std::vector<std::string> names, std::array<std::vector<Elem>, 4> binary,
                std::vector<Elem> neg, std::vector<Elem> constants)
      : sig_{n}, names_(std::move(names)), binary_(std::move(binary)), neg_(std::move(neg)),
        constants_(std::move(constants)) {
    if (n < 0) throw InvalidInput("signature depth n must be nonnegative");
    const std::size_t sz = names_.size();
    if (sz == 0) throw InvalidInput("algebra carrier must be nonempty");
    for (const auto& table : binary_) {
      if (table.size() != sz * sz) throw InvalidInput("binary table has wrong shape");
      for (Elem e : table)
        if (e >= sz) throw InvalidInput("binary table entry out of range");
    }
    if (neg_.size() != sz) throw InvalidInput("negation table has wrong shape");
    for (Elem e : neg_)
      if (e >= sz) throw InvalidInput("negation entry out of range");
    if (constants_.size() != sig_.constant_count())
      throw InvalidInput("expected " + std::to_string(sig_.constant_count()) + " constants");
    for (Elem e : constants_)
      if (e >= sz) throw InvalidInput("constant value out of range");
    for (std::size_t i = 0; i < sz; ++i) index_.emplace(names_[i], static_cast<Elem>(i));
    if (index_.size() != sz) throw InvalidInput("element names must be distinct");
  }

  const SignatureN& signature() const { return sig_; }
  int n() const { return sig_.n; }
  std::size_t size() const { return names_.size(); }

  Elem apply(BinaryOp op, Elem a, Elem b) const {
    return binary_[static_cast<std::size_t>(op)][a * size() + b];
  }
  Elem meet_t(Elem a, Elem b) const { return apply(BinaryOp::meet_t, a, b); }
  Elem join_t(Elem a, Elem b) const { return apply(BinaryOp::join_t, a, b); }
  Elem meet_k(Elem a, Elem b) const { return apply(BinaryOp::meet_k, a, b); }
  Elem join_k(Elem a, Elem b) const { return apply(BinaryOp::join_k, a, b); }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem constant(std::size_t c) const { return constants_[c]; }

  const std::vector<Elem>& table(BinaryOp op) const { return binary_[static_cast<std::size_t>(op)]; }
  const std::vector<Elem>& neg_table() const { return neg_; }
  const std::vector<Elem>& constants() const { return constants_; }

  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Elem a) const { return names_[a]; }
  Elem at(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) throw InvalidInput("unknown element '" + std::string(name) + "'");
    return it->second;
  }

  /// Truth order a <=_t b, read off the truth meet.
  bool leq_t(Elem a, Elem b) const { return meet_t(a, b) == a; }
  /// Knowledge order a <=_k b, read off the knowledge meet.
  bool leq_k(Elem a, Elem b) const { return meet_k(a, b) == a; }

  friend bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    return a.sig_ == b.sig_ && a.names_ == b.names_ && a.binary_ == b.binary_ && a.neg_ == b.neg_ &&
           a.constants_ == b.constants_;
  }

 private:
  SignatureN sig_;
  std::vector<std::string> names_;
  std::array<std::vector<Elem>, 4> binary_;
  std::vector<Elem> neg_;
  std::vector<Elem> constants_;
  std::unordered_map<std::string, Elem> index_;
};

namespace detail {

// Greatest lower bound / least upper bound tables of a finite order; throws if
// the order is not a lattice.
inline std::pair<std::vector<Elem>, std::vector<Elem>> lattice_tables(const BitMatrix& leq,
                                                                      std::string_view what) {
  const std::size_t sz = leq.rows();
  std::vector<Elem> meet(sz * sz), join(sz * sz);
  for (std::size_t a = 0; a < sz; ++a) {
    for (std::size_t b = 0; b < sz; ++b) {
      std::optional<std::size_t> glb, lub;
      for (std::size_t c = 0; c < sz; ++c) {
        if (leq(c, a) && leq(c, b) && (!glb || leq(*glb, c))) glb = c;
        if (leq(a, c) && leq(b, c) && (!lub || leq(c, *lub))) lub = c;
      }
      if (!glb || !lub) throw InvalidInput(std::string(what) + " order is not a lattice");
      // verify the candidates are the extremal bounds
      for (std::size_t c = 0; c < sz; ++c) {
        if (leq(c, a) && leq(c, b) && !leq(c, *glb))
          throw InvalidInput(std::string(what) + " order is not a lattice");
        if (leq(a, c) && leq(b, c) && !leq(*lub, c))
          throw InvalidInput(std::string(what) + " order is not a lattice");
      }
      meet[a * sz + b] = static_cast<Elem>(*glb);
      join[a * sz + b] = static_cast<Elem>(*lub);
    }
  }
  return {std::move(meet), std::move(join)};
}

inline BitMatrix order_from_covers(std::size_t sz, const std::vector<std::pair<Elem, Elem>>& covers) {
  BitMatrix leq = BitMatrix::identity(sz);
  for (auto [a, b] : covers) leq.set(a, b);
  for (std::size_t k = 0; k < sz; ++k)
    for (std::size_t i = 0; i < sz; ++i)
      if (leq(i, k)) leq.row(i) |= leq.row(k);
  return leq;
}

}  // namespace detail

/// Builds a bilattice-signature algebra from its two orders (given by covering
/// pairs), the negation, and the constant assignment.
inline FiniteAlgebra algebra_from_orders(int n, std::vector<std::string> names,
                                         const std::vector<std::pair<Elem, Elem>>& truth_covers,
                                         const std::vector<std::pair<Elem, Elem>>& knowledge_covers,
                                         std::vector<Elem> neg, std::vector<Elem> constants) {
  const std::size_t sz = names.size();
  auto [mt, jt] = detail::lattice_tables(detail::order_from_covers(sz, truth_covers), "truth");
  auto [mk, jk] = detail::lattice_tables(detail::order_from_covers(sz, knowledge_covers), "knowledge");
  return FiniteAlgebra(n, std::move(names), {std::move(mt), std::move(jt), std::move(mk), std::move(jk)},
                       std::move(neg), std::move(constants));
}

/// J_n: elements top, bot, f_0..f_n, t_0..t_n (index = constant number).
inline FiniteAlgebra build_jn(int n) {
  if (n < 0) throw InvalidInput("build_jn: n must be nonnegative");
  SignatureN sig{n};
  std::vector<std::string> names;
  for (std::size_t c = 0; c < sig.constant_count(); ++c) names.push_back(sig.constant_name(c));
  auto e = [](std::size_t i) { return static_cast<Elem>(i); };
  const Elem top = e(sig.top()), bot = e(sig.bot());

  // knowledge: bot < f_n < ... < f_0 < top, bot < t_n < ... < t_0 < top
  std::vector<std::pair<Elem, Elem>> kc = {{bot, e(sig.f(n))}, {bot, e(sig.t(n))},
                                           {e(sig.f(0)), top}, {e(sig.t(0)), top}};
  for (int i = n; i > 0; --i) {
    kc.emplace_back(e(sig.f(i)), e(sig.f(i - 1)));
    kc.emplace_back(e(sig.t(i)), e(sig.t(i - 1)));
  }
  // truth: f_0 < ... < f_n < {top, bot} < t_n < ... < t_0
  std::vector<std::pair<Elem, Elem>> tc = {{e(sig.f(n)), top}, {e(sig.f(n)), bot},
                                           {top, e(sig.t(n))}, {bot, e(sig.t(n))}};
  for (int i = 0; i < n; ++i) {
    tc.emplace_back(e(sig.f(i)), e(sig.f(i + 1)));
    tc.emplace_back(e(sig.t(i + 1)), e(sig.t(i)));
  }
  std::vector<Elem> neg(names.size());
  neg[top] = top;
  neg[bot] = bot;
  for (int i = 0; i <= n; ++i) {
    neg[sig.f(i)] = e(sig.t(i));
    neg[sig.t(i)] = e(sig.f(i));
  }
  std::vector<Elem> consts(names.size());
  for (std::size_t c = 0; c < consts.size(); ++c) consts[c] = e(c);
  return algebra_from_orders(n, std::move(names), tc, kc, std::move(neg), std::move(consts));
}

/// Element indices of M_0 (names bot0, f0, t0, top0).
struct M0 {
  static constexpr Elem bot = 0, f = 1, t = 2, top = 3;
};
/// Element indices of M_k, k >= 1 (names botK, fK, 0K, tK, 1K, topK).
struct Mk {
  static constexpr Elem bot = 0, f = 1, zero = 2, t = 3, one = 4, top = 5;
};

/// M_0 (k = 0, four elements) or M_k (k >= 1, six elements) in the signature of J_n.
inline FiniteAlgebra build_mk(int n, int k) {
  if (n < 0) throw InvalidInput("build_mk: n must be nonnegative");
  if (k < 0 || k > n) throw InvalidInput("build_mk: k must lie in [0, n]");
  SignatureN sig{n};
  const std::string K = std::to_string(k);
  std::vector<Elem> consts(sig.constant_count());
  if (k == 0) {
    std::vector<std::string> names = {"bot0", "f0", "t0", "top0"};
    consts[sig.top()] = M0::top;
    consts[sig.bot()] = M0::bot;
    for (int i = 0; i <= n; ++i) {
      consts[sig.f(i)] = M0::f;
      consts[sig.t(i)] = M0::t;
    }
    return algebra_from_orders(n, std::move(names),
                               {{M0::f, M0::top}, {M0::f, M0::bot}, {M0::top, M0::t}, {M0::bot, M0::t}},
                               {{M0::bot, M0::f}, {M0::bot, M0::t}, {M0::f, M0::top}, {M0::t, M0::top}},
                               {M0::bot, M0::t, M0::f, M0::top}, std::move(consts));
  }
  std::vector<std::string> names = {"bot" + K, "f" + K, "0" + K, "t" + K, "1" + K, "top" + K};
  consts[sig.top()] = Mk::top;
  consts[sig.bot()] = Mk::bot;
  for (int i = 0; i <= n; ++i) {
    consts[sig.f(i)] = i < k ? Mk::zero : Mk::f;
    consts[sig.t(i)] = i < k ? Mk::one : Mk::t;
  }
  // truth: 0 < f < {top, bot} < t < 1; knowledge: bot < f < 0 < top, bot < t < 1 < top
  return algebra_from_orders(
      n, std::move(names),
      {{Mk::zero, Mk::f}, {Mk::f, Mk::top}, {Mk::f, Mk::bot}, {Mk::top, Mk::t}, {Mk::bot, Mk::t}, {Mk::t, Mk::one}},
      {{Mk::bot, Mk::f}, {Mk::f, Mk::zero}, {Mk::zero, Mk::top}, {Mk::bot, Mk::t}, {Mk::t, Mk::one}, {Mk::one, Mk::top}},
      {Mk::bot, Mk::t, Mk::one, Mk::f, Mk::zero, Mk::top}, std::move(consts));
}

/// The generating algebras M_0..M_n.
inline std::vector<FiniteAlgebra> build_generators(int n) {
  std::vector<FiniteAlgebra> ms;
  for (int k = 0; k <= n; ++k) ms.push_back(build_mk(n, k));
  return ms;
}

/// g_k: M_k -> M_0 as an element map (identity for k = 0).
inline std::vector<Elem> g_map(int k) {
  if (k == 0) return {M0::bot, M0::f, M0::t, M0::top};
  return {M0::bot, M0::f, M0::f, M0::t, M0::t, M0::top};
}

/// "false" and "true" constant values of M_k.
inline std::vector<Elem> false_constants(int k) {
  if (k == 0) return {M0::f};
  return {Mk::f, Mk::zero};
}
inline std::vector<Elem> true_constants(int k) {
  if (k == 0) return {M0::t};
  return {Mk::t, Mk::one};
}

/// Exhaustive check of the bilattice laws claimed for algebras in V_n. Returns
/// a description of the first failure, or nullopt. O(size^3).
inline std::optional<std::string> check_bilattice_laws(const FiniteAlgebra& A) {
  const Elem sz = static_cast<Elem>(A.size());
  auto fail = [&](std::string what, Elem x, Elem y, Elem z) {
    return what + " fails at (" + A.name(x) + ", " + A.name(y) + ", " + A.name(z) + ")";
  };
  for (auto [meet, join, tag] : {std::tuple{BinaryOp::meet_t, BinaryOp::join_t, "truth"},
                                 std::tuple{BinaryOp::meet_k, BinaryOp::join_k, "knowledge"}}) {
    for (Elem x = 0; x < sz; ++x) {
      if (A.apply(meet, x, x) != x || A.apply(join, x, x) != x)
        return fail(std::string(tag) + " idempotence", x, x, x);
      for (Elem y = 0; y < sz; ++y) {
        if (A.apply(meet, x, y) != A.apply(meet, y, x) || A.apply(join, x, y) != A.apply(join, y, x))
          return fail(std::string(tag) + " commutativity", x, y, y);
        if (A.apply(meet, x, A.apply(join, x, y)) != x || A.apply(join, x, A.apply(meet, x, y)) != x)
          return fail(std::string(tag) + " absorption", x, y, y);
        for (Elem z = 0; z < sz; ++z) {
          if (A.apply(meet, x, A.apply(meet, y, z)) != A.apply(meet, A.apply(meet, x, y), z) ||
              A.apply(join, x, A.apply(join, y, z)) != A.apply(join, A.apply(join, x, y), z))
            return fail(std::string(tag) + " associativity", x, y, z);
        }
      }
    }
  }
  for (Elem x = 0; x < sz; ++x) {
    if (A.neg(A.neg(x)) != x) return fail("involution", x, x, x);
    for (Elem y = 0; y < sz; ++y) {
      if (A.neg(A.meet_t(x, y)) != A.join_t(A.neg(x), A.neg(y))) return fail("de Morgan (and)", x, y, y);
      if (A.neg(A.join_t(x, y)) != A.meet_t(A.neg(x), A.neg(y))) return fail("de Morgan (or)", x, y, y);
      if (A.neg(A.meet_k(x, y)) != A.meet_k(A.neg(x), A.neg(y))) return fail("neg preserves meet_k", x, y, y);
      if (A.neg(A.join_k(x, y)) != A.join_k(A.neg(x), A.neg(y))) return fail("neg preserves join_k", x, y, y);
    }
  }
  return std::nullopt;
}

}  // namespace defbil
