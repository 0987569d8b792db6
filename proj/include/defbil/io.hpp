#pragma once

// JSON interchange and DOT export.

#include <algorithm>
#include <array>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "defbil/algebra.hpp"
#include "defbil/errors.hpp"
#include "defbil/multisorted.hpp"
#include "defbil/poset.hpp"
#include "defbil/ranked.hpp"

namespace defbil {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json pairs_of(const BitMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) m.row(i).for_each([&](std::size_t j) { out.push_back({i, j}); });
  return out;
}

inline BitMatrix matrix_of(const Json& pairs, std::size_t rows, std::size_t cols) {
  BitMatrix m(rows, cols);
  for (const auto& p : pairs) {
    if (!p.is_array() || p.size() != 2) throw InvalidInput("relation pair must be [i, j]");
    const auto i = p[0].get<std::size_t>(), j = p[1].get<std::size_t>();
    if (i >= rows || j >= cols) throw InvalidInput("relation pair out of range");
    m.set(i, j);
  }
  return m;
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed document: ") + e.what());
  }
}

}  // namespace detail

// ---- algebras: tables hold element indices, constants hold element names

inline Json to_json(const FiniteAlgebra& A) {
  Json j;
  j["signature"] = {{"n", A.n()}};
  j["elements"] = A.names();
  Json ops;
  const std::size_t sz = A.size();
  for (BinaryOp op : kBinaryOps) {
    Json rows = Json::array();
    for (std::size_t a = 0; a < sz; ++a) {
      Json row = Json::array();
      for (std::size_t b = 0; b < sz; ++b) row.push_back(A.apply(op, static_cast<Elem>(a), static_cast<Elem>(b)));
      rows.push_back(std::move(row));
    }
    ops[std::string(binary_op_name(op))] = std::move(rows);
  }
  ops["neg"] = A.neg_table();
  Json consts;
  const auto sig = A.signature();
  for (std::size_t c = 0; c < sig.constant_count(); ++c) consts[sig.constant_name(c)] = A.name(A.constant(c));
  ops["consts"] = std::move(consts);
  j["ops"] = std::move(ops);
  return j;
}

inline FiniteAlgebra algebra_from_json(const Json& j) {
  return detail::guarded([&] {
    const int n = j.at("signature").at("n").get<int>();
    auto names = j.at("elements").get<std::vector<std::string>>();
    const auto& ops = j.at("ops");
    std::array<std::vector<Elem>, 4> tables;
    for (BinaryOp op : kBinaryOps) {
      auto& t = tables[static_cast<std::size_t>(op)];
      const auto& rows = ops.at(std::string(binary_op_name(op)));
      if (rows.size() != names.size()) throw InvalidInput("binary table has wrong row count");
      for (const auto& row : rows) {
        if (row.size() != names.size()) throw InvalidInput("binary table has wrong row width");
        for (const auto& v : row) t.push_back(v.get<Elem>());
      }
    }
    auto neg = ops.at("neg").get<std::vector<Elem>>();
    SignatureN sig{n};
    if (n < 0) throw InvalidInput("negative n");
    std::vector<Elem> consts(sig.constant_count());
    const auto& cj = ops.at("consts");
    if (cj.size() != consts.size()) throw InvalidInput("constant table has wrong size");
    for (std::size_t c = 0; c < consts.size(); ++c) {
      const auto nm = cj.at(sig.constant_name(c)).get<std::string>();
      auto it = std::find(names.begin(), names.end(), nm);
      if (it == names.end()) throw InvalidInput("constant names unknown element " + nm);
      consts[c] = static_cast<Elem>(it - names.begin());
    }
    return FiniteAlgebra(n, std::move(names), std::move(tables), std::move(neg), std::move(consts));
  });
}

// ---- posets

inline Json to_json(const Poset& p) { return Json{{"elements", p.names()}, {"leq_pairs", detail::pairs_of(p.matrix())}}; }

/// The pairs listed must already form the order (reflexive and transitive).
inline Poset poset_from_json(const Json& j) {
  return detail::guarded([&] {
    auto names = j.at("elements").get<std::vector<std::string>>();
    auto m = detail::matrix_of(j.at("leq_pairs"), names.size(), names.size());
    return Poset(std::move(names), std::move(m));
  });
}

// ---- multi-sorted structures (g_0 omitted)

inline Json to_json(const MultiSortedStructure& X) {
  Json j;
  j["n"] = X.n;
  j["sorts"] = X.sorts;
  Json g = Json::object();
  for (int k = 1; k <= X.n; ++k) g[std::to_string(k)] = X.g[static_cast<std::size_t>(k)];
  j["g"] = std::move(g);
  Json rk = Json::object();
  for (int k = 0; k <= X.n; ++k) rk[std::to_string(k)] = detail::pairs_of(X.rel[static_cast<std::size_t>(k)]);
  j["rel_k"] = std::move(rk);
  Json rjk = Json::object();
  for (const auto& [key, m] : X.rel_jk) rjk[std::to_string(key.first) + "," + std::to_string(key.second)] = detail::pairs_of(m);
  j["rel_jk"] = std::move(rjk);
  return j;
}

inline MultiSortedStructure multisorted_from_json(const Json& j) {
  return detail::guarded([&] {
    MultiSortedStructure X;
    X.n = j.at("n").get<int>();
    if (X.n < 1) throw InvalidInput("multi-sorted structure needs n >= 1");
    X.sorts = j.at("sorts").get<std::vector<std::vector<std::string>>>();
    if (X.sorts.size() != static_cast<std::size_t>(X.n) + 1) throw InvalidInput("expected n + 1 sorts");
    X.g.resize(X.sorts.size());
    for (std::size_t x = 0; x < X.sorts[0].size(); ++x) X.g[0].push_back(x);
    for (int k = 1; k <= X.n; ++k) X.g[static_cast<std::size_t>(k)] = j.at("g").at(std::to_string(k)).get<std::vector<std::size_t>>();
    for (int k = 0; k <= X.n; ++k) {
      const auto sz = X.sort_size(k);
      X.rel.push_back(detail::matrix_of(j.at("rel_k").at(std::to_string(k)), sz, sz));
    }
    for (int a = 1; a <= X.n; ++a)
      for (int b = a + 1; b <= X.n; ++b)
        X.rel_jk.emplace(std::make_pair(a, b), detail::matrix_of(j.at("rel_jk").at(std::to_string(a) + "," + std::to_string(b)),
                                                                 X.sort_size(a), X.sort_size(b)));
    X.validate();
    return X;
  });
}

// ---- ranked spaces

inline Json to_json(const RankedPriestleySpace& Y) {
  return Json{{"n", Y.n}, {"elements", Y.names}, {"leq_pairs", detail::pairs_of(Y.leq)}, {"g", Y.g}, {"rank", Y.rank}};
}

inline RankedPriestleySpace ranked_from_json(const Json& j) {
  return detail::guarded([&] {
    RankedPriestleySpace Y;
    Y.n = j.at("n").get<int>();
    Y.names = j.at("elements").get<std::vector<std::string>>();
    Y.leq = detail::matrix_of(j.at("leq_pairs"), Y.names.size(), Y.names.size());
    Y.g = j.at("g").get<std::vector<std::size_t>>();
    Y.rank = j.at("rank").get<std::vector<int>>();
    if (Y.g.size() != Y.size() || Y.rank.size() != Y.size()) throw InvalidInput("g and rank must cover every element");
    return Y;
  });
}

// ---- DOT

namespace detail {
inline std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}
}  // namespace detail

/// Hasse diagram: covering edges only, drawn upwards.
inline std::string to_dot(const Poset& p, const std::string& graph_name = "poset") {
  std::ostringstream os;
  os << "digraph " << detail::quoted(graph_name) << " {\n  rankdir=BT;\n  node [shape=circle, fontsize=10];\n";
  for (std::size_t i = 0; i < p.size(); ++i) os << "  n" << i << " [label=" << detail::quoted(p.name(i)) << "];\n";
  for (auto [a, b] : p.covers()) os << "  n" << a << " -> n" << b << " [arrowhead=none];\n";
  os << "}\n";
  return os.str();
}

/// Ranked space: one band per rank, covering edges solid, g-edges dashed.
inline std::string to_dot(const RankedPriestleySpace& Y, const std::string& graph_name = "ranked") {
  std::ostringstream os;
  os << "digraph " << detail::quoted(graph_name) << " {\n  rankdir=BT;\n  node [shape=circle, fontsize=10];\n";
  for (int r = 0; r <= Y.n; ++r) {
    os << "  subgraph cluster_rank" << r << " {\n    label=" << detail::quoted("rank " + std::to_string(r)) << ";\n";
    for (std::size_t i = 0; i < Y.size(); ++i)
      if (Y.rank[i] == r) os << "    n" << i << " [label=" << detail::quoted(Y.names[i]) << "];\n";
    os << "  }\n";
  }
  const Poset P(Y.names, Y.leq);
  for (auto [a, b] : P.covers()) os << "  n" << a << " -> n" << b << " [arrowhead=none];\n";
  for (std::size_t i = 0; i < Y.size(); ++i)
    if (Y.g[i] != i) os << "  n" << i << " -> n" << Y.g[i] << " [style=dashed, color=gray, constraint=false];\n";
  os << "}\n";
  return os.str();
}

}  // namespace defbil
