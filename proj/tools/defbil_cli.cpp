// defbil: build objects, count free algebras, run verification suites.
// Exit status: 0 pass, 1 verification failure, 2 usage or input error.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "defbil.hpp"

using namespace defbil;

namespace {

constexpr int kExitPass = 0, kExitFail = 1, kExitUsage = 2;

struct Options {
  int n = 1;
  int k = 0;
  std::string kind, method = "all", suite = "all", format = "text", input, out;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t guard = 2000;
  bool dot = false, timing = false;
};

void emit(const Options& o, const std::string& body, const std::string& suffix = "") {
  if (o.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(o.out + suffix);
  if (!f) throw InvalidInput("cannot write " + o.out + suffix);
  f << body;
}

Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidInput("cannot read " + path);
  try {
    return Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

FiniteAlgebra input_algebra(const Options& o) {
  if (o.input.empty()) throw InvalidInput("--input FILE (algebra document) is required for this kind");
  return algebra_from_json(read_json_file(o.input));
}

// ---- build

int cmd_build(const Options& o) {
  Json doc;
  std::string dot;
  if (o.kind == "jn") {
    doc = to_json(build_jn(o.n));
  } else if (o.kind == "mk") {
    doc = to_json(build_mk(o.n, o.k));
  } else if (o.kind == "alter-ego") {
    const auto X = build_alter_ego(o.n);
    doc = to_json(X);
    dot = to_dot(functor_F(X), "alter_ego_n" + std::to_string(o.n));
  } else if (o.kind == "dual") {
    const auto X = natural_dual(input_algebra(o)).structure;
    doc = to_json(X);
    dot = to_dot(functor_F(X), "dual");
  } else if (o.kind == "priestley") {
    const auto X = o.input.empty() ? build_alter_ego(o.n) : natural_dual(input_algebra(o)).structure;
    const auto P = construct_P(X);
    doc = to_json(P);
    dot = to_dot(P, "priestley");
  } else if (o.kind == "carrier-space") {
    const auto A = o.input.empty() ? build_jn(o.n) : input_algebra(o);
    const auto Y = build_carrier_space(A);
    doc = to_json(Y.order);
    dot = to_dot(Y.order, "carrier_space");
  }
  if (o.format == "structured" && o.dot) {
    emit(o, Json{{"document", doc}, {"dot", dot}}.dump(2) + "\n");
  } else {
    emit(o, doc.dump(2) + "\n");
    if (o.dot) emit(o, dot, o.out.empty() ? "" : ".dot");
  }
  return kExitPass;
}

// ---- free-size

int cmd_free_size(const Options& o) {
  const auto formula = free_size_formula(o.n);
  struct Row {
    std::string method;
    std::optional<std::string> value;
    std::string note;
  };
  std::vector<Row> rows;
  const bool all = o.method == "all";
  if (all || o.method == "formula")
    rows.push_back({"formula", to_string(formula.total), "f=" + to_string(formula.f) + " g=" + to_string(formula.g)});
  if (all || o.method == "downsets") {
    try {
      const auto P = construct_P(build_alter_ego(o.n));
      rows.push_back({"downsets", std::to_string(count_downsets(P)), std::to_string(P.size()) + " points"});
    } catch (const GuardExceeded& e) {
      rows.push_back({"downsets", std::nullopt, std::string("skipped: ") + e.what()});
    }
  }
  if (all || o.method == "generate") {
    if (formula.total > Int128(o.guard)) {
      rows.push_back({"generate", std::nullopt,
                      "skipped: expected size exceeds --guard-limit " + std::to_string(o.guard)});
    } else {
      try {
        const auto F = free_algebra_one_generator(o.n, o.guard);
        rows.push_back({"generate", std::to_string(F.algebra.algebra.size()), "closure in prod M_k^M_k"});
      } catch (const GuardExceeded& e) {
        rows.push_back({"generate", std::nullopt, std::string("skipped: ") + e.what()});
      }
    }
  }
  std::optional<std::string> first;
  bool agree = true;
  for (const auto& r : rows) {
    if (!r.value) continue;
    if (!first) first = r.value;
    agree = agree && *r.value == *first;
  }
  if (o.format == "structured") {
    Json j{{"n", o.n}, {"rows", Json::array()}, {"agree", agree}};
    for (const auto& r : rows)
      j["rows"].push_back(Json{{"method", r.method}, {"value", r.value ? Json(*r.value) : Json(nullptr)}, {"note", r.note}});
    emit(o, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    for (const auto& r : rows) os << r.method << "\t" << r.value.value_or("-") << "\t" << r.note << "\n";
    os << (agree ? "agree" : "DISAGREE") << "\n";
    emit(o, os.str());
  }
  return agree ? kExitPass : kExitFail;
}

// ---- verify

struct Check {
  std::string id;
  std::string status;  // pass | fail | skipped
  std::string witness;
  double elapsed = 0;
};

class Suite {
 public:
  void run(const std::string& id, const std::function<std::string()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Check c{id, "pass", "", 0};
    try {
      c.witness = body();
      if (!c.witness.empty()) c.status = "fail";
    } catch (const GuardExceeded& e) {
      c.status = "skipped";
      c.witness = std::string("guard: ") + e.what();
    } catch (const std::exception& e) {
      c.status = "fail";
      c.witness = std::string("exception: ") + e.what();
    }
    c.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    checks_.push_back(std::move(c));
  }
  bool passed() const {
    for (const auto& c : checks_)
      if (c.status == "fail") return false;
    return true;
  }
  std::string render(const Options& o) const {
    if (o.format == "structured") {
      Json j{{"suite", o.suite}, {"n", o.n}, {"seed", o.seed}, {"checks", Json::array()}};
      for (const auto& c : checks_) {
        Json r{{"id", c.id}, {"status", c.status}};
        if (!c.witness.empty()) r["witness"] = c.witness;
        if (o.timing) r["elapsed"] = c.elapsed;
        j["checks"].push_back(std::move(r));
      }
      j["overall"] = passed() ? "pass" : "fail";
      return j.dump(2) + "\n";
    }
    std::ostringstream os;
    for (const auto& c : checks_) {
      os << c.status << "\t" << c.id;
      if (o.timing) os << "\t" << c.elapsed << "s";
      if (!c.witness.empty()) os << "\t" << c.witness;
      os << "\n";
    }
    os << "overall\t" << (passed() ? "pass" : "fail") << "\n";
    return os.str();
  }

 private:
  std::vector<Check> checks_;
};

using Corpus = std::vector<std::pair<std::string, FiniteAlgebra>>;

void suite_duality(Suite& s, const Corpus& corpus) {
  for (const auto& [name, A] : corpus)
    s.run("duality/unit/" + name, [&] {
      const auto r = verify_unit_iso(A);
      return r.ok ? std::string() : r.failure;
    });
}

void suite_axioms(Suite& s, const Options& o) {
  const auto structures = structure_corpus(100, o.seed, o.n);
  std::size_t members = 0;
  std::string witness;
  for (std::size_t i = 0; i < structures.size(); ++i) {
    const auto& X = structures[i];
    const bool a = check_axioms(X).ok();
    const bool b = membership_by_separation(X).ok;
    members += a;
    if (a != b && witness.empty())
      witness = "structure " + std::to_string(i) + ": axioms " + (a ? "hold" : "fail") + ", separation " +
                (b ? "holds" : "fails") + "\n" + to_json(X).dump();
  }
  s.run("axioms/agreement(" + std::to_string(structures.size()) + " structures, " + std::to_string(members) +
            " members)",
        [&] { return witness; });
  s.run("axioms/alter-ego", [&] {
    const auto r = check_axioms(build_alter_ego(o.n));
    return r.ok() ? std::string() : r.summary();
  });
}

void suite_functors(Suite& s, const Options& o, const Corpus& corpus) {
  std::vector<MultiSortedStructure> family;
  for (const auto& [name, A] : corpus) family.push_back(natural_dual(A).structure);
  for (auto& X : structure_corpus(60, o.seed, o.n))
    if (check_axioms(X).ok()) family.push_back(std::move(X));
  s.run("functors/objects(" + std::to_string(family.size()) + ")", [&] {
    for (std::size_t i = 0; i < family.size(); ++i) {
      const auto Y = functor_F(family[i]);
      if (!(functor_G(Y) == family[i])) return "G(F(X)) != X for structure " + std::to_string(i);
      if (!(functor_F(functor_G(Y)) == Y)) return "F(G(Y)) != Y for structure " + std::to_string(i);
    }
    return std::string();
  });
  s.run("functors/morphisms", [&] {
    std::mt19937_64 rng(o.seed);
    std::size_t sampled = 0;
    for (std::size_t tries = 0; sampled < 50 && tries < 10'000; ++tries) {
      const auto& X = family[draw(rng, family.size())];
      const auto& Z = family[draw(rng, family.size())];
      if (X.total_size() > 40 || Z.total_size() > 40) continue;
      const auto ms = enumerate_morphisms(X, Z, 5000);
      if (ms.empty()) continue;
      const auto& phi = ms[draw(rng, ms.size())];
      ++sampled;
      const auto flat = flatten_morphism(phi, Z);
      if (!is_ranked_morphism(flat, functor_F(X), functor_F(Z))) return std::string("F(phi) is not a morphism");
      if (unflatten_morphism(flat, X, Z) != phi) return std::string("G(F(phi)) != phi");
    }
    return sampled == 50 ? std::string() : "only " + std::to_string(sampled) + " morphisms sampled";
  });
}

void suite_translation(Suite& s, const Corpus& corpus) {
  for (const auto& [name, A] : corpus)
    s.run("translation/" + name, [&] {
      const auto r = verify_translation(A);
      return r.ok ? std::string() : r.failure;
    });
}

void suite_piggyback(Suite& s, const Options& o, const Corpus& corpus) {
  s.run("piggyback/separation", [&] { return check_sep(o.n) ? std::string() : std::string("carriers do not separate"); });
  for (const auto& [name, A] : corpus)
    s.run("piggyback/carrier-space/" + name, [&] {
      const auto r = verify_piggyback_iso(A);
      return r.ok() ? std::string() : r.failure;
    });
}

void suite_tables(Suite& s, const Options& o) {
  s.run("tables/piggyback-relations", [&] {
    std::string bad;
    for (const auto& r : relation_table(o.n))
      if (!r.matches()) bad += "(" + r.w1.name() + "," + r.w2.name() + ") ";
    return bad;
  });
  s.run("tables/subuniverse-families", [&] {
    SubuniverseCache cache(o.n);
    std::string bad;
    for (int j = 0; j <= o.n; ++j)
      for (int k = 0; k <= o.n; ++k) {
        const std::size_t want = (j == 0 || k == 0) ? 4 : (j == k ? 7 : 5);
        if (cache.get(j, k).size() != want || meet_irreducible_names(cache, j, k) != expected_meet_irreducibles(j, k))
          bad += "Sub(M" + std::to_string(j) + "xM" + std::to_string(k) + ") ";
      }
    return bad;
  });
  s.run("tables/downset-groupings", [&] {
    const auto pc = partitioned_downset_count(o.n);
    const auto fs = free_size_formula(o.n);
    std::string bad;
    if (Int128(pc.avoiding_top) != fs.f) bad += "f(n) ";
    if (Int128(pc.meeting_top) != fs.g) bad += "g(n) ";
    for (const auto& [key, v] : pc.by_centre)
      if (centre_table_entry(o.n, key) != Int128(v)) bad += "centre" + key + " ";
    for (const auto& [key, v] : pc.by_min_top)
      if (min_top_table_entry(o.n, key) != Int128(v)) bad += "minT" + key + " ";
    return bad;
  });
}

int cmd_verify(const Options& o) {
  Suite s;
  const Corpus corpus = algebras_for(o.n, 10, o.seed);
  const bool all = o.suite == "all";
  if (all || o.suite == "duality") suite_duality(s, corpus);
  if (all || o.suite == "axioms") suite_axioms(s, o);
  if (all || o.suite == "functors") suite_functors(s, o, corpus);
  if (all || o.suite == "translation") suite_translation(s, corpus);
  if (all || o.suite == "piggyback") suite_piggyback(s, o, corpus);
  if (all || o.suite == "tables") suite_tables(s, o);
  emit(o, s.render(o));
  return s.passed() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prioritised default bilattices: duality engine"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "depth n of J_n")->check(CLI::Range(1, 1'000'000));
    sub->add_option("--out", o.out, "write the report to FILE");
    sub->add_option("--format", o.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
  };

  auto* build = app.add_subcommand("build", "emit an object as a JSON document");
  build->add_option("kind", o.kind, "jn | mk | alter-ego | dual | priestley | carrier-space")
      ->required()
      ->check(CLI::IsMember({"jn", "mk", "alter-ego", "dual", "priestley", "carrier-space"}));
  build->add_option("--k", o.k, "sort index for mk")->check(CLI::NonNegativeNumber);
  build->add_option("--input", o.input, "algebra document for dual, priestley, carrier-space");
  build->add_flag("--dot", o.dot, "also emit a Hasse diagram in DOT");
  common(build);

  auto* free_size = app.add_subcommand("free-size", "size of the one-generated free algebra");
  free_size->add_option("--method", o.method, "formula | downsets | generate | all")
      ->check(CLI::IsMember({"formula", "downsets", "generate", "all"}));
  free_size->add_option("--guard-limit", o.guard, "largest free algebra to generate exhaustively");
  common(free_size);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", o.suite, "duality | axioms | functors | translation | piggyback | tables | all")
      ->check(CLI::IsMember({"duality", "axioms", "functors", "translation", "piggyback", "tables", "all"}));
  verify->add_option("--seed", o.seed, "corpus seed");
  verify->add_flag("--timing", o.timing, "include per-check elapsed time (breaks byte-identical reports)");
  common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }
  try {
    if (build->parsed()) {
      if (o.kind == "mk" && o.k > o.n) throw InvalidInput("--k must not exceed --n");
      return cmd_build(o);
    }
    if (free_size->parsed()) return cmd_free_size(o);
    if (o.n > 12) throw InvalidInput("verify supports n <= 12");
    return cmd_verify(o);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const GuardExceeded& e) {
    std::cerr << "guard exceeded: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitFail;
  }
}
