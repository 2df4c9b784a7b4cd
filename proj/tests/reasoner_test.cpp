#include <thread>

#include "doctest.h"
#include "generators.hpp"
#include "herm/reasoner.hpp"
#include "herm/syntax.hpp"

using namespace herm;

namespace {

Signature sig() {
  Signature s = testing::generator_signature();
  for (const char* a : {"s", "t", "u", "v"}) s.declare(a, Ty::lifted());
  s.declare("vertebrate", Ty::arrow({Ty::e(), Ty::w(), Ty::o()}));
  return s;
}

Term f(const std::string& text) { return parse_formula(text, sig()); }

std::vector<Term> fs(std::initializer_list<const char*> texts) {
  std::vector<Term> out;
  for (auto t : texts) out.push_back(f(t));
  return out;
}

Verdict check(std::initializer_list<const char*> premises, const char* conclusion, const char* logic,
              Budget b = {}) {
  Reasoner r;
  const auto spec = LogicSpec::parse(logic);
  const auto ps = fs(premises);
  Verdict v = r.entails(ps, f(conclusion), spec, b);
  CHECK_MESSAGE(check_certificate(v, ps, f(conclusion), spec) == "", conclusion);
  return v;
}

std::vector<Term> goals(std::initializer_list<const char*> texts, const char* logic) {
  return countermodel_goals(fs(texts), nullptr, LogicSpec::parse(logic));
}

}  // namespace

TEST_CASE("budget") {
  Budget b;
  CHECK(b.key() == "w3.e2.d16.t20000");
  b.max_worlds = 0;
  CHECK_THROWS_AS(b.validate(), QueryError);
  CHECK_THROWS_AS(Reasoner().entails({}, f("p"), LogicSpec::preset("K"), b), QueryError);
}

TEST_CASE("find_model") {
  Budget b;
  SUBCASE("empty theory gets the smallest model") {
    auto ms = find_model({}, b);
    REQUIRE(ms.model);
    for (const auto& [base, n] : ms.model->sizes) CHECK(n == 1);
  }
  SUBCASE("contradiction has no model") {
    auto ms = find_model(goals({"p", "~p"}, "K"), b);
    CHECK_FALSE(ms.model);
    CHECK_FALSE(ms.incomplete);
  }
  SUBCASE("two diamonds") {
    auto g = goals({"dia p", "dia ~p"}, "K");
    auto ms = find_model(g, b);
    REQUIRE(ms.model);
    // globally, every world needs a p-successor and a non-p successor
    CHECK(ms.model->sizes.at("w") == 2);
    Evaluator ev(*ms.model);
    for (const auto& t : g) CHECK(ev.holds(t));
    CHECK(ms.model->str() == "domain w: w0 w1\np = {w1}\nr = {(w0,w0), (w0,w1), (w1,w0), (w1,w1)}\n");
  }
  SUBCASE("deterministic") {
    auto g = goals({"dia p", "box (p => q)", "~q"}, "T/local");
    auto a = find_model(g, b);
    auto c = find_model(g, b);
    REQUIRE(a.model);
    CHECK(a.model->str() == c.model->str());
  }
  SUBCASE("first-order") {
    auto ms = find_model(goals({"! [X:e]: (fish @ X => box (fish @ X))", "? [X:e]: ~ (fish @ X)", "fish @ a"}, "K"), b);
    REQUIRE(ms.model);
    CHECK(ms.model->sizes.at("e") == 2);
  }
  SUBCASE("functions") {
    auto ms = find_model(goals({"loves @ a @ (f @ a)", "~ (loves @ a @ a)"}, "K"), b);
    REQUIRE(ms.model);
    Evaluator ev(*ms.model);
    CHECK(ev.holds(f("f @ a != a")));
  }
}

TEST_CASE("entailment examples") {
  auto v = check({"box (p => q)", "box p"}, "box q", "K");
  CHECK(v.valid());
  REQUIRE(v.proof);
  CHECK(replay(*v.proof) == "");

  v = check({"box p"}, "p", "K");
  REQUIRE(v.invalid());
  CHECK(v.countermodel->str() == "domain w: w0\np = {}\nr = {}\n");

  v = check({}, "p => box dia p", "KB");
  CHECK(v.valid());

  CHECK(check({}, "! [X:e]: (fish @ X => box (vertebrate @ X))", "S4").invalid());
  CHECK(check({"box ! [X:e]: (fish @ X => vertebrate @ X)"}, "! [X:e]: (fish @ X => box (vertebrate @ X))", "S4")
            .invalid());
  CHECK(check({"! [X:e]: box (fish @ X => vertebrate @ X)", "! [X:e]: (fish @ X => box (fish @ X))"},
              "! [X:e]: (fish @ X => box (vertebrate @ X))", "K")
            .valid());
  CHECK(check({"fish @ a"}, "? [X:e]: fish @ X", "K").valid());
  CHECK(check({"! [X:e]: fish @ X"}, "fish @ b", "K").valid());
  CHECK(check({}, "a = a", "K").valid());
  CHECK(check({"c"}, "c | p", "K").valid());
}

TEST_CASE("consistency examples") {
  Reasoner r;
  Budget b;
  const auto K = LogicSpec::preset("K");
  auto s = r.consistent(fs({"p", "p => q"}), K, b);
  CHECK(s.kind == SatKind::Sat);
  REQUIRE(s.model);

  s = r.consistent(fs({"box p", "dia ~p"}), K, b);
  CHECK(s.kind == SatKind::Unsat);
  REQUIRE(s.proof);
  CHECK(replay(*s.proof) == "");

  s = r.consistent(fs({"p", "~p"}), K, b);
  CHECK(s.kind == SatKind::Unsat);

  // locally, dia p with ~p at the actual world needs a second world
  const auto local = LogicSpec::parse("K/local");
  Budget one = b;
  one.max_worlds = 1;
  s = r.consistent(fs({"dia p", "~p"}), local, one);
  CHECK(s.kind == SatKind::Unknown);
  CHECK(s.reason == UnknownReason::BudgetExhausted);
  s = r.consistent(fs({"dia p", "~p"}), local, b);
  CHECK(s.kind == SatKind::Sat);
  CHECK(s.model->sizes.at("w") == 2);
}

TEST_CASE("frame correspondence") {
  struct Row {
    const char* formula;
    const char* logic;
    bool valid;
  };
  const Row rows[] = {
      {"box p => p", "K", false},           {"box p => p", "T", true},
      {"p => box dia p", "K", false},       {"p => box dia p", "KB", true},
      {"box p => box box p", "S4", true},   {"box p => box box p", "T", false},
      {"dia p => box dia p", "S5", true},   {"dia p => box dia p", "S4", false},
      {"box (p => q) => (box p => box q)", "K", true},
      {"box (p => q) => (box p => box q)", "T", true},
      {"box (p => q) => (box p => box q)", "KB", true},
      {"box (p => q) => (box p => box q)", "S4", true},
      {"box (p => q) => (box p => box q)", "S5", true},
  };
  for (const auto& row : rows) {
    for (const char* mode : {"", "/local"}) {
      const std::string logic = std::string(row.logic) + mode;
      auto v = check({}, row.formula, logic.c_str());
      CAPTURE(row.formula);
      CAPTURE(logic);
      CHECK(v.kind == (row.valid ? VerdictKind::Valid : VerdictKind::Invalid));
    }
  }
}

TEST_CASE("global and local consequence differ") {
  CHECK(check({"p"}, "box p", "K").valid());
  CHECK(check({"p"}, "box p", "K/local").invalid());
}

TEST_CASE("quantifier domains") {
  // Barcan formula: valid with constant domains, not with varying ones
  CHECK(check({}, "(! [X:e]: box (fish @ X)) => box (! [X:e]: fish @ X)", "K").valid());
  CHECK(check({}, "(!A [X:e]: box (fish @ X)) => box (!A [X:e]: fish @ X)", "K/actualist").invalid());
}

TEST_CASE("mixed inputs are rejected") {
  Reasoner r;
  CHECK_THROWS_AS(r.entails({}, f("a"), LogicSpec::preset("K"), Budget{}), QueryError);
  CHECK_THROWS(r.entails({f("!A [X:e]: fish @ X")}, f("p"), LogicSpec::preset("K"), Budget{}));
}

TEST_CASE("tampered proofs are rejected") {
  auto v = check({"box (p => q)", "box p"}, "box q", "K");
  REQUIRE(v.valid());
  TableauProof bad = *v.proof;
  SUBCASE("different query") {
    bad.problem.conclusion = f("box p");
    CHECK(replay(bad) != "");
  }
  SUBCASE("missing close") {
    ProofNode* n = &bad.root;
    while (!n->children.empty()) n = &n->children.back();
    n->steps.pop_back();
    CHECK(replay(bad) != "");
  }
  SUBCASE("forged entry") {
    bad.root.steps[0].added.push_back(ProofEntry{0, true, f("~q")});
    CHECK(replay(bad) != "");
  }
  SUBCASE("certificate for another query") {
    CHECK(check_certificate(v, fs({"box p"}), f("box q"), LogicSpec::preset("K")) != "");
  }
}

TEST_CASE("forged countermodels are rejected") {
  auto v = check({"box p"}, "p", "K");
  REQUIRE(v.invalid());
  v.countermodel->interp["p"].table = {1};
  CHECK(check_certificate(v, fs({"box p"}), f("p"), LogicSpec::preset("K")) != "");
}

TEST_CASE("monotonicity, determinism and cache transparency") {
  testing::ModalGen gen(11, 3);
  Reasoner cached(true), plain(false);
  const char* logics[] = {"K", "T", "KB", "S4", "S5"};
  int valid = 0;
  for (int i = 0; i < 60; ++i) {
    const auto spec = LogicSpec::preset(logics[i % 5]);
    Term prem = gen.gen(3, 2);
    Term concl = gen.gen(3, 2);
    Term extra = gen.gen(3, 2);
    auto a = cached.entails({prem}, concl, spec, Budget{});
    auto b = cached.entails({prem}, concl, spec, Budget{});
    auto c = plain.entails({prem}, concl, spec, Budget{});
    CHECK(a.kind == b.kind);
    CHECK(a.kind == c.kind);
    CHECK(a.certificate == c.certificate);
    if (a.invalid()) CHECK(a.countermodel->str() == c.countermodel->str());
    CHECK(check_certificate(a, {prem}, concl, spec) == "");
    if (a.valid()) {
      ++valid;
      CHECK(plain.entails({prem, extra}, concl, spec, Budget{}).valid());
    }
  }
  CHECK(valid > 0);
  CHECK(cached.stats().cache_hits >= 60);
  CHECK(plain.stats().cache_hits == 0);
}

TEST_CASE("concurrent queries share the cache") {
  Reasoner r;
  const auto K = LogicSpec::preset("K");
  std::vector<std::thread> pool;
  std::vector<VerdictKind> out(8);
  for (int t = 0; t < 8; ++t) {
    pool.emplace_back([&, t] { out[t] = r.entails({f("box (p => q)")}, f(t % 2 ? "box p => box q" : "p => q"), K, Budget{}).kind; });
  }
  for (auto& th : pool) th.join();
  for (int t = 0; t < 8; ++t) CHECK(out[t] == (t % 2 ? VerdictKind::Valid : VerdictKind::Invalid));
  CHECK(r.stats().queries == 8);
}

TEST_CASE("find_model returns the least model in canonical order") {
  // Brute force: domain sizes ascending, then tables of the constants sorted
  // by name, rows ascending, the first row most significant.
  testing::ModalGen gen(5, 2);
  int found = 0;
  for (int i = 0; i < 120; ++i) {
    std::vector<Term> surface{gen.gen(3, 2), gen.gen(2, 1)};
    const auto g = countermodel_goals(surface, nullptr, LogicSpec::preset(i % 2 ? "K" : "T"));
    std::map<std::string, Ty> consts;
    for (const auto& t : g) collect_constants(t, consts);
    consts.emplace(kAccessibility, Ty::arrow({Ty::w(), Ty::w(), Ty::o()}));
    Budget b;
    b.max_worlds = 2;
    const auto got = find_model(g, b, {{kAccessibility, Ty::arrow({Ty::w(), Ty::w(), Ty::o()})}});
    std::optional<FiniteModel> want;
    for (std::uint32_t n = 1; n <= 2 && !want; ++n) {
      std::vector<std::pair<std::string, std::size_t>> slots;
      std::size_t bits = 0;
      for (const auto& [name, ty] : consts) {
        const std::size_t rows = ty.args().size() == 2 ? n * n : n;
        slots.emplace_back(name, rows);
        bits += rows;
      }
      for (std::uint64_t code = 0; code < (std::uint64_t(1) << bits) && !want; ++code) {
        FiniteModel m;
        m.sizes["w"] = n;
        std::size_t pos = 0;
        for (const auto& [name, rows] : slots) {
          Interpretation in{consts.at(name), std::vector<std::uint32_t>(rows)};
          for (std::size_t k = 0; k < rows; ++k, ++pos) in.table[k] = code >> (bits - 1 - pos) & 1;
          m.interp[name] = in;
        }
        Evaluator ev(m);
        bool ok = true;
        for (const auto& t : g) ok = ok && ev.holds(t);
        if (ok) want = m;
      }
    }
    REQUIRE(got.model.has_value() == want.has_value());
    if (want) {
      ++found;
      CHECK(got.model->str() == want->str());
    }
  }
  CHECK(found > 20);
}
