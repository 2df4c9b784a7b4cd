#include "doctest.h"
#include "generators.hpp"
#include "herm/syntax.hpp"
#include "herm/term.hpp"

using namespace herm;

namespace {

Signature fish_sig() {
  Signature sig;
  sig.declare("fish", Ty::arrow({Ty::e(), Ty::w(), Ty::o()}));
  sig.declare("vertebrate", Ty::arrow({Ty::e(), Ty::w(), Ty::o()}));
  sig.declare("nemo", Ty::e());
  sig.declare("p", Ty::lifted());
  sig.declare("q", Ty::lifted());
  sig.declare("big", Ty::fun(Ty::e(), Ty::o()));
  return sig;
}

}  // namespace

TEST_CASE("types print right-associatively and compare structurally") {
  Ty t = Ty::arrow({Ty::e(), Ty::w(), Ty::o()});
  CHECK(t.str() == "e>w>o");
  CHECK(Ty::fun(Ty::lifted(), Ty::o()).str() == "(w>o)>o");
  CHECK(t == Ty::fun(Ty::e(), Ty::lifted()));
  CHECK(t.args().size() == 2);
  CHECK(t.result().is_o());
  Signature sig;
  CHECK(parse_type("e>w>o", sig) == t);
  CHECK(parse_type("(e>w)>o", sig) != t);
}

TEST_CASE("signature rejects duplicates, reserved names and shadowed bases") {
  Signature sig;
  sig.declare("fish", Ty::fun(Ty::e(), Ty::lifted()));
  CHECK_THROWS_AS(sig.declare("fish", Ty::e()), SignatureError);
  CHECK_THROWS_AS(sig.declare("box", Ty::e()), SignatureError);
  CHECK_THROWS_AS(sig.declare("r", Ty::e()), SignatureError);
  CHECK_THROWS_AS(sig.declare_base("e"), SignatureError);
  CHECK_THROWS_AS(sig.declare("thing", Ty::base("stuff")), SignatureError);
  sig.declare_base("stuff");
  CHECK_NOTHROW(sig.declare("thing", Ty::base("stuff")));
}

TEST_CASE("parse: necessity of vertebrates") {
  Signature sig = fish_sig();
  Term t = parse_formula("! [X:e]: (fish @ X => box (vertebrate @ X))", sig);
  CHECK(t.ty() == Ty::lifted());
  CHECK(t.head().op() == LogicalOp::MForall);
  CHECK(symbol_count(t) == 3);
  CHECK(free_symbols(t) == std::set<std::string>{"fish", "vertebrate"});

  Signature sig2 = fish_sig();
  Term nemo = parse_formula("fish @ nemo", sig2);
  CHECK(free_symbols(nemo) == std::set<std::string>{"fish", "nemo"});
}

TEST_CASE("parse: connectives on lifted formulas") {
  Signature sig = fish_sig();
  Term t = parse_formula("p & ~p", sig);
  CHECK(t.ty() == Ty::lifted());
  CHECK(t.head().op() == LogicalOp::MAnd);
  auto args = t.spine_args();
  CHECK(args[0] == Term::constant("p", Ty::lifted()));
  CHECK(args[1].head().op() == LogicalOp::MNot);
}

TEST_CASE("parse errors carry kinds and spans") {
  Signature sig = fish_sig();
  try {
    parse_formula("fish @ fish", sig);
    FAIL("expected a type error");
  } catch (const ParseError& err) {
    CHECK(err.kind() == ParseError::Kind::TypeMismatch);
    CHECK(err.span().begin == 7);
  }
  try {
    parse_formula("p & unknown_thing", sig);
    FAIL("expected an unknown constant");
  } catch (const ParseError& err) {
    CHECK(err.kind() == ParseError::Kind::UnknownConstant);
    CHECK(err.span().column == 5);
  }
  try {
    parse_formula("p # q", sig);
    FAIL("expected a lexical error");
  } catch (const ParseError& err) {
    CHECK(err.kind() == ParseError::Kind::Lexical);
  }
  CHECK_THROWS_AS(parse_formula("fish @ X", sig), ParseError);
  CHECK_THROWS_AS(parse_formula("p &", sig), ParseError);
  CHECK_THROWS_AS(parse_formula("!A [X:w]: p", sig), ParseError);
}

TEST_CASE("comments and multi-binder quantifiers") {
  Signature sig = fish_sig();
  Term a = parse_formula("% leading comment\n! [X:e, Y:e]: (big @ X | big @ Y) % trailing", sig);
  Term b = parse_formula("! [X:e]: ! [Y:e]: (big @ X | big @ Y)", sig);
  CHECK(a == b);
  CHECK(a.ty().is_o());
}

TEST_CASE("normalize: beta and eta steps") {
  Ty eo = Ty::fun(Ty::e(), Ty::o());
  Term F = Term::constant("big", eo);
  Term a = Term::constant("nemo", Ty::e());
  Term redex = Term::app(Term::lam("X", Ty::e(), Term::app(F, Term::bvar(0, Ty::e()))), a);
  CHECK(normalize(redex) == Term::app(F, a));
  Term eta = Term::lam("X", Ty::e(), Term::app(F, Term::bvar(0, Ty::e())));
  CHECK(normalize(eta) == F);
}

TEST_CASE("symbol counts and free symbols") {
  Signature sig = fish_sig();
  CHECK(symbol_count(parse_formula("p", sig)) == 0);
  CHECK(symbol_count(parse_formula("~ (p & q)", sig)) == 2);
  CHECK(free_symbols(parse_formula("box (p => q)", sig)) == std::set<std::string>{"p", "q"});
  Term id = Term::lam("X", Ty::e(), Term::bvar(0, Ty::e()));
  CHECK(free_symbols(id).empty());
}

TEST_CASE("alpha-equivalent terms compare equal") {
  Signature sig = fish_sig();
  CHECK(parse_formula("! [X:e]: fish @ X", sig) == parse_formula("! [Y:e]: fish @ Y", sig));
  CHECK(parse_formula("! [X:e]: fish @ X", sig) != parse_formula("? [X:e]: fish @ X", sig));
}

TEST_CASE("property: normalize is idempotent and type preserving") {
  testing::TermGen gen(20240611);
  const std::vector<Ty> types = {Ty::o(), Ty::lifted(), Ty::e(), Ty::fun(Ty::e(), Ty::lifted())};
  for (int i = 0; i < 200; ++i) {
    const Ty& ty = types[i % types.size()];
    Term t = gen.gen(ty, 4);
    Term n = normalize(t);
    CHECK(n.ty() == ty);
    CHECK(normalize(n) == n);
  }
}

TEST_CASE("property: parse(print(t)) is alpha-beta-eta equal to t") {
  testing::TermGen gen(7);
  const std::vector<Ty> types = {Ty::o(), Ty::lifted(), Ty::fun(Ty::e(), Ty::o())};
  for (int i = 0; i < 300; ++i) {
    Term t = gen.gen(types[i % types.size()], 4);
    const std::string text = print(t);
    Term back;
    try {
      back = parse_formula(text, gen.signature());
    } catch (const ParseError& err) {
      FAIL_CHECK(err.what() << " in: " << text);
      continue;
    }
    INFO(text);
    CHECK(alpha_beta_eta_equal(back, t));
  }
}

TEST_CASE("property: canonical comparison is an equivalence relation") {
  testing::TermGen gen(99);
  std::vector<Term> pool;
  for (int i = 0; i < 60; ++i) pool.push_back(normalize(gen.gen(Ty::o(), 2)));
  for (std::size_t i = 0; i < pool.size(); ++i) {
    CHECK(pool[i] == pool[i]);
    for (std::size_t j = 0; j < pool.size(); ++j) {
      CHECK((pool[i] == pool[j]) == (pool[j] == pool[i]));
      CHECK((pool[i] == pool[j]) == (pool[i].key() == pool[j].key()));
      for (std::size_t k = 0; k < pool.size(); k += 7) {
        if (pool[i] == pool[j] && pool[j] == pool[k]) CHECK(pool[i] == pool[k]);
      }
    }
  }
}

TEST_CASE("thf annotated formulas round-trip") {
  Signature sig = fish_sig();
  auto fs = parse_tptp(
      "thf(mp1, definition, ! [X:e]: (fish @ X => vertebrate @ X)).\n"
      "thf(goal, conjecture, box (fish @ nemo)).\n",
      sig);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].role == Role::MeaningPostulate);
  CHECK(fs[1].role == Role::Conclusion);
  auto again = parse_tptp(to_tptp(fs[0]) + "\n" + to_tptp(fs[1]), sig);
  CHECK(again[0].term == fs[0].term);
  CHECK(again[1].label == "goal");
  CHECK_THROWS_AS(parse_tptp("thf(a, axiom, p). thf(a, axiom, q).", sig), ParseError);
}
