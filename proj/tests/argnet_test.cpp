#include "doctest.h"
#include "generators.hpp"
#include "herm/argnet.hpp"
#include "herm/syntax.hpp"

using namespace herm;

namespace {

Signature sig() {
  Signature s = testing::generator_signature();
  for (const char* a : {"s", "t", "v"}) s.declare(a, Ty::lifted());
  return s;
}

Argument arg(const std::string& id, std::vector<const char*> premises, const char* concl, const char* logic = "K") {
  Argument a;
  a.id = id;
  a.spec = LogicSpec::parse(logic);
  int k = 0;
  for (auto p : premises) a.premises.push_back({id + "p" + std::to_string(++k), Role::Premise, parse_formula(p, sig())});
  a.conclusion = {id + "c", Role::Conclusion, parse_formula(concl, sig())};
  return a;
}

std::set<std::pair<Mechanism, std::string>> mechanisms(const std::vector<RealizedRelation>& rs) {
  std::set<std::pair<Mechanism, std::string>> out;
  for (const auto& r : rs) out.insert({r.mechanism, r.target});
  return out;
}

// A attacks B, C supports B, B supports C without being asked to.
std::map<std::string, Argument> trio() {
  return {{"A", arg("A", {"v", "v => ~ p"}, "~ p")},
          {"B", arg("B", {"p", "q"}, "t")},
          {"C", arg("C", {"t", "t => q"}, "q")}};
}

}  // namespace

TEST_CASE("relation examples") {
  Reasoner r;
  auto rs = realized_relations(arg("A", {"s"}, "~ p"), arg("B", {"p"}, "q"), {}, Budget{}, r);
  CHECK(mechanisms(rs) == std::set<std::pair<Mechanism, std::string>>{{Mechanism::Rebut, "Bp1"},
                                                                      {Mechanism::Undermine, ""}});
  for (const auto& x : rs) CHECK(x.polarity == Polarity::Attack);

  rs = realized_relations(arg("A", {"s"}, "p"), arg("B", {"p"}, "q"), {}, Budget{}, r);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].mechanism == Mechanism::Endorse);
  CHECK(rs[0].polarity == Polarity::Support);
  CHECK(rs[0].target == "Bp1");

  rs = realized_relations(arg("A", {"s"}, "box ~ p"), arg("B", {"dia p", "q"}, "q & dia p"), {}, Budget{}, r);
  CHECK(mechanisms(rs) == std::set<std::pair<Mechanism, std::string>>{{Mechanism::Rebut, "Bp1"},
                                                                      {Mechanism::Undermine, ""}});
}

TEST_CASE("relations are judged in the target's logic") {
  Reasoner r;
  // box p endorses p only on reflexive frames
  CHECK(realized_relations(arg("A", {"s"}, "box p"), arg("B", {"p"}, "q", "K"), {}, Budget{}, r).empty());
  CHECK(realized_relations(arg("A", {"s"}, "box p"), arg("B", {"p"}, "q", "T"), {}, Budget{}, r).size() == 1);
}

TEST_CASE("the theory takes part in every relation") {
  Reasoner r;
  const std::vector<Term> theory{parse_formula("s => ~ p", sig())};
  auto rs = realized_relations(arg("A", {"q"}, "s"), arg("B", {"p"}, "q"), theory, Budget{}, r);
  CHECK(mechanisms(rs).count({Mechanism::Rebut, "Bp1"}));
}

TEST_CASE("role fulfillment examples") {
  Reasoner r;
  const auto args = trio();
  ArgumentNetwork net{{"A", "B", "C"}, {{"A", "B", Polarity::Attack}, {"C", "B", Polarity::Support}}};
  auto rep = role_fulfillment(net, args, {}, Budget{}, r);
  CHECK(rep.intended[0].realized);
  CHECK(rep.intended[1].realized);
  REQUIRE(rep.spurious.size() == 1);
  CHECK(rep.spurious[0] == Edge{"B", "C", Polarity::Support});
  CHECK(rep.score == 0.75);
  CHECK(role_fulfillment(net, args, {}, Budget{}, r, 0.0).score == 1.0);

  ArgumentNetwork half{{"A", "B", "C"}, {{"A", "B", Polarity::Attack}, {"A", "C", Polarity::Attack}}};
  rep = role_fulfillment(half, args, {}, Budget{}, r, 0.0);
  CHECK(rep.score == 0.5);

  ArgumentNetwork all{{"A", "B", "C"},
                      {{"A", "B", Polarity::Attack}, {"C", "B", Polarity::Support}, {"B", "C", Polarity::Support}}};
  CHECK(role_fulfillment(all, args, {}, Budget{}, r).score == 1.0);

  ArgumentNetwork none{{"A"}, {}};
  rep = role_fulfillment(none, args, {}, Budget{}, r);
  CHECK(rep.empty);
  CHECK(rep.score == 1.0);
}

TEST_CASE("malformed networks are rejected") {
  Reasoner r;
  const auto args = trio();
  CHECK_THROWS_AS(ArgumentNetwork({{"A"}, {{"A", "A", Polarity::Attack}}}).validate(), QueryError);
  CHECK_THROWS_AS(ArgumentNetwork({{"A"}, {{"A", "Z", Polarity::Attack}}}).validate(), QueryError);
  CHECK_THROWS_AS(
      ArgumentNetwork({{"A", "B"}, {{"A", "B", Polarity::Attack}, {"A", "B", Polarity::Attack}}}).validate(),
      QueryError);
  CHECK_NOTHROW(
      ArgumentNetwork({{"A", "B"}, {{"A", "B", Polarity::Attack}, {"A", "B", Polarity::Support}}}).validate());
  CHECK_THROWS_AS(role_fulfillment({{"A", "Q"}, {}}, args, {}, Budget{}, r), QueryError);
}

TEST_CASE("rebuttal implies undermining when the target's premises are consistent") {
  Reasoner r;
  testing::ModalGen gen(3, 3);
  int rebuts = 0;
  for (int i = 0; i < 150; ++i) {
    Argument a, b;
    a.id = "a";
    b.id = "b";
    a.conclusion = {"ac", Role::Conclusion, gen.gen(2, 1)};
    b.premises = {{"b1", Role::Premise, gen.gen(1, 1)}, {"b2", Role::Premise, gen.gen(1, 1)}};
    b.conclusion = {"bc", Role::Conclusion, gen.gen(1, 1)};
    a.spec = b.spec = LogicSpec::preset(i % 2 ? "K" : "S4");
    const auto rs = realized_relations(a, b, {}, Budget{}, r);
    const auto ms = mechanisms(rs);
    bool rebut = false, undermine = false;
    for (const auto& [m, t] : ms) {
      rebut = rebut || m == Mechanism::Rebut;
      undermine = undermine || m == Mechanism::Undermine;
    }
    const bool consistent =
        r.consistent({b.premises[0].term, b.premises[1].term}, b.spec, Budget{}).kind == SatKind::Sat;
    if (rebut && consistent) {
      ++rebuts;
      CHECK(undermine);
    }
    for (const auto& x : rs) CHECK_FALSE(x.certificate.empty());
  }
  CHECK(rebuts > 5);
}

TEST_CASE("role fulfillment is invariant under relabeling") {
  Reasoner r;
  const auto args = trio();
  ArgumentNetwork net{{"A", "B", "C"}, {{"A", "B", Polarity::Attack}, {"C", "B", Polarity::Support}}};
  const double base = role_fulfillment(net, args, {}, Budget{}, r).score;
  const std::map<std::string, std::string> rename{{"A", "z"}, {"B", "x"}, {"C", "y"}};
  std::map<std::string, Argument> moved;
  for (const auto& [id, a] : args) {
    Argument b = a;
    b.id = rename.at(id);
    moved[b.id] = b;
  }
  ArgumentNetwork renamed{{"x", "y", "z"}, {}};
  for (const auto& e : net.intended) renamed.intended.push_back({rename.at(e.from), rename.at(e.to), e.polarity});
  CHECK(role_fulfillment(renamed, moved, {}, Budget{}, r).score == base);
}

TEST_CASE("grounded extension and graph dump") {
  const std::vector<std::string> nodes{"a", "b", "c", "d", "e"};
  // a -> b -> c, d <-> e
  const std::vector<Edge> attacks{{"a", "b", Polarity::Attack},
                                  {"b", "c", Polarity::Attack},
                                  {"d", "e", Polarity::Attack},
                                  {"e", "d", Polarity::Attack},
                                  {"c", "d", Polarity::Support}};
  CHECK(grounded_extension(nodes, attacks) == std::set<std::string>{"a", "c"});

  Reasoner r;
  ArgumentNetwork net{{"A", "B", "C"}, {{"A", "B", Polarity::Attack}, {"C", "B", Polarity::Support}}};
  const auto dot = to_dot(net, role_fulfillment(net, trio(), {}, Budget{}, r));
  CHECK(dot ==
        "digraph network {\n"
        "  \"A\";\n  \"B\";\n  \"C\";\n"
        "  \"A\" -> \"B\" [label=\"attack\", color=green, arrowhead=tee];\n"
        "  \"C\" -> \"B\" [label=\"support\", color=green];\n"
        "  \"B\" -> \"C\" [label=\"support\", style=dashed, color=gray];\n"
        "}\n");
}
