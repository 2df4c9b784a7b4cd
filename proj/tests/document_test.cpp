#include <fstream>
#include <sstream>

#include "doctest.h"
#include "herm/document.hpp"
#include "json.hpp"

using namespace herm;
using json = nlohmann::json;

namespace {

std::string read(const std::string& name) {
  std::ifstream in(std::string(HERM_FIXTURES) + "/" + name);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<Issue> issues_of(const std::string& text) {
  try {
    parse_document(text);
  } catch (const DocumentError& e) {
    return e.issues();
  }
  return {};
}

json toy() { return json::parse(read("toy.herm")); }

}  // namespace

TEST_CASE("fixtures load cleanly") {
  for (const char* f : {"toy.herm", "planted.herm", "contra.herm"}) {
    CAPTURE(f);
    CHECK(issues_of(read(f)).empty());
  }
  const auto doc = parse_document(read("toy.herm"));
  CHECK(doc.discourse.corpus.sentences.size() == 5);
  CHECK(doc.discourse.candidates.at("s4").size() == 2);
  CHECK(doc.discourse.network.nodes == std::vector<std::string>{"a1", "a2"});
  CHECK(doc.discourse.network.intended.size() == 2);
  CHECK(doc.structures.size() == 1);
  CHECK(doc.state().choice.at("s2") == 0);
}

TEST_CASE("a dangling sentence reference is named") {
  json j = toy();
  j["arguments"][1]["premises"][1] = "s9";
  const auto is = issues_of(j.dump());
  REQUIRE(is.size() == 1);
  CHECK(is[0].where == "arguments[1].premises[1]");
  CHECK(is[0].message.find("'s9'") != std::string::npos);
}

TEST_CASE("duplicate labels are rejected") {
  json j = toy();
  j["sentences"][2]["candidates"][1]["label"] = "s1_plain";
  const auto is = issues_of(j.dump());
  REQUIRE(is.size() == 1);
  CHECK(is[0].where == "sentences[2].candidates[1].label");
}

TEST_CASE("every problem is reported at once") {
  json j = toy();
  j["arguments"][0]["conclusion"] = "nope";
  j["sentences"][0]["candidates"][0]["formula"] = "storm &";
  j["sentences"][1]["candidates"][1]["formula"] = "storm @ closed";
  j["network"]["edges"][0]["polarity"] = "sideways";
  j["extra"] = 1;
  j["postulates"] = json::array({{{"label", "p"}, {"formula", "storm"}, {"status", "maybe"}}});
  const auto is = issues_of(j.dump());
  std::set<std::string> where;
  for (const auto& i : is) where.insert(i.where);
  CHECK(where == std::set<std::string>{"arguments[0].conclusion", "sentences[0].candidates[0].formula",
                                       "sentences[1].candidates[1].formula", "network.edges[0].polarity", "extra",
                                       "postulates[0].status"});
  CHECK(issues_of("{").size() == 1);
  CHECK(issues_of("[]").size() == 1);
  j = toy();
  j["schema"] = "herm/0";
  CHECK(issues_of(j.dump()).at(0).where == "schema");
}

TEST_CASE("malformed structures are collected") {
  json j = toy();
  j["structures"][0]["relations"]["fish"]["extensions"]["w1"] = json::array({json::array({"b"})});
  const auto is = issues_of(j.dump());
  REQUIRE(is.size() == 1);
  CHECK(is[0].message.find("'b'") != std::string::npos);
}

TEST_CASE("save then load is a fixpoint") {
  for (const char* f : {"toy.herm", "planted.herm", "contra.herm"}) {
    CAPTURE(f);
    const auto once = save_document(parse_document(read(f)));
    const auto doc = parse_document(once);
    CHECK(save_document(doc) == once);
  }
}

TEST_CASE("search results are recorded in the document") {
  auto doc = parse_document(read("planted.herm"));
  EngineConfig c;
  Reasoner r;
  const auto res = run(doc.discourse, c, r);
  doc.record(res);
  const auto back = parse_document(save_document(doc));
  CHECK(back.state() == res.best);
  CHECK(back.settled == std::set<std::string>{"whales_are_mammals"});
  CHECK(back.selected.at("s1") == doc.discourse.candidates.at("s1")[res.best.choice.at("s1")].label);
}

TEST_CASE("TPTP export and import") {
  const auto doc = parse_document(read("planted.herm"));
  const auto text = export_tptp(doc);
  CHECK(text.find("thf(whales_are_mammals, definition, whale => mammal).") != std::string::npos);
  CHECK(text.find("thf(s1_plain, plain, whale).") != std::string::npos);

  // strip the formulas and take them back in
  Document bare = doc;
  for (auto& [sid, pool] : bare.discourse.candidates) pool.clear();
  bare.discourse.postulates.clear();
  CHECK(import_tptp(bare, text) == 23);
  CHECK(save_document(bare) == save_document(doc));

  // a second import clashes on every label and leaves the document alone
  const auto before = save_document(bare);
  CHECK_THROWS_AS(import_tptp(bare, text), DocumentError);
  CHECK(save_document(bare) == before);
  CHECK_THROWS_AS(import_tptp(bare, "thf(s99_x,plain,whale)."), DocumentError);
  CHECK(import_tptp(bare, "thf(s1_extra,plain,(mammal)).") == 1);
  CHECK(bare.discourse.candidates.at("s1").size() == 3);
}
