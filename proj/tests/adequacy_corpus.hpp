#pragma once

// Two readings of "Fishes are necessarily vertebrates" and a two-argument
// corpus on which they come apart.

#include <string>
#include <utility>
#include <vector>

#include "herm/adequacy.hpp"
#include "herm/syntax.hpp"

namespace herm::testing {

struct FishCorpus {
  Signature sig;
  Corpus corpus;
  FormalizationMap fmap;  // every sentence except s1
  std::vector<std::pair<std::string, Term>> candidates;
  LogicSpec spec = LogicSpec::parse("K/local");

  FishCorpus() {
    sig.declare("fish", Ty::arrow({Ty::e(), Ty::w(), Ty::o()}));
    sig.declare("vertebrate", Ty::arrow({Ty::e(), Ty::w(), Ty::o()}));
    sig.declare("nemo", Ty::e());
    corpus.sentences = {{"s1", "Fishes are necessarily vertebrates."},
                        {"s2", "Nemo is a fish."},
                        {"s3", "Nemo is necessarily a vertebrate."},
                        {"s4", "Nemo is a fish, and necessarily so."}};
    corpus.arguments = {{"a1", {"s1", "s2"}, "s3", true}, {"a2", {"s1", "s4"}, "s3", true}};
    put("s2", "fish @ nemo");
    put("s3", "box (vertebrate @ nemo)");
    put("s4", "fish @ nemo & box (fish @ nemo)");
    candidates = {{"de-re", parse_formula("! [X:e]: (fish @ X => box (vertebrate @ X))", sig)},
                  {"de-dicto", parse_formula("box (! [X:e]: (fish @ X => vertebrate @ X))", sig)}};
  }

  void put(const std::string& s, const char* text) { fmap[s] = Formalization{parse_formula(text, sig), spec}; }
};

}  // namespace herm::testing
