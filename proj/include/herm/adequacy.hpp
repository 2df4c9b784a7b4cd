#pragma once

// Adequacy of candidate formalizations against a corpus of arguments tagged
// correct or incorrect: reliability, ambitiousness and syntactic simplicity.

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "herm/correctness.hpp"

namespace herm {

struct CorpusArgument {
  std::string id;
  std::vector<std::string> premises;  // sentence ids
  std::string conclusion;
  bool correct = true;

  bool mentions(const std::string& sentence) const;
};

struct Corpus {
  std::map<std::string, std::string> sentences;  // id -> source text
  std::vector<CorpusArgument> arguments;

  // Throws QueryError naming the first dangling sentence reference.
  void validate() const;
};

struct Formalization {
  Term formula;
  LogicSpec spec;
};
using FormalizationMap = std::map<std::string, Formalization>;

// Everything a score depends on. An argument is judged in arg_specs[id] when
// given, else in the logic of its conclusion's formalization.
struct AdequacyContext {
  const Corpus* corpus = nullptr;
  const FormalizationMap* fmap = nullptr;
  std::vector<Term> theory;
  std::map<std::string, LogicSpec> arg_specs;
  Budget budget;
  bool strict = false;  // Unknown verdicts make reliability Unknown
};

struct AdequacyWeights {
  double ambitiousness = 1.0;  // w_a
  double simplicity = 0.05;    // w_s
};

inline constexpr double kRejected = -std::numeric_limits<double>::infinity();

struct AdequacyScore {
  Tri reliable = Tri::Unknown;
  double ambitiousness = 0;
  std::size_t simplicity = 0;  // symbol count of the formula
  double aggregate = 0;
};

// Verdict of one corpus argument under the context. Throws QueryError when a
// sentence of the argument is unmapped.
Verdict judge(const CorpusArgument& a, const AdequacyContext& ctx, Reasoner& r);

Tri reliability(const std::string& sentence, const AdequacyContext& ctx, Reasoner& r);
double ambitiousness(const std::string& sentence, const AdequacyContext& ctx, Reasoner& r);

// -inf when reliable = No; else w_a * ambitiousness - w_s * normalized
// simplicity, where the least symbol count among the sentence's candidates
// normalizes to 0 and the scale is the largest count.
double aggregate(const AdequacyScore& s, const AdequacyWeights& w, std::size_t min_symbols,
                 std::size_t max_symbols);

// Scores the sentence's current formalization in ctx.fmap.
AdequacyScore score(const std::string& sentence, const AdequacyContext& ctx, const AdequacyWeights& w,
                    std::size_t min_symbols, std::size_t max_symbols, Reasoner& r);

struct CandidateScore {
  std::string label;
  Term formula;
  AdequacyScore score;
};

// Scores every candidate of the sentence in turn, holding the rest of the
// map fixed.
std::vector<CandidateScore> score_candidates(const std::string& sentence,
                                             const std::vector<std::pair<std::string, Term>>& candidates,
                                             const LogicSpec& spec, const AdequacyContext& ctx,
                                             const AdequacyWeights& w, Reasoner& r);

}  // namespace herm
