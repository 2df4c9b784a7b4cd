#include "herm/adequacy.hpp"

#include <algorithm>

namespace herm {

bool CorpusArgument::mentions(const std::string& sentence) const {
  return conclusion == sentence || std::find(premises.begin(), premises.end(), sentence) != premises.end();
}

void Corpus::validate() const {
  for (const auto& a : arguments) {
    for (const auto& s : a.premises) {
      if (!sentences.count(s)) throw QueryError("argument " + a.id + " references unknown sentence " + s);
    }
    if (!sentences.count(a.conclusion)) {
      throw QueryError("argument " + a.id + " references unknown sentence " + a.conclusion);
    }
  }
}

namespace {

const Formalization& mapped(const std::string& s, const CorpusArgument& a, const AdequacyContext& ctx) {
  auto it = ctx.fmap->find(s);
  if (it == ctx.fmap->end()) throw QueryError("argument " + a.id + ": sentence " + s + " has no formalization");
  return it->second;
}

}  // namespace

Verdict judge(const CorpusArgument& a, const AdequacyContext& ctx, Reasoner& r) {
  std::vector<Term> premises = ctx.theory;
  for (const auto& s : a.premises) premises.push_back(mapped(s, a, ctx).formula);
  const Formalization& c = mapped(a.conclusion, a, ctx);
  auto it = ctx.arg_specs.find(a.id);
  return r.entails(premises, c.formula, it == ctx.arg_specs.end() ? c.spec : it->second, ctx.budget);
}

Tri reliability(const std::string& sentence, const AdequacyContext& ctx, Reasoner& r) {
  bool unknown = false;
  for (const auto& a : ctx.corpus->arguments) {
    if (a.correct || !a.mentions(sentence)) continue;
    const Verdict v = judge(a, ctx, r);
    if (v.valid()) return Tri::No;
    unknown = unknown || v.unknown();
  }
  return unknown && ctx.strict ? Tri::Unknown : Tri::Yes;
}

double ambitiousness(const std::string& sentence, const AdequacyContext& ctx, Reasoner& r) {
  int total = 0, valid = 0;
  for (const auto& a : ctx.corpus->arguments) {
    if (!a.correct || !a.mentions(sentence)) continue;
    ++total;
    valid += judge(a, ctx, r).valid();
  }
  return total == 0 ? 1.0 : static_cast<double>(valid) / total;
}

double aggregate(const AdequacyScore& s, const AdequacyWeights& w, std::size_t min_symbols,
                 std::size_t max_symbols) {
  if (s.reliable == Tri::No) return kRejected;
  const double norm =
      max_symbols == 0 ? 0.0 : static_cast<double>(s.simplicity - std::min(s.simplicity, min_symbols)) / max_symbols;
  return w.ambitiousness * s.ambitiousness - w.simplicity * norm;
}

AdequacyScore score(const std::string& sentence, const AdequacyContext& ctx, const AdequacyWeights& w,
                    std::size_t min_symbols, std::size_t max_symbols, Reasoner& r) {
  auto it = ctx.fmap->find(sentence);
  if (it == ctx.fmap->end()) throw QueryError("sentence " + sentence + " has no formalization");
  AdequacyScore s;
  s.reliable = reliability(sentence, ctx, r);
  s.ambitiousness = ambitiousness(sentence, ctx, r);
  s.simplicity = symbol_count(it->second.formula);
  s.aggregate = aggregate(s, w, min_symbols, max_symbols);
  return s;
}

std::vector<CandidateScore> score_candidates(const std::string& sentence,
                                             const std::vector<std::pair<std::string, Term>>& candidates,
                                             const LogicSpec& spec, const AdequacyContext& ctx,
                                             const AdequacyWeights& w, Reasoner& r) {
  std::size_t lo = SIZE_MAX, hi = 0;
  for (const auto& [label, t] : candidates) {
    lo = std::min(lo, symbol_count(t));
    hi = std::max(hi, symbol_count(t));
  }
  std::vector<CandidateScore> out;
  for (const auto& [label, t] : candidates) {
    FormalizationMap fmap = *ctx.fmap;
    fmap[sentence] = Formalization{t, spec};
    AdequacyContext local = ctx;
    local.fmap = &fmap;
    out.push_back({label, t, score(sentence, local, w, lo, hi, r)});
  }
  return out;
}

}  // namespace herm
