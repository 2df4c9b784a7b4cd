#include "herm/correctness.hpp"

#include <future>
#include <set>

namespace herm {

const char* to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Unknown: return "unknown";
  }
  return "";
}

void Argument::validate() const {
  std::set<std::string> seen;
  for (const auto& p : premises) {
    if (!seen.insert(p.label).second) throw QueryError("argument " + id + ": duplicate premise label " + p.label);
  }
  if (seen.count(conclusion.label)) {
    throw QueryError("argument " + id + ": conclusion " + conclusion.label + " is also a premise");
  }
}

namespace {

std::vector<Term> with_theory(const std::vector<Term>& theory, const std::vector<NamedFormula>& ps,
                              std::size_t skip = SIZE_MAX) {
  std::vector<Term> out = theory;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i != skip) out.push_back(ps[i].term);
  }
  return out;
}

}  // namespace

CorrectnessReport check_correctness(const Argument& a, const std::vector<Term>& theory, const Budget& b,
                                    Reasoner& r, const CorrectnessOptions& opts) {
  a.validate();
  CorrectnessReport rep;
  const Term& c = a.conclusion.term;
  const auto all = with_theory(theory, a.premises);
  rep.validity = r.entails(all, c, a.spec, b);
  rep.consistency = r.consistent(all, a.spec, b);

  // Leave-one-out and single-premise queries are independent.
  const std::size_t n = a.premises.size();
  std::vector<std::future<Verdict>> without, alone;
  for (std::size_t i = 0; i < n; ++i) {
    without.push_back(std::async(std::launch::async, [&, i] {
      return r.entails(with_theory(theory, a.premises, i), c, a.spec, b);
    }));
    if (opts.circularity) {
      alone.push_back(std::async(std::launch::async, [&, i] {
        std::vector<Term> single = theory;
        single.push_back(a.premises[i].term);
        return r.entails(single, c, a.spec, b);
      }));
    }
  }

  if (!opts.circularity) {
    rep.circular = Tri::No;
  } else {
    rep.circular = Tri::No;
    const Term cn = normalize(c);
    for (std::size_t i = 0; i < n && rep.circular != Tri::Yes; ++i) {
      if (alpha_beta_eta_equal(a.premises[i].term, cn)) {
        rep.circular = Tri::Yes;
        rep.circular_premise = a.premises[i].label;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Verdict v = alone[i].get();
      if (rep.circular == Tri::Yes) continue;
      if (v.valid()) {
        rep.circular = Tri::Yes;
        rep.circular_premise = a.premises[i].label;
      } else if (v.unknown()) {
        rep.circular = Tri::Unknown;
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const Verdict v = without[i].get();
    if (v.valid()) rep.idle_premises.push_back(a.premises[i].label);
    if (v.unknown()) rep.idle_unknown.push_back(a.premises[i].label);
  }

  const bool fails = rep.validity.invalid() || rep.consistency.kind == SatKind::Unsat || rep.circular == Tri::Yes ||
                     !rep.idle_premises.empty();
  const bool passes = rep.validity.valid() && rep.consistency.kind == SatKind::Sat && rep.circular == Tri::No &&
                      rep.no_idle();
  rep.overall = fails ? Tri::No : passes ? Tri::Yes : Tri::Unknown;
  return rep;
}

}  // namespace herm
