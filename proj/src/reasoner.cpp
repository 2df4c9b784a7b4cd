#include "herm/reasoner.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>

namespace herm {

const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Valid: return "valid";
    case VerdictKind::Invalid: return "invalid";
    case VerdictKind::Unknown: return "unknown";
  }
  return "";
}

const char* to_string(UnknownReason r) {
  switch (r) {
    case UnknownReason::None: return "none";
    case UnknownReason::BudgetExhausted: return "budget-exhausted";
    case UnknownReason::OutsideFragment: return "outside-decidable-fragment";
  }
  return "";
}

const char* to_string(SatKind k) {
  switch (k) {
    case SatKind::Sat: return "sat";
    case SatKind::Unsat: return "unsat";
    case SatKind::Unknown: return "unknown";
  }
  return "";
}

// ---------------------------------------------------------------- budget

namespace {

std::uint64_t env_number(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    std::size_t used = 0;
    const auto n = std::stoull(v, &used);
    if (used != std::string(v).size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw QueryError(std::string("environment variable ") + name + " is not a number: '" + v + "'");
  }
}

}  // namespace

Budget Budget::from_env() {
  Budget b;
  b.max_worlds = static_cast<std::uint32_t>(env_number("HERM_MAX_WORLDS", b.max_worlds));
  b.max_individuals = static_cast<std::uint32_t>(env_number("HERM_MAX_INDIVIDUALS", b.max_individuals));
  b.max_depth = static_cast<std::uint32_t>(env_number("HERM_DEPTH", b.max_depth));
  b.timeout_ms = env_number("HERM_TIMEOUT_MS", b.timeout_ms);
  b.validate();
  return b;
}

void Budget::validate() const {
  if (max_worlds == 0 || max_individuals == 0 || max_depth == 0 || timeout_ms == 0) {
    throw QueryError("budget limits must be positive");
  }
}

std::string Budget::key() const {
  std::ostringstream out;
  out << "w" << max_worlds << ".e" << max_individuals << ".d" << max_depth << ".t" << timeout_ms;
  return out.str();
}

// ---------------------------------------------------------------- helpers

std::vector<Term> countermodel_goals(const std::vector<Term>& premises, const Term* conclusion,
                                     const LogicSpec& spec) {
  std::vector<Term> goals;
  for (const auto& p : premises) goals.push_back(validize(embed_term(p, spec), spec.validity));
  for (const auto& f : frame_axioms(spec)) goals.push_back(f.term);
  if (conclusion) goals.push_back(mk_not(validize(embed_term(*conclusion, spec), spec.validity)));
  return goals;
}

namespace {

std::vector<Term> canonical_set(const std::vector<Term>& fs) {
  std::vector<Term> out;
  for (const auto& f : fs) {
    if (!f.ty().is_o() && !f.ty().is_lifted()) throw QueryError("not a formula: type " + f.ty().str());
    Term n = normalize(f);
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  }
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.key() < b.key(); });
  return out;
}

std::string set_key(const std::vector<Term>& fs) {
  std::string k;
  for (const auto& f : fs) k += f.key() + ";";
  return k;
}

std::string certificate_id(const std::string& kind, const std::string& key) {
  std::ostringstream out;
  out << kind << '-' << std::hex << (std::hash<std::string>{}(key) & 0xffffffffffffull);
  return out.str();
}

bool within(const FiniteModel& m, const Budget& b) {
  for (const auto& [base, n] : m.sizes) {
    if (n > (base == "w" ? b.max_worlds : b.max_individuals)) return false;
  }
  return true;
}

const std::map<std::string, Ty>& aux_constants() {
  static const std::map<std::string, Ty> aux = {{kAccessibility, Ty::arrow({Ty::w(), Ty::w(), Ty::o()})}};
  return aux;
}

bool same_set(const std::vector<Term>& a, const std::vector<Term>& b) {
  return canonical_set(a) == canonical_set(b);
}

}  // namespace

std::string check_certificate(const Verdict& v, const std::vector<Term>& premises, const Term& conclusion,
                              const LogicSpec& spec) {
  switch (v.kind) {
    case VerdictKind::Valid: {
      if (!v.proof) return "valid verdict without a proof";
      const auto& pr = v.proof->problem;
      if (!(pr.spec == spec) || !same_set(pr.premises, premises) || !(normalize(pr.conclusion) == normalize(conclusion))) {
        return "proof is for a different query";
      }
      return replay(*v.proof);
    }
    case VerdictKind::Invalid: {
      if (!v.countermodel) return "invalid verdict without a countermodel";
      try {
        Evaluator ev(*v.countermodel);
        for (const auto& g : countermodel_goals(premises, &conclusion, spec)) {
          if (!ev.holds(g)) return "countermodel fails " + g.key();
        }
      } catch (const EvalError& e) {
        return std::string("countermodel does not evaluate: ") + e.what();
      }
      return "";
    }
    case VerdictKind::Unknown:
      return "";
  }
  return "";
}

// ---------------------------------------------------------------- reasoner

Verdict Reasoner::entails(const std::vector<Term>& premises, const Term& conclusion, const LogicSpec& spec,
                          const Budget& b) {
  b.validate();
  if (!conclusion.ty().is_o() && !conclusion.ty().is_lifted()) {
    throw QueryError("conclusion is not a formula: type " + conclusion.ty().str());
  }
  const auto ps = canonical_set(premises);
  const Term c = normalize(conclusion);
  const std::string key = "E|" + spec.str() + "|" + b.key() + "|" + set_key(ps) + "|" + c.key();
  ++queries_;
  return memo<Verdict>(verdicts_, key, [&] {
    Verdict v = decide(ps, c, spec, b);
    if (!v.unknown()) v.certificate = certificate_id(v.valid() ? "proof" : "model", key);
    (v.valid() ? valid_ : v.invalid() ? invalid_ : unknown_)++;
    return v;
  });
}

Verdict Reasoner::decide(const std::vector<Term>& ps, const Term& c, const LogicSpec& spec, const Budget& b) {
  const auto goals = countermodel_goals(ps, &c, spec);  // rejects ill-formed queries early
  Verdict v;
  TableauResult tr = run_tableau(TableauProblem{ps, c, spec}, b);
  if (tr.outcome == TableauOutcome::Closed) {
    v.kind = VerdictKind::Valid;
    v.proof = tr.proof;
    return v;
  }
  ModelSearch ms = find_model(goals, b, aux_constants());
  if (ms.model) {
    v.kind = VerdictKind::Invalid;
    v.countermodel = std::move(ms.model);
    return v;
  }
  if (tr.model && within(*tr.model, b)) {
    v.kind = VerdictKind::Invalid;
    v.countermodel = std::move(tr.model);
    v.note = "countermodel read off an open tableau branch";
    return v;
  }
  v.reason = tr.outside_fragment && tr.outcome != TableauOutcome::Open ? UnknownReason::OutsideFragment
                                                                        : UnknownReason::BudgetExhausted;
  v.note = !tr.note.empty() ? tr.note : ms.note;
  if (v.note.empty()) v.note = "no countermodel within the size caps";
  return v;
}

Consistency Reasoner::consistent(const std::vector<Term>& formulas, const LogicSpec& spec, const Budget& b) {
  b.validate();
  const auto fs = canonical_set(formulas);
  const std::string key = "C|" + spec.str() + "|" + b.key() + "|" + set_key(fs);
  ++queries_;
  return memo<Consistency>(sat_, key, [&] {
    Consistency r = decide_sat(fs, spec, b);
    if (r.kind != SatKind::Unknown) r.certificate = certificate_id(r.kind == SatKind::Sat ? "model" : "proof", key);
    (r.kind == SatKind::Unsat ? valid_ : r.kind == SatKind::Sat ? invalid_ : unknown_)++;
    return r;
  });
}

Consistency Reasoner::decide_sat(const std::vector<Term>& fs, const LogicSpec& spec, const Budget& b) {
  Consistency r;
  ModelSearch ms = find_model(countermodel_goals(fs, nullptr, spec), b, aux_constants());
  if (ms.model) {
    r.kind = SatKind::Sat;
    r.model = std::move(ms.model);
    return r;
  }
  TableauResult tr = run_tableau(TableauProblem{fs, mk_false(true), spec}, b);
  if (tr.outcome == TableauOutcome::Closed) {
    r.kind = SatKind::Unsat;
    r.proof = tr.proof;
    return r;
  }
  if (tr.model && within(*tr.model, b)) {
    r.kind = SatKind::Sat;
    r.model = std::move(tr.model);
    return r;
  }
  r.reason = tr.outside_fragment && tr.outcome != TableauOutcome::Open ? UnknownReason::OutsideFragment
                                                                        : UnknownReason::BudgetExhausted;
  return r;
}

ReasonerStats Reasoner::stats() const {
  ReasonerStats s;
  s.queries = queries_;
  s.cache_hits = hits_;
  s.valid = valid_;
  s.invalid = invalid_;
  s.unknown = unknown_;
  return s;
}

void Reasoner::clear_cache() {
  std::lock_guard<std::mutex> lock(mu_);
  verdicts_.clear();
  sat_.clear();
}

}  // namespace herm
