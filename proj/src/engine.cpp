#include "herm/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "herm/error.hpp"
#include "herm/syntax.hpp"

namespace herm {

namespace {

constexpr FrameCondition kConditions[] = {FrameCondition::Reflexive, FrameCondition::Symmetric,
                                          FrameCondition::Transitive, FrameCondition::Euclidean};

LogicSpec canonical(const LogicSpec& s) { return LogicSpec::parse(s.str()); }

std::string fmt(double x) {
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------- inputs

void Discourse::validate() const {
  corpus.validate();
  std::set<std::string> ids;
  for (const auto& a : corpus.arguments) {
    if (!ids.insert(a.id).second) throw QueryError("duplicate argument id " + a.id);
    std::set<std::string> seen;
    for (const auto& p : a.premises) {
      if (!seen.insert(p).second) throw QueryError("argument " + a.id + " lists premise " + p + " twice");
    }
    for (const auto& sid : a.premises) {
      if (!candidates.count(sid)) throw QueryError("sentence " + sid + " has no candidate formalization");
    }
    if (!candidates.count(a.conclusion)) {
      throw QueryError("sentence " + a.conclusion + " has no candidate formalization");
    }
  }
  std::set<std::string> labels;
  for (const auto& [sid, pool] : candidates) {
    if (!corpus.sentences.count(sid)) throw QueryError("candidates for unknown sentence " + sid);
    if (pool.empty()) throw QueryError("sentence " + sid + " has an empty candidate pool");
    for (const auto& c : pool) {
      if (!labels.insert(c.label).second) throw QueryError("duplicate formula label " + c.label);
      if (!c.formula.ty().is_lifted()) throw QueryError("candidate " + c.label + " is not a modal formula");
    }
  }
  for (const auto& p : postulates) {
    if (!labels.insert(p.label).second) throw QueryError("duplicate formula label " + p.label);
    if (!p.formula.ty().is_lifted()) throw QueryError("postulate " + p.label + " is not a modal formula");
  }
  for (const auto& [id, specs] : logics) {
    if (!ids.count(id)) throw QueryError("logics for unknown argument " + id);
    if (specs.empty()) throw QueryError("argument " + id + " admits no logic");
    for (const auto& s : specs) {
      if (s == "*") continue;
      try {
        LogicSpec::parse(s);
      } catch (const EmbeddingError& e) {
        throw QueryError("argument " + id + ": " + e.what());
      }
    }
  }
  network.validate();
  for (const auto& n : network.nodes) {
    if (!ids.count(n)) throw QueryError("network node " + n + " is not an argument");
  }
}

std::vector<LogicSpec> Discourse::admissible(const std::string& argument) const {
  std::vector<LogicSpec> out;
  auto it = logics.find(argument);
  if (it == logics.end()) return {LogicSpec::preset("K")};
  for (const auto& s : it->second) {
    if (s == "*") continue;
    const LogicSpec spec = canonical(LogicSpec::parse(s));
    if (std::find(out.begin(), out.end(), spec) == out.end()) out.push_back(spec);
  }
  if (out.empty()) out.push_back(LogicSpec::preset("K"));
  return out;
}

bool Discourse::free_logic(const std::string& argument) const {
  auto it = logics.find(argument);
  return it != logics.end() && std::count(it->second.begin(), it->second.end(), "*") > 0;
}

void EngineConfig::validate() const {
  if (!(t0 > 0)) throw QueryError("t0 must be positive");
  if (!(alpha > 0 && alpha < 1)) throw QueryError("alpha must lie strictly between 0 and 1");
  if (stagnation < 1) throw QueryError("stagnation window must be at least 1");
  if (iterations < 0) throw QueryError("iteration budget must not be negative");
  if (retries < 0) throw QueryError("retries must not be negative");
  if (promote_min < 1) throw QueryError("promotion threshold must be at least 1");
  budget.validate();
}

// ---------------------------------------------------------------- states and moves

std::string EngineState::key() const {
  std::string k;
  for (const auto& [s, i] : choice) k += s + "=" + std::to_string(i) + ";";
  k += "|";
  for (const auto& p : active) k += p + ";";
  k += "|";
  for (const auto& [a, l] : logic) k += a + "=" + l.str() + ";";
  return k;
}

const char* to_string(MoveKind k) {
  switch (k) {
    case MoveKind::SwapCandidate: return "swap";
    case MoveKind::ToggleMeaningPostulate: return "toggle";
    case MoveKind::SwitchLogic: return "logic";
    case MoveKind::ToggleFrameAxiom: return "frame";
    case MoveKind::ToggleDomainPolicy: return "domain";
  }
  return "?";
}

std::string Move::str() const {
  std::string out = std::string(to_string(kind)) + "(" + target;
  switch (kind) {
    case MoveKind::SwapCandidate: out += "," + std::to_string(index); break;
    case MoveKind::SwitchLogic: out += "," + logic.str(); break;
    case MoveKind::ToggleFrameAxiom: out += std::string(",") + to_string(condition); break;
    default: break;
  }
  return out + ")";
}

EngineState apply(const EngineState& s, const Move& m) {
  EngineState out = s;
  switch (m.kind) {
    case MoveKind::SwapCandidate: out.choice.at(m.target) = m.index; break;
    case MoveKind::ToggleMeaningPostulate:
      if (!out.active.erase(m.target)) out.active.insert(m.target);
      break;
    case MoveKind::SwitchLogic: out.logic.at(m.target) = canonical(m.logic); break;
    case MoveKind::ToggleFrameAxiom: {
      LogicSpec& l = out.logic.at(m.target);
      if (!l.frame.erase(m.condition)) l.frame.insert(m.condition);
      l = canonical(l);
      break;
    }
    case MoveKind::ToggleDomainPolicy: {
      LogicSpec& l = out.logic.at(m.target);
      l.domain = l.domain == DomainPolicy::Constant ? DomainPolicy::Actualist : DomainPolicy::Constant;
      l = canonical(l);
      break;
    }
  }
  return out;
}

std::vector<Move> legal_moves(const EngineState& s, const Discourse& d, MoveKind kind) {
  std::vector<Move> out;
  switch (kind) {
    case MoveKind::SwapCandidate:
      for (const auto& [sid, pool] : d.candidates) {
        for (int i = 0; i < static_cast<int>(pool.size()); ++i) {
          if (i != s.choice.at(sid)) out.push_back({kind, sid, i, {}, {}});
        }
      }
      break;
    case MoveKind::ToggleMeaningPostulate:
      for (const auto& p : d.postulates) out.push_back({kind, p.label, 0, {}, {}});
      break;
    case MoveKind::SwitchLogic:
      for (const auto& a : d.corpus.arguments) {
        for (const auto& l : d.admissible(a.id)) {
          if (l != s.logic.at(a.id)) out.push_back({kind, a.id, 0, l, {}});
        }
      }
      break;
    case MoveKind::ToggleFrameAxiom:
      for (const auto& a : d.corpus.arguments) {
        if (!d.free_logic(a.id)) continue;
        for (auto c : kConditions) out.push_back({kind, a.id, 0, {}, c});
      }
      break;
    case MoveKind::ToggleDomainPolicy:
      for (const auto& a : d.corpus.arguments) {
        if (d.free_logic(a.id)) out.push_back({kind, a.id, 0, {}, {}});
      }
      break;
  }
  return out;
}

std::optional<Move> propose_move(const EngineState& s, const Discourse& d, EngineRng& rng) {
  std::vector<std::vector<Move>> kinds;
  for (auto k : {MoveKind::SwapCandidate, MoveKind::ToggleMeaningPostulate, MoveKind::SwitchLogic,
                 MoveKind::ToggleFrameAxiom, MoveKind::ToggleDomainPolicy}) {
    auto moves = legal_moves(s, d, k);
    if (!moves.empty()) kinds.push_back(std::move(moves));
  }
  if (kinds.empty()) return std::nullopt;
  const auto& pick = kinds[rng.below(kinds.size())];
  return pick[rng.below(pick.size())];
}

EngineState initial_state(const Discourse& d) {
  EngineState s;
  for (const auto& [sid, pool] : d.candidates) s.choice[sid] = 0;
  for (const auto& a : d.corpus.arguments) s.logic[a.id] = d.admissible(a.id).front();
  return s;
}

// ---------------------------------------------------------------- objective

FormalizationMap formalization(const EngineState& s, const Discourse& d) {
  FormalizationMap fm;
  for (const auto& [sid, pool] : d.candidates) {
    LogicSpec spec = LogicSpec::preset("K");
    for (const auto& a : d.corpus.arguments) {
      if (a.mentions(sid)) {
        spec = s.logic.at(a.id);
        break;
      }
    }
    fm[sid] = {pool.at(s.choice.at(sid)).formula, spec};
  }
  return fm;
}

std::vector<Term> active_theory(const EngineState& s, const Discourse& d) {
  std::vector<Term> out;
  for (const auto& p : d.postulates) {
    if (s.active.count(p.label)) out.push_back(p.formula);
  }
  return out;
}

std::map<std::string, Argument> formalized_arguments(const EngineState& s, const Discourse& d) {
  const auto fm = formalization(s, d);
  std::map<std::string, Argument> out;
  for (const auto& ca : d.corpus.arguments) {
    Argument a;
    a.id = ca.id;
    a.spec = s.logic.at(ca.id);
    for (const auto& sid : ca.premises) a.premises.push_back({sid, Role::Premise, fm.at(sid).formula});
    a.conclusion = {ca.conclusion, Role::Conclusion, fm.at(ca.conclusion).formula};
    a.postulates.assign(s.active.begin(), s.active.end());
    out[a.id] = a;
  }
  return out;
}

Breakdown objective(const EngineState& s, const Discourse& d, const EngineConfig& c, Reasoner& r) {
  Breakdown b;
  const auto fm = formalization(s, d);
  const auto theory = active_theory(s, d);
  const auto args = formalized_arguments(s, d);

  bool all_pass = true;
  for (const auto& ca : d.corpus.arguments) {
    ArgumentScore as;
    as.id = ca.id;
    as.correct = ca.correct;
    as.report = check_correctness(args.at(ca.id), theory, c.budget, r, {c.circularity});
    if (ca.correct) {
      as.score = c.w_valid * as.report.validity.valid() + c.w_consistent * (as.report.consistency.kind == SatKind::Sat) +
                 c.w_non_circular * as.report.non_circular() + c.w_no_idle * as.report.no_idle();
      all_pass = all_pass && as.report.pass();
    }
    b.total += as.score;
    b.arguments.push_back(std::move(as));
  }

  AdequacyContext ctx;
  ctx.corpus = &d.corpus;
  ctx.fmap = &fm;
  ctx.theory = theory;
  ctx.arg_specs = s.logic;
  ctx.budget = c.budget;
  ctx.strict = c.strict;
  for (const auto& [sid, pool] : d.candidates) {
    std::size_t lo = SIZE_MAX, hi = 0;
    for (const auto& cand : pool) {
      lo = std::min(lo, symbol_count(cand.formula));
      hi = std::max(hi, symbol_count(cand.formula));
    }
    const auto sc = score(sid, ctx, c.adequacy, lo, hi, r);
    b.rejected = b.rejected || sc.reliable == Tri::No;
    b.total += sc.aggregate;
    b.sentences[sid] = sc;
  }

  if (!d.network.nodes.empty()) {
    b.roles = role_fulfillment(d.network, args, theory, c.budget, r, c.lambda);
    b.network = c.w_net * b.roles.score;
    b.total += b.network;
  } else {
    b.roles.empty = true;
  }
  bool roles_ok = b.roles.spurious.empty();
  for (const auto& e : b.roles.intended) roles_ok = roles_ok && e.realized;
  if (b.rejected) b.total = -std::numeric_limits<double>::infinity();
  b.maximal = !b.rejected && all_pass && roles_ok;
  return b;
}

double structural_maximum(const Discourse& d, const EngineConfig& c) {
  double m = 0;
  for (const auto& a : d.corpus.arguments) {
    if (a.correct) m += c.w_valid + c.w_consistent + c.w_non_circular + c.w_no_idle;
  }
  m += c.adequacy.ambitiousness * static_cast<double>(d.candidates.size());
  if (!d.network.nodes.empty()) m += c.w_net;
  return m;
}

bool postulates_break(const EngineState& s, const Discourse& d, const EngineConfig& c, Reasoner& r) {
  const auto theory = active_theory(s, d);
  if (theory.empty()) return false;
  std::set<std::string> seen;
  for (const auto& [a, l] : s.logic) {
    if (!seen.insert(l.str()).second) continue;
    const auto k = r.consistent(theory, l, c.budget).kind;
    if (k == SatKind::Unsat || (k == SatKind::Unknown && !c.tolerate_unknown)) return true;
  }
  return false;
}

bool accept(double delta, double temperature, EngineRng& rng) {
  if (delta >= 0) return true;
  return rng.unit() < std::exp(delta / temperature);
}

// ---------------------------------------------------------------- run

RunResult run(const Discourse& d, const EngineConfig& c, Reasoner& r) {
  d.validate();
  c.validate();
  RunResult res;
  res.maximum = structural_maximum(d, c);
  std::map<std::string, Breakdown> memo;
  std::set<Edge> realized;
  auto evaluate = [&](const EngineState& s) -> const Breakdown& {
    const auto k = s.key();
    auto it = memo.find(k);
    if (it == memo.end()) {
      it = memo.emplace(k, objective(s, d, c, r)).first;
      for (const auto& rel : it->second.roles.relations) realized.insert(rel.edge());
    }
    return it->second;
  };

  EngineRng rng(c.seed);
  EngineState cur = initial_state(d);
  res.initial = cur;
  Breakdown cur_b = evaluate(cur);
  res.best = cur;
  res.best_breakdown = cur_b;
  int since_best = 0;
  res.termination = "budget";
  if (cur_b.maximal) res.termination = "maximum";

  for (int i = 0; i < c.iterations && res.termination == "budget"; ++i) {
    const double temp = c.t0 * std::pow(c.alpha, i);
    TraceEntry te;
    te.iteration = i;
    te.temperature = temp;
    std::optional<Move> mv;
    EngineState next;
    bool fixpoint = false;
    for (int attempt = 0; attempt <= c.retries; ++attempt) {
      auto m = propose_move(cur, d, rng);
      if (!m) {
        fixpoint = true;
        break;
      }
      EngineState candidate = apply(cur, *m);
      if (m->kind == MoveKind::SwapCandidate || !postulates_break(candidate, d, c, r)) {
        mv = m;
        next = std::move(candidate);
        break;
      }
    }
    if (fixpoint) {
      res.termination = "fixpoint";
      break;
    }
    if (mv) {
      const Breakdown& nb = evaluate(next);
      const double delta = std::isinf(nb.total) && std::isinf(cur_b.total) ? 0.0 : nb.total - cur_b.total;
      te.move = mv->str();
      te.proposed = nb.total;
      te.accepted = accept(delta, temp, rng);
      if (te.accepted) {
        cur = next;
        cur_b = nb;
      }
    } else {
      te.move = "none";
      te.proposed = cur_b.total;
    }
    if (!cur_b.rejected && (res.best_breakdown.rejected || cur_b.total > res.best_breakdown.total)) {
      res.best = cur;
      res.best_breakdown = cur_b;
      since_best = 0;
    } else {
      ++since_best;
    }
    te.current = cur_b.total;
    te.best = res.best_breakdown.total;
    res.trace.push_back(te);
    if (res.best_breakdown.maximal) res.termination = "maximum";
    else if (since_best >= c.stagnation) res.termination = "stagnation";
  }
  res.final_state = cur;

  // Promotion: needed for validity by enough passing arguments, and missed
  // by the objective when dropped.
  const Breakdown& best = res.best_breakdown;
  if (!best.rejected && best.total >= c.promote_min_score) {
    for (const auto& p : d.postulates) {
      if (!res.best.active.count(p.label)) continue;
      EngineState without = res.best;
      without.active.erase(p.label);
      const Breakdown& wb = evaluate(without);
      int needed = 0;
      for (std::size_t k = 0; k < best.arguments.size(); ++k) {
        const auto& a = best.arguments[k];
        if (a.correct && a.report.pass() && !wb.arguments[k].report.validity.valid()) ++needed;
      }
      if (needed >= c.promote_min && wb.total < best.total) res.promoted.push_back(p.label);
    }
  }
  for (const auto& e : d.network.intended) {
    if (!realized.count(e)) res.unrealizable.push_back(e);
  }
  return res;
}

std::string trace_text(const std::vector<TraceEntry>& trace) {
  std::ostringstream out;
  out << "iteration\tmove\tproposed\taccepted\tcurrent\tbest\ttemperature\n";
  for (const auto& t : trace) {
    out << t.iteration << "\t" << t.move << "\t" << fmt(t.proposed) << "\t" << (t.accepted ? "yes" : "no") << "\t"
        << fmt(t.current) << "\t" << fmt(t.best) << "\t" << fmt(t.temperature) << "\n";
  }
  return out.str();
}

std::string report_text(const RunResult& res, const Discourse& d) {
  std::ostringstream out;
  const Breakdown& b = res.best_breakdown;
  out << "termination: " << res.termination << " after " << res.trace.size() << " iterations\n";
  out << "objective: " << fmt(b.total) << " of " << fmt(res.maximum) << (b.maximal ? " (maximal)" : "") << "\n";
  out << "\nformalizations\n";
  for (const auto& [sid, i] : res.best.choice) {
    out << "  " << sid << "  " << d.candidates.at(sid).at(i).label << "  " << print(d.candidates.at(sid).at(i).formula)
        << "\n";
  }
  out << "\nlogics\n";
  for (const auto& [a, l] : res.best.logic) out << "  " << a << "  " << l.str() << "\n";
  out << "\nmeaning postulates\n";
  for (const auto& p : d.postulates) {
    const bool on = res.best.active.count(p.label) > 0;
    const bool settled = std::count(res.promoted.begin(), res.promoted.end(), p.label) > 0;
    out << "  " << p.label << "  " << (settled ? "settled" : on ? "active" : "inactive") << "  " << print(p.formula)
        << "\n";
  }
  out << "\narguments\n";
  for (const auto& a : b.arguments) {
    const auto& rep = a.report;
    out << "  " << a.id << (a.correct ? "" : " (tagged incorrect)") << "  score " << fmt(a.score)
        << "  validity " << to_string(rep.validity.kind) << " [" << rep.validity.certificate << "]"
        << "  consistency " << to_string(rep.consistency.kind) << " [" << rep.consistency.certificate << "]"
        << "  circular " << to_string(rep.circular) << "  idle";
    if (rep.idle_premises.empty()) out << " none";
    for (const auto& p : rep.idle_premises) out << " " << p;
    for (const auto& p : rep.idle_unknown) out << " " << p << "?";
    out << "  overall " << (rep.pass() ? "pass" : rep.overall == Tri::No ? "fail" : "unknown") << "\n";
  }
  out << "\nsentences\n";
  for (const auto& [sid, s] : b.sentences) {
    out << "  " << sid << "  reliable " << to_string(s.reliable) << "  ambitiousness " << fmt(s.ambitiousness)
        << "  symbols " << s.simplicity << "  aggregate " << fmt(s.aggregate) << "\n";
  }
  out << "\nnetwork\n";
  if (d.network.nodes.empty()) out << "  (none)\n";
  for (const auto& e : b.roles.intended) {
    out << "  " << e.edge.from << " -> " << e.edge.to << "  " << to_string(e.edge.polarity) << "  "
        << (e.realized ? "realized" : "missing");
    for (auto m : e.via) out << " " << to_string(m);
    out << "\n";
  }
  for (const auto& e : b.roles.spurious) {
    out << "  " << e.from << " -> " << e.to << "  " << to_string(e.polarity) << "  spurious\n";
  }
  if (!d.network.nodes.empty()) out << "  role fulfillment " << fmt(b.roles.score) << "\n";
  out << "\npromoted:";
  if (res.promoted.empty()) out << " none";
  for (const auto& p : res.promoted) out << " " << p;
  out << "\nunrealizable:";
  if (res.unrealizable.empty()) out << " none";
  for (const auto& e : res.unrealizable) out << " " << e.from << "->" << e.to << "(" << to_string(e.polarity) << ")";
  out << "\n";
  return out.str();
}

}  // namespace herm
