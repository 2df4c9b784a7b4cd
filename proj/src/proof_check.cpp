// Replays tableau proofs step by step. Deliberately shares no code with the
// prover beyond the term kernel.

#include <sstream>

#include "herm/reasoner.hpp"

namespace herm {

namespace {

Term strip(const Term& t) {
  Term n = normalize(t);
  if (n.ty().is_lifted() && n.kind() == TermKind::Lam && !occurs_bound(n.body(), 0)) {
    return shift(n.body(), -1);
  }
  return n;
}

ProofEntry at(int world, bool sign, const Term& t) {
  Term c = strip(t);
  return ProofEntry{c.ty().is_o() ? -1 : world, sign, c};
}

bool member(const ProofEntry& e, const std::vector<ProofEntry>& set) {
  for (const auto& x : set) {
    if (x == e) return true;
  }
  return false;
}

bool logical_head(const Term& t, LogicalOp& op, std::vector<Term>& args) {
  const Term h = t.head();
  if (!h.is_logical()) return false;
  if (t.ty().is_o() == is_lifted(h.op())) return false;
  op = h.op();
  args = t.spine_args();
  return true;
}

bool quantifier(LogicalOp op, bool& universal) {
  switch (op) {
    case LogicalOp::Forall:
    case LogicalOp::MForall:
    case LogicalOp::MForallA: universal = true; return true;
    case LogicalOp::Exists:
    case LogicalOp::MExists:
    case LogicalOp::MExistsA: universal = false; return true;
    default: return false;
  }
}

Ty bound_type(const Term& head) {
  const LogicalOp op = head.op();
  return op == LogicalOp::MForallA || op == LogicalOp::MExistsA ? Ty::e() : head.op_ty();
}

Term instance_of(const Term& formula, const Term& c) {
  const Term h = formula.head();
  const Term pred = formula.spine_args()[0];
  Term body = Term::app(pred, c);
  if (h.op() == LogicalOp::MForallA || h.op() == LogicalOp::MExistsA) {
    Term ex = Term::app(Term::constant(kExistsAt, Ty::arrow({Ty::e(), Ty::w(), Ty::o()})), c);
    body = h.op() == LogicalOp::MForallA ? mk_implies(ex, body) : mk_and(ex, body);
  }
  return body;
}

// Quantifiers over o count as finite connectives.
bool truth_quantifier(const Term& head) {
  bool u;
  return quantifier(head.op(), u) && bound_type(head).is_o();
}

std::vector<ProofEntry> alpha_of(const ProofEntry& e) {
  LogicalOp op;
  std::vector<Term> a;
  if (!logical_head(e.formula, op, a)) return {};
  const int w = e.world;
  switch (op) {
    case LogicalOp::Not:
    case LogicalOp::MNot: return {at(w, !e.sign, a[0])};
    case LogicalOp::And:
    case LogicalOp::MAnd:
      if (e.sign) return {at(w, true, a[0]), at(w, true, a[1])};
      return {};
    case LogicalOp::Or:
    case LogicalOp::MOr:
      if (!e.sign) return {at(w, false, a[0]), at(w, false, a[1])};
      return {};
    case LogicalOp::Implies:
    case LogicalOp::MImplies:
      if (!e.sign) return {at(w, true, a[0]), at(w, false, a[1])};
      return {};
    default:
      break;
  }
  bool universal;
  if (truth_quantifier(e.formula.head()) && quantifier(op, universal) && universal == e.sign) {
    return {at(w, e.sign, Term::app(a[0], mk_true())), at(w, e.sign, Term::app(a[0], mk_false()))};
  }
  return {};
}

std::vector<std::vector<ProofEntry>> beta_of(const ProofEntry& e) {
  LogicalOp op;
  std::vector<Term> a;
  if (!logical_head(e.formula, op, a)) return {};
  const int w = e.world;
  switch (op) {
    case LogicalOp::And:
    case LogicalOp::MAnd:
      if (!e.sign) return {{at(w, false, a[0])}, {at(w, false, a[1])}};
      return {};
    case LogicalOp::Or:
    case LogicalOp::MOr:
      if (e.sign) return {{at(w, true, a[0])}, {at(w, true, a[1])}};
      return {};
    case LogicalOp::Implies:
    case LogicalOp::MImplies:
      if (e.sign) return {{at(w, false, a[0])}, {at(w, true, a[1])}};
      return {};
    case LogicalOp::Iff:
    case LogicalOp::MIff:
      if (e.sign) return {{at(w, true, a[0]), at(w, true, a[1])}, {at(w, false, a[0]), at(w, false, a[1])}};
      return {{at(w, true, a[0]), at(w, false, a[1])}, {at(w, false, a[0]), at(w, true, a[1])}};
    default:
      break;
  }
  bool universal;
  if (truth_quantifier(e.formula.head()) && quantifier(op, universal) && universal != e.sign) {
    return {{at(w, e.sign, Term::app(a[0], mk_true()))}, {at(w, e.sign, Term::app(a[0], mk_false()))}};
  }
  return {};
}

class Checker {
 public:
  explicit Checker(const TableauProblem& p) : problem_(p) {
    for (const auto& t : p.premises) collect_constants(t, names_);
    collect_constants(p.conclusion, names_);
  }

  std::string run(const ProofNode& root) {
    State st;
    return node(root, st, "root");
  }

 private:
  struct State {
    std::vector<ProofEntry> entries;
    int worlds = 1;
    std::set<std::pair<int, int>> edges;
    std::map<std::string, Ty> names;
  };

  std::string node(const ProofNode& n, State& st, const std::string& path) {
    for (std::size_t i = 0; i < n.steps.size(); ++i) {
      const ProofStep& s = n.steps[i];
      const bool last = i + 1 == n.steps.size();
      std::string err = check(s, st, path == "root" && i == 0);
      if (!err.empty()) {
        std::ostringstream out;
        out << path << " step " << i << " (" << to_string(s.rule) << "): " << err;
        return out.str();
      }
      if (s.rule == RuleKind::Close) {
        if (!last || !n.children.empty()) return path + ": steps after a closed branch";
        return "";
      }
      if (s.rule == RuleKind::Split) {
        if (!last) return path + ": steps after a split";
        if (n.children.size() != s.alternatives.size()) return path + ": split without matching branches";
        for (std::size_t k = 0; k < n.children.size(); ++k) {
          State child = st;
          for (const auto& e : s.alternatives[k]) add(child, e);
          std::string sub = node(n.children[k], child, path + "." + std::to_string(k));
          if (!sub.empty()) return sub;
        }
        return "";
      }
      for (const auto& e : s.added) add(st, e);
    }
    return path + ": branch is not closed";
  }

  void add(State& st, const ProofEntry& e) {
    st.entries.push_back(e);
    collect_constants(e.formula, st.names);
  }

  bool world_ok(const State& st, int w) const { return w >= 0 && w < st.worlds; }

  const ProofEntry* source(const State& st, int idx) const {
    if (idx < 0 || idx >= static_cast<int>(st.entries.size())) return nullptr;
    return &st.entries[idx];
  }

  std::string check(const ProofStep& s, State& st, bool first) {
    const auto& spec = problem_.spec;
    const bool global = spec.validity == ValidityMode::Global;
    switch (s.rule) {
      case RuleKind::Init: {
        if (!first) return "init must be the first step";
        std::vector<ProofEntry> expect;
        auto push = [&](const ProofEntry& e) {
          if (!member(e, expect)) expect.push_back(e);
        };
        for (const auto& p : problem_.premises) push(at(0, true, p));
        push(at(0, false, problem_.conclusion));
        if (!(expect == s.added)) return "initial entries do not match the problem";
        return "";
      }
      case RuleKind::Global: {
        if (!global) return "premises are only global in global validity mode";
        if (!world_ok(st, s.from) || s.added.size() != 1) return "bad world or entry count";
        for (const auto& p : problem_.premises) {
          if (s.added[0] == at(s.from, true, p)) return "";
        }
        return "entry is not a premise";
      }
      case RuleKind::Alpha: {
        const ProofEntry* e = source(st, s.source);
        if (!e) return "bad source";
        const auto parts = alpha_of(*e);
        if (parts.empty()) return "source is not a conjunctive entry";
        for (const auto& a : s.added) {
          if (!member(a, parts)) return "entry is not a component of the source";
        }
        return "";
      }
      case RuleKind::Split: {
        const ProofEntry* e = source(st, s.source);
        if (!e) return "bad source";
        const auto alts = beta_of(*e);
        if (alts.empty()) return "source is not a disjunctive entry";
        if (alts.size() != s.alternatives.size()) return "wrong number of alternatives";
        for (std::size_t k = 0; k < alts.size(); ++k) {
          for (const auto& a : s.alternatives[k]) {
            if (!member(a, alts[k])) return "alternative entry is not a component";
          }
        }
        return "";
      }
      case RuleKind::BoxProp: {
        const ProofEntry* e = source(st, s.source);
        if (!e) return "bad source";
        LogicalOp op;
        std::vector<Term> a;
        if (!logical_head(e->formula, op, a)) return "source is not modal";
        const bool universal = (op == LogicalOp::Box && e->sign) || (op == LogicalOp::Dia && !e->sign);
        if (!universal || e->world != s.from) return "source is not a necessity entry at the edge origin";
        if (!st.edges.count({s.from, s.to})) return "edge not present";
        std::vector<ProofEntry> allowed{at(s.to, e->sign, a[0])};
        if (spec.has(FrameCondition::Transitive)) allowed.push_back(ProofEntry{s.to, e->sign, e->formula});
        for (const auto& x : s.added) {
          if (!member(x, allowed)) return "entry does not follow along the edge";
        }
        return "";
      }
      case RuleKind::Gamma:
      case RuleKind::Delta: {
        const ProofEntry* e = source(st, s.source);
        if (!e) return "bad source";
        LogicalOp op;
        std::vector<Term> a;
        bool universal;
        if (!logical_head(e->formula, op, a) || !quantifier(op, universal)) return "source is not quantified";
        const Ty ty = bound_type(e->formula.head());
        const bool gamma = universal == e->sign;
        if (gamma != (s.rule == RuleKind::Gamma)) return "rule does not match the entry's polarity";
        if (s.witness.ty() != ty || !s.witness.closed() || has_fvars(s.witness)) return "bad witness";
        if (s.rule == RuleKind::Delta) {
          if (s.witness.kind() != TermKind::Const || s.witness.is_logical()) return "witness is not a constant";
          if (st.names.count(s.witness.name()) || names_.count(s.witness.name())) return "witness is not fresh";
        }
        if (s.added.size() != 1 || !(s.added[0] == at(e->world, e->sign, instance_of(e->formula, s.witness)))) {
          return "entry is not the instance";
        }
        return "";
      }
      case RuleKind::NewWorld: {
        const ProofEntry* e = source(st, s.source);
        if (!e) return "bad source";
        LogicalOp op;
        std::vector<Term> a;
        if (!logical_head(e->formula, op, a)) return "source is not modal";
        const bool existential = (op == LogicalOp::Box && !e->sign) || (op == LogicalOp::Dia && e->sign);
        if (!existential || e->world != s.from || !world_ok(st, s.from)) return "source is not a possibility entry";
        if (s.to != st.worlds) return "new world is not fresh";
        st.worlds++;
        st.edges.emplace(s.from, s.to);
        if (s.added.size() != 1 || !(s.added[0] == at(s.to, e->sign, a[0]))) return "entry is not the witness";
        return "";
      }
      case RuleKind::Frame: {
        if (!spec.has(s.condition)) return "frame condition not part of the logic";
        if (!world_ok(st, s.from) || !world_ok(st, s.to)) return "bad world";
        bool ok = false;
        switch (s.condition) {
          case FrameCondition::Reflexive: ok = s.from == s.to; break;
          case FrameCondition::Symmetric: ok = st.edges.count({s.to, s.from}) > 0; break;
          case FrameCondition::Transitive:
            for (int y = 0; y < st.worlds && !ok; ++y) ok = st.edges.count({s.from, y}) && st.edges.count({y, s.to});
            break;
          case FrameCondition::Euclidean:
            for (int x = 0; x < st.worlds && !ok; ++x) ok = st.edges.count({x, s.from}) && st.edges.count({x, s.to});
            break;
        }
        if (!ok) return "edge not justified by the frame condition";
        st.edges.emplace(s.from, s.to);
        return "";
      }
      case RuleKind::Close: {
        const ProofEntry* a = source(st, s.clash_a);
        if (!a) return "bad clash entry";
        if (s.clash_b < 0) {
          const Term& f = a->formula;
          bool lone = f.is_logical() && ((f.op() == LogicalOp::False && a->sign) ||
                                         (f.op() == LogicalOp::True && !a->sign));
          if (!a->sign && f.head().is_logical() && f.head().op() == LogicalOp::Eq) {
            const auto args = f.spine_args();
            lone = lone || (args.size() == 2 && args[0] == args[1]);
          }
          return lone ? "" : "entry is not contradictory";
        }
        const ProofEntry* b = source(st, s.clash_b);
        if (!b) return "bad clash entry";
        if (a->world != b->world || a->sign == b->sign || !(a->formula == b->formula)) return "entries do not clash";
        return "";
      }
    }
    return "unknown rule";
  }

  const TableauProblem& problem_;
  std::map<std::string, Ty> names_;
};

}  // namespace

std::string replay(const TableauProof& proof) {
  try {
    return Checker(proof.problem).run(proof.root);
  } catch (const Error& e) {
    return std::string("replay failed: ") + e.what();
  }
}

}  // namespace herm
