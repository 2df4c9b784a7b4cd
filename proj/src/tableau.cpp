// Labeled tableau for the modal surface language. Entries are signed
// formulas at worlds; edges carry the accessibility relation and are closed
// under the spec's frame conditions. Quantifiers over individuals are
// instantiated over a bounded set of ground terms.

#include <algorithm>
#include <unordered_map>

#include "herm/reasoner.hpp"

namespace herm {

const char* to_string(RuleKind k) {
  switch (k) {
    case RuleKind::Init: return "init";
    case RuleKind::Global: return "global";
    case RuleKind::Alpha: return "alpha";
    case RuleKind::Split: return "split";
    case RuleKind::BoxProp: return "box";
    case RuleKind::Gamma: return "gamma";
    case RuleKind::Delta: return "delta";
    case RuleKind::NewWorld: return "world";
    case RuleKind::Frame: return "frame";
    case RuleKind::Close: return "close";
  }
  return "";
}

std::size_t TableauProof::step_count() const {
  std::size_t n = 0;
  std::vector<const ProofNode*> stack{&root};
  while (!stack.empty()) {
    const ProofNode* p = stack.back();
    stack.pop_back();
    n += p->steps.size();
    for (const auto& c : p->children) stack.push_back(&c);
  }
  return n;
}

namespace {

constexpr std::size_t kMaxEntries = 20000;
constexpr std::size_t kMaxWorlds = 256;
constexpr int kFreshPerType = 2;

enum class Shape { Top, Bot, Atom, Not, And, Or, Imp, Iff, Box, Dia, All, Ex };

struct Form {
  Term term;
  bool rigid = false;
  Shape shape = Shape::Atom;
  int a = -1, b = -1;
  Term pred;
  Ty qty;
  bool actualist = false;
  bool opaque = false;
};

Term exists_at_const() { return Term::constant(kExistsAt, Ty::arrow({Ty::e(), Ty::w(), Ty::o()})); }

// World-independent lifted formulas become o-typed entries.
Term canon(const Term& t) {
  Term n = normalize(t);
  if (n.ty().is_lifted() && n.kind() == TermKind::Lam && !occurs_bound(n.body(), 0)) {
    n = shift(n.body(), -1);
  }
  return n;
}

bool ground_type(const Ty& t) { return t.is_base() && !t.is_w() && !t.is_o(); }

struct Entry {
  int world;
  bool sign;
  int form;
};

std::uint64_t pack(int world, bool sign, int form) {
  return (std::uint64_t(world + 1) << 33) | (std::uint64_t(sign) << 32) | std::uint32_t(form);
}

struct Branch {
  std::vector<Entry> entries;
  std::unordered_map<std::uint64_t, int> index;
  std::vector<int> parent, depth;
  std::vector<std::set<std::uint64_t>> label;
  std::set<std::pair<int, int>> edges;
  std::vector<std::vector<int>> succ;
  std::map<std::string, std::vector<Term>> herbrand;
  std::map<std::string, int> fresh;
  std::set<int> used;                      // delta and capped generating entries
  std::set<std::pair<int, std::string>> gamma_done;
  bool closed = false;
  bool incomplete = false;
  std::string why;

  int worlds() const { return static_cast<int>(parent.size()); }
  bool has(int world, bool sign, int form) const { return index.count(pack(world, sign, form)) > 0; }
};

enum class Status { Closed, Open, Incomplete };

struct Outcome {
  Status status;
  Branch branch;
};

class Prover {
 public:
  Prover(const TableauProblem& p, const Budget& b) : problem_(p), budget_(b), deadline_(b.timeout_ms) {
    trans_ = p.spec.has(FrameCondition::Transitive);
    equality_blocking_ = p.spec.has(FrameCondition::Symmetric) || p.spec.has(FrameCondition::Euclidean);
    global_ = p.spec.validity == ValidityMode::Global;
    for (const auto& t : p.premises) collect_constants(t, constants_);
    collect_constants(p.conclusion, constants_);
  }

  TableauResult run() {
    TableauResult res;
    auto proof = std::make_shared<TableauProof>();
    proof->problem = problem_;

    Branch br;
    br.parent.push_back(-1);
    br.depth.push_back(0);
    br.label.emplace_back();
    br.succ.emplace_back();
    for (const auto& [name, ty] : constants_) {
      if (ground_type(ty)) br.herbrand[ty.name()].push_back(Term::constant(name, ty));
    }

    for (const auto& t : problem_.premises) premise_ids_.push_back(intern(canon(t)));
    const int goal = intern(canon(problem_.conclusion));

    ProofStep init;
    init.rule = RuleKind::Init;
    std::vector<Entry> items;
    for (int id : premise_ids_) items.push_back({world_of(id, 0), true, id});
    items.push_back({world_of(goal, 0), false, goal});
    apply(br, proof->root, init, items);

    Outcome out = br.closed ? Outcome{Status::Closed, br} : expand(std::move(br), proof->root);
    res.outside_fragment = opaque_;
    switch (out.status) {
      case Status::Closed:
        res.outcome = TableauOutcome::Closed;
        res.proof = proof;
        break;
      case Status::Open:
        res.outcome = TableauOutcome::Open;
        res.model = extract(out.branch);
        if (!res.model) res.note = "open branch did not yield a verified model";
        break;
      case Status::Incomplete:
        res.outcome = TableauOutcome::Incomplete;
        res.note = out.branch.why;
        break;
    }
    return res;
  }

 private:
  // ---------------------------------------------------------------- formulas

  int intern(const Term& t) {
    auto it = ids_.find(t);
    if (it != ids_.end()) return it->second;
    Form f = classify(t);
    const int id = static_cast<int>(forms_.size());
    forms_.push_back(f);
    ids_.emplace(t, id);
    return id;
  }

  Form binary(Form f, Shape s, const Term& l, const Term& r) {
    f.shape = s;
    f.a = intern(canon(l));
    f.b = intern(canon(r));
    return f;
  }

  Form classify(const Term& t) {
    Form f;
    f.term = t;
    f.rigid = t.ty().is_o();
    const Term h = t.head();
    const auto args = t.spine_args();
    auto opaque = [&]() {
      f.shape = Shape::Atom;
      f.opaque = true;
      opaque_ = true;
      return f;
    };
    if (!h.is_logical()) {
      if (h.kind() != TermKind::Const) return opaque();
      return f;
    }
    const bool lifted_op = is_lifted(h.op());
    if (f.rigid == lifted_op) return opaque();  // e.g. a lifted formula applied to a world constant
    switch (h.op()) {
      case LogicalOp::True: f.shape = Shape::Top; return f;
      case LogicalOp::False: f.shape = Shape::Bot; return f;
      case LogicalOp::Not:
      case LogicalOp::MNot:
        f.shape = Shape::Not;
        f.a = intern(canon(args[0]));
        return f;
      case LogicalOp::And:
      case LogicalOp::MAnd: return binary(f, Shape::And, args[0], args[1]);
      case LogicalOp::Or:
      case LogicalOp::MOr: return binary(f, Shape::Or, args[0], args[1]);
      case LogicalOp::Implies:
      case LogicalOp::MImplies: return binary(f, Shape::Imp, args[0], args[1]);
      case LogicalOp::Iff:
      case LogicalOp::MIff: return binary(f, Shape::Iff, args[0], args[1]);
      case LogicalOp::Box:
        f.shape = Shape::Box;
        f.a = intern(canon(args[0]));
        return f;
      case LogicalOp::Dia:
        f.shape = Shape::Dia;
        f.a = intern(canon(args[0]));
        return f;
      case LogicalOp::Eq:
        if (args[0] == args[1]) f.shape = Shape::Top;
        return f;
      case LogicalOp::Forall:
      case LogicalOp::Exists:
      case LogicalOp::MForall:
      case LogicalOp::MExists:
      case LogicalOp::MForallA:
      case LogicalOp::MExistsA: {
        const bool all = h.op() == LogicalOp::Forall || h.op() == LogicalOp::MForall ||
                         h.op() == LogicalOp::MForallA;
        f.actualist = h.op() == LogicalOp::MForallA || h.op() == LogicalOp::MExistsA;
        f.qty = f.actualist ? Ty::e() : h.op_ty();
        f.pred = args[0];
        if (f.qty.is_o()) {
          // finite: conjunction or disjunction of both instances
          Term yes = Term::app(f.pred, mk_true(false));
          Term no = Term::app(f.pred, mk_false(false));
          Term ty_yes = normalize(yes), ty_no = normalize(no);
          return binary(f, all ? Shape::And : Shape::Or, ty_yes, ty_no);
        }
        if (!ground_type(f.qty)) return opaque();
        f.shape = all ? Shape::All : Shape::Ex;
        return f;
      }
      default:
        return opaque();
    }
  }

  Term instance(const Form& f, const Term& c) const {
    Term body = Term::app(f.pred, c);
    if (f.actualist) {
      Term ex = Term::app(exists_at_const(), c);
      body = f.shape == Shape::All ? mk_implies(ex, body) : mk_and(ex, body);
    }
    return canon(body);
  }

  int world_of(int form, int world) const { return forms_[form].rigid ? -1 : world; }

  ProofEntry proof_entry(const Entry& e) const { return ProofEntry{e.world, e.sign, forms_[e.form].term}; }

  // ---------------------------------------------------------------- branch ops

  // Adds the entries that are new, logs the step when anything was added (or
  // the step changes the frame) and closes on a clash.
  bool apply(Branch& br, ProofNode& node, ProofStep step, const std::vector<Entry>& items) {
    int clash_a = -1, clash_b = -1;
    for (const auto& e : items) {
      const auto key = pack(e.world, e.sign, e.form);
      if (br.index.count(key)) continue;
      const int idx = static_cast<int>(br.entries.size());
      br.entries.push_back(e);
      br.index.emplace(key, idx);
      if (e.world >= 0) br.label[e.world].insert(pack(0, e.sign, e.form));
      step.added.push_back(proof_entry(e));
      if (clash_b < 0) {
        auto other = br.index.find(pack(e.world, !e.sign, e.form));
        const Shape s = forms_[e.form].shape;
        if (other != br.index.end()) {
          clash_a = other->second;
          clash_b = idx;
        } else if ((s == Shape::Top && !e.sign) || (s == Shape::Bot && e.sign)) {
          clash_a = idx;
        }
      }
    }
    const bool structural = step.rule == RuleKind::NewWorld || step.rule == RuleKind::Frame ||
                            step.rule == RuleKind::Init;
    if (step.added.empty() && !structural) return false;
    node.steps.push_back(std::move(step));
    if (clash_a >= 0) {
      ProofStep close;
      close.rule = RuleKind::Close;
      close.clash_a = clash_a;
      close.clash_b = clash_b;
      node.steps.push_back(close);
      br.closed = true;
    }
    if (br.entries.size() > kMaxEntries) mark_incomplete(br, "tableau entry limit reached");
    return true;
  }

  void mark_incomplete(Branch& br, const std::string& why) {
    if (!br.incomplete) br.why = why;
    br.incomplete = true;
  }

  void add_edge(Branch& br, int from, int to) {
    br.edges.emplace(from, to);
    br.succ[from].push_back(to);
  }

  bool frame_rules(Branch& br, ProofNode& node) {
    bool any = false;
    for (bool changed = true; changed && !br.closed;) {
      changed = false;
      std::vector<std::tuple<int, int, FrameCondition>> todo;
      const auto& spec = problem_.spec;
      if (spec.has(FrameCondition::Reflexive)) {
        for (int x = 0; x < br.worlds(); ++x) {
          if (!br.edges.count({x, x})) todo.emplace_back(x, x, FrameCondition::Reflexive);
        }
      }
      for (const auto& [x, y] : br.edges) {
        if (spec.has(FrameCondition::Symmetric) && !br.edges.count({y, x})) {
          todo.emplace_back(y, x, FrameCondition::Symmetric);
        }
        for (int z : br.succ[y]) {
          if (spec.has(FrameCondition::Transitive) && !br.edges.count({x, z})) {
            todo.emplace_back(x, z, FrameCondition::Transitive);
          }
        }
        for (int z : br.succ[x]) {
          if (spec.has(FrameCondition::Euclidean) && !br.edges.count({y, z})) {
            todo.emplace_back(y, z, FrameCondition::Euclidean);
          }
        }
      }
      for (const auto& [from, to, cond] : todo) {
        if (br.edges.count({from, to})) continue;
        add_edge(br, from, to);
        ProofStep s;
        s.rule = RuleKind::Frame;
        s.from = from;
        s.to = to;
        s.condition = cond;
        apply(br, node, s, {});
        changed = any = true;
      }
    }
    return any;
  }

  bool global_rule(Branch& br, ProofNode& node) {
    if (!global_) return false;
    bool any = false;
    for (int x = 0; x < br.worlds() && !br.closed; ++x) {
      for (int id : premise_ids_) {
        const int w = world_of(id, x);
        if (br.has(w, true, id)) continue;
        ProofStep s;
        s.rule = RuleKind::Global;
        s.from = x;
        any |= apply(br, node, s, {{w, true, id}});
        if (br.closed) return true;
      }
    }
    return any;
  }

  // Non-branching decomposition of entry i, if any.
  bool alpha_parts(const Entry& e, std::vector<Entry>& out) const {
    const Form& f = forms_[e.form];
    auto at = [&](bool sign, int form) { out.push_back({world_of(form, e.world), sign, form}); };
    switch (f.shape) {
      case Shape::Not: at(!e.sign, f.a); return true;
      case Shape::And:
        if (!e.sign) return false;
        at(true, f.a);
        at(true, f.b);
        return true;
      case Shape::Or:
        if (e.sign) return false;
        at(false, f.a);
        at(false, f.b);
        return true;
      case Shape::Imp:
        if (e.sign) return false;
        at(true, f.a);
        at(false, f.b);
        return true;
      default:
        return false;
    }
  }

  bool beta_parts(const Entry& e, std::vector<std::vector<Entry>>& alts) const {
    const Form& f = forms_[e.form];
    auto at = [&](bool sign, int form) { return Entry{world_of(form, e.world), sign, form}; };
    switch (f.shape) {
      case Shape::And:
        if (e.sign) return false;
        alts = {{at(false, f.a)}, {at(false, f.b)}};
        return true;
      case Shape::Or:
        if (!e.sign) return false;
        alts = {{at(true, f.a)}, {at(true, f.b)}};
        return true;
      case Shape::Imp:
        if (!e.sign) return false;
        alts = {{at(false, f.a)}, {at(true, f.b)}};
        return true;
      case Shape::Iff:
        if (e.sign) {
          alts = {{at(true, f.a), at(true, f.b)}, {at(false, f.a), at(false, f.b)}};
        } else {
          alts = {{at(true, f.a), at(false, f.b)}, {at(false, f.a), at(true, f.b)}};
        }
        return true;
      default:
        return false;
    }
  }

  bool alpha_rule(Branch& br, ProofNode& node) {
    bool any = false;
    for (std::size_t i = 0; i < br.entries.size() && !br.closed; ++i) {
      std::vector<Entry> parts;
      if (!alpha_parts(br.entries[i], parts)) continue;
      ProofStep s;
      s.rule = RuleKind::Alpha;
      s.source = static_cast<int>(i);
      any |= apply(br, node, s, parts);
    }
    return any;
  }

  // T box / F dia at a world: the universal modal entries.
  bool universal_modal(const Entry& e) const {
    const Shape s = forms_[e.form].shape;
    return e.world >= 0 && ((s == Shape::Box && e.sign) || (s == Shape::Dia && !e.sign));
  }
  bool existential_modal(const Entry& e) const {
    const Shape s = forms_[e.form].shape;
    return e.world >= 0 && ((s == Shape::Box && !e.sign) || (s == Shape::Dia && e.sign));
  }

  bool box_rule(Branch& br, ProofNode& node) {
    bool any = false;
    for (std::size_t i = 0; i < br.entries.size() && !br.closed; ++i) {
      const Entry e = br.entries[i];
      if (!universal_modal(e)) continue;
      const int kid = forms_[e.form].a;
      const std::vector<int> succ = br.succ[e.world];
      for (int y : succ) {
        std::vector<Entry> items{{world_of(kid, y), e.sign, kid}};
        if (trans_) items.push_back({y, e.sign, e.form});
        ProofStep s;
        s.rule = RuleKind::BoxProp;
        s.source = static_cast<int>(i);
        s.from = e.world;
        s.to = y;
        any |= apply(br, node, s, items);
        if (br.closed) return true;
      }
    }
    return any;
  }

  std::optional<Term> fresh_constant(Branch& br, const Ty& ty) {
    int& used = br.fresh[ty.name()];
    if (used >= kFreshPerType) return std::nullopt;
    for (int k = 1;; ++k) {
      const std::string name = "sk" + std::to_string(k) + "_" + ty.name();
      if (constants_.count(name)) continue;
      bool taken = false;
      for (const auto& t : br.herbrand[ty.name()]) taken |= t.name() == name;
      if (taken) continue;
      ++used;
      Term c = Term::constant(name, ty);
      br.herbrand[ty.name()].push_back(c);
      return c;
    }
  }

  bool gamma_rule(Branch& br, ProofNode& node) {
    bool any = false;
    for (std::size_t i = 0; i < br.entries.size() && !br.closed; ++i) {
      const Entry e = br.entries[i];
      const Form& f = forms_[e.form];
      const bool gamma = (f.shape == Shape::All && e.sign) || (f.shape == Shape::Ex && !e.sign);
      if (!gamma) continue;
      auto& base = br.herbrand[f.qty.name()];
      if (base.empty() && !fresh_constant(br, f.qty)) {
        mark_incomplete(br, "no ground term available for " + f.qty.name());
        continue;
      }
      const std::vector<Term> terms = br.herbrand[f.qty.name()];
      for (const auto& c : terms) {
        if (!br.gamma_done.emplace(static_cast<int>(i), c.name()).second) continue;
        const int inst = intern(instance(f, c));
        ProofStep s;
        s.rule = RuleKind::Gamma;
        s.source = static_cast<int>(i);
        s.witness = c;
        any |= apply(br, node, s, {{world_of(inst, e.world), e.sign, inst}});
        if (br.closed) return true;
      }
    }
    return any;
  }

  int find_beta(const Branch& br) const {
    for (std::size_t i = 0; i < br.entries.size(); ++i) {
      std::vector<std::vector<Entry>> alts;
      if (!beta_parts(br.entries[i], alts)) continue;
      bool done = false;
      for (const auto& alt : alts) {
        bool all = true;
        for (const auto& e : alt) all = all && br.has(e.world, e.sign, e.form);
        done = done || all;
      }
      if (!done) return static_cast<int>(i);
    }
    return -1;
  }

  bool subset(const std::set<std::uint64_t>& a, const std::set<std::uint64_t>& b) const {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  }

  int blocker(const Branch& br, int y) const {
    for (int x = br.parent[y]; x >= 0; x = br.parent[x]) {
      const bool hit = equality_blocking_ ? br.label[y] == br.label[x] : subset(br.label[y], br.label[x]);
      if (hit) return x;
    }
    return -1;
  }

  bool blocked(const Branch& br, int y) const {
    for (int z = y; z > 0; z = br.parent[z]) {
      if (blocker(br, z) >= 0) return true;
    }
    return false;
  }

  bool delta_rule(Branch& br, ProofNode& node) {
    for (std::size_t i = 0; i < br.entries.size(); ++i) {
      const Entry e = br.entries[i];
      const Form& f = forms_[e.form];
      const bool delta = (f.shape == Shape::All && !e.sign) || (f.shape == Shape::Ex && e.sign);
      if (!delta || br.used.count(static_cast<int>(i))) continue;
      if (e.world >= 0 && blocked(br, e.world)) continue;
      br.used.insert(static_cast<int>(i));
      auto c = fresh_constant(br, f.qty);
      if (!c) {
        mark_incomplete(br, "fresh witness limit reached for " + f.qty.name());
        continue;
      }
      const int inst = intern(instance(f, *c));
      ProofStep s;
      s.rule = RuleKind::Delta;
      s.source = static_cast<int>(i);
      s.witness = *c;
      apply(br, node, s, {{world_of(inst, e.world), e.sign, inst}});
      return true;
    }
    return false;
  }

  bool world_rule(Branch& br, ProofNode& node) {
    for (std::size_t i = 0; i < br.entries.size(); ++i) {
      const Entry e = br.entries[i];
      if (!existential_modal(e) || br.used.count(static_cast<int>(i))) continue;
      const int kid = forms_[e.form].a;
      bool satisfied = false;
      for (int y : br.succ[e.world]) satisfied = satisfied || br.has(world_of(kid, y), e.sign, kid);
      if (satisfied || blocked(br, e.world)) continue;
      if (br.depth[e.world] + 1 > static_cast<int>(budget_.max_depth) ||
          static_cast<std::size_t>(br.worlds()) >= kMaxWorlds) {
        br.used.insert(static_cast<int>(i));
        mark_incomplete(br, "tableau depth limit reached");
        continue;
      }
      const int y = br.worlds();
      br.parent.push_back(e.world);
      br.depth.push_back(br.depth[e.world] + 1);
      br.label.emplace_back();
      br.succ.emplace_back();
      add_edge(br, e.world, y);
      ProofStep s;
      s.rule = RuleKind::NewWorld;
      s.source = static_cast<int>(i);
      s.from = e.world;
      s.to = y;
      apply(br, node, s, {{world_of(kid, y), e.sign, kid}});
      return true;
    }
    return false;
  }

  Outcome expand(Branch br, ProofNode& node) {
    for (;;) {
      if (deadline_.passed()) {
        mark_incomplete(br, "deadline passed");
        return {Status::Incomplete, std::move(br)};
      }
      for (bool changed = true; changed && !br.closed;) {
        changed = frame_rules(br, node);
        changed |= !br.closed && global_rule(br, node);
        changed |= !br.closed && alpha_rule(br, node);
        changed |= !br.closed && box_rule(br, node);
        changed |= !br.closed && gamma_rule(br, node);
        if (br.entries.size() > kMaxEntries) return {Status::Incomplete, std::move(br)};
      }
      if (br.closed) return {Status::Closed, std::move(br)};

      const int bi = find_beta(br);
      if (bi >= 0) {
        std::vector<std::vector<Entry>> alts;
        beta_parts(br.entries[bi], alts);
        ProofStep split;
        split.rule = RuleKind::Split;
        split.source = bi;
        std::vector<std::vector<Entry>> fresh_alts;
        for (const auto& alt : alts) {
          std::vector<Entry> keep;
          std::vector<ProofEntry> logged;
          for (const auto& e : alt) {
            if (br.has(e.world, e.sign, e.form)) continue;
            keep.push_back(e);
            logged.push_back(proof_entry(e));
          }
          fresh_alts.push_back(keep);
          split.alternatives.push_back(logged);
        }
        node.steps.push_back(split);
        node.children.resize(fresh_alts.size());
        for (std::size_t k = 0; k < fresh_alts.size(); ++k) {
          Branch child = br;
          ProofNode& cn = node.children[k];
          // the alternative's entries are implied by the split step; a
          // clash among them is logged in the child
          for (const auto& e : fresh_alts[k]) {
            const auto key = pack(e.world, e.sign, e.form);
            const int idx = static_cast<int>(child.entries.size());
            child.entries.push_back(e);
            child.index.emplace(key, idx);
            if (e.world >= 0) child.label[e.world].insert(pack(0, e.sign, e.form));
            if (child.closed) continue;
            auto other = child.index.find(pack(e.world, !e.sign, e.form));
            const Shape s = forms_[e.form].shape;
            int a = -1, b = -1;
            if (other != child.index.end()) {
              a = other->second;
              b = idx;
            } else if ((s == Shape::Top && !e.sign) || (s == Shape::Bot && e.sign)) {
              a = idx;
            }
            if (a >= 0) {
              ProofStep close;
              close.rule = RuleKind::Close;
              close.clash_a = a;
              close.clash_b = b;
              cn.steps.push_back(close);
              child.closed = true;
            }
          }
          Outcome sub = child.closed ? Outcome{Status::Closed, std::move(child)} : expand(std::move(child), cn);
          if (sub.status != Status::Closed) return sub;
        }
        return {Status::Closed, std::move(br)};
      }

      if (delta_rule(br, node)) continue;
      if (br.closed) return {Status::Closed, std::move(br)};
      if (world_rule(br, node)) continue;
      return {br.incomplete ? Status::Incomplete : Status::Open, std::move(br)};
    }
  }

  // ---------------------------------------------------------------- models

  std::optional<FiniteModel> extract(const Branch& br) {
    std::vector<int> map(br.worlds(), -1);
    int kept = 0;
    for (int y = 0; y < br.worlds(); ++y) {
      if (!blocked(br, y)) map[y] = kept++;
    }
    auto target = [&](int y) {
      if (map[y] >= 0) return map[y];
      const int x = blocker(br, y);
      if (x >= 0 && map[x] >= 0) return map[x];
      return -1;
    };
    std::set<std::pair<int, int>> rel;
    for (const auto& [x, y] : br.edges) {
      if (map[x] < 0) continue;
      const int t = target(y);
      if (t >= 0) rel.emplace(map[x], t);
    }
    close_relation(rel, kept);

    FiniteModel m;
    m.sizes["w"] = static_cast<std::uint32_t>(kept);
    std::map<std::string, std::map<std::string, std::uint32_t>> elements;
    for (const auto& [base, terms] : br.herbrand) {
      for (const auto& t : terms) elements[base].emplace(t.name(), static_cast<std::uint32_t>(elements[base].size()));
      m.sizes[base] = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(terms.size()));
    }
    std::map<std::string, Ty> consts = constants_;
    consts.emplace(kAccessibility, Ty::arrow({Ty::w(), Ty::w(), Ty::o()}));
    if (problem_.spec.domain == DomainPolicy::Actualist) {
      consts.emplace(kExistsAt, Ty::arrow({Ty::e(), Ty::w(), Ty::o()}));
    }
    if (problem_.spec.validity == ValidityMode::Local) consts.emplace(kActualWorld, Ty::w());

    Evaluator ev(m);
    try {
      for (const auto& [name, ty] : consts) {
        std::uint64_t rows = 1;
        for (const auto& a : ty.args()) rows *= ev.cardinality(a);
        Interpretation in{ty, std::vector<std::uint32_t>(rows, 0)};
        if (ty.is_base() && !ty.is_o()) {
          auto el = elements[ty.name()].find(name);
          if (el != elements[ty.name()].end()) in.table[0] = el->second;
        }
        m.interp[name] = in;
      }
      for (const auto& [x, y] : rel) m.interp[kAccessibility].table[x * kept + y] = 1;
      for (const auto& e : br.entries) {
        if (!e.sign || forms_[e.form].shape != Shape::Atom || forms_[e.form].opaque) continue;
        const Term& t = forms_[e.form].term;
        auto it = m.interp.find(t.head().name());
        if (it == m.interp.end()) continue;
        const auto tys = it->second.ty.args();
        std::vector<std::uint32_t> codes;
        bool ok = true;
        for (const auto& a : t.spine_args()) {
          if (a.kind() != TermKind::Const || !a.ty().is_base()) {
            ok = false;
            break;
          }
          auto el = elements[a.ty().name()].find(a.name());
          if (el == elements[a.ty().name()].end()) {
            ok = false;
            break;
          }
          codes.push_back(el->second);
        }
        if (!ok) continue;
        if (e.world >= 0) {
          if (map[e.world] < 0) continue;
          codes.push_back(static_cast<std::uint32_t>(map[e.world]));
        }
        if (codes.size() != tys.size()) continue;
        std::uint64_t row = 0;
        for (std::size_t i = 0; i < codes.size(); ++i) row = row * ev.cardinality(tys[i]) + codes[i];
        it->second.table[row] = 1;
      }
      Evaluator check(m);
      for (const auto& g : countermodel_goals(problem_.premises, &problem_.conclusion, problem_.spec)) {
        if (!check.holds(g)) return std::nullopt;
      }
    } catch (const EvalError&) {
      return std::nullopt;
    }
    return m;
  }

  void close_relation(std::set<std::pair<int, int>>& rel, int n) const {
    const auto& spec = problem_.spec;
    for (bool changed = true; changed;) {
      changed = false;
      std::set<std::pair<int, int>> add;
      if (spec.has(FrameCondition::Reflexive)) {
        for (int x = 0; x < n; ++x) add.emplace(x, x);
      }
      for (const auto& [x, y] : rel) {
        if (spec.has(FrameCondition::Symmetric)) add.emplace(y, x);
        for (const auto& [u, v] : rel) {
          if (spec.has(FrameCondition::Transitive) && u == y) add.emplace(x, v);
          if (spec.has(FrameCondition::Euclidean) && u == x) add.emplace(y, v);
        }
      }
      for (const auto& p : add) changed |= rel.insert(p).second;
    }
  }

  const TableauProblem& problem_;
  const Budget& budget_;
  Deadline deadline_;
  bool trans_ = false, equality_blocking_ = false, global_ = true, opaque_ = false;
  std::map<std::string, Ty> constants_;
  std::vector<Form> forms_;
  std::unordered_map<Term, int, TermHash> ids_;
  std::vector<int> premise_ids_;
};

}  // namespace

TableauResult run_tableau(const TableauProblem& problem, const Budget& b) {
  b.validate();
  for (const auto& t : problem.premises) {
    if (!t.ty().is_o() && !t.ty().is_lifted()) throw QueryError("premise is not a formula: " + t.ty().str());
  }
  if (!problem.conclusion.ty().is_o() && !problem.conclusion.ty().is_lifted()) {
    throw QueryError("conclusion is not a formula: " + problem.conclusion.ty().str());
  }
  return Prover(problem, b).run();
}

}  // namespace herm
