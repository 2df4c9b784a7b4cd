// Finite model finding by grounding into a propositional circuit and a small
// DPLL search. Predicates become atoms; every other constant is enumerated.

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "herm/reasoner.hpp"

namespace herm {

namespace {

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr std::uint64_t kMaxCard = 1u << 16;
constexpr std::uint64_t kMaxOuter = 1u << 12;

struct Unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Timeout {};

// Hash-consed and-inverter graph. Literal = 2 * node + negated; node 0 is
// the constant true.
class Circuit {
 public:
  Circuit() { inputs_.push_back({-1, -1}); }

  int var() {
    inputs_.push_back({-1, -1});
    return 2 * static_cast<int>(inputs_.size() - 1);
  }

  int conj(int a, int b) {
    if (a == kFalse || b == kFalse) return kFalse;
    if (a == kTrue) return b;
    if (b == kTrue) return a;
    if (a == b) return a;
    if (a == (b ^ 1)) return kFalse;
    if (a > b) std::swap(a, b);
    const std::uint64_t key = (std::uint64_t(a) << 32) | std::uint32_t(b);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    inputs_.push_back({a, b});
    const int lit = 2 * static_cast<int>(inputs_.size() - 1);
    cache_.emplace(key, lit);
    return lit;
  }
  int disj(int a, int b) { return conj(a ^ 1, b ^ 1) ^ 1; }
  int iff(int a, int b) { return conj(disj(a ^ 1, b), disj(a, b ^ 1)); }
  int ite(int c, int a, int b) { return disj(conj(c, a), conj(c ^ 1, b)); }

  std::size_t size() const { return inputs_.size(); }
  const std::pair<int, int>& inputs(std::size_t node) const { return inputs_[node]; }

 private:
  std::vector<std::pair<int, int>> inputs_;
  std::unordered_map<std::uint64_t, int> cache_;
};

// ---------------------------------------------------------------- grounding

struct SEnv;
using SEnvPtr = std::shared_ptr<const SEnv>;

struct SVal {
  enum Kind { Elem, Lit, Closure, Partial } kind = Elem;
  int v = 0;  // element index or literal
  Term body;
  SEnvPtr env;
  bool is_op = false;
  Term op;
  std::shared_ptr<const std::vector<int>> table;  // literals for o results, elements otherwise
  Ty table_ty;
  std::vector<SVal> args;

  static SVal elem(int e) {
    SVal s;
    s.v = e;
    return s;
  }
  static SVal lit(int l) {
    SVal s;
    s.kind = Lit;
    s.v = l;
    return s;
  }
};

struct SEnv {
  SVal value;
  SEnvPtr next;
};

using Tables = std::map<std::string, std::shared_ptr<const std::vector<int>>>;

class Grounder {
 public:
  Grounder(Circuit& c, const std::map<std::string, std::uint32_t>& sizes, const Tables& tables,
           const Deadline& dl)
      : c_(c), sizes_(sizes), tables_(tables), dl_(dl) {}

  int formula(const Term& t) { return as_lit(eval(t, nullptr)); }

  std::uint64_t card(const Ty& ty) const {
    if (ty.is_base()) {
      if (ty.is_o()) return 2;
      auto it = sizes_.find(ty.name());
      return it == sizes_.end() ? 1 : it->second;
    }
    const std::uint64_t dom = card(ty.domain());
    const std::uint64_t cod = card(ty.codomain());
    std::uint64_t n = 1;
    for (std::uint64_t i = 0; i < dom; ++i) {
      n *= cod;
      if (n > kMaxCard) throw Unsupported("function space " + ty.str() + " too large");
    }
    return n;
  }

 private:
  int as_lit(const SVal& v) const {
    if (v.kind != SVal::Lit) throw Unsupported("expected a truth value");
    return v.v;
  }

  SVal eval(const Term& t, const SEnvPtr& env) {
    switch (t.kind()) {
      case TermKind::BVar: {
        const SEnv* n = env.get();
        for (std::uint32_t i = 0; n && i < t.index(); ++i) n = n->next.get();
        if (!n) throw Unsupported("unbound variable");
        return n->value;
      }
      case TermKind::FVar:
        throw Unsupported("free variable " + t.name());
      case TermKind::Const: {
        if (t.is_logical()) {
          if (is_lifted(t.op())) return eval(lifted_definition(t), nullptr);
          if (arity(t.op()) == 0) return SVal::lit(t.op() == LogicalOp::True ? kTrue : kFalse);
          SVal s;
          s.kind = SVal::Partial;
          s.is_op = true;
          s.op = t;
          return s;
        }
        auto it = tables_.find(t.name());
        if (it == tables_.end()) throw Unsupported("uninterpreted constant " + t.name());
        if (t.ty().is_base()) {
          const int e = it->second->at(0);
          return t.ty().is_o() ? SVal::lit(e) : SVal::elem(e);
        }
        SVal s;
        s.kind = SVal::Partial;
        s.table = it->second;
        s.table_ty = t.ty();
        return s;
      }
      case TermKind::Lam: {
        SVal s;
        s.kind = SVal::Closure;
        s.body = t.body();
        s.env = env;
        return s;
      }
      case TermKind::App:
        return apply(eval(t.fn(), env), eval(t.arg(), env));
    }
    throw Unsupported("unreachable");
  }

  SVal apply(const SVal& f, const SVal& a) {
    if (f.kind == SVal::Closure) {
      return eval(f.body, std::make_shared<const SEnv>(SEnv{a, f.env}));
    }
    if (f.kind != SVal::Partial) throw Unsupported("application of a base value");
    SVal p = f;
    p.args.push_back(a);
    const std::size_t need =
        p.is_op ? static_cast<std::size_t>(arity(p.op.op())) : p.table_ty.args().size();
    if (p.args.size() < need) return p;
    return p.is_op ? saturate_op(p) : lookup(p, p.table_ty.args(), 0, 0);
  }

  SVal lookup(const SVal& p, const std::vector<Ty>& tys, std::size_t i, std::uint64_t idx) {
    if (i == tys.size()) {
      const int e = p.table->at(idx);
      return p.table_ty.result().is_o() ? SVal::lit(e) : SVal::elem(e);
    }
    const SVal& x = p.args[i];
    if (tys[i].is_o() && x.kind == SVal::Lit && x.v != kTrue && x.v != kFalse) {
      SVal hi = lookup(p, tys, i + 1, idx * 2 + 1);
      SVal lo = lookup(p, tys, i + 1, idx * 2);
      if (hi.kind == SVal::Lit && lo.kind == SVal::Lit) return SVal::lit(c_.ite(x.v, hi.v, lo.v));
      if (hi.kind == SVal::Elem && lo.kind == SVal::Elem && hi.v == lo.v) return hi;
      throw Unsupported("non-boolean value selected by an open truth value");
    }
    return lookup(p, tys, i + 1, idx * card(tys[i]) + encode(x, tys[i]));
  }

  std::uint64_t encode(const SVal& v, const Ty& ty) {
    if (ty.is_base()) {
      if (ty.is_o()) {
        if (v.kind != SVal::Lit || (v.v != kTrue && v.v != kFalse)) {
          throw Unsupported("open truth value used as an index");
        }
        return v.v == kTrue ? 1 : 0;
      }
      if (v.kind != SVal::Elem) throw Unsupported("expected an element");
      return static_cast<std::uint64_t>(v.v);
    }
    const auto args = ty.args();
    const Ty res = ty.result();
    const std::uint64_t rc = card(res);
    std::vector<std::uint64_t> cards;
    std::uint64_t rows = 1;
    for (const auto& a : args) {
      cards.push_back(card(a));
      rows *= cards.back();
    }
    std::uint64_t code = 0;
    for (std::uint64_t k = 0; k < rows; ++k) {
      std::uint64_t rest = k;
      std::vector<std::uint64_t> tuple(args.size());
      for (std::size_t i = args.size(); i-- > 0;) {
        tuple[i] = rest % cards[i];
        rest /= cards[i];
      }
      SVal r = v;
      for (std::size_t i = 0; i < args.size(); ++i) r = apply(r, decode(tuple[i], args[i]));
      code = code * rc + encode(r, res);
    }
    return code;
  }

  SVal decode(std::uint64_t code, const Ty& ty) {
    if (ty.is_base()) {
      if (ty.is_o()) return SVal::lit(code ? kTrue : kFalse);
      return SVal::elem(static_cast<int>(code));
    }
    const auto args = ty.args();
    const Ty res = ty.result();
    const std::uint64_t rc = card(res);
    std::uint64_t rows = 1;
    for (const auto& a : args) rows *= card(a);
    auto table = std::make_shared<std::vector<int>>(rows);
    for (std::uint64_t k = rows; k-- > 0;) {
      const auto d = static_cast<int>(code % rc);
      (*table)[k] = res.is_o() ? (d ? kTrue : kFalse) : d;
      code /= rc;
    }
    SVal s;
    s.kind = SVal::Partial;
    s.table = std::move(table);
    s.table_ty = ty;
    return s;
  }

  int equal(const SVal& a, const SVal& b, const Ty& ty) {
    if (ty.is_base()) {
      if (ty.is_o()) return c_.iff(as_lit(a), as_lit(b));
      if (a.kind != SVal::Elem || b.kind != SVal::Elem) throw Unsupported("expected elements");
      return a.v == b.v ? kTrue : kFalse;
    }
    const std::uint64_t n = card(ty.domain());
    int acc = kTrue;
    for (std::uint64_t i = 0; i < n && acc != kFalse; ++i) {
      SVal x = decode(i, ty.domain());
      acc = c_.conj(acc, equal(apply(a, x), apply(b, x), ty.codomain()));
    }
    return acc;
  }

  SVal saturate_op(const SVal& p) {
    if (++ticks_ % 4096 == 0 && dl_.passed()) throw Timeout{};
    const auto& a = p.args;
    switch (p.op.op()) {
      case LogicalOp::Not: return SVal::lit(as_lit(a[0]) ^ 1);
      case LogicalOp::And: return SVal::lit(c_.conj(as_lit(a[0]), as_lit(a[1])));
      case LogicalOp::Or: return SVal::lit(c_.disj(as_lit(a[0]), as_lit(a[1])));
      case LogicalOp::Implies: return SVal::lit(c_.disj(as_lit(a[0]) ^ 1, as_lit(a[1])));
      case LogicalOp::Iff: return SVal::lit(c_.iff(as_lit(a[0]), as_lit(a[1])));
      case LogicalOp::Eq: return SVal::lit(equal(a[0], a[1], p.op.op_ty()));
      case LogicalOp::Forall:
      case LogicalOp::Exists: {
        const bool all = p.op.op() == LogicalOp::Forall;
        const Ty& ty = p.op.op_ty();
        const std::uint64_t n = card(ty);
        int acc = all ? kTrue : kFalse;
        for (std::uint64_t i = 0; i < n; ++i) {
          const int l = as_lit(apply(a[0], decode(i, ty)));
          acc = all ? c_.conj(acc, l) : c_.disj(acc, l);
          if (acc == (all ? kFalse : kTrue)) break;
        }
        return SVal::lit(acc);
      }
      default:
        break;
    }
    throw Unsupported(std::string("operator ") + op_name(p.op.op()));
  }

  Circuit& c_;
  const std::map<std::string, std::uint32_t>& sizes_;
  const Tables& tables_;
  const Deadline& dl_;
  std::uint64_t ticks_ = 0;
};

// ---------------------------------------------------------------- search

// DPLL over the Tseitin encoding of a circuit. Only atom variables are
// decided (false first, in the given order); gate values follow by
// propagation, so the first model found is the least one in that order.
// CDCL with a static decision order (the atoms, false first) and no
// restarts. Learned clauses are consequences and every decided atom precedes
// the literals it implies, so the first model found is the lexicographically
// least one over the atoms.
class Solver {
 public:
  enum Result { Sat, Unsat, Expired };

  Solver(const Circuit& c, const std::vector<int>& roots, const Deadline& dl)
      : val_(c.size(), -1), level_(c.size(), 0), reason_(c.size(), -1), seen_(c.size(), 0),
        watches_(2 * c.size()), dl_(dl) {
    unit(kTrue);
    for (std::size_t g = 1; g < c.size(); ++g) {
      const auto [a, b] = c.inputs(g);
      if (a < 0) continue;
      const int lit = 2 * static_cast<int>(g);
      add({lit ^ 1, a});
      add({lit ^ 1, b});
      add({lit, a ^ 1, b ^ 1});
    }
    for (int r : roots) unit(r);
  }

  Result solve(const std::vector<int>& atoms) {
    if (!ok_ || propagate() >= 0) return Unsat;
    std::uint64_t steps = 0;
    for (;;) {
      if (++steps % 256 == 0 && dl_.passed()) return Expired;
      int next = -1;
      for (int v : atoms) {
        if (val_[v] < 0) {
          next = v;
          break;
        }
      }
      if (next < 0) return Sat;
      limits_.push_back(trail_.size());
      enqueue(2 * next + 1, -1);
      for (int confl = propagate(); confl >= 0; confl = propagate()) {
        if (limits_.empty()) return Unsat;
        learn(confl);
      }
    }
  }

  bool value(int var) const { return val_[var] == 1; }

 private:
  int lit_value(int lit) const {
    const int v = val_[lit >> 1];
    return v < 0 ? -1 : (v ^ (lit & 1));
  }

  int level() const { return static_cast<int>(limits_.size()); }

  void enqueue(int lit, int reason) {
    val_[lit >> 1] = static_cast<std::int8_t>((lit & 1) ^ 1);
    level_[lit >> 1] = level();
    reason_[lit >> 1] = reason;
    trail_.push_back(lit);
  }

  void unit(int lit) {
    const int v = lit_value(lit);
    if (v == 0) ok_ = false;
    if (v < 0) enqueue(lit, -1);
  }

  void add(std::vector<int> clause) {
    std::sort(clause.begin(), clause.end());
    clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
    for (std::size_t i = 1; i < clause.size(); ++i) {
      if ((clause[i] ^ 1) == clause[i - 1]) return;  // tautology
    }
    if (clause.size() == 1) {
      unit(clause[0]);
      return;
    }
    attach(std::move(clause));
  }

  int attach(std::vector<int> clause) {
    const int id = static_cast<int>(clauses_.size());
    watches_[clause[0]].push_back(id);
    watches_[clause[1]].push_back(id);
    clauses_.push_back(std::move(clause));
    return id;
  }

  void backjump(int lvl) {
    const std::size_t pos = limits_[lvl];
    while (trail_.size() > pos) {
      val_[trail_.back() >> 1] = -1;
      trail_.pop_back();
    }
    limits_.resize(lvl);
    head_ = pos;
  }

  // First-UIP conflict analysis, then backjump and assert.
  void learn(int confl) {
    std::vector<int> learnt{-1};
    int pending = 0;
    int p = -1;
    std::size_t idx = trail_.size();
    for (;;) {
      for (int q : clauses_[confl]) {
        const int v = q >> 1;
        if (p >= 0 && v == (p >> 1)) continue;
        if (seen_[v] || level_[v] == 0) continue;
        seen_[v] = 1;
        if (level_[v] == level()) {
          ++pending;
        } else {
          learnt.push_back(q);
        }
      }
      do --idx;
      while (!seen_[trail_[idx] >> 1]);
      p = trail_[idx];
      seen_[p >> 1] = 0;
      if (--pending == 0) break;
      confl = reason_[p >> 1];
    }
    learnt[0] = p ^ 1;
    int back = 0;
    for (std::size_t i = 1; i < learnt.size(); ++i) {
      seen_[learnt[i] >> 1] = 0;
      if (level_[learnt[i] >> 1] > level_[learnt[1] >> 1]) std::swap(learnt[1], learnt[i]);
    }
    if (learnt.size() > 1) back = level_[learnt[1] >> 1];
    backjump(back);
    if (learnt.size() == 1) {
      enqueue(learnt[0], -1);
    } else {
      const int lit = learnt[0];
      enqueue(lit, attach(std::move(learnt)));
    }
  }

  // Returns the id of a falsified clause, or -1.
  int propagate() {
    while (head_ < trail_.size()) {
      const int falsified = trail_[head_++] ^ 1;
      auto& ws = watches_[falsified];
      std::size_t i = 0, j = 0;
      while (i < ws.size()) {
        const int id = ws[i];
        auto& cl = clauses_[id];
        if (cl[0] == falsified) std::swap(cl[0], cl[1]);
        if (lit_value(cl[0]) == 1) {
          ws[j++] = ws[i++];
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < cl.size(); ++k) {
          if (lit_value(cl[k]) != 0) {
            std::swap(cl[1], cl[k]);
            watches_[cl[1]].push_back(id);
            moved = true;
            break;
          }
        }
        if (moved) {
          ++i;
          continue;
        }
        ws[j++] = ws[i++];
        if (lit_value(cl[0]) == 0) {
          while (i < ws.size()) ws[j++] = ws[i++];
          ws.resize(j);
          return id;
        }
        enqueue(cl[0], id);
      }
      ws.resize(j);
    }
    return -1;
  }

  std::vector<std::int8_t> val_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<std::int8_t> seen_;
  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<int>> watches_;
  std::vector<int> trail_;
  std::vector<std::size_t> limits_;
  std::size_t head_ = 0;
  bool ok_ = true;
  const Deadline& dl_;
};

void bases_of(const Ty& ty, std::set<std::string>& out) {
  if (ty.is_base()) {
    if (!ty.is_o()) out.insert(ty.name());
    return;
  }
  bases_of(ty.domain(), out);
  bases_of(ty.codomain(), out);
}

void collect_bases(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Const:
      bases_of(t.ty(), out);
      if (t.is_logical() && (t.op() == LogicalOp::Eq || t.op() == LogicalOp::Forall ||
                             t.op() == LogicalOp::Exists || t.op() == LogicalOp::MForall ||
                             t.op() == LogicalOp::MExists)) {
        bases_of(t.op_ty(), out);
      }
      if (t.is_logical() && is_lifted(t.op())) out.insert("w");
      if (t.is_logical() && (t.op() == LogicalOp::MForallA || t.op() == LogicalOp::MExistsA)) {
        out.insert("e");
      }
      break;
    case TermKind::Lam:
      bases_of(t.var_ty(), out);
      collect_bases(t.body(), out);
      break;
    case TermKind::App:
      collect_bases(t.fn(), out);
      collect_bases(t.arg(), out);
      break;
    default:
      bases_of(t.ty(), out);
      break;
  }
}

void size_vectors(const std::vector<std::uint32_t>& caps, std::vector<std::uint32_t>& cur,
                  std::vector<std::vector<std::uint32_t>>& out) {
  if (cur.size() == caps.size()) {
    out.push_back(cur);
    return;
  }
  for (std::uint32_t s = 1; s <= caps[cur.size()]; ++s) {
    cur.push_back(s);
    size_vectors(caps, cur, out);
    cur.pop_back();
  }
}

// Every size vector within the caps, by nondecreasing sum, then lexicographic.
std::vector<std::vector<std::uint32_t>> size_vectors(const std::vector<std::uint32_t>& caps) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  size_vectors(caps, cur, out);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    std::uint32_t sa = 0, sb = 0;
    for (auto x : a) sa += x;
    for (auto x : b) sb += x;
    return sa < sb;
  });
  return out;
}

}  // namespace

void collect_constants(const Term& t, std::map<std::string, Ty>& out) {
  switch (t.kind()) {
    case TermKind::Const:
      if (!t.is_logical()) out.emplace(t.name(), t.ty());
      break;
    case TermKind::Lam:
      collect_constants(t.body(), out);
      break;
    case TermKind::App:
      collect_constants(t.fn(), out);
      collect_constants(t.arg(), out);
      break;
    default:
      break;
  }
}

ModelSearch find_model(const std::vector<Term>& formulas, const Budget& b,
                       const std::map<std::string, Ty>& extra) {
  b.validate();
  const Deadline dl(b.timeout_ms);
  std::map<std::string, Ty> consts = extra;
  std::set<std::string> bases;
  for (const auto& f : formulas) {
    if (!f.ty().is_o()) throw QueryError("model finding expects formulas of type o, got " + f.ty().str());
    if (!f.closed() || has_fvars(f)) throw QueryError("model finding expects closed formulas");
    collect_constants(f, consts);
    collect_bases(f, bases);
  }
  for (const auto& [name, ty] : consts) bases_of(ty, bases);

  const std::vector<std::string> base_list(bases.begin(), bases.end());
  std::vector<std::uint32_t> caps;
  for (const auto& base : base_list) caps.push_back(base == "w" ? b.max_worlds : b.max_individuals);

  ModelSearch result;
  auto give_up = [&](const std::string& why) {
    result.incomplete = true;
    if (result.note.empty()) result.note = why;
  };

  for (const auto& sizes : size_vectors(caps)) {
    std::map<std::string, std::uint32_t> size_map;
    for (std::size_t i = 0; i < base_list.size(); ++i) size_map[base_list[i]] = sizes[i];

    Circuit probe;
    Tables none;
    Grounder counter(probe, size_map, none, dl);
    std::vector<std::pair<std::string, Ty>> outer, preds;
    std::vector<std::uint64_t> outer_rows, outer_range, pred_rows;
    std::uint64_t combos = 1;
    bool too_big = false;
    try {
      for (const auto& [name, ty] : consts) {
        std::uint64_t rows = 1;
        for (const auto& a : ty.args()) {
          rows *= counter.card(a);
          if (rows > kMaxCard) throw Unsupported("table of " + name + " too large");
        }
        if (ty.result().is_o()) {
          preds.emplace_back(name, ty);
          pred_rows.push_back(rows);
          continue;
        }
        const std::uint64_t range = counter.card(ty.result());
        outer.emplace_back(name, ty);
        outer_rows.push_back(rows);
        outer_range.push_back(range);
        for (std::uint64_t r = 0; r < rows && !too_big; ++r) {
          combos *= range;
          if (combos > kMaxOuter) too_big = true;
        }
      }
    } catch (const Unsupported& e) {
      give_up(e.what());
      continue;
    }
    if (too_big) {
      give_up("too many interpretations of non-predicate constants");
      continue;
    }

    // digits of the outer tables, first constant's first row most significant
    std::vector<std::uint32_t> digits, range;
    for (std::size_t k = 0; k < outer.size(); ++k) {
      for (std::uint64_t r = 0; r < outer_rows[k]; ++r) {
        digits.push_back(0);
        range.push_back(static_cast<std::uint32_t>(outer_range[k]));
      }
    }

    bool next_size = false;
    for (bool more = true; more && !next_size; ) {
      if (dl.passed()) {
        give_up("deadline passed");
        return result;
      }
      Circuit c;
      Tables tables;
      std::size_t d = 0;
      for (std::size_t k = 0; k < outer.size(); ++k) {
        auto t = std::make_shared<std::vector<int>>();
        for (std::uint64_t r = 0; r < outer_rows[k]; ++r) t->push_back(static_cast<int>(digits[d++]));
        tables[outer[k].first] = t;
      }
      std::vector<int> atoms;
      for (std::size_t k = 0; k < preds.size(); ++k) {
        auto t = std::make_shared<std::vector<int>>();
        for (std::uint64_t r = 0; r < pred_rows[k]; ++r) {
          const int lit = c.var();
          t->push_back(lit);
          atoms.push_back(lit >> 1);
        }
        tables[preds[k].first] = t;
      }

      std::vector<int> roots;
      bool dead = false;
      try {
        Grounder g(c, size_map, tables, dl);
        for (const auto& f : formulas) {
          const int l = g.formula(f);
          if (l == kFalse) {
            dead = true;
            break;
          }
          roots.push_back(l);
        }
      } catch (const Unsupported& e) {
        give_up(e.what());
        next_size = true;
        break;
      } catch (const Timeout&) {
        give_up("deadline passed");
        return result;
      }

      if (!dead) {
        Solver s(c, roots, dl);
        const auto r = s.solve(atoms);
        if (r == Solver::Expired) {
          give_up("deadline passed");
          return result;
        }
        if (r == Solver::Sat) {
          FiniteModel m;
          m.sizes = size_map;
          for (std::size_t k = 0; k < outer.size(); ++k) {
            Interpretation in{outer[k].second, {}};
            for (int v : *tables[outer[k].first]) in.table.push_back(static_cast<std::uint32_t>(v));
            m.interp[outer[k].first] = in;
          }
          for (std::size_t k = 0; k < preds.size(); ++k) {
            Interpretation in{preds[k].second, {}};
            for (int lit : *tables[preds[k].first]) in.table.push_back(s.value(lit >> 1) ? 1 : 0);
            m.interp[preds[k].first] = in;
          }
          Evaluator ev(m, kMaxCard);
          for (const auto& f : formulas) {
            if (!ev.holds(f)) throw std::logic_error("model finder produced a non-model for " + f.key());
          }
          result.model = std::move(m);
          return result;
        }
      }

      // odometer, last digit fastest
      more = false;
      for (std::size_t i = digits.size(); i-- > 0;) {
        if (++digits[i] < range[i]) {
          more = true;
          break;
        }
        digits[i] = 0;
      }
    }
  }
  return result;
}

}  // namespace herm
