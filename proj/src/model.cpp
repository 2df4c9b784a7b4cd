#include "herm/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "herm/embedding.hpp"

namespace herm {

std::uint32_t FiniteModel::size(const std::string& base) const {
  if (base == "o") return 2;
  auto it = sizes.find(base);
  return it == sizes.end() ? 1 : it->second;
}

std::optional<std::uint32_t> FiniteModel::designated_world() const {
  auto it = interp.find(kActualWorld);
  if (it == interp.end() || it->second.table.empty()) return std::nullopt;
  return it->second.table[0];
}

std::string element_name(const std::string& base, std::uint32_t index) {
  if (base == "o") return index ? "true" : "false";
  return base + std::to_string(index);
}

namespace {

std::string arg_name(const Ty& ty, std::uint64_t code) {
  if (ty.is_base()) return element_name(ty.name(), static_cast<std::uint32_t>(code));
  return "#" + std::to_string(code);
}

}  // namespace

std::string FiniteModel::str() const {
  std::ostringstream out;
  for (const auto& [base, n] : sizes) {
    out << "domain " << base << ":";
    for (std::uint32_t i = 0; i < n; ++i) out << ' ' << element_name(base, i);
    out << '\n';
  }
  Evaluator ev(*this, std::uint64_t(1) << 40);
  for (const auto& [name, in] : interp) {
    const auto args = in.ty.args();
    const Ty res = in.ty.result();
    out << name << " = ";
    if (args.empty()) {
      out << element_name(res.name(), in.table.empty() ? 0 : in.table[0]) << '\n';
      continue;
    }
    std::vector<std::uint64_t> card;
    for (const auto& a : args) card.push_back(ev.cardinality(a));
    out << '{';
    bool first = true;
    for (std::size_t k = 0; k < in.table.size(); ++k) {
      if (res.is_o() && in.table[k] == 0) continue;
      std::vector<std::uint64_t> tuple(args.size());
      std::uint64_t rest = k;
      for (std::size_t i = args.size(); i-- > 0;) {
        tuple[i] = rest % card[i];
        rest /= card[i];
      }
      if (!first) out << ", ";
      first = false;
      if (args.size() > 1) out << '(';
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out << ',';
        out << arg_name(args[i], tuple[i]);
      }
      if (args.size() > 1) out << ')';
      if (!res.is_o()) out << "->" << element_name(res.name(), in.table[k]);
    }
    out << "}\n";
  }
  return out.str();
}

std::string kripke_text(const FiniteModel& m) {
  std::ostringstream out;
  const std::uint32_t nw = m.world_count();
  out << "worlds:";
  for (std::uint32_t w = 0; w < nw; ++w) out << ' ' << element_name("w", w);
  if (auto a = m.designated_world()) out << "  (actual " << element_name("w", *a) << ')';
  if (m.sizes.count("e")) {
    out << "\nindividuals:";
    for (std::uint32_t i = 0; i < m.individual_count(); ++i) out << ' ' << element_name("e", i);
  }
  out << "\naccessibility:";
  bool any = false;
  if (auto it = m.interp.find(kAccessibility); it != m.interp.end()) {
    for (std::uint32_t a = 0; a < nw; ++a) {
      for (std::uint32_t b = 0; b < nw; ++b) {
        if (it->second.table.at(std::size_t(a) * nw + b)) {
          out << ' ' << element_name("w", a) << "->" << element_name("w", b);
          any = true;
        }
      }
    }
  }
  if (!any) out << " none";
  out << '\n';

  // Relations ending in a world argument and yielding o: one column each.
  std::set<std::string> shown{kAccessibility, kActualWorld};
  std::vector<std::pair<std::string, std::vector<std::string>>> cols;
  for (const auto& [name, in] : m.interp) {
    if (shown.count(name)) continue;
    const auto args = in.ty.args();
    if (args.empty() || !in.ty.result().is_o() || !args.back().is_w()) continue;
    bool plain = true;
    for (const auto& a : args) plain = plain && a.is_base();
    if (!plain) continue;
    std::vector<std::uint32_t> card;
    for (const auto& a : args) card.push_back(m.size(a.name()));
    std::vector<std::string> cells(nw);
    for (std::uint32_t w = 0; w < nw; ++w) {
      if (args.size() == 1) {
        cells[w] = in.table.at(w) ? "1" : "0";
        continue;
      }
      std::string cell = "{";
      bool first = true;
      for (std::size_t k = w; k < in.table.size(); k += nw) {
        if (!in.table[k]) continue;
        std::uint64_t rest = k / nw;
        std::vector<std::uint64_t> tuple(args.size() - 1);
        for (std::size_t i = tuple.size(); i-- > 0;) {
          tuple[i] = rest % card[i];
          rest /= card[i];
        }
        if (!first) cell += ',';
        first = false;
        if (tuple.size() > 1) cell += '(';
        for (std::size_t i = 0; i < tuple.size(); ++i) {
          if (i) cell += ',';
          cell += element_name(args[i].name(), static_cast<std::uint32_t>(tuple[i]));
        }
        if (tuple.size() > 1) cell += ')';
      }
      cells[w] = cell + "}";
    }
    shown.insert(name);
    cols.push_back({name, cells});
  }
  if (!cols.empty()) {
    std::vector<std::size_t> width;
    for (const auto& [name, cells] : cols) {
      std::size_t n = name.size();
      for (const auto& c : cells) n = std::max(n, c.size());
      width.push_back(n);
    }
    auto pad = [](const std::string& s, std::size_t n) { return s + std::string(n - s.size(), ' '); };
    std::size_t ww = 5;
    for (std::uint32_t w = 0; w < nw; ++w) ww = std::max(ww, element_name("w", w).size());
    std::string line = pad("world", ww);
    for (std::size_t i = 0; i < cols.size(); ++i) line += "  " + pad(cols[i].first, width[i]);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
    for (std::uint32_t w = 0; w < nw; ++w) {
      line = pad(element_name("w", w), ww);
      for (std::size_t i = 0; i < cols.size(); ++i) line += "  " + pad(cols[i].second[w], width[i]);
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out << line << '\n';
    }
  }

  // Everything else in the flat layout.
  std::istringstream flat(m.str());
  std::string l;
  while (std::getline(flat, l)) {
    if (l.rfind("domain ", 0) == 0) continue;
    if (shown.count(l.substr(0, l.find(' ')))) continue;
    out << l << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------- values

Value Value::elem(std::uint32_t e) {
  Value v;
  v.kind_ = Kind::Elem;
  v.elem_ = e;
  return v;
}

std::uint32_t Value::as_elem() const {
  if (kind_ != Kind::Elem) throw EvalError("expected a base-type value");
  return elem_;
}

Env env_push(const Env& env, const Value& v) {
  return std::make_shared<const EnvNode>(EnvNode{v, env});
}

// ---------------------------------------------------------------- evaluator

namespace {

thread_local const std::map<std::string, Value>* g_free = nullptr;

}  // namespace

Evaluator::Evaluator(const FiniteModel& model, std::uint64_t max_enumeration)
    : model_(model), max_enum_(max_enumeration) {}

std::uint64_t Evaluator::cardinality(const Ty& ty) const {
  if (ty.is_base()) return model_.size(ty.name());
  const std::uint64_t dom = cardinality(ty.domain());
  const std::uint64_t cod = cardinality(ty.codomain());
  std::uint64_t n = 1;
  for (std::uint64_t i = 0; i < dom; ++i) {
    n *= cod;
    if (n > max_enum_) throw EvalError("function space " + ty.str() + " too large to enumerate");
  }
  return n;
}

Value Evaluator::decode(std::uint64_t code, const Ty& ty) const {
  if (ty.is_base()) return Value::elem(static_cast<std::uint32_t>(code));
  const auto args = ty.args();
  const std::uint64_t res = cardinality(ty.result());
  std::uint64_t rows = 1;
  for (const auto& a : args) rows *= cardinality(a);
  auto table = std::make_shared<std::vector<std::uint32_t>>(rows);
  for (std::uint64_t k = rows; k-- > 0;) {
    (*table)[k] = static_cast<std::uint32_t>(code % res);
    code /= res;
  }
  Value v;
  v.kind_ = Value::Kind::Partial;
  v.head_ = Value::HeadKind::Table;
  v.table_ = std::move(table);
  v.table_ty_ = ty;
  return v;
}

std::uint64_t Evaluator::encode(const Value& v, const Ty& ty) const {
  if (ty.is_base()) return v.as_elem();
  const auto args = ty.args();
  const std::uint64_t res = cardinality(ty.result());
  if (v.kind() == Value::Kind::Partial && v.head_ == Value::HeadKind::Table && v.args_.empty() &&
      v.table_ty_ == ty) {
    std::uint64_t code = 0;
    for (auto e : *v.table_) code = code * res + e;
    return code;
  }
  std::vector<std::uint64_t> card;
  std::uint64_t rows = 1;
  for (const auto& a : args) {
    card.push_back(cardinality(a));
    rows *= card.back();
  }
  std::uint64_t code = 0;
  for (std::uint64_t k = 0; k < rows; ++k) {
    std::uint64_t rest = k;
    std::vector<std::uint64_t> tuple(args.size());
    for (std::size_t i = args.size(); i-- > 0;) {
      tuple[i] = rest % card[i];
      rest /= card[i];
    }
    Value r = v;
    for (std::size_t i = 0; i < args.size(); ++i) r = apply(r, decode(tuple[i], args[i]));
    code = code * res + r.as_elem();
  }
  return code;
}

bool Evaluator::equal(const Value& a, const Value& b, const Ty& ty) const {
  return encode(a, ty) == encode(b, ty);
}

Value Evaluator::eval(const Term& t, const Env& env, const std::map<std::string, Value>& free) const {
  const auto* saved = g_free;
  g_free = &free;
  try {
    Value v = eval_in(t, env, free);
    g_free = saved;
    return v;
  } catch (...) {
    g_free = saved;
    throw;
  }
}

Value Evaluator::eval_in(const Term& t, const Env& env, const std::map<std::string, Value>& free) const {
  switch (t.kind()) {
    case TermKind::BVar: {
      const EnvNode* n = env.get();
      for (std::uint32_t i = 0; n && i < t.index(); ++i) n = n->next.get();
      if (!n) throw EvalError("unbound variable #" + std::to_string(t.index()));
      return n->value;
    }
    case TermKind::FVar: {
      auto it = free.find(t.name());
      if (it == free.end()) throw EvalError("unbound variable " + t.name());
      return it->second;
    }
    case TermKind::Const: {
      if (t.is_logical()) {
        if (is_lifted(t.op())) return eval_in(lifted_definition(t), nullptr, free);
        if (arity(t.op()) == 0) return Value::boolean(t.op() == LogicalOp::True);
        Value v;
        v.kind_ = Value::Kind::Partial;
        v.head_ = Value::HeadKind::Op;
        v.op_ = t;
        return v;
      }
      auto it = model_.interp.find(t.name());
      if (it == model_.interp.end()) throw EvalError("uninterpreted constant '" + t.name() + "'");
      if (it->second.ty != t.ty()) throw EvalError("constant '" + t.name() + "' interpreted at a different type");
      if (t.ty().is_base()) return Value::elem(it->second.table.at(0));
      auto& cached = tables_[t.name()];
      if (!cached) cached = std::make_shared<const std::vector<std::uint32_t>>(it->second.table);
      Value v;
      v.kind_ = Value::Kind::Partial;
      v.head_ = Value::HeadKind::Table;
      v.table_ = cached;
      v.table_ty_ = t.ty();
      return v;
    }
    case TermKind::Lam: {
      Value v;
      v.kind_ = Value::Kind::Closure;
      v.body_ = t.body();
      v.env_ = env;
      return v;
    }
    case TermKind::App:
      return apply(eval_in(t.fn(), env, free), eval_in(t.arg(), env, free));
  }
  throw EvalError("unreachable");
}

Value Evaluator::apply(const Value& fn, const Value& arg) const {
  static const std::map<std::string, Value> no_free;
  switch (fn.kind()) {
    case Value::Kind::Elem:
      throw EvalError("cannot apply a base value");
    case Value::Kind::Closure:
      return eval_in(fn.body_, env_push(fn.env_, arg), g_free ? *g_free : no_free);
    case Value::Kind::Partial: {
      Value v = fn;
      v.args_.push_back(arg);
      const std::size_t need = v.head_ == Value::HeadKind::Op
                                   ? static_cast<std::size_t>(arity(v.op_.op()))
                                   : v.table_ty_.args().size();
      if (v.args_.size() == need) return saturate(v);
      return v;
    }
  }
  throw EvalError("unreachable");
}

Value Evaluator::saturate(const Value& p) const {
  if (p.head_ == Value::HeadKind::Table) {
    const auto args = p.table_ty_.args();
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < args.size(); ++i) {
      idx = idx * cardinality(args[i]) + encode(p.args_[i], args[i]);
    }
    return Value::elem(p.table_->at(idx));
  }
  const auto& a = p.args_;
  switch (p.op_.op()) {
    case LogicalOp::Not: return Value::boolean(!a[0].as_bool());
    case LogicalOp::And: return Value::boolean(a[0].as_bool() && a[1].as_bool());
    case LogicalOp::Or: return Value::boolean(a[0].as_bool() || a[1].as_bool());
    case LogicalOp::Implies: return Value::boolean(!a[0].as_bool() || a[1].as_bool());
    case LogicalOp::Iff: return Value::boolean(a[0].as_bool() == a[1].as_bool());
    case LogicalOp::Eq: return Value::boolean(equal(a[0], a[1], p.op_.op_ty()));
    case LogicalOp::Forall:
    case LogicalOp::Exists: {
      const bool universal = p.op_.op() == LogicalOp::Forall;
      const std::uint64_t n = cardinality(p.op_.op_ty());
      for (std::uint64_t i = 0; i < n; ++i) {
        const bool b = apply(a[0], decode(i, p.op_.op_ty())).as_bool();
        if (universal && !b) return Value::boolean(false);
        if (!universal && b) return Value::boolean(true);
      }
      return Value::boolean(universal);
    }
    default:
      break;
  }
  throw EvalError(std::string("cannot evaluate operator ") + op_name(p.op_.op()));
}

bool Evaluator::holds(const Term& formula) const {
  if (!formula.ty().is_o()) throw EvalError("holds expects type o, got " + formula.ty().str());
  return eval(formula).as_bool();
}

bool Evaluator::holds_at(const Term& f, std::uint32_t world) const {
  if (!f.ty().is_lifted()) throw EvalError("holds_at expects w>o, got " + f.ty().str());
  return apply(eval(f), Value::elem(world)).as_bool();
}

Value eval(const Term& t, const FiniteModel& m, const Env& env) {
  return Evaluator(m).eval(t, env);
}

}  // namespace herm
