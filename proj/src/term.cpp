#include "herm/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace herm {

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

// ---------------------------------------------------------------- Ty

struct Ty::Node {
  std::string name;  // empty for arrows
  std::optional<Ty> dom;
  std::optional<Ty> cod;
  std::size_t hash = 0;
  std::string text;
};

Ty::Ty() : Ty(o()) {}

Ty Ty::base(const std::string& name) {
  auto n = std::make_shared<Node>();
  n->name = name;
  n->hash = std::hash<std::string>{}(name);
  n->text = name;
  return Ty(std::shared_ptr<const Node>(std::move(n)));
}

Ty Ty::fun(const Ty& domain, const Ty& codomain) {
  auto n = std::make_shared<Node>();
  n->dom = domain;
  n->cod = codomain;
  n->hash = hash_combine(hash_combine(17, domain.hash()), codomain.hash());
  n->text = (domain.is_fun() ? "(" + domain.str() + ")" : domain.str()) + ">" + codomain.str();
  return Ty(std::shared_ptr<const Node>(std::move(n)));
}

Ty Ty::arrow(const std::vector<Ty>& chain) {
  if (chain.empty()) throw TypeError("empty arrow chain");
  Ty t = chain.back();
  for (std::size_t i = chain.size() - 1; i-- > 0;) t = fun(chain[i], t);
  return t;
}

Ty Ty::o() {
  static const Ty t = base("o");
  return t;
}
Ty Ty::w() {
  static const Ty t = base("w");
  return t;
}
Ty Ty::e() {
  static const Ty t = base("e");
  return t;
}
Ty Ty::lifted() {
  static const Ty t = fun(w(), o());
  return t;
}

bool Ty::is_base() const { return !node_->name.empty(); }
bool Ty::is_o() const { return node_->name == "o"; }
bool Ty::is_w() const { return node_->name == "w"; }
bool Ty::is_lifted() const { return is_fun() && domain().is_w() && codomain().is_o(); }
const std::string& Ty::name() const { return node_->name; }
const Ty& Ty::domain() const {
  if (is_base()) throw TypeError("base type " + str() + " has no domain");
  return *node_->dom;
}
const Ty& Ty::codomain() const {
  if (is_base()) throw TypeError("base type " + str() + " has no codomain");
  return *node_->cod;
}

std::vector<Ty> Ty::args() const {
  std::vector<Ty> out;
  const Ty* t = this;
  while (t->is_fun()) {
    out.push_back(t->domain());
    t = &t->codomain();
  }
  return out;
}

Ty Ty::result() const {
  const Ty* t = this;
  while (t->is_fun()) t = &t->codomain();
  return *t;
}

std::string Ty::str() const { return node_->text; }
std::size_t Ty::hash() const { return node_->hash; }

bool operator==(const Ty& a, const Ty& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash) return false;
  if (a.is_base() || b.is_base()) return a.node_->name == b.node_->name;
  return a.domain() == b.domain() && a.codomain() == b.codomain();
}

// ---------------------------------------------------------------- ops

int arity(LogicalOp op) {
  switch (op) {
    case LogicalOp::None:
    case LogicalOp::True:
    case LogicalOp::False:
      return 0;
    case LogicalOp::Not:
    case LogicalOp::MNot:
    case LogicalOp::Box:
    case LogicalOp::Dia:
    case LogicalOp::Forall:
    case LogicalOp::Exists:
    case LogicalOp::MForall:
    case LogicalOp::MExists:
    case LogicalOp::MForallA:
    case LogicalOp::MExistsA:
      return 1;
    default:
      return 2;
  }
}

bool is_lifted(LogicalOp op) { return op >= LogicalOp::MNot; }

const char* op_name(LogicalOp op) {
  switch (op) {
    case LogicalOp::None: return "";
    case LogicalOp::True: return "$true";
    case LogicalOp::False: return "$false";
    case LogicalOp::Not: return "~";
    case LogicalOp::And: return "&";
    case LogicalOp::Or: return "|";
    case LogicalOp::Implies: return "=>";
    case LogicalOp::Iff: return "<=>";
    case LogicalOp::Eq: return "=";
    case LogicalOp::Forall: return "!";
    case LogicalOp::Exists: return "?";
    case LogicalOp::MNot: return "m~";
    case LogicalOp::MAnd: return "m&";
    case LogicalOp::MOr: return "m|";
    case LogicalOp::MImplies: return "m=>";
    case LogicalOp::MIff: return "m<=>";
    case LogicalOp::Box: return "box";
    case LogicalOp::Dia: return "dia";
    case LogicalOp::MForall: return "m!";
    case LogicalOp::MExists: return "m?";
    case LogicalOp::MForallA: return "m!A";
    case LogicalOp::MExistsA: return "m?A";
  }
  return "";
}

namespace {

Ty op_type(LogicalOp op, const Ty& at) {
  const Ty o = Ty::o();
  const Ty l = Ty::lifted();
  switch (op) {
    case LogicalOp::True:
    case LogicalOp::False:
      return o;
    case LogicalOp::Not:
      return Ty::fun(o, o);
    case LogicalOp::And:
    case LogicalOp::Or:
    case LogicalOp::Implies:
    case LogicalOp::Iff:
      return Ty::arrow({o, o, o});
    case LogicalOp::Eq:
      return Ty::arrow({at, at, o});
    case LogicalOp::Forall:
    case LogicalOp::Exists:
      return Ty::fun(Ty::fun(at, o), o);
    case LogicalOp::MNot:
    case LogicalOp::Box:
    case LogicalOp::Dia:
      return Ty::fun(l, l);
    case LogicalOp::MAnd:
    case LogicalOp::MOr:
    case LogicalOp::MImplies:
    case LogicalOp::MIff:
      return Ty::arrow({l, l, l});
    case LogicalOp::MForall:
    case LogicalOp::MExists:
      return Ty::fun(Ty::fun(at, l), l);
    case LogicalOp::MForallA:
    case LogicalOp::MExistsA:
      return Ty::fun(Ty::fun(Ty::e(), l), l);
    case LogicalOp::None:
      break;
  }
  throw TypeError("not a logical operator");
}

bool op_is_typed(LogicalOp op) {
  return op == LogicalOp::Eq || op == LogicalOp::Forall || op == LogicalOp::Exists ||
         op == LogicalOp::MForall || op == LogicalOp::MExists;
}

}  // namespace

// ---------------------------------------------------------------- Term

struct Term::Node {
  TermKind kind;
  Ty ty;
  std::uint32_t index = 0;
  std::string name;
  LogicalOp op = LogicalOp::None;
  Ty op_ty;   // Const: instantiation type; Lam: bound variable type
  Term a, b;  // Lam: a = body; App: a = fn, b = arg
  std::uint32_t loose = 0;
  std::size_t hash = 0;
};

Term Term::bvar(std::uint32_t index, const Ty& ty) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::BVar;
  n->ty = ty;
  n->index = index;
  n->loose = index + 1;
  n->hash = hash_combine(hash_combine(1, index), ty.hash());
  return Term(std::move(n));
}

Term Term::fvar(const std::string& name, const Ty& ty) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::FVar;
  n->ty = ty;
  n->name = name;
  n->hash = hash_combine(hash_combine(2, std::hash<std::string>{}(name)), ty.hash());
  return Term(std::move(n));
}

Term Term::constant(const std::string& name, const Ty& ty) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Const;
  n->ty = ty;
  n->name = name;
  n->hash = hash_combine(hash_combine(3, std::hash<std::string>{}(name)), ty.hash());
  return Term(std::move(n));
}

Term Term::logical(LogicalOp op, const Ty& ty) {
  if (op == LogicalOp::None) throw TypeError("Term::logical needs an operator");
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Const;
  n->op = op;
  n->op_ty = op_is_typed(op) ? ty : Ty::o();
  n->ty = op_type(op, n->op_ty);
  n->name = op_name(op);
  n->hash = hash_combine(hash_combine(4, static_cast<std::size_t>(op)), n->ty.hash());
  return Term(std::move(n));
}

Term Term::lam(const std::string& hint, const Ty& var_ty, const Term& body) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Lam;
  n->ty = Ty::fun(var_ty, body.ty());
  n->name = hint;
  n->op_ty = var_ty;
  n->a = body;
  n->loose = body.loose_bound() > 0 ? body.loose_bound() - 1 : 0;
  n->hash = hash_combine(hash_combine(5, var_ty.hash()), body.hash());
  return Term(std::move(n));
}

Term Term::app(const Term& fn, const Term& arg) {
  if (!fn.ty().is_fun()) {
    throw TypeError("cannot apply term of base type " + fn.ty().str());
  }
  if (fn.ty().domain() != arg.ty()) {
    throw TypeError("cannot apply " + fn.ty().str() + " to argument of type " + arg.ty().str());
  }
  auto n = std::make_shared<Node>();
  n->kind = TermKind::App;
  n->ty = fn.ty().codomain();
  n->a = fn;
  n->b = arg;
  n->loose = std::max(fn.loose_bound(), arg.loose_bound());
  n->hash = hash_combine(hash_combine(6, fn.hash()), arg.hash());
  return Term(std::move(n));
}

Term Term::app(const Term& fn, const std::vector<Term>& args) {
  Term t = fn;
  for (const auto& a : args) t = app(t, a);
  return t;
}

TermKind Term::kind() const { return node_->kind; }
const Ty& Term::ty() const { return node_->ty; }
std::uint32_t Term::index() const { return node_->index; }
const std::string& Term::name() const { return node_->name; }
LogicalOp Term::op() const { return node_->op; }
const Ty& Term::op_ty() const { return node_->op_ty; }
const Ty& Term::var_ty() const { return node_->op_ty; }
const Term& Term::body() const { return node_->a; }
const Term& Term::fn() const { return node_->a; }
const Term& Term::arg() const { return node_->b; }
std::uint32_t Term::loose_bound() const { return node_->loose; }
std::size_t Term::hash() const { return node_->hash; }

const Term& Term::head() const {
  const Term* t = this;
  while (t->kind() == TermKind::App) t = &t->fn();
  return *t;
}

std::vector<Term> Term::spine_args() const {
  std::vector<Term> out;
  const Term* t = this;
  while (t->kind() == TermKind::App) {
    out.push_back(t->arg());
    t = &t->fn();
  }
  return {out.rbegin(), out.rend()};
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.node_->hash != b.node_->hash || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::BVar:
      return a.index() == b.index() && a.ty() == b.ty();
    case TermKind::FVar:
      return a.name() == b.name() && a.ty() == b.ty();
    case TermKind::Const:
      return a.op() == b.op() && a.ty() == b.ty() && (a.op() != LogicalOp::None || a.name() == b.name());
    case TermKind::Lam:
      return a.var_ty() == b.var_ty() && a.body() == b.body();
    case TermKind::App:
      return a.fn() == b.fn() && a.arg() == b.arg();
  }
  return false;
}

namespace {

void write_key(const Term& t, std::string& out) {
  switch (t.kind()) {
    case TermKind::BVar:
      out += '#';
      out += std::to_string(t.index());
      break;
    case TermKind::FVar:
      out += '$';
      out += t.name();
      out += ':';
      out += t.ty().str();
      break;
    case TermKind::Const:
      out += t.name();
      if (t.op() == LogicalOp::None || op_is_typed(t.op())) {
        out += ':';
        out += t.op() == LogicalOp::None ? t.ty().str() : t.op_ty().str();
      }
      break;
    case TermKind::Lam:
      out += "(\\";
      out += t.var_ty().str();
      out += '.';
      write_key(t.body(), out);
      out += ')';
      break;
    case TermKind::App:
      out += '(';
      write_key(t.fn(), out);
      out += ' ';
      write_key(t.arg(), out);
      out += ')';
      break;
  }
}

}  // namespace

std::string Term::key() const {
  std::string out;
  write_key(*this, out);
  return out;
}

// ---------------------------------------------------------------- de Bruijn

Term shift(const Term& t, int by, std::uint32_t cutoff) {
  if (by == 0 || t.loose_bound() <= cutoff) return t;
  switch (t.kind()) {
    case TermKind::BVar:
      if (t.index() < cutoff) return t;
      return Term::bvar(static_cast<std::uint32_t>(static_cast<int>(t.index()) + by), t.ty());
    case TermKind::Lam:
      return Term::lam(t.name(), t.var_ty(), shift(t.body(), by, cutoff + 1));
    case TermKind::App:
      return Term::app(shift(t.fn(), by, cutoff), shift(t.arg(), by, cutoff));
    default:
      return t;
  }
}

namespace {

Term subst_at(const Term& t, std::uint32_t depth, const Term& value) {
  if (t.loose_bound() <= depth) return t;
  switch (t.kind()) {
    case TermKind::BVar:
      if (t.index() == depth) return shift(value, static_cast<int>(depth));
      if (t.index() > depth) return Term::bvar(t.index() - 1, t.ty());
      return t;
    case TermKind::Lam:
      return Term::lam(t.name(), t.var_ty(), subst_at(t.body(), depth + 1, value));
    case TermKind::App:
      return Term::app(subst_at(t.fn(), depth, value), subst_at(t.arg(), depth, value));
    default:
      return t;
  }
}

}  // namespace

Term instantiate(const Term& body, const Term& value) { return subst_at(body, 0, value); }

bool occurs_bound(const Term& t, std::uint32_t index) {
  if (t.loose_bound() <= index) return false;
  switch (t.kind()) {
    case TermKind::BVar:
      return t.index() == index;
    case TermKind::Lam:
      return occurs_bound(t.body(), index + 1);
    case TermKind::App:
      return occurs_bound(t.fn(), index) || occurs_bound(t.arg(), index);
    default:
      return false;
  }
}

bool has_fvars(const Term& t) {
  switch (t.kind()) {
    case TermKind::FVar:
      return true;
    case TermKind::Lam:
      return has_fvars(t.body());
    case TermKind::App:
      return has_fvars(t.fn()) || has_fvars(t.arg());
    default:
      return false;
  }
}

// ---------------------------------------------------------------- normalize

Term normalize(const Term& t) {
  switch (t.kind()) {
    case TermKind::Lam: {
      Term body = normalize(t.body());
      // eta: ^X. g X  ~>  g   when X does not occur in g
      if (body.kind() == TermKind::App && body.arg().kind() == TermKind::BVar &&
          body.arg().index() == 0 && !occurs_bound(body.fn(), 0)) {
        return shift(body.fn(), -1, 0);
      }
      if (body == t.body()) return t;
      return Term::lam(t.name(), t.var_ty(), body);
    }
    case TermKind::App: {
      Term fn = normalize(t.fn());
      if (fn.kind() == TermKind::Lam) return normalize(instantiate(fn.body(), t.arg()));
      Term arg = normalize(t.arg());
      if (fn == t.fn() && arg == t.arg()) return t;
      return Term::app(fn, arg);
    }
    default:
      return t;
  }
}

bool alpha_beta_eta_equal(const Term& a, const Term& b) { return normalize(a) == normalize(b); }

namespace {

void count_symbols(const Term& t, std::size_t& n) {
  switch (t.kind()) {
    case TermKind::Const:
      if (t.is_logical()) ++n;
      break;
    case TermKind::Lam:
      count_symbols(t.body(), n);
      break;
    case TermKind::App:
      count_symbols(t.fn(), n);
      count_symbols(t.arg(), n);
      break;
    default:
      break;
  }
}

void collect_symbols(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Const:
      if (!t.is_logical()) out.insert(t.name());
      break;
    case TermKind::Lam:
      collect_symbols(t.body(), out);
      break;
    case TermKind::App:
      collect_symbols(t.fn(), out);
      collect_symbols(t.arg(), out);
      break;
    default:
      break;
  }
}

}  // namespace

std::size_t symbol_count(const Term& t) {
  std::size_t n = 0;
  count_symbols(normalize(t), n);
  return n;
}

std::set<std::string> free_symbols(const Term& t) {
  std::set<std::string> out;
  collect_symbols(t, out);
  return out;
}

// ---------------------------------------------------------------- builders

namespace {

bool formula_type(const Ty& t) { return t.is_o() || t.is_lifted(); }

void require_formula(const Term& t, const char* what) {
  if (!formula_type(t.ty())) {
    throw TypeError(std::string(what) + " expects a formula, got type " + t.ty().str());
  }
}

Term binary(LogicalOp plain, LogicalOp lifted, Term a, Term b) {
  require_formula(a, op_name(plain));
  require_formula(b, op_name(plain));
  if (a.ty().is_o() && b.ty().is_o()) return Term::app(Term::logical(plain), {a, b});
  if (a.ty().is_o()) a = lift(a);
  if (b.ty().is_o()) b = lift(b);
  return Term::app(Term::logical(lifted), {a, b});
}

Term quantifier(LogicalOp plain, LogicalOp lifted, const Term& pred) {
  if (!pred.ty().is_fun()) throw TypeError("quantifier expects a predicate, got " + pred.ty().str());
  const Ty& var = pred.ty().domain();
  const Ty& cod = pred.ty().codomain();
  if (cod.is_o()) return Term::app(Term::logical(plain, var), pred);
  if (cod.is_lifted()) return Term::app(Term::logical(lifted, var), pred);
  throw TypeError("quantifier body must be a formula, got " + cod.str());
}

}  // namespace

Term lift(const Term& phi) {
  if (!phi.ty().is_o()) throw TypeError("lift expects type o, got " + phi.ty().str());
  return Term::lam("W", Ty::w(), shift(phi, 1));
}

Term mk_not(const Term& a) {
  require_formula(a, "~");
  return Term::app(Term::logical(a.ty().is_o() ? LogicalOp::Not : LogicalOp::MNot), a);
}
Term mk_and(const Term& a, const Term& b) { return binary(LogicalOp::And, LogicalOp::MAnd, a, b); }
Term mk_or(const Term& a, const Term& b) { return binary(LogicalOp::Or, LogicalOp::MOr, a, b); }
Term mk_implies(const Term& a, const Term& b) {
  return binary(LogicalOp::Implies, LogicalOp::MImplies, a, b);
}
Term mk_iff(const Term& a, const Term& b) { return binary(LogicalOp::Iff, LogicalOp::MIff, a, b); }
Term mk_eq(const Term& a, const Term& b) {
  if (a.ty() != b.ty()) {
    throw TypeError("equality between " + a.ty().str() + " and " + b.ty().str());
  }
  return Term::app(Term::logical(LogicalOp::Eq, a.ty()), {a, b});
}
Term mk_box(const Term& a) {
  require_formula(a, "box");
  return Term::app(Term::logical(LogicalOp::Box), a.ty().is_o() ? lift(a) : a);
}
Term mk_dia(const Term& a) {
  require_formula(a, "dia");
  return Term::app(Term::logical(LogicalOp::Dia), a.ty().is_o() ? lift(a) : a);
}
Term mk_true(bool lifted) {
  Term t = Term::logical(LogicalOp::True);
  return lifted ? lift(t) : t;
}
Term mk_false(bool lifted) {
  Term t = Term::logical(LogicalOp::False);
  return lifted ? lift(t) : t;
}
Term mk_forall(const Term& pred) { return quantifier(LogicalOp::Forall, LogicalOp::MForall, pred); }
Term mk_exists(const Term& pred) { return quantifier(LogicalOp::Exists, LogicalOp::MExists, pred); }

Term mk_forall_actual(const Term& pred) {
  if (pred.ty() != Ty::fun(Ty::e(), Ty::lifted())) {
    throw TypeError("actualist quantifier expects e>w>o, got " + pred.ty().str());
  }
  return Term::app(Term::logical(LogicalOp::MForallA), pred);
}
Term mk_exists_actual(const Term& pred) {
  if (pred.ty() != Ty::fun(Ty::e(), Ty::lifted())) {
    throw TypeError("actualist quantifier expects e>w>o, got " + pred.ty().str());
  }
  return Term::app(Term::logical(LogicalOp::MExistsA), pred);
}

// ---------------------------------------------------------------- Signature

Signature::Signature() : bases_{"o", "w", "e"} {}

bool Signature::is_reserved(const std::string& name) {
  static const std::set<std::string> reserved = {"box", "dia", kAccessibility, kExistsAt,
                                                 kActualWorld};
  return reserved.count(name) > 0;
}

void Signature::declare_base(const std::string& name) {
  if (bases_.count(name)) throw SignatureError("base type '" + name + "' already declared");
  if (name.empty() || !std::islower(static_cast<unsigned char>(name[0]))) {
    throw SignatureError("base type names start with a lowercase letter: '" + name + "'");
  }
  bases_.insert(name);
}

void Signature::declare(const std::string& name, const Ty& ty) {
  if (is_reserved(name)) throw SignatureError("'" + name + "' is a reserved name");
  if (name.empty() || !std::islower(static_cast<unsigned char>(name[0]))) {
    throw SignatureError("constant names start with a lowercase letter: '" + name + "'");
  }
  if (constants_.count(name)) throw SignatureError("duplicate constant '" + name + "'");
  std::function<void(const Ty&)> check = [&](const Ty& t) {
    if (t.is_base()) {
      if (!bases_.count(t.name())) {
        throw SignatureError("constant '" + name + "' uses undeclared base type '" + t.name() + "'");
      }
      return;
    }
    check(t.domain());
    check(t.codomain());
  };
  check(ty);
  constants_.emplace(name, ty);
}

Signature Signature::with_embedding_aux() const {
  Signature s = *this;
  s.constants_[kAccessibility] = Ty::arrow({Ty::w(), Ty::w(), Ty::o()});
  s.constants_[kExistsAt] = Ty::arrow({Ty::e(), Ty::w(), Ty::o()});
  s.constants_[kActualWorld] = Ty::w();
  return s;
}

bool Signature::has_base(const std::string& name) const { return bases_.count(name) > 0; }

std::optional<Ty> Signature::lookup(const std::string& name) const {
  auto it = constants_.find(name);
  if (it == constants_.end()) return std::nullopt;
  return it->second;
}

void Signature::check_closed(const Term& t) const {
  for (const auto& name : free_symbols(t)) {
    if (!constants_.count(name)) throw SignatureError("undeclared constant '" + name + "'");
  }
}

const char* to_string(Role role) {
  switch (role) {
    case Role::Premise: return "premise";
    case Role::Conclusion: return "conclusion";
    case Role::MeaningPostulate: return "meaning-postulate";
    case Role::FrameAxiom: return "frame-axiom";
    case Role::Candidate: return "candidate";
  }
  return "";
}

std::optional<Role> role_from_string(const std::string& s) {
  for (Role r : {Role::Premise, Role::Conclusion, Role::MeaningPostulate, Role::FrameAxiom,
                 Role::Candidate}) {
    if (s == to_string(r)) return r;
  }
  return std::nullopt;
}

}  // namespace herm
