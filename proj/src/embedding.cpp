#include "herm/embedding.hpp"

#include <map>
#include <sstream>

#include "herm/syntax.hpp"

namespace herm {

const char* to_string(FrameCondition c) {
  switch (c) {
    case FrameCondition::Reflexive: return "refl";
    case FrameCondition::Symmetric: return "sym";
    case FrameCondition::Transitive: return "trans";
    case FrameCondition::Euclidean: return "eucl";
  }
  return "";
}

std::optional<FrameCondition> frame_condition_from_string(const std::string& s) {
  static const std::map<std::string, FrameCondition> names = {
      {"refl", FrameCondition::Reflexive},     {"reflexive", FrameCondition::Reflexive},
      {"sym", FrameCondition::Symmetric},      {"symmetric", FrameCondition::Symmetric},
      {"trans", FrameCondition::Transitive},   {"transitive", FrameCondition::Transitive},
      {"eucl", FrameCondition::Euclidean},     {"euclidean", FrameCondition::Euclidean},
  };
  auto it = names.find(s);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

const char* to_string(DomainPolicy p) {
  return p == DomainPolicy::Constant ? "constant" : "actualist";
}

const char* to_string(ValidityMode m) { return m == ValidityMode::Global ? "global" : "local"; }

namespace {

const std::vector<std::pair<std::string, std::set<FrameCondition>>>& presets() {
  using F = FrameCondition;
  static const std::vector<std::pair<std::string, std::set<FrameCondition>>> table = {
      {"K", {}},
      {"T", {F::Reflexive}},
      {"KB", {F::Symmetric}},
      {"S4", {F::Reflexive, F::Transitive}},
      {"S5", {F::Reflexive, F::Symmetric, F::Transitive}},
  };
  return table;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

LogicSpec LogicSpec::preset(const std::string& name) {
  for (const auto& [n, frame] : presets()) {
    if (n == name) {
      LogicSpec s;
      s.name = n;
      s.frame = frame;
      return s;
    }
  }
  throw EmbeddingError("unknown logic preset '" + name + "'");
}

LogicSpec LogicSpec::parse(const std::string& text) {
  auto parts = split(text, '/');
  auto frame_parts = split(parts[0], '+');
  LogicSpec spec = preset(frame_parts[0]);
  for (std::size_t i = 1; i < frame_parts.size(); ++i) {
    auto c = frame_condition_from_string(frame_parts[i]);
    if (!c) throw EmbeddingError("unknown frame condition '" + frame_parts[i] + "' in '" + text + "'");
    spec.frame.insert(*c);
  }
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i] == "actualist") {
      spec.domain = DomainPolicy::Actualist;
    } else if (parts[i] == "constant") {
      spec.domain = DomainPolicy::Constant;
    } else if (parts[i] == "local") {
      spec.validity = ValidityMode::Local;
    } else if (parts[i] == "global") {
      spec.validity = ValidityMode::Global;
    } else {
      throw EmbeddingError("unknown logic modifier '" + parts[i] + "' in '" + text + "'");
    }
  }
  spec.name = spec.str();
  return spec;
}

std::string LogicSpec::str() const {
  std::string out;
  for (const auto& [n, f] : presets()) {
    if (f == frame) {
      out = n;
      break;
    }
  }
  if (out.empty()) {
    out = "K";
    for (FrameCondition c : frame) {
      out += '+';
      out += to_string(c);
    }
  }
  if (domain == DomainPolicy::Actualist) out += "/actualist";
  if (validity == ValidityMode::Local) out += "/local";
  return out;
}

// ---------------------------------------------------------------- embedding

namespace {

const Signature& aux_sig() {
  static const Signature sig = Signature().with_embedding_aux();
  return sig;
}

Term accessibility() { return Term::constant(kAccessibility, *aux_sig().lookup(kAccessibility)); }
Term exists_at() { return Term::constant(kExistsAt, *aux_sig().lookup(kExistsAt)); }

Term bw(std::uint32_t i) { return Term::bvar(i, Ty::w()); }
Term bl(std::uint32_t i) { return Term::bvar(i, Ty::lifted()); }

// ^[P:w>o]: ^[W:w]: op (P @ W)
Term unary_def(LogicalOp op) {
  Term inner = Term::app(Term::logical(op), Term::app(bl(1), bw(0)));
  return Term::lam("P", Ty::lifted(), Term::lam("W", Ty::w(), inner));
}

// ^[P,Q:w>o]: ^[W:w]: (P @ W) op (Q @ W)
Term binary_def(LogicalOp op) {
  Term inner = Term::app(Term::logical(op), {Term::app(bl(2), bw(0)), Term::app(bl(1), bw(0))});
  return Term::lam("P", Ty::lifted(),
                   Term::lam("Q", Ty::lifted(), Term::lam("W", Ty::w(), inner)));
}

// ^[P:w>o]: ^[W:w]: Q [V:w]: (r @ W @ V) conn (P @ V)
Term modal_def(bool box) {
  Term rel = Term::app(accessibility(), {bw(1), bw(0)});
  Term at = Term::app(bl(2), bw(0));
  Term matrix = box ? mk_implies(rel, at) : mk_and(rel, at);
  Term q = box ? mk_forall(Term::lam("V", Ty::w(), matrix)) : mk_exists(Term::lam("V", Ty::w(), matrix));
  return Term::lam("P", Ty::lifted(), Term::lam("W", Ty::w(), q));
}

// ^[F:t>w>o]: ^[W:w]: Q [X:t]: (guard =>/& F @ X @ W)
Term quant_def(const Ty& var, bool universal, bool actualist) {
  const Ty fty = Ty::fun(var, Ty::lifted());
  Term x = Term::bvar(0, var);
  Term body = Term::app(Term::bvar(2, fty), {x, bw(1)});
  if (actualist) {
    Term guard = Term::app(exists_at(), {x, bw(1)});
    body = universal ? mk_implies(guard, body) : mk_and(guard, body);
  }
  Term pred = Term::lam("X", var, body);
  Term q = universal ? mk_forall(pred) : mk_exists(pred);
  return Term::lam("F", fty, Term::lam("W", Ty::w(), q));
}

Term definition(const Term& c) {
  switch (c.op()) {
    case LogicalOp::MNot: return unary_def(LogicalOp::Not);
    case LogicalOp::MAnd: return binary_def(LogicalOp::And);
    case LogicalOp::MOr: return binary_def(LogicalOp::Or);
    case LogicalOp::MImplies: return binary_def(LogicalOp::Implies);
    case LogicalOp::MIff: return binary_def(LogicalOp::Iff);
    case LogicalOp::Box: return modal_def(true);
    case LogicalOp::Dia: return modal_def(false);
    case LogicalOp::MForall: return quant_def(c.op_ty(), true, false);
    case LogicalOp::MExists: return quant_def(c.op_ty(), false, false);
    case LogicalOp::MForallA: return quant_def(Ty::e(), true, true);
    case LogicalOp::MExistsA: return quant_def(Ty::e(), false, true);
    default: return c;
  }
}

Term unfold(const Term& t) {
  switch (t.kind()) {
    case TermKind::Const:
      return t.is_logical() && is_lifted(t.op()) ? definition(t) : t;
    case TermKind::Lam:
      return Term::lam(t.name(), t.var_ty(), unfold(t.body()));
    case TermKind::App:
      return Term::app(unfold(t.fn()), unfold(t.arg()));
    default:
      return t;
  }
}

}  // namespace

Term lifted_definition(const Term& connective) {
  if (connective.kind() != TermKind::Const || !connective.is_logical()) return connective;
  return definition(connective);
}

bool uses_actualist(const Term& t) {
  switch (t.kind()) {
    case TermKind::Const:
      return t.op() == LogicalOp::MForallA || t.op() == LogicalOp::MExistsA;
    case TermKind::Lam:
      return uses_actualist(t.body());
    case TermKind::App:
      return uses_actualist(t.fn()) || uses_actualist(t.arg());
    default:
      return false;
  }
}

Term embed_term(const Term& phi, const LogicSpec& spec) {
  if (!phi.ty().is_o() && !phi.ty().is_lifted()) {
    throw TypeError("embed expects a formula of type o or w>o, got " + phi.ty().str());
  }
  if (spec.domain == DomainPolicy::Constant && uses_actualist(phi)) {
    throw EmbeddingError("actualist quantifier used under a constant-domain logic (" + spec.str() +
                         "); select the actualist domain policy");
  }
  Term lifted = phi.ty().is_o() ? lift(phi) : phi;
  return normalize(unfold(lifted));
}

EmbeddingResult embed(const Term& phi, const LogicSpec& spec) {
  EmbeddingResult r;
  r.hol_term = embed_term(phi, spec);
  r.frame_theory = frame_axioms(spec);
  r.aux_signature.emplace_back(kAccessibility, *aux_sig().lookup(kAccessibility));
  if (spec.domain == DomainPolicy::Actualist) {
    r.aux_signature.emplace_back(kExistsAt, *aux_sig().lookup(kExistsAt));
  }
  if (spec.validity == ValidityMode::Local) {
    r.aux_signature.emplace_back(kActualWorld, Ty::w());
  }
  return r;
}

Term validize(const Term& t, ValidityMode mode) {
  if (!t.ty().is_lifted()) throw TypeError("validize expects w>o, got " + t.ty().str());
  Term n = normalize(t);
  if (mode == ValidityMode::Local) {
    return normalize(Term::app(n, Term::constant(kActualWorld, Ty::w())));
  }
  if (n.kind() == TermKind::Lam && !occurs_bound(n.body(), 0)) return shift(n.body(), -1);
  return normalize(mk_forall(n));
}

NamedFormula frame_axiom(FrameCondition c) {
  const char* text = "";
  switch (c) {
    case FrameCondition::Reflexive:
      text = "! [U:w]: r @ U @ U";
      break;
    case FrameCondition::Symmetric:
      text = "! [U:w, V:w]: (r @ U @ V => r @ V @ U)";
      break;
    case FrameCondition::Transitive:
      text = "! [U:w, V:w, Z:w]: ((r @ U @ V & r @ V @ Z) => r @ U @ Z)";
      break;
    case FrameCondition::Euclidean:
      text = "! [U:w, V:w, Z:w]: ((r @ U @ V & r @ U @ Z) => r @ V @ Z)";
      break;
  }
  return NamedFormula{std::string("frame_") + to_string(c), Role::FrameAxiom,
                      parse_formula(text, aux_sig())};
}

std::vector<NamedFormula> frame_axioms(const LogicSpec& spec) {
  std::vector<NamedFormula> out;
  for (FrameCondition c : spec.frame) out.push_back(frame_axiom(c));
  return out;
}

}  // namespace herm
