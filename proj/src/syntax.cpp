#include "herm/syntax.hpp"

#include <cctype>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

namespace herm {

ParseError::ParseError(Kind kind, Span span, const std::string& message)
    : Error(std::to_string(span.line) + ":" + std::to_string(span.column) + ": " +
            to_string(kind) + ": " + message),
      kind_(kind),
      span_(span) {}

const char* to_string(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::Lexical: return "lexical error";
    case ParseError::Kind::Syntax: return "syntax error";
    case ParseError::Kind::UnknownConstant: return "unknown constant";
    case ParseError::Kind::UnboundVariable: return "unbound variable";
    case ParseError::Kind::TypeMismatch: return "type mismatch";
  }
  return "";
}

namespace {

// ---------------------------------------------------------------- lexer

enum class Tok {
  End,
  Var,
  Ident,
  True,
  False,
  Bang,
  BangA,
  Query,
  QueryA,
  Caret,
  Tilde,
  Amp,
  Bar,
  Implies,
  Iff,
  Eq,
  Neq,
  At,
  LParen,
  RParen,
  LBrack,
  RBrack,
  Comma,
  Colon,
  Gt,
  Dot,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Span span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip();
      Token t;
      t.span = here();
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      lex(t);
      t.span.end = pos_;
      out.push_back(std::move(t));
    }
  }

 private:
  Span here() const { return Span{pos_, pos_, line_, col_}; }

  char peek(std::size_t k = 0) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip() {
    for (;;) {
      char c = peek();
      if (c == '%') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  void lex(Token& t) {
    const char c = peek();
    auto single = [&](Tok k, std::size_t n) {
      t.kind = k;
      t.text = std::string(src_.substr(pos_, n));
      advance(n);
    };
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t n = 0;
      while (ident_char(peek(n))) ++n;
      t.text = std::string(src_.substr(pos_, n));
      t.kind = std::isupper(static_cast<unsigned char>(c)) ? Tok::Var : Tok::Ident;
      advance(n);
      return;
    }
    if (c == '$') {
      std::size_t n = 1;
      while (ident_char(peek(n))) ++n;
      std::string word(src_.substr(pos_, n));
      if (word == "$true") return single(Tok::True, n);
      if (word == "$false") return single(Tok::False, n);
      throw ParseError(ParseError::Kind::Lexical, here(), "unknown defined symbol '" + word + "'");
    }
    switch (c) {
      case '!':
        if (peek(1) == '=') return single(Tok::Neq, 2);
        if (peek(1) == 'A' && !ident_char(peek(2))) return single(Tok::BangA, 2);
        return single(Tok::Bang, 1);
      case '?':
        if (peek(1) == 'A' && !ident_char(peek(2))) return single(Tok::QueryA, 2);
        return single(Tok::Query, 1);
      case '^': return single(Tok::Caret, 1);
      case '~': return single(Tok::Tilde, 1);
      case '&': return single(Tok::Amp, 1);
      case '|': return single(Tok::Bar, 1);
      case '=':
        if (peek(1) == '>') return single(Tok::Implies, 2);
        return single(Tok::Eq, 1);
      case '<':
        if (peek(1) == '=' && peek(2) == '>') return single(Tok::Iff, 3);
        break;
      case '@': return single(Tok::At, 1);
      case '(': return single(Tok::LParen, 1);
      case ')': return single(Tok::RParen, 1);
      case '[': return single(Tok::LBrack, 1);
      case ']': return single(Tok::RBrack, 1);
      case ',': return single(Tok::Comma, 1);
      case ':': return single(Tok::Colon, 1);
      case '>': return single(Tok::Gt, 1);
      case '.': return single(Tok::Dot, 1);
      default: break;
    }
    throw ParseError(ParseError::Kind::Lexical, here(),
                     std::string("unexpected character '") + c + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

// ---------------------------------------------------------------- AST

enum class AstKind { Var, Ident, True, False, Not, Box, Dia, Binary, Quant, App };

struct Binder {
  std::string name;
  Ty ty;
  Span span;
};

struct Ast {
  AstKind kind;
  Span span;
  std::string name;  // Var / Ident
  Tok op = Tok::End;  // Binary operator or quantifier token
  std::vector<Binder> binders;
  std::vector<std::unique_ptr<Ast>> kids;
};

using AstPtr = std::unique_ptr<Ast>;

Span join(const Span& a, const Span& b) {
  Span s = a;
  s.end = b.end;
  return s;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const Signature& sig) : toks_(std::move(toks)), sig_(sig) {}

  AstPtr formula_eof() {
    AstPtr t = formula();
    expect(Tok::End, "end of input");
    return t;
  }

  Ty type_eof() {
    Ty t = type();
    expect(Tok::End, "end of input");
    return t;
  }

  // Pieces used by the THF reader.
  const Token& cur() const { return toks_[i_]; }
  bool accept(Tok k) {
    if (cur().kind != k) return false;
    ++i_;
    return true;
  }
  Token expect(Tok k, const char* what) {
    if (cur().kind != k) {
      throw ParseError(ParseError::Kind::Syntax, cur().span,
                       std::string("expected ") + what + ", found '" +
                           (cur().kind == Tok::End ? std::string("end of input") : cur().text) +
                           "'");
    }
    return toks_[i_++];
  }

  AstPtr formula() { return iff(); }

  Ty type() {
    Ty head = type_atom();
    if (accept(Tok::Gt)) return Ty::fun(head, type());
    return head;
  }

 private:
  Ty type_atom() {
    if (accept(Tok::LParen)) {
      Ty t = type();
      expect(Tok::RParen, "')'");
      return t;
    }
    Token t = expect(Tok::Ident, "type name");
    if (!sig_.has_base(t.text)) {
      throw ParseError(ParseError::Kind::UnknownConstant, t.span, "unknown base type '" + t.text + "'");
    }
    return Ty::base(t.text);
  }

  AstPtr binary(Tok op, AstPtr l, AstPtr r) {
    auto n = std::make_unique<Ast>();
    n->kind = AstKind::Binary;
    n->op = op;
    n->span = join(l->span, r->span);
    n->kids.push_back(std::move(l));
    n->kids.push_back(std::move(r));
    return n;
  }

  AstPtr iff() {
    AstPtr l = imp();
    while (cur().kind == Tok::Iff) {
      ++i_;
      l = binary(Tok::Iff, std::move(l), imp());
    }
    return l;
  }

  AstPtr imp() {
    AstPtr l = disj();
    if (cur().kind == Tok::Implies) {
      ++i_;
      return binary(Tok::Implies, std::move(l), imp());
    }
    return l;
  }

  AstPtr disj() {
    AstPtr l = conj();
    while (cur().kind == Tok::Bar) {
      ++i_;
      l = binary(Tok::Bar, std::move(l), conj());
    }
    return l;
  }

  AstPtr conj() {
    AstPtr l = eq();
    while (cur().kind == Tok::Amp) {
      ++i_;
      l = binary(Tok::Amp, std::move(l), eq());
    }
    return l;
  }

  AstPtr eq() {
    AstPtr l = unary();
    if (cur().kind == Tok::Eq || cur().kind == Tok::Neq) {
      Tok op = cur().kind;
      ++i_;
      return binary(op, std::move(l), unary());
    }
    return l;
  }

  AstPtr unary() {
    const Token& t = cur();
    auto prefix = [&](AstKind k) {
      Span s = t.span;
      ++i_;
      auto n = std::make_unique<Ast>();
      n->kind = k;
      AstPtr operand = unary();
      n->span = join(s, operand->span);
      n->kids.push_back(std::move(operand));
      return n;
    };
    switch (t.kind) {
      case Tok::Tilde:
        return prefix(AstKind::Not);
      case Tok::Ident:
        if (t.text == "box") return prefix(AstKind::Box);
        if (t.text == "dia") return prefix(AstKind::Dia);
        return app();
      case Tok::Bang:
      case Tok::BangA:
      case Tok::Query:
      case Tok::QueryA:
      case Tok::Caret:
        return quant();
      default:
        return app();
    }
  }

  AstPtr quant() {
    auto n = std::make_unique<Ast>();
    n->kind = AstKind::Quant;
    n->span = cur().span;
    n->op = cur().kind;
    ++i_;
    expect(Tok::LBrack, "'['");
    do {
      Token v = expect(Tok::Var, "variable");
      expect(Tok::Colon, "':'");
      Ty ty = type();
      n->binders.push_back(Binder{v.text, ty, v.span});
    } while (accept(Tok::Comma));
    expect(Tok::RBrack, "']'");
    expect(Tok::Colon, "':'");
    AstPtr body = unary();
    n->span = join(n->span, body->span);
    n->kids.push_back(std::move(body));
    return n;
  }

  AstPtr app() {
    AstPtr l = atom();
    if (cur().kind != Tok::At) return l;
    auto n = std::make_unique<Ast>();
    n->kind = AstKind::App;
    n->span = l->span;
    n->kids.push_back(std::move(l));
    while (accept(Tok::At)) {
      AstPtr a = atom();
      n->span = join(n->span, a->span);
      n->kids.push_back(std::move(a));
    }
    return n;
  }

  AstPtr atom() {
    const Token t = cur();
    auto n = std::make_unique<Ast>();
    n->span = t.span;
    switch (t.kind) {
      case Tok::LParen: {
        ++i_;
        AstPtr inner = formula();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Var:
        ++i_;
        n->kind = AstKind::Var;
        n->name = t.text;
        return n;
      case Tok::Ident:
        if (t.text == "box" || t.text == "dia") {
          throw ParseError(ParseError::Kind::Syntax, t.span,
                           "'" + t.text + "' must be applied as a prefix operator");
        }
        ++i_;
        n->kind = AstKind::Ident;
        n->name = t.text;
        return n;
      case Tok::True:
        ++i_;
        n->kind = AstKind::True;
        return n;
      case Tok::False:
        ++i_;
        n->kind = AstKind::False;
        return n;
      default:
        throw ParseError(ParseError::Kind::Syntax, t.span,
                         "expected a term, found '" +
                             (t.kind == Tok::End ? std::string("end of input") : t.text) + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  const Signature& sig_;
};

// ---------------------------------------------------------------- typing

class Elaborator {
 public:
  explicit Elaborator(const Signature& sig) : sig_(sig) {}

  Term run(const Ast& a) { return elab(a, nullptr); }

 private:
  [[noreturn]] void mismatch(const Span& s, const std::string& msg) {
    throw ParseError(ParseError::Kind::TypeMismatch, s, msg);
  }

  static bool is_truth_literal(const Ast& a) {
    return a.kind == AstKind::True || a.kind == AstKind::False;
  }

  Term elab(const Ast& a, const Ty* expected) {
    switch (a.kind) {
      case AstKind::True:
        return mk_true(expected && expected->is_lifted());
      case AstKind::False:
        return mk_false(expected && expected->is_lifted());
      case AstKind::Var: {
        for (std::size_t k = scope_.size(); k-- > 0;) {
          if (scope_[k].name == a.name) {
            return Term::bvar(static_cast<std::uint32_t>(scope_.size() - 1 - k), scope_[k].ty);
          }
        }
        throw ParseError(ParseError::Kind::UnboundVariable, a.span, "'" + a.name + "'");
      }
      case AstKind::Ident: {
        auto ty = sig_.lookup(a.name);
        if (!ty) throw ParseError(ParseError::Kind::UnknownConstant, a.span, "'" + a.name + "'");
        return Term::constant(a.name, *ty);
      }
      case AstKind::Not:
      case AstKind::Box:
      case AstKind::Dia: {
        const Ty lifted = Ty::lifted();
        const Ty* hint = a.kind == AstKind::Not ? expected : &lifted;
        Term x = elab(*a.kids[0], hint);
        try {
          if (a.kind == AstKind::Not) return mk_not(x);
          if (a.kind == AstKind::Box) return mk_box(x);
          return mk_dia(x);
        } catch (const TypeError& err) {
          mismatch(a.kids[0]->span, err.what());
        }
      }
      case AstKind::Binary:
        return elab_binary(a, expected);
      case AstKind::Quant:
        return elab_quant(a);
      case AstKind::App: {
        Term fn = elab(*a.kids[0], nullptr);
        for (std::size_t k = 1; k < a.kids.size(); ++k) {
          Term arg = elab(*a.kids[k], nullptr);
          if (!fn.ty().is_fun()) {
            mismatch(a.kids[k]->span, "cannot apply a term of type " + fn.ty().str());
          }
          if (fn.ty().domain() != arg.ty()) {
            mismatch(a.kids[k]->span, "function of type " + fn.ty().str() +
                                          " applied to argument of type " + arg.ty().str());
          }
          fn = Term::app(fn, arg);
        }
        return fn;
      }
    }
    throw ParseError(ParseError::Kind::Syntax, a.span, "unsupported construct");
  }

  Term elab_binary(const Ast& a, const Ty* expected) {
    const Ast& la = *a.kids[0];
    const Ast& ra = *a.kids[1];
    Term l, r;
    if (is_truth_literal(la) && !is_truth_literal(ra)) {
      r = elab(ra, expected);
      Ty hint = r.ty();
      l = elab(la, &hint);
    } else {
      l = elab(la, expected);
      Ty hint = l.ty();
      r = elab(ra, is_truth_literal(ra) ? &hint : expected);
    }
    try {
      switch (a.op) {
        case Tok::Amp: return mk_and(l, r);
        case Tok::Bar: return mk_or(l, r);
        case Tok::Implies: return mk_implies(l, r);
        case Tok::Iff: return mk_iff(l, r);
        case Tok::Eq: return mk_eq(l, r);
        case Tok::Neq: return mk_not(mk_eq(l, r));
        default: break;
      }
    } catch (const TypeError& err) {
      mismatch(a.span, err.what());
    }
    throw ParseError(ParseError::Kind::Syntax, a.span, "unknown operator");
  }

  Term elab_quant(const Ast& a) {
    for (const auto& b : a.binders) scope_.push_back(b);
    Term body;
    try {
      body = elab(*a.kids[0], nullptr);
    } catch (...) {
      scope_.resize(scope_.size() - a.binders.size());
      throw;
    }
    scope_.resize(scope_.size() - a.binders.size());
    if (a.op != Tok::Caret && !(body.ty().is_o() || body.ty().is_lifted())) {
      mismatch(a.kids[0]->span, "quantifier body must be a formula, got type " + body.ty().str());
    }
    for (std::size_t k = a.binders.size(); k-- > 0;) {
      const Binder& b = a.binders[k];
      Term pred = Term::lam(b.name, b.ty, body);
      switch (a.op) {
        case Tok::Caret:
          body = pred;
          break;
        case Tok::Bang:
          body = mk_forall(pred);
          break;
        case Tok::Query:
          body = mk_exists(pred);
          break;
        case Tok::BangA:
        case Tok::QueryA: {
          if (b.ty != Ty::e()) mismatch(b.span, "actualist quantifiers range over e only");
          if (body.ty().is_o()) {
            body = Term::lam(b.name, b.ty, lift(Term(pred.body())));
            pred = body;
          }
          body = a.op == Tok::BangA ? mk_forall_actual(pred) : mk_exists_actual(pred);
          break;
        }
        default:
          break;
      }
    }
    return body;
  }

  const Signature& sig_;
  std::vector<Binder> scope_;
};

// ---------------------------------------------------------------- printer

bool is_uppercase_name(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

class Printer {
 public:
  explicit Printer(const Term& root) { collect_fvars(root); }

  std::string run(const Term& t) {
    std::string out;
    term(t, out);
    return out;
  }

 private:
  void collect_fvars(const Term& t) {
    switch (t.kind()) {
      case TermKind::FVar: used_free_.insert(t.name()); break;
      case TermKind::Lam: collect_fvars(t.body()); break;
      case TermKind::App:
        collect_fvars(t.fn());
        collect_fvars(t.arg());
        break;
      default: break;
    }
  }

  std::string fresh(const std::string& hint) {
    std::string base = is_uppercase_name(hint) ? hint : "X";
    auto taken = [&](const std::string& n) {
      if (used_free_.count(n)) return true;
      for (const auto& s : names_) {
        if (s == n) return true;
      }
      return false;
    };
    if (!taken(base)) return base;
    for (int k = 1;; ++k) {
      std::string n = base + std::to_string(k);
      if (!taken(n)) return n;
    }
  }

  // Wraps `t` so that it has at least `n` applied arguments, eta-expanding.
  static Term eta_expand_to(const Term& t, std::size_t have, int want) {
    if (static_cast<int>(have) >= want) return t;
    const Ty dom = t.ty().domain();
    Term inner = Term::app(shift(t, 1), Term::bvar(0, dom));
    return Term::lam(dom.is_w() ? "W" : "X", dom, eta_expand_to(inner, have + 1, want));
  }

  static bool atomic(const Term& t) {
    if (t.kind() == TermKind::App) return false;
    if (t.kind() == TermKind::Lam) return false;
    if (t.kind() == TermKind::Const && t.is_logical() && arity(t.op()) > 0) return false;
    return true;
  }

  // Terms that the grammar accepts at the `unary` level without parentheses.
  static bool unary_level(const Term& t) {
    if (atomic(t)) return true;
    const Term& h = t.head();
    const std::size_t n = t.spine_args().size();
    if (h.kind() == TermKind::Const && h.is_logical()) {
      switch (h.op()) {
        case LogicalOp::Not:
        case LogicalOp::MNot:
        case LogicalOp::Box:
        case LogicalOp::Dia:
          return n == 1;
        default:
          return false;
      }
    }
    return h.kind() != TermKind::Lam;
  }

  void operand(const Term& t, std::string& out) {
    if (unary_level(t)) {
      term(t, out);
    } else {
      out += '(';
      term(t, out);
      out += ')';
    }
  }

  void atom_operand(const Term& t, std::string& out) {
    if (atomic(t)) {
      term(t, out);
    } else {
      out += '(';
      term(t, out);
      out += ')';
    }
  }

  void binder_block(const char* q, const Term& lam0, LogicalOp same, std::string& out) {
    // Collect nested binders of the same quantifier into one block.
    std::vector<std::pair<std::string, Ty>> bound;
    Term body = lam0;
    const std::size_t mark = names_.size();
    for (;;) {
      std::string n = fresh(body.name());
      names_.push_back(n);
      bound.emplace_back(n, body.var_ty());
      Term inner = body.body();
      if (same == LogicalOp::None) {
        if (inner.kind() == TermKind::Lam) {
          body = inner;
          continue;
        }
      } else if (inner.kind() == TermKind::App && inner.fn().kind() == TermKind::Const &&
                 inner.fn().op() == same && inner.arg().kind() == TermKind::Lam) {
        body = inner.arg();
        continue;
      }
      body = inner;
      break;
    }
    out += q;
    out += " [";
    for (std::size_t k = 0; k < bound.size(); ++k) {
      if (k) out += ", ";
      out += bound[k].first;
      out += ':';
      out += bound[k].second.is_fun() ? "(" + bound[k].second.str() + ")" : bound[k].second.str();
    }
    out += "]: ";
    operand(body, out);
    names_.resize(mark);
  }

  void term(const Term& t, std::string& out) {
    switch (t.kind()) {
      case TermKind::BVar: {
        if (t.index() >= names_.size()) {
          out += "#" + std::to_string(t.index());
          return;
        }
        out += names_[names_.size() - 1 - t.index()];
        return;
      }
      case TermKind::FVar:
        out += t.name();
        return;
      case TermKind::Const:
        if (!t.is_logical()) {
          out += t.name();
          return;
        }
        if (arity(t.op()) == 0) {
          out += t.op() == LogicalOp::True ? "$true" : "$false";
          return;
        }
        term(eta_expand_to(t, 0, arity(t.op())), out);
        return;
      case TermKind::Lam:
        binder_block("^", t, LogicalOp::None, out);
        return;
      case TermKind::App:
        break;
    }

    const Term& h = t.head();
    std::vector<Term> args = t.spine_args();
    if (h.kind() == TermKind::Const && h.is_logical()) {
      const int k = arity(h.op());
      if (static_cast<int>(args.size()) < k) {
        term(eta_expand_to(t, args.size(), k), out);
        return;
      }
      if (static_cast<int>(args.size()) > k) {
        // Saturated connective applied further (e.g. a lifted formula at a world).
        Term core = Term::app(h, std::vector<Term>(args.begin(), args.begin() + k));
        out += '(';
        term(core, out);
        out += ')';
        for (std::size_t i = static_cast<std::size_t>(k); i < args.size(); ++i) {
          out += " @ ";
          atom_operand(args[i], out);
        }
        return;
      }
      connective(h.op(), args, out);
      return;
    }

    if (h.kind() == TermKind::Lam) {
      out += '(';
      term(h, out);
      out += ')';
    } else {
      term(h, out);
    }
    for (const auto& a : args) {
      out += " @ ";
      atom_operand(a, out);
    }
  }

  void connective(LogicalOp op, const std::vector<Term>& args, std::string& out) {
    auto infix = [&](const char* sym) {
      operand(args[0], out);
      out += ' ';
      out += sym;
      out += ' ';
      operand(args[1], out);
    };
    auto quantifier = [&](const char* q) {
      Term pred = args[0];
      if (pred.kind() != TermKind::Lam) pred = eta_expand_to(pred, 0, 1);
      binder_block(q, pred, op, out);
    };
    switch (op) {
      case LogicalOp::Not:
      case LogicalOp::MNot:
        out += "~ ";
        operand(args[0], out);
        return;
      case LogicalOp::Box:
        out += "box ";
        operand(args[0], out);
        return;
      case LogicalOp::Dia:
        out += "dia ";
        operand(args[0], out);
        return;
      case LogicalOp::And:
      case LogicalOp::MAnd:
        return infix("&");
      case LogicalOp::Or:
      case LogicalOp::MOr:
        return infix("|");
      case LogicalOp::Implies:
      case LogicalOp::MImplies:
        return infix("=>");
      case LogicalOp::Iff:
      case LogicalOp::MIff:
        return infix("<=>");
      case LogicalOp::Eq:
        return infix("=");
      case LogicalOp::Forall:
      case LogicalOp::MForall:
        return quantifier("!");
      case LogicalOp::Exists:
      case LogicalOp::MExists:
        return quantifier("?");
      case LogicalOp::MForallA:
        return quantifier("!A");
      case LogicalOp::MExistsA:
        return quantifier("?A");
      default:
        break;
    }
  }

  std::vector<std::string> names_;
  std::set<std::string> used_free_;
};

const char* tptp_role(Role r) {
  switch (r) {
    case Role::Premise: return "axiom";
    case Role::Conclusion: return "conjecture";
    case Role::MeaningPostulate: return "definition";
    case Role::FrameAxiom: return "hypothesis";
    case Role::Candidate: return "plain";
  }
  return "plain";
}

}  // namespace

Term parse_formula(std::string_view text, const Signature& sig) {
  Parser p(Lexer(text).run(), sig);
  AstPtr ast = p.formula_eof();
  return Elaborator(sig).run(*ast);
}

Ty parse_type(std::string_view text, const Signature& sig) {
  Parser p(Lexer(text).run(), sig);
  return p.type_eof();
}

std::string print(const Term& t) { return Printer(t).run(t); }

std::vector<NamedFormula> parse_tptp(std::string_view text, const Signature& sig) {
  Parser p(Lexer(text).run(), sig);
  std::vector<NamedFormula> out;
  std::set<std::string> labels;
  while (p.cur().kind != Tok::End) {
    Token kw = p.expect(Tok::Ident, "'thf'");
    if (kw.text != "thf") {
      throw ParseError(ParseError::Kind::Syntax, kw.span, "expected 'thf', found '" + kw.text + "'");
    }
    p.expect(Tok::LParen, "'('");
    Token label = p.cur();
    if (label.kind != Tok::Ident && label.kind != Tok::Var) p.expect(Tok::Ident, "label");
    p.accept(label.kind);
    p.expect(Tok::Comma, "','");
    Token role = p.expect(Tok::Ident, "role");
    p.expect(Tok::Comma, "','");
    AstPtr ast = p.formula();
    p.expect(Tok::RParen, "')'");
    p.expect(Tok::Dot, "'.'");
    std::optional<Role> r;
    for (Role c : {Role::Premise, Role::Conclusion, Role::MeaningPostulate, Role::FrameAxiom,
                   Role::Candidate}) {
      if (role.text == tptp_role(c)) r = c;
    }
    if (!r) throw ParseError(ParseError::Kind::Syntax, role.span, "unknown role '" + role.text + "'");
    if (!labels.insert(label.text).second) {
      throw ParseError(ParseError::Kind::Syntax, label.span, "duplicate label '" + label.text + "'");
    }
    out.push_back(NamedFormula{label.text, *r, Elaborator(sig).run(*ast)});
  }
  return out;
}

std::string to_tptp(const NamedFormula& f) {
  return "thf(" + f.label + ", " + tptp_role(f.role) + ", " + print(f.term) + ").";
}

}  // namespace herm
