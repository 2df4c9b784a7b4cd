#pragma once

// Simply typed lambda terms over the base types o (truth values), w (worlds)
// and e (individuals). Bound variables are de Bruijn indices; binders keep a
// name hint that is only used for printing, so alpha-equivalent terms are
// structurally equal.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "herm/error.hpp"

namespace herm {

class Ty {
 public:
  Ty();  // o

  static Ty base(const std::string& name);
  static Ty fun(const Ty& domain, const Ty& codomain);
  // Right-nested arrow: arrow({e, w, o}) is e>(w>o).
  static Ty arrow(const std::vector<Ty>& chain);

  static Ty o();
  static Ty w();
  static Ty e();
  // w>o, the type of lifted (modal) formulas.
  static Ty lifted();

  bool is_base() const;
  bool is_fun() const { return !is_base(); }
  bool is_o() const;
  bool is_w() const;
  bool is_lifted() const;

  const std::string& name() const;
  const Ty& domain() const;
  const Ty& codomain() const;

  // Argument types and final base result, e.g. e>w>o gives ({e, w}, o).
  std::vector<Ty> args() const;
  Ty result() const;

  std::string str() const;
  std::size_t hash() const;

  friend bool operator==(const Ty& a, const Ty& b);
  friend bool operator!=(const Ty& a, const Ty& b) { return !(a == b); }
  friend bool operator<(const Ty& a, const Ty& b) { return a.str() < b.str(); }

 private:
  struct Node;
  explicit Ty(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Logical constants. The M-prefixed ones, Box and Dia are the modal surface
// connectives: they operate on lifted formulas (w>o) and are unfolded by the
// embedding. Lifted truth is the constant truth set ^[W:w]: $true.
enum class LogicalOp : std::uint8_t {
  None,
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Eq,
  Forall,
  Exists,
  MNot,
  MAnd,
  MOr,
  MImplies,
  MIff,
  Box,
  Dia,
  MForall,
  MExists,
  MForallA,
  MExistsA,
};

int arity(LogicalOp op);
bool is_lifted(LogicalOp op);
const char* op_name(LogicalOp op);

enum class TermKind : std::uint8_t { BVar, FVar, Const, Lam, App };

class Term {
 public:
  Term() = default;

  static Term bvar(std::uint32_t index, const Ty& ty);
  static Term fvar(const std::string& name, const Ty& ty);
  static Term constant(const std::string& name, const Ty& ty);
  // `ty` is the type the operator is instantiated at: the operand type for
  // Eq and the bound-variable type for the quantifiers. Ignored otherwise.
  static Term logical(LogicalOp op, const Ty& ty = Ty::o());
  static Term lam(const std::string& hint, const Ty& var_ty, const Term& body);
  // Throws TypeError on ill-typed application.
  static Term app(const Term& fn, const Term& arg);
  static Term app(const Term& fn, const std::vector<Term>& args);

  bool valid() const { return node_ != nullptr; }
  TermKind kind() const;
  const Ty& ty() const;
  std::uint32_t index() const;         // BVar
  const std::string& name() const;     // FVar, Const, Lam hint
  LogicalOp op() const;                // Const
  const Ty& op_ty() const;             // Const with an op
  const Ty& var_ty() const;            // Lam
  const Term& body() const;            // Lam
  const Term& fn() const;              // App
  const Term& arg() const;             // App

  bool is_logical() const { return kind() == TermKind::Const && op() != LogicalOp::None; }
  // Head of an application spine and its arguments.
  const Term& head() const;
  std::vector<Term> spine_args() const;

  // All bound indices are < loose_bound().
  std::uint32_t loose_bound() const;
  bool closed() const { return loose_bound() == 0; }

  std::size_t hash() const;
  // Structural equality on the nameless representation (alpha-equivalence).
  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

  // Nameless canonical serialization; equal strings iff equal terms.
  std::string key() const;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// De Bruijn plumbing.
Term shift(const Term& t, int by, std::uint32_t cutoff = 0);
// Replace bound index 0 in `body` (the body of a lambda) by `value`.
Term instantiate(const Term& body, const Term& value);
bool occurs_bound(const Term& t, std::uint32_t index);
bool has_fvars(const Term& t);

// Beta-eta normal form.
Term normalize(const Term& t);
bool alpha_beta_eta_equal(const Term& a, const Term& b);

// Logical-symbol occurrences in the normal form.
std::size_t symbol_count(const Term& t);
// Non-logical constant names occurring in t.
std::set<std::string> free_symbols(const Term& t);

// Convenience builders. These pick the lifted connective when the operands
// are w>o and the plain one when they are o.
Term mk_not(const Term& a);
Term mk_and(const Term& a, const Term& b);
Term mk_or(const Term& a, const Term& b);
Term mk_implies(const Term& a, const Term& b);
Term mk_iff(const Term& a, const Term& b);
Term mk_eq(const Term& a, const Term& b);
Term mk_box(const Term& a);
Term mk_dia(const Term& a);
Term mk_true(bool lifted = false);
Term mk_false(bool lifted = false);
// Quantifier over a variable of type `var_ty`; `body` is the quantified
// lambda or a predicate. Lifted when the predicate returns w>o.
Term mk_forall(const Term& pred);
Term mk_exists(const Term& pred);
Term mk_forall_actual(const Term& pred);
Term mk_exists_actual(const Term& pred);
// Lift an o-formula to the constant truth set  ^[W:w]: phi.
Term lift(const Term& phi);

class Signature {
 public:
  Signature();

  void declare_base(const std::string& name);
  void declare(const std::string& name, const Ty& ty);
  // Adds the constants introduced by the modal embedding (accessibility
  // relation, existence predicate, designated world).
  Signature with_embedding_aux() const;

  bool has_base(const std::string& name) const;
  std::optional<Ty> lookup(const std::string& name) const;
  const std::map<std::string, Ty>& constants() const { return constants_; }
  const std::set<std::string>& bases() const { return bases_; }

  static bool is_reserved(const std::string& name);
  // Throws SignatureError naming the first constant not declared here.
  void check_closed(const Term& t) const;

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.bases_ == b.bases_ && a.constants_ == b.constants_;
  }

 private:
  std::set<std::string> bases_;
  std::map<std::string, Ty> constants_;
};

inline constexpr const char* kAccessibility = "r";
inline constexpr const char* kExistsAt = "exists_at";
inline constexpr const char* kActualWorld = "w0";

enum class Role { Premise, Conclusion, MeaningPostulate, FrameAxiom, Candidate };
const char* to_string(Role role);
std::optional<Role> role_from_string(const std::string& s);

struct NamedFormula {
  std::string label;
  Role role = Role::Premise;
  Term term;
};

}  // namespace herm
