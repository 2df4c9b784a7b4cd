#pragma once

// Shallow semantical embedding of the modal surface language into HOL.
// Modal connectives are abbreviations for truth sets:
//   box phi   ~>  ^[W:w]: ! [V:w]: (r @ W @ V => phi @ V)
//   dia phi   ~>  ^[W:w]: ? [V:w]: (r @ W @ V & phi @ V)
//   !A [X:e]: phi  ~>  ^[W:w]: ! [X:e]: (exists_at @ X @ W => phi @ W)
// and the propositional connectives lift pointwise over the world argument.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "herm/term.hpp"

namespace herm {

enum class FrameCondition { Reflexive, Symmetric, Transitive, Euclidean };
enum class DomainPolicy { Constant, Actualist };
enum class ValidityMode { Global, Local };

const char* to_string(FrameCondition c);
std::optional<FrameCondition> frame_condition_from_string(const std::string& s);
const char* to_string(DomainPolicy p);
const char* to_string(ValidityMode m);

struct LogicSpec {
  std::string name = "K";
  std::set<FrameCondition> frame;
  DomainPolicy domain = DomainPolicy::Constant;
  ValidityMode validity = ValidityMode::Global;

  // K, T, KB, S4, S5.
  static LogicSpec preset(const std::string& name);
  // Accepts a preset name or a frame list ("K+refl+trans"), optionally
  // followed by "/actualist" and "/local" modifiers. Throws EmbeddingError
  // on unknown parts.
  static LogicSpec parse(const std::string& text);

  bool has(FrameCondition c) const { return frame.count(c) > 0; }
  // Canonical text; LogicSpec::parse(str()) == *this.
  std::string str() const;

  // Names are cosmetic: two specs are equal when their semantics agree.
  friend bool operator==(const LogicSpec& a, const LogicSpec& b) {
    return a.frame == b.frame && a.domain == b.domain && a.validity == b.validity;
  }
  friend bool operator!=(const LogicSpec& a, const LogicSpec& b) { return !(a == b); }
};

struct EmbeddingResult {
  Term hol_term;                                     // w>o
  std::vector<NamedFormula> frame_theory;            // role FrameAxiom, type o
  std::vector<std::pair<std::string, Ty>> aux_signature;
};

bool uses_actualist(const Term& t);

// Throws EmbeddingError when an actualist quantifier meets a constant-domain
// spec, TypeError when phi is not a formula.
EmbeddingResult embed(const Term& phi, const LogicSpec& spec);
// The HOL truth set only.
Term embed_term(const Term& phi, const LogicSpec& spec);

// Global: ! [W:w]: t @ W (vacuous quantifier dropped). Local: t @ w0.
Term validize(const Term& t, ValidityMode mode);

// The HOL abbreviation behind a lifted connective constant (identity on
// other terms).
Term lifted_definition(const Term& connective);

std::vector<NamedFormula> frame_axioms(const LogicSpec& spec);
NamedFormula frame_axiom(FrameCondition c);

}  // namespace herm
