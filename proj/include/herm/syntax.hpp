#pragma once

// Concrete formula syntax (THF-flavoured ASCII):
//
//   formula  := iff
//   iff      := imp ( '<=>' imp )*
//   imp      := or ( '=>' imp )?                 right associative
//   or       := and ( '|' and )*
//   and      := eq ( '&' eq )*
//   eq       := unary ( ( '=' | '!=' ) unary )?
//   unary    := '~' unary | 'box' unary | 'dia' unary | quant | app
//   quant    := ( '!' | '?' | '!A' | '?A' | '^' ) '[' binder ( ',' binder )* ']' ':' unary
//   binder   := VAR ':' type
//   app      := atom ( '@' atom )*
//   atom     := '(' formula ')' | CONST | VAR | '$true' | '$false'
//   type     := tyatom ( '>' type )?
//   tyatom   := BASE | '(' type ')'
//
// VAR starts with an uppercase letter, CONST and BASE with a lowercase one.
// '%' starts a comment running to the end of the line.

#include <string>
#include <string_view>
#include <vector>

#include "herm/term.hpp"

namespace herm {

Term parse_formula(std::string_view text, const Signature& sig);
Ty parse_type(std::string_view text, const Signature& sig);

// Prints in the grammar above; parse_formula(print(t)) is alpha-beta-eta
// equal to t.
std::string print(const Term& t);

// THF-style annotated formulas:  thf(label, role, formula).
// Roles map axiom->premise, conjecture->conclusion, definition->
// meaning-postulate, hypothesis->frame-axiom, plain->candidate.
std::vector<NamedFormula> parse_tptp(std::string_view text, const Signature& sig);
std::string to_tptp(const NamedFormula& f);

}  // namespace herm
