#pragma once

// Finite models for HOL terms and a direct evaluator over them.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "herm/term.hpp"

namespace herm {

// A constant of type a1>...>an>b is interpreted by a table over argument
// tuples in row-major order (first argument most significant); entries are
// element indices of b. Base-typed constants have a one-entry table.
struct Interpretation {
  Ty ty;
  std::vector<std::uint32_t> table;

  friend bool operator==(const Interpretation& a, const Interpretation& b) {
    return a.ty == b.ty && a.table == b.table;
  }
};

struct FiniteModel {
  // Domain size per base type; o is always 2, missing bases have size 1.
  std::map<std::string, std::uint32_t> sizes;
  std::map<std::string, Interpretation> interp;

  std::uint32_t size(const std::string& base) const;
  std::uint32_t world_count() const { return size("w"); }
  std::uint32_t individual_count() const { return size("e"); }
  // Element index of the designated world constant, when interpreted.
  std::optional<std::uint32_t> designated_world() const;

  // Stable textual layout: domains, then one line per constant by name.
  std::string str() const;

  friend bool operator==(const FiniteModel& a, const FiniteModel& b) {
    return a.sizes == b.sizes && a.interp == b.interp;
  }
};

std::string element_name(const std::string& base, std::uint32_t index);

// Kripke layout: worlds, accessibility pairs, a world-by-relation table of
// extensions, then the remaining constants as in FiniteModel::str.
std::string kripke_text(const FiniteModel& m);

// Raised when evaluation would enumerate an unreasonably large function
// space or meets an unbound variable.
class EvalError : public Error {
 public:
  using Error::Error;
};

class Value;
struct EnvNode;
using Env = std::shared_ptr<const EnvNode>;

class Value {
 public:
  enum class Kind { Elem, Closure, Partial };
  enum class HeadKind { Op, Table };

  static Value elem(std::uint32_t e);
  static Value boolean(bool b) { return elem(b ? 1 : 0); }

  Kind kind() const { return kind_; }
  std::uint32_t as_elem() const;
  bool as_bool() const { return as_elem() != 0; }

 private:
  friend class Evaluator;
  Kind kind_ = Kind::Elem;
  std::uint32_t elem_ = 0;
  // Closure
  Term body_;
  Env env_;
  // Partial application of an operator or a table
  HeadKind head_ = HeadKind::Op;
  Term op_;
  std::shared_ptr<const std::vector<std::uint32_t>> table_;
  Ty table_ty_;
  std::vector<Value> args_;
};

struct EnvNode {
  Value value;
  Env next;
};

Env env_push(const Env& env, const Value& v);

// Evaluates terms in a model. Lifted connectives are evaluated through their
// truth-set definitions, so surface formulas and embedded ones can both be
// evaluated; the accessibility relation and existence predicate are then read
// from the model's interpretation of `r` and `exists_at`.
class Evaluator {
 public:
  explicit Evaluator(const FiniteModel& model, std::uint64_t max_enumeration = 1u << 16);

  Value eval(const Term& t, const Env& env = nullptr,
             const std::map<std::string, Value>& free = {}) const;
  Value apply(const Value& fn, const Value& arg) const;

  // Closed o-typed formula.
  bool holds(const Term& formula) const;
  // Lifted formula at a world.
  bool holds_at(const Term& lifted_formula, std::uint32_t world) const;

  std::uint64_t cardinality(const Ty& ty) const;
  Value decode(std::uint64_t code, const Ty& ty) const;
  std::uint64_t encode(const Value& v, const Ty& ty) const;
  bool equal(const Value& a, const Value& b, const Ty& ty) const;

 private:
  Value eval_in(const Term& t, const Env& env, const std::map<std::string, Value>& free) const;
  Value saturate(const Value& partial) const;

  const FiniteModel& model_;
  std::uint64_t max_enum_;
  mutable std::map<std::string, std::shared_ptr<const std::vector<std::uint32_t>>> tables_;
};

// Convenience wrapper of Evaluator::eval.
Value eval(const Term& t, const FiniteModel& m, const Env& env = nullptr);

}  // namespace herm
