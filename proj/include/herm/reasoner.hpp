#pragma once

// Entailment and consistency for modal surface formulas: a labeled tableau
// proves, a finite model finder refutes. Both produce certificates that can be
// re-checked independently of the search that found them.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "herm/embedding.hpp"
#include "herm/model.hpp"
#include "herm/term.hpp"

namespace herm {

struct Budget {
  std::uint32_t max_worlds = 3;
  std::uint32_t max_individuals = 2;
  std::uint32_t max_depth = 16;     // tableau world-tree depth
  std::uint64_t timeout_ms = 20000;

  // Defaults overridden by HERM_MAX_WORLDS, HERM_MAX_INDIVIDUALS, HERM_DEPTH
  // and HERM_TIMEOUT_MS when set. Throws QueryError on malformed values.
  static Budget from_env();
  void validate() const;
  std::string key() const;

  friend bool operator==(const Budget& a, const Budget& b) { return a.key() == b.key(); }
};

class Deadline {
 public:
  explicit Deadline(std::uint64_t ms)
      : end_(std::chrono::steady_clock::now() + std::chrono::milliseconds(ms)) {}
  bool passed() const { return std::chrono::steady_clock::now() >= end_; }

 private:
  std::chrono::steady_clock::time_point end_;
};

// ---------------------------------------------------------------- model finding

struct ModelSearch {
  std::optional<FiniteModel> model;
  // Part of the space within the caps was skipped (deadline, oversized
  // enumeration or a formula the grounder cannot handle).
  bool incomplete = false;
  std::string note;
};

// Smallest model (domain sizes by nondecreasing sum, then interpretations in
// canonical order) of closed o-typed formulas. Non-predicate constants are
// enumerated by name with tables in row-major order; predicate atoms follow,
// constants by name and rows ascending, false before true. `extra` constants
// are interpreted even when no formula mentions them.
ModelSearch find_model(const std::vector<Term>& formulas, const Budget& b,
                       const std::map<std::string, Ty>& extra = {});

// All constants (with types) occurring in t.
void collect_constants(const Term& t, std::map<std::string, Ty>& out);

// ---------------------------------------------------------------- tableau

// A labeled formula on a branch. World -1 holds world-independent (o-typed)
// formulas, which are shared by every world.
struct ProofEntry {
  int world = 0;
  bool sign = true;
  Term formula;

  friend bool operator==(const ProofEntry& a, const ProofEntry& b) {
    return a.world == b.world && a.sign == b.sign && a.formula == b.formula;
  }
};

enum class RuleKind { Init, Global, Alpha, Split, BoxProp, Gamma, Delta, NewWorld, Frame, Close };
const char* to_string(RuleKind k);

struct ProofStep {
  RuleKind rule = RuleKind::Init;
  int source = -1;                 // entry consumed by the rule
  int from = -1, to = -1;          // edge for NewWorld, Frame and BoxProp
  FrameCondition condition = FrameCondition::Reflexive;  // Frame only
  Term witness;                    // Gamma and Delta
  std::vector<ProofEntry> added;
  std::vector<std::vector<ProofEntry>> alternatives;  // Split
  int clash_a = -1, clash_b = -1;  // Close; clash_b = -1 for a lone falsum
};

// Steps apply in order; a node ending in Split continues in children[i]
// after alternative i is added. Every leaf ends in Close.
struct ProofNode {
  std::vector<ProofStep> steps;
  std::vector<ProofNode> children;
};

struct TableauProblem {
  std::vector<Term> premises;  // surface formulas, w>o or o
  Term conclusion;
  LogicSpec spec;
};

struct TableauProof {
  TableauProblem problem;
  ProofNode root;
  std::size_t step_count() const;
};

enum class TableauOutcome { Closed, Open, Incomplete };

struct TableauResult {
  TableauOutcome outcome = TableauOutcome::Incomplete;
  std::shared_ptr<const TableauProof> proof;  // when Closed
  std::optional<FiniteModel> model;           // from an open saturated branch, verified
  bool outside_fragment = false;              // opaque subformulas were abstracted
  std::string note;
};

TableauResult run_tableau(const TableauProblem& problem, const Budget& b);

// Rule-by-rule replay. Returns an empty string when the proof checks, or a
// description of the first bad step.
std::string replay(const TableauProof& proof);

// ---------------------------------------------------------------- verdicts

enum class VerdictKind { Valid, Invalid, Unknown };
enum class UnknownReason { None, BudgetExhausted, OutsideFragment };
const char* to_string(VerdictKind k);
const char* to_string(UnknownReason r);

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::shared_ptr<const TableauProof> proof;  // Valid
  std::optional<FiniteModel> countermodel;    // Invalid
  UnknownReason reason = UnknownReason::None;
  std::string certificate;                    // stable id of the certificate
  std::string note;

  bool valid() const { return kind == VerdictKind::Valid; }
  bool invalid() const { return kind == VerdictKind::Invalid; }
  bool unknown() const { return kind == VerdictKind::Unknown; }
};

enum class SatKind { Sat, Unsat, Unknown };
const char* to_string(SatKind k);

struct Consistency {
  SatKind kind = SatKind::Unknown;
  std::optional<FiniteModel> model;           // Sat
  std::shared_ptr<const TableauProof> proof;  // Unsat
  UnknownReason reason = UnknownReason::None;
  std::string certificate;
};

// The HOL formulas a model must satisfy for the query: validized embeddings
// of the premises, the frame theory, and (when given) the negated conclusion.
std::vector<Term> countermodel_goals(const std::vector<Term>& premises, const Term* conclusion,
                                     const LogicSpec& spec);

// Re-checks a verdict against its query: a proof must replay and match the
// query, a countermodel must satisfy the premises and frame theory and falsify
// the conclusion. Empty string when it checks.
std::string check_certificate(const Verdict& v, const std::vector<Term>& premises,
                              const Term& conclusion, const LogicSpec& spec);

struct ReasonerStats {
  std::uint64_t queries = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t valid = 0, invalid = 0, unknown = 0;
};

// Thread-safe: the verdict cache is guarded, everything else is per query.
class Reasoner {
 public:
  explicit Reasoner(bool use_cache = true) : use_cache_(use_cache) {}

  Verdict entails(const std::vector<Term>& premises, const Term& conclusion, const LogicSpec& spec,
                  const Budget& b);
  Consistency consistent(const std::vector<Term>& formulas, const LogicSpec& spec, const Budget& b);

  ReasonerStats stats() const;
  void clear_cache();
  bool caching() const { return use_cache_; }

 private:
  Verdict decide(const std::vector<Term>& premises, const Term& conclusion, const LogicSpec& spec,
                 const Budget& b);
  Consistency decide_sat(const std::vector<Term>& formulas, const LogicSpec& spec, const Budget& b);

  // Looks key up, or computes it once; concurrent callers of an entry in
  // flight wait for it and count as hits.
  template <class T, class F>
  T memo(std::map<std::string, std::shared_future<T>>& cache, const std::string& key, F&& compute) {
    if (!use_cache_) return compute();
    std::promise<T> promise;
    std::shared_future<T> pending;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache.find(key);
      if (it != cache.end()) {
        ++hits_;
        pending = it->second;
      } else {
        cache.emplace(key, promise.get_future().share());
      }
    }
    if (pending.valid()) return pending.get();
    try {
      T v = compute();
      promise.set_value(v);
      return v;
    } catch (...) {
      promise.set_exception(std::current_exception());
      std::lock_guard<std::mutex> lock(mu_);
      cache.erase(key);
      throw;
    }
  }

  bool use_cache_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_future<Verdict>> verdicts_;
  std::map<std::string, std::shared_future<Consistency>> sat_;
  std::atomic<std::uint64_t> queries_{0}, hits_{0}, valid_{0}, invalid_{0}, unknown_{0};
};

}  // namespace herm
