#pragma once

// Search over formalization assignments, logics and meaning-postulate
// selections. Layer one scores each argument (correctness) and each sentence
// (adequacy); layer two scores the realized network roles. Simulated
// annealing over pool-based moves, fully determined by the seed.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "herm/adequacy.hpp"
#include "herm/argnet.hpp"

namespace herm {

struct LabeledFormula {
  std::string label;
  Term formula;
};

// Everything the engine chooses from.
struct Discourse {
  Corpus corpus;
  std::map<std::string, std::vector<LabeledFormula>> candidates;  // per sentence
  std::vector<LabeledFormula> postulates;                          // meaning-postulate pool
  // Per argument: admissible logics as LogicSpec::parse strings. "*" also
  // admits toggling single frame conditions and the domain policy. Missing
  // entries admit "K" only.
  std::map<std::string, std::vector<std::string>> logics;
  ArgumentNetwork network;

  // Throws QueryError on an empty pool, an unmapped sentence, a dangling
  // reference or a duplicate label.
  void validate() const;
  std::vector<LogicSpec> admissible(const std::string& argument) const;
  bool free_logic(const std::string& argument) const;
};

struct EngineConfig {
  double w_valid = 1.0;
  double w_consistent = 0.5;
  double w_non_circular = 0.25;
  double w_no_idle = 0.25;
  double w_net = 1.0;
  double lambda = 0.5;  // spurious edge penalty inside role fulfillment
  AdequacyWeights adequacy;

  double t0 = 1.0;
  double alpha = 0.98;
  int iterations = 500;
  int stagnation = 150;  // stop after this many iterations without a new best
  std::uint64_t seed = 7;
  int retries = 16;      // re-proposals after a move that breaks the postulates

  Budget budget;
  bool strict = false;       // Unknown verdicts make reliability Unknown
  bool circularity = true;   // off: no argument counts as circular
  bool tolerate_unknown = true;  // Unknown postulate consistency is accepted

  int promote_min = 2;  // passing arguments a promoted postulate must be needed by
  double promote_min_score = -1e300;

  void validate() const;
};

struct EngineState {
  std::map<std::string, int> choice;         // sentence -> candidate index
  std::set<std::string> active;              // postulate labels
  std::map<std::string, LogicSpec> logic;    // argument -> logic

  std::string key() const;
  friend bool operator==(const EngineState& a, const EngineState& b) { return a.key() == b.key(); }
};

enum class MoveKind { SwapCandidate, ToggleMeaningPostulate, SwitchLogic, ToggleFrameAxiom, ToggleDomainPolicy };
const char* to_string(MoveKind k);

struct Move {
  MoveKind kind = MoveKind::SwapCandidate;
  std::string target;  // sentence, postulate label or argument
  int index = 0;       // SwapCandidate: new candidate index
  LogicSpec logic;     // SwitchLogic: new logic
  FrameCondition condition = FrameCondition::Reflexive;

  std::string str() const;
};

EngineState apply(const EngineState& s, const Move& m);

// Deterministic across platforms: draws are taken straight from the
// generator, no library distributions.
class EngineRng {
 public:
  explicit EngineRng(std::uint64_t seed) : gen_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

// Uniform over the kinds that have a legal move, then uniform within the
// kind. Empty when no move is legal.
std::vector<Move> legal_moves(const EngineState& s, const Discourse& d, MoveKind kind);
std::optional<Move> propose_move(const EngineState& s, const Discourse& d, EngineRng& rng);

// Candidate index 0 everywhere, no postulates, first admissible logic.
EngineState initial_state(const Discourse& d);

struct ArgumentScore {
  std::string id;
  bool correct = true;  // tag
  CorrectnessReport report;
  double score = 0;
};

struct Breakdown {
  double total = 0;
  bool rejected = false;  // some sentence is unreliable
  std::vector<ArgumentScore> arguments;
  std::map<std::string, AdequacyScore> sentences;
  RoleReport roles;
  double network = 0;

  // All correct-tagged arguments pass, every intended edge is realized and
  // nothing else is.
  bool maximal = false;
};

FormalizationMap formalization(const EngineState& s, const Discourse& d);
std::vector<Term> active_theory(const EngineState& s, const Discourse& d);
std::map<std::string, Argument> formalized_arguments(const EngineState& s, const Discourse& d);

Breakdown objective(const EngineState& s, const Discourse& d, const EngineConfig& c, Reasoner& r);
// Highest reachable total when every component is perfect.
double structural_maximum(const Discourse& d, const EngineConfig& c);

// Unsat under some logic in use (or Unknown, unless tolerated).
bool postulates_break(const EngineState& s, const Discourse& d, const EngineConfig& c, Reasoner& r);

// Metropolis rule: Delta >= 0 always, else exp(Delta / t) against a draw.
bool accept(double delta, double temperature, EngineRng& rng);

struct TraceEntry {
  int iteration = 0;
  std::string move;
  double proposed = 0;
  bool accepted = false;
  double current = 0;
  double best = 0;
  double temperature = 0;
};

struct RunResult {
  EngineState initial, final_state, best;
  Breakdown best_breakdown;
  std::vector<TraceEntry> trace;
  std::string termination;  // budget, stagnation, maximum, fixpoint
  std::vector<std::string> promoted;
  std::vector<Edge> unrealizable;  // intended edges never realized in any evaluated state
  double maximum = 0;
};

RunResult run(const Discourse& d, const EngineConfig& c, Reasoner& r);

std::string trace_text(const std::vector<TraceEntry>& trace);
std::string report_text(const RunResult& res, const Discourse& d);

}  // namespace herm
