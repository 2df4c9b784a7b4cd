#pragma once

// The .herm corpus document (JSON, schema "herm/1"): signature, sentences,
// candidate formalizations, arguments, intended network, meaning-postulate
// pool and optional conceptualization structures.

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "herm/conceptualization.hpp"
#include "herm/engine.hpp"

namespace herm {

inline constexpr const char* kSchema = "herm/1";

struct Structure {
  std::string id;
  OntologicalCommitment commitment;
  std::vector<Term> axioms;
};

struct Document {
  Signature signature;
  std::vector<std::string> bases;  // declared beyond o, w, e
  Discourse discourse;
  // Selections recorded by a search (or by hand).
  std::map<std::string, std::string> selected;  // sentence -> candidate label
  std::map<std::string, std::string> logic;     // argument -> chosen logic
  std::set<std::string> active;                 // postulate labels
  std::set<std::string> settled;
  std::vector<Structure> structures;

  // The recorded selection; index 0, no postulates and the first admissible
  // logic where nothing is recorded.
  EngineState state() const;
  void record(const RunResult& res);
};

struct Issue {
  std::string where;  // JSON path, e.g. arguments[2].premises[0]
  std::string message;
};

// Carries every integrity problem found, not just the first.
class DocumentError : public Error {
 public:
  explicit DocumentError(std::vector<Issue> issues);
  const std::vector<Issue>& issues() const { return issues_; }

 private:
  std::vector<Issue> issues_;
};

Document parse_document(std::string_view text);
Document load_document(const std::string& path);
std::string save_document(const Document& d);

// Formula sections as THF lines: postulates as definitions, candidates as
// plain formulas.
std::string export_tptp(const Document& d);
// Definitions join the postulate pool; plain formulas labelled
// <sentence>_<suffix> join that sentence's candidates. Returns the number of
// formulas taken over; throws DocumentError on clashes.
int import_tptp(Document& d, std::string_view text);

}  // namespace herm
