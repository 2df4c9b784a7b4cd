#pragma once

// Logical correctness of a single formalized argument: validity, premise
// consistency, non-circularity and absence of idle premises.

#include <string>
#include <vector>

#include "herm/reasoner.hpp"

namespace herm {

struct Argument {
  std::string id;
  std::vector<NamedFormula> premises;
  NamedFormula conclusion;
  LogicSpec spec;
  std::vector<std::string> postulates;  // labels into the shared theory

  // Throws QueryError on duplicate premise labels or a conclusion label
  // that is also a premise label.
  void validate() const;
};

enum class Tri { Yes, No, Unknown };
const char* to_string(Tri t);

struct CorrectnessOptions {
  bool circularity = true;  // off: circular is always No
};

struct CorrectnessReport {
  Verdict validity;
  Consistency consistency;
  Tri circular = Tri::Unknown;
  std::string circular_premise;           // witness when circular = Yes
  std::vector<std::string> idle_premises;
  std::vector<std::string> idle_unknown;  // leave-one-out checks that came back Unknown
  Tri overall = Tri::Unknown;             // Yes = pass, No = fail

  bool pass() const { return overall == Tri::Yes; }
  bool non_circular() const { return circular == Tri::No; }
  bool no_idle() const { return idle_premises.empty() && idle_unknown.empty(); }
};

// `theory` holds the meaning postulates in force; they are added to the
// premises of every query but are never tested for idleness.
CorrectnessReport check_correctness(const Argument& a, const std::vector<Term>& theory, const Budget& b,
                                    Reasoner& r, const CorrectnessOptions& opts = {});

}  // namespace herm
