#pragma once

// Finite conceptualizations: intensional relational structures, ontological
// commitments over a first-order vocabulary, their intended models, and how
// well a set of axioms fits them.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "herm/term.hpp"

namespace herm {

using Tuple = std::vector<std::uint32_t>;
using Relation = std::set<Tuple>;

// Constants denote individuals; predicates have a fixed arity >= 1.
struct Vocabulary {
  std::set<std::string> constants;
  std::map<std::string, int> predicates;

  void validate() const;
  // Constants of type e, predicates of type e>...>o.
  Signature signature() const;
};

struct IntensionalRelation {
  int arity = 1;
  std::vector<Relation> by_world;  // one extension per world
};

struct IntensionalStructure {
  std::vector<std::string> individuals;
  std::vector<std::string> worlds;
  std::map<std::string, IntensionalRelation> relations;

  void validate() const;
  std::uint32_t world_index(const std::string& w) const;
};

struct ExtensionalStructure {
  std::vector<std::string> individuals;
  std::map<std::string, Relation> relations;
};

struct OntologicalCommitment {
  IntensionalStructure structure;
  Vocabulary vocabulary;
  std::map<std::string, std::uint32_t> constants;   // symbol -> individual
  std::map<std::string, std::string> predicates;    // symbol -> intensional relation

  void validate() const;
};

struct FOModel {
  std::map<std::string, std::uint32_t> constants;
  std::map<std::string, Relation> predicates;

  std::string str(const std::vector<std::string>& individuals) const;
  auto operator<=>(const FOModel&) const = default;
};

ExtensionalStructure world_extension(const IntensionalStructure& c, const std::string& world);

// One world has to witness every predicate at once.
bool is_intended_model(const FOModel& m, const OntologicalCommitment& k);

// Sorted and free of duplicates.
std::vector<FOModel> intended_models(const OntologicalCommitment& k);

// Every model of the vocabulary over n individuals, in enumeration order.
// Throws QueryError above max_models.
std::vector<FOModel> all_models(const Vocabulary& v, std::uint32_t n, std::uint64_t max_models = 1u << 20);
std::uint64_t model_count(const Vocabulary& v, std::uint32_t n);

struct OntologyFit {
  double soundness = 1.0;
  double coverage = 1.0;
  std::uint64_t intended = 0;
  std::uint64_t intended_admitted = 0;
  std::uint64_t admitted = 0;
  std::uint64_t total = 0;
};

// Axioms are closed o-typed formulas over vocabulary.signature(). Models
// range over the individuals fixed by the commitment's structure.
OntologyFit ontology_fit(const std::vector<Term>& axioms, const OntologicalCommitment& k,
                         std::uint64_t max_models = 1u << 20);

// Number of classes under renaming the n individuals. Diagnostic only;
// refuses n > 7.
std::size_t isomorphism_classes(const std::vector<FOModel>& models, std::uint32_t n);

bool satisfies(const FOModel& m, const std::vector<Term>& axioms, const Vocabulary& v, std::uint32_t n);

}  // namespace herm
