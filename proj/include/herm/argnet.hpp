#pragma once

// Attack and support between formalized arguments, parameterized by the
// logic of the targeted argument, and how well a network's intended
// dialectic roles are realized.

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "herm/correctness.hpp"

namespace herm {

enum class Polarity { Attack, Support };
enum class Mechanism { Rebut, Undermine, Endorse };
const char* to_string(Polarity p);
const char* to_string(Mechanism m);
Polarity polarity_of(Mechanism m);

struct Edge {
  std::string from, to;
  Polarity polarity = Polarity::Attack;

  friend bool operator<(const Edge& a, const Edge& b) {
    return std::tie(a.from, a.to, a.polarity) < std::tie(b.from, b.to, b.polarity);
  }
  friend bool operator==(const Edge& a, const Edge& b) {
    return a.from == b.from && a.to == b.to && a.polarity == b.polarity;
  }
};

struct ArgumentNetwork {
  std::vector<std::string> nodes;
  std::vector<Edge> intended;

  // Throws QueryError on unknown endpoints, self-edges or duplicates.
  void validate() const;
};

struct RealizedRelation {
  std::string from, to;
  Polarity polarity = Polarity::Attack;
  Mechanism mechanism = Mechanism::Rebut;
  std::string target;       // premise label; empty for undermine (the whole set)
  std::string certificate;  // id of the proof behind the relation
  Edge edge() const { return {from, to, polarity}; }
};

// All relations from a to b, judged in b's logic. Unknown verdicts yield no
// relation.
std::vector<RealizedRelation> realized_relations(const Argument& a, const Argument& b,
                                                 const std::vector<Term>& theory, const Budget& budget,
                                                 Reasoner& r);

struct EdgeStatus {
  Edge edge;
  bool realized = false;
  std::vector<Mechanism> via;
};

struct RoleReport {
  double score = 1.0;
  bool empty = false;  // no intended edges; score 1.0 by convention
  std::vector<EdgeStatus> intended;
  std::vector<Edge> spurious;            // realized but not intended
  std::vector<RealizedRelation> relations;  // everything realized, ordered
};

// score = max(0, realized - lambda * spurious) / |intended|.
RoleReport role_fulfillment(const ArgumentNetwork& net, const std::map<std::string, Argument>& args,
                            const std::vector<Term>& theory, const Budget& budget, Reasoner& r,
                            double lambda = 0.5);

// Grounded extension of the attack graph (least fixpoint of the
// characteristic function). Diagnostic only.
std::set<std::string> grounded_extension(const std::vector<std::string>& nodes, const std::vector<Edge>& attacks);

// Graphviz rendering: intended edges solid (green when realized, red when
// not), spurious ones dashed.
std::string to_dot(const ArgumentNetwork& net, const RoleReport& report);

}  // namespace herm
