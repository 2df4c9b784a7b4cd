#include "herm/argnet.hpp"

#include <algorithm>
#include <future>
#include <sstream>

namespace herm {

const char* to_string(Polarity p) { return p == Polarity::Attack ? "attack" : "support"; }

const char* to_string(Mechanism m) {
  switch (m) {
    case Mechanism::Rebut: return "rebut";
    case Mechanism::Undermine: return "undermine";
    case Mechanism::Endorse: return "endorse";
  }
  return "";
}

Polarity polarity_of(Mechanism m) { return m == Mechanism::Endorse ? Polarity::Support : Polarity::Attack; }

void ArgumentNetwork::validate() const {
  std::set<std::string> ids(nodes.begin(), nodes.end());
  if (ids.size() != nodes.size()) throw QueryError("network: duplicate node");
  std::set<Edge> seen;
  for (const auto& e : intended) {
    for (const auto* end : {&e.from, &e.to}) {
      if (!ids.count(*end)) throw QueryError("network: unknown argument " + *end);
    }
    if (e.from == e.to) throw QueryError("network: self-edge on " + e.from);
    if (!seen.insert(e).second) {
      throw QueryError("network: duplicate " + std::string(to_string(e.polarity)) + " edge " + e.from + " -> " + e.to);
    }
  }
}

std::vector<RealizedRelation> realized_relations(const Argument& a, const Argument& b,
                                                 const std::vector<Term>& theory, const Budget& budget,
                                                 Reasoner& r) {
  std::vector<RealizedRelation> out;
  std::vector<Term> from = theory;
  from.push_back(a.conclusion.term);
  auto add = [&](Mechanism m, const std::string& target, const std::string& cert) {
    out.push_back({a.id, b.id, polarity_of(m), m, target, cert});
  };
  for (const auto& p : b.premises) {
    const Verdict rebut = r.entails(from, mk_not(p.term), b.spec, budget);
    if (rebut.valid()) add(Mechanism::Rebut, p.label, rebut.certificate);
  }
  std::vector<Term> joint = theory;
  for (const auto& p : b.premises) joint.push_back(p.term);
  joint.push_back(a.conclusion.term);
  const Consistency c = r.consistent(joint, b.spec, budget);
  if (c.kind == SatKind::Unsat) add(Mechanism::Undermine, "", c.certificate);
  for (const auto& p : b.premises) {
    const Verdict endorse = r.entails(from, p.term, b.spec, budget);
    if (endorse.valid()) add(Mechanism::Endorse, p.label, endorse.certificate);
  }
  return out;
}

RoleReport role_fulfillment(const ArgumentNetwork& net, const std::map<std::string, Argument>& args,
                            const std::vector<Term>& theory, const Budget& budget, Reasoner& r, double lambda) {
  net.validate();
  for (const auto& n : net.nodes) {
    if (!args.count(n)) throw QueryError("network: argument " + n + " is not formalized");
  }
  RoleReport rep;
  // ordered pairs, evaluated concurrently, collected in order
  std::vector<std::future<std::vector<RealizedRelation>>> jobs;
  for (const auto& x : net.nodes) {
    for (const auto& y : net.nodes) {
      if (x == y) continue;
      jobs.push_back(std::async(std::launch::async, [&, x, y] {
        return realized_relations(args.at(x), args.at(y), theory, budget, r);
      }));
    }
  }
  for (auto& j : jobs) {
    for (auto& rel : j.get()) rep.relations.push_back(std::move(rel));
  }
  std::set<Edge> realized;
  for (const auto& rel : rep.relations) realized.insert(rel.edge());
  std::set<Edge> intended(net.intended.begin(), net.intended.end());
  int hits = 0;
  for (const auto& e : net.intended) {
    EdgeStatus st{e, realized.count(e) > 0, {}};
    for (const auto& rel : rep.relations) {
      if (rel.edge() == e && std::find(st.via.begin(), st.via.end(), rel.mechanism) == st.via.end()) {
        st.via.push_back(rel.mechanism);
      }
    }
    hits += st.realized;
    rep.intended.push_back(std::move(st));
  }
  for (const auto& e : realized) {
    if (!intended.count(e)) rep.spurious.push_back(e);
  }
  if (net.intended.empty()) {
    rep.empty = true;
    rep.score = 1.0;
  } else {
    const double raw = hits - lambda * static_cast<double>(rep.spurious.size());
    rep.score = std::max(0.0, raw) / static_cast<double>(net.intended.size());
  }
  return rep;
}

std::set<std::string> grounded_extension(const std::vector<std::string>& nodes, const std::vector<Edge>& attacks) {
  std::map<std::string, std::set<std::string>> attackers;
  for (const auto& e : attacks) {
    if (e.polarity == Polarity::Attack) attackers[e.to].insert(e.from);
  }
  std::set<std::string> in;
  for (;;) {
    // defended: every attacker is attacked by something already in
    std::set<std::string> next;
    for (const auto& n : nodes) {
      bool ok = true;
      for (const auto& a : attackers[n]) {
        bool countered = false;
        for (const auto& d : attackers[a]) countered = countered || in.count(d);
        ok = ok && countered;
      }
      if (ok) next.insert(n);
    }
    if (next == in) return in;
    in = std::move(next);
  }
}

std::string to_dot(const ArgumentNetwork& net, const RoleReport& report) {
  std::ostringstream out;
  out << "digraph network {\n";
  for (const auto& n : net.nodes) out << "  \"" << n << "\";\n";
  for (const auto& st : report.intended) {
    out << "  \"" << st.edge.from << "\" -> \"" << st.edge.to << "\" [label=\"" << to_string(st.edge.polarity)
        << "\", color=" << (st.realized ? "green" : "red");
    if (st.edge.polarity == Polarity::Attack) out << ", arrowhead=tee";
    out << "];\n";
  }
  for (const auto& e : report.spurious) {
    out << "  \"" << e.from << "\" -> \"" << e.to << "\" [label=\"" << to_string(e.polarity)
        << "\", style=dashed, color=gray];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace herm
