#include "herm/conceptualization.hpp"

#include <algorithm>
#include <sstream>

#include "herm/error.hpp"
#include "herm/model.hpp"

namespace herm {

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Row index of a tuple, first position most significant (the Interpretation
// table layout).
std::uint64_t row_of(const Tuple& t, std::uint32_t n) {
  std::uint64_t r = 0;
  for (auto x : t) r = r * n + x;
  return r;
}

Tuple tuple_of(std::uint64_t row, int arity, std::uint32_t n) {
  Tuple t(arity);
  for (int i = arity - 1; i >= 0; --i) {
    t[i] = static_cast<std::uint32_t>(row % n);
    row /= n;
  }
  return t;
}

void check_relation(const Relation& rel, int arity, std::size_t n, const std::string& what) {
  for (const auto& t : rel) {
    if (static_cast<int>(t.size()) != arity) throw QueryError(what + ": tuple of wrong arity");
    for (auto x : t) {
      if (x >= n) throw QueryError(what + ": individual " + std::to_string(x) + " out of range");
    }
  }
}

bool mentions_w(const Ty& ty) {
  if (ty.is_base()) return ty.is_w();
  return mentions_w(ty.domain()) || mentions_w(ty.codomain());
}

bool first_order(const Term& t) {
  if (mentions_w(t.ty())) return false;
  switch (t.kind()) {
    case TermKind::Const:
      return !t.is_logical() || !mentions_w(t.op_ty());
    case TermKind::Lam:
      return !mentions_w(t.var_ty()) && first_order(t.body());
    case TermKind::App:
      return first_order(t.fn()) && first_order(t.arg());
    default:
      return true;
  }
}

void check_axioms(const std::vector<Term>& axioms, const Vocabulary& v) {
  const Signature sig = v.signature();
  for (const auto& a : axioms) {
    if (!a.ty().is_o()) throw QueryError("axiom is not a sentence: " + a.key());
    if (!a.closed() || has_fvars(a)) throw QueryError("axiom has free variables: " + a.key());
    try {
      sig.check_closed(a);
    } catch (const SignatureError& e) {
      throw QueryError(std::string("axiom outside the vocabulary: ") + e.what());
    }
    if (!first_order(a)) throw QueryError("axiom is not first-order: " + a.key());
  }
}

// Models as digit vectors: one digit per constant, one bitmask per predicate,
// both in vocabulary order.
struct Layout {
  std::vector<std::string> constants;
  std::vector<std::pair<std::string, int>> predicates;
  std::uint32_t n = 1;

  Layout(const Vocabulary& v, std::uint32_t n) : constants(v.constants.begin(), v.constants.end()), n(n) {
    for (const auto& [p, a] : v.predicates) {
      if (ipow(n, a) > 62) throw QueryError("size guard exceeded: predicate " + p + " has too many tuples");
      predicates.push_back({p, a});
    }
  }

  FOModel decode(const std::vector<std::uint32_t>& c, const std::vector<std::uint64_t>& masks) const {
    FOModel m;
    for (std::size_t i = 0; i < constants.size(); ++i) m.constants[constants[i]] = c[i];
    for (std::size_t i = 0; i < predicates.size(); ++i) {
      Relation& rel = m.predicates[predicates[i].first];
      const std::uint64_t rows = ipow(n, predicates[i].second);
      for (std::uint64_t r = 0; r < rows; ++r) {
        if (masks[i] >> r & 1) rel.insert(tuple_of(r, predicates[i].second, n));
      }
    }
    return m;
  }

  // Visits every model in odometer order: last predicate fastest.
  template <class F>
  void each(F&& visit) const {
    std::vector<std::uint32_t> c(constants.size(), 0);
    std::vector<std::uint64_t> masks(predicates.size(), 0);
    std::vector<std::uint64_t> limit;
    for (const auto& [p, a] : predicates) limit.push_back(std::uint64_t(1) << ipow(n, a));
    for (;;) {
      visit(c, masks);
      int i = static_cast<int>(masks.size()) - 1;
      for (; i >= 0; --i) {
        if (++masks[i] < limit[i]) break;
        masks[i] = 0;
      }
      if (i >= 0) continue;
      int j = static_cast<int>(c.size()) - 1;
      for (; j >= 0; --j) {
        if (++c[j] < n) break;
        c[j] = 0;
      }
      if (j < 0) return;
    }
  }
};

FiniteModel to_finite(const FOModel& m, const Vocabulary& v, std::uint32_t n) {
  FiniteModel fm;
  fm.sizes["e"] = n;
  for (const auto& c : v.constants) fm.interp[c] = {Ty::e(), {m.constants.at(c)}};
  for (const auto& [p, a] : v.predicates) {
    std::vector<Ty> chain(a, Ty::e());
    chain.push_back(Ty::o());
    Interpretation in{Ty::arrow(chain), std::vector<std::uint32_t>(ipow(n, a), 0)};
    for (const auto& t : m.predicates.at(p)) in.table[row_of(t, n)] = 1;
    fm.interp[p] = std::move(in);
  }
  return fm;
}

}  // namespace

void Vocabulary::validate() const {
  for (const auto& [p, a] : predicates) {
    if (a < 1) throw QueryError("predicate " + p + " needs arity >= 1");
    if (constants.count(p)) throw QueryError(p + " is both a constant and a predicate");
  }
  for (const auto& c : constants) {
    if (Signature::is_reserved(c)) throw QueryError(c + " is reserved");
  }
}

Signature Vocabulary::signature() const {
  validate();
  Signature sig;
  for (const auto& c : constants) sig.declare(c, Ty::e());
  for (const auto& [p, a] : predicates) {
    std::vector<Ty> chain(a, Ty::e());
    chain.push_back(Ty::o());
    sig.declare(p, Ty::arrow(chain));
  }
  return sig;
}

void IntensionalStructure::validate() const {
  if (individuals.empty()) throw QueryError("structure has no individuals");
  if (worlds.empty()) throw QueryError("structure has no worlds");
  if (std::set<std::string>(worlds.begin(), worlds.end()).size() != worlds.size()) {
    throw QueryError("duplicate world name");
  }
  for (const auto& [name, rel] : relations) {
    if (rel.arity < 1) throw QueryError("relation " + name + " needs arity >= 1");
    if (rel.by_world.size() != worlds.size()) throw QueryError("relation " + name + " is not total on worlds");
    for (const auto& ext : rel.by_world) check_relation(ext, rel.arity, individuals.size(), "relation " + name);
  }
}

std::uint32_t IntensionalStructure::world_index(const std::string& w) const {
  auto it = std::find(worlds.begin(), worlds.end(), w);
  if (it == worlds.end()) throw QueryError("unknown world " + w);
  return static_cast<std::uint32_t>(it - worlds.begin());
}

void OntologicalCommitment::validate() const {
  structure.validate();
  vocabulary.validate();
  for (const auto& c : vocabulary.constants) {
    auto it = constants.find(c);
    if (it == constants.end()) throw QueryError("constant " + c + " has no denotation");
    if (it->second >= structure.individuals.size()) throw QueryError("constant " + c + " denotes no individual");
  }
  for (const auto& [p, a] : vocabulary.predicates) {
    auto it = predicates.find(p);
    if (it == predicates.end()) throw QueryError("predicate " + p + " has no denotation");
    auto rel = structure.relations.find(it->second);
    if (rel == structure.relations.end()) throw QueryError("predicate " + p + " denotes unknown relation");
    if (rel->second.arity != a) throw QueryError("predicate " + p + " disagrees in arity with " + it->second);
  }
  if (constants.size() != vocabulary.constants.size() || predicates.size() != vocabulary.predicates.size()) {
    throw QueryError("commitment interprets symbols outside the vocabulary");
  }
}

std::string FOModel::str(const std::vector<std::string>& individuals) const {
  std::ostringstream out;
  auto name = [&](std::uint32_t i) { return i < individuals.size() ? individuals[i] : "#" + std::to_string(i); };
  for (const auto& [c, d] : constants) out << c << " = " << name(d) << "\n";
  for (const auto& [p, rel] : predicates) {
    out << p << " = {";
    bool first = true;
    for (const auto& t : rel) {
      out << (first ? "" : ", ");
      first = false;
      if (t.size() == 1) {
        out << name(t[0]);
        continue;
      }
      out << "(";
      for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << name(t[i]);
      out << ")";
    }
    out << "}\n";
  }
  return out.str();
}

ExtensionalStructure world_extension(const IntensionalStructure& c, const std::string& world) {
  const auto w = c.world_index(world);
  ExtensionalStructure s;
  s.individuals = c.individuals;
  for (const auto& [name, rel] : c.relations) s.relations[name] = rel.by_world.at(w);
  return s;
}

bool is_intended_model(const FOModel& m, const OntologicalCommitment& k) {
  k.validate();
  const auto& v = k.vocabulary;
  if (m.constants.size() != v.constants.size() || m.predicates.size() != v.predicates.size()) {
    throw QueryError("model and commitment have different vocabularies");
  }
  for (const auto& c : v.constants) {
    auto it = m.constants.find(c);
    if (it == m.constants.end()) throw QueryError("model does not interpret " + c);
    if (it->second != k.constants.at(c)) return false;
  }
  for (const auto& [p, a] : v.predicates) {
    if (!m.predicates.count(p)) throw QueryError("model does not interpret " + p);
  }
  for (std::size_t w = 0; w < k.structure.worlds.size(); ++w) {
    bool all = true;
    for (const auto& [p, rel] : k.predicates) {
      if (m.predicates.at(p) != k.structure.relations.at(rel).by_world[w]) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

std::vector<FOModel> intended_models(const OntologicalCommitment& k) {
  k.validate();
  std::set<FOModel> out;
  for (std::size_t w = 0; w < k.structure.worlds.size(); ++w) {
    FOModel m;
    m.constants = k.constants;
    for (const auto& [p, rel] : k.predicates) m.predicates[p] = k.structure.relations.at(rel).by_world[w];
    out.insert(std::move(m));
  }
  return {out.begin(), out.end()};
}

std::uint64_t model_count(const Vocabulary& v, std::uint32_t n) {
  v.validate();
  const Layout layout(v, n);
  std::uint64_t total = ipow(n, static_cast<int>(layout.constants.size()));
  for (const auto& [p, a] : layout.predicates) {
    const auto bits = ipow(n, a);
    if (bits >= 40 || total > (std::uint64_t(1) << (62 - bits))) return UINT64_MAX;
    total <<= bits;
  }
  return total;
}

std::vector<FOModel> all_models(const Vocabulary& v, std::uint32_t n, std::uint64_t max_models) {
  if (n == 0) throw QueryError("no individuals");
  const auto count = model_count(v, n);
  if (count > max_models) throw QueryError("size guard exceeded: " + std::to_string(count) + " models");
  const Layout layout(v, n);
  std::vector<FOModel> out;
  out.reserve(count);
  layout.each([&](const auto& c, const auto& masks) { out.push_back(layout.decode(c, masks)); });
  return out;
}

bool satisfies(const FOModel& m, const std::vector<Term>& axioms, const Vocabulary& v, std::uint32_t n) {
  check_axioms(axioms, v);
  const FiniteModel fm = to_finite(m, v, n);
  const Evaluator ev(fm);
  return std::all_of(axioms.begin(), axioms.end(), [&](const Term& a) { return ev.holds(a); });
}

OntologyFit ontology_fit(const std::vector<Term>& axioms, const OntologicalCommitment& k, std::uint64_t max_models) {
  k.validate();
  check_axioms(axioms, k.vocabulary);
  const auto n = static_cast<std::uint32_t>(k.structure.individuals.size());
  const auto count = model_count(k.vocabulary, n);
  if (count > max_models) throw QueryError("size guard exceeded: " + std::to_string(count) + " models");
  const auto intended = intended_models(k);
  const std::set<FOModel> intended_set(intended.begin(), intended.end());

  OntologyFit fit;
  fit.total = count;
  fit.intended = intended.size();
  auto holds = [&](const FOModel& m) {
    const FiniteModel fm = to_finite(m, k.vocabulary, n);
    const Evaluator ev(fm);
    return std::all_of(axioms.begin(), axioms.end(), [&](const Term& a) { return ev.holds(a); });
  };
  for (const auto& m : intended) fit.intended_admitted += holds(m) ? 1 : 0;
  const Layout layout(k.vocabulary, n);
  layout.each([&](const auto& c, const auto& masks) {
    const FOModel m = layout.decode(c, masks);
    if (axioms.empty() || holds(m)) ++fit.admitted;
  });
  fit.soundness = fit.intended ? double(fit.intended_admitted) / double(fit.intended) : 1.0;
  // Every admitted intended model is among the admitted ones.
  fit.coverage = fit.admitted ? double(fit.intended_admitted) / double(fit.admitted) : 1.0;
  return fit;
}

std::size_t isomorphism_classes(const std::vector<FOModel>& models, std::uint32_t n) {
  if (n > 7) throw QueryError("isomorphism classes: more than 7 individuals");
  std::vector<std::uint32_t> perm(n);
  std::vector<std::vector<std::uint32_t>> perms;
  for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  std::set<FOModel> canon;
  for (const auto& m : models) {
    std::optional<FOModel> least;
    for (const auto& p : perms) {
      FOModel r;
      for (const auto& [c, x] : m.constants) r.constants[c] = p[x];
      for (const auto& [name, rel] : m.predicates) {
        Relation& out = r.predicates[name];
        for (const auto& t : rel) {
          Tuple u;
          for (auto x : t) u.push_back(p[x]);
          out.insert(u);
        }
      }
      if (!least || r < *least) least = std::move(r);
    }
    if (least) canon.insert(*least);
  }
  return canon.size();
}

}  // namespace herm
