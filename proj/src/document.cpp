#include "herm/document.hpp"

#include <fstream>
#include <sstream>

#include "herm/error.hpp"
#include "herm/syntax.hpp"
#include "json.hpp"

namespace herm {

using json = nlohmann::json;

namespace {

std::string join_issues(const std::vector<Issue>& issues) {
  std::string out = std::to_string(issues.size()) + " document error(s)";
  for (const auto& i : issues) out += "\n  " + i.where + ": " + i.message;
  return out;
}

class Reader {
 public:
  std::vector<Issue> issues;

  void fail(const std::string& where, const std::string& msg) { issues.push_back({where, msg}); }

  // Typed member access; records an issue and returns null on mismatch.
  const json* get(const json& obj, const std::string& key, const std::string& where, json::value_t type,
                  bool required = true) {
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(where, "missing field '" + key + "'");
      return nullptr;
    }
    const bool ok = type == json::value_t::number_unsigned ? it->is_number_unsigned() : it->type() == type;
    if (!ok) {
      fail(where + "." + key, std::string("expected ") + type_name(type) + ", found " + it->type_name());
      return nullptr;
    }
    return &*it;
  }

  std::string str(const json& obj, const std::string& key, const std::string& where, bool required = true) {
    const json* v = get(obj, key, where, json::value_t::string, required);
    return v ? v->get<std::string>() : "";
  }

  std::vector<std::string> strings(const json& arr, const std::string& where) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (arr[i].is_string()) {
        out.push_back(arr[i].get<std::string>());
      } else {
        fail(where + "[" + std::to_string(i) + "]", "expected string");
      }
    }
    return out;
  }

  bool formula(const std::string& text, const Signature& sig, const std::string& where, Term& out) {
    try {
      out = parse_formula(text, sig);
      return true;
    } catch (const ParseError& e) {
      fail(where, std::string(to_string(e.kind())) + " at column " + std::to_string(e.span().column) + ": " +
                      e.what());
    } catch (const Error& e) {
      fail(where, e.what());
    }
    return false;
  }

  bool lifted(const std::string& text, const Signature& sig, const std::string& where, Term& out) {
    if (!formula(text, sig, where, out)) return false;
    if (!out.ty().is_lifted()) {
      fail(where, "expected a modal formula (w>o), found type " + out.ty().str());
      return false;
    }
    return true;
  }

 private:
  static const char* type_name(json::value_t t) {
    switch (t) {
      case json::value_t::object: return "object";
      case json::value_t::array: return "array";
      case json::value_t::string: return "string";
      case json::value_t::boolean: return "boolean";
      case json::value_t::number_unsigned: return "non-negative integer";
      default: return "value";
    }
  }
};

const json::value_t kObject = json::value_t::object;
const json::value_t kArray = json::value_t::array;

void read_signature(Reader& rd, const json& root, Document& doc) {
  const json* sig = rd.get(root, "signature", "$", kObject);
  if (!sig) return;
  if (const json* bases = rd.get(*sig, "bases", "signature", kArray, false)) {
    for (const auto& b : rd.strings(*bases, "signature.bases")) {
      try {
        doc.signature.declare_base(b);
        doc.bases.push_back(b);
      } catch (const Error& e) {
        rd.fail("signature.bases", e.what());
      }
    }
  }
  if (const json* consts = rd.get(*sig, "constants", "signature", kObject)) {
    for (const auto& [name, ty] : consts->items()) {
      const std::string where = "signature.constants." + name;
      if (!ty.is_string()) {
        rd.fail(where, "expected a type string");
        continue;
      }
      try {
        doc.signature.declare(name, parse_type(ty.get<std::string>(), doc.signature));
      } catch (const Error& e) {
        rd.fail(where, e.what());
      }
    }
  }
}

void read_structure(Reader& rd, const json& js, const std::string& where, Document& doc) {
  const std::size_t start = rd.issues.size();
  Structure st;
  st.id = rd.str(js, "id", where);
  auto& k = st.commitment;
  auto& c = k.structure;
  if (const json* ind = rd.get(js, "individuals", where, kArray)) c.individuals = rd.strings(*ind, where + ".individuals");
  if (const json* ws = rd.get(js, "worlds", where, kArray)) c.worlds = rd.strings(*ws, where + ".worlds");
  auto individual = [&](const std::string& name, const std::string& at) -> std::optional<std::uint32_t> {
    for (std::size_t i = 0; i < c.individuals.size(); ++i) {
      if (c.individuals[i] == name) return static_cast<std::uint32_t>(i);
    }
    rd.fail(at, "unknown individual '" + name + "'");
    return std::nullopt;
  };
  if (const json* rels = rd.get(js, "relations", where, kObject)) {
    for (const auto& [name, rj] : rels->items()) {
      const std::string at = where + ".relations." + name;
      if (!rj.is_object()) {
        rd.fail(at, "expected object");
        continue;
      }
      IntensionalRelation rel;
      if (const json* ar = rd.get(rj, "arity", at, json::value_t::number_unsigned)) rel.arity = ar->get<int>();
      const json* ext = rd.get(rj, "extensions", at, kObject);
      for (const auto& w : c.worlds) {
        Relation r;
        if (ext && ext->contains(w)) {
          const json& tuples = ext->at(w);
          const std::string wat = at + ".extensions." + w;
          if (!tuples.is_array()) {
            rd.fail(wat, "expected an array of tuples");
          } else {
            for (std::size_t i = 0; i < tuples.size(); ++i) {
              const auto names = tuples[i].is_array() ? rd.strings(tuples[i], wat + "[" + std::to_string(i) + "]")
                                                      : std::vector<std::string>{};
              if (static_cast<int>(names.size()) != rel.arity) {
                rd.fail(wat + "[" + std::to_string(i) + "]", "expected a tuple of " + std::to_string(rel.arity));
                continue;
              }
              Tuple t;
              for (const auto& n : names) {
                if (auto x = individual(n, wat)) t.push_back(*x);
              }
              if (static_cast<int>(t.size()) == rel.arity) r.insert(t);
            }
          }
        } else if (ext) {
          rd.fail(at + ".extensions", "no extension for world '" + w + "'");
        }
        rel.by_world.push_back(r);
      }
      if (ext) {
        for (const auto& [w, unused] : ext->items()) {
          if (std::find(c.worlds.begin(), c.worlds.end(), w) == c.worlds.end()) {
            rd.fail(at + ".extensions." + w, "unknown world");
          }
        }
      }
      c.relations[name] = rel;
    }
  }
  if (const json* cs = rd.get(js, "constants", where, kObject, false)) {
    for (const auto& [name, ind] : cs->items()) {
      if (!ind.is_string()) {
        rd.fail(where + ".constants." + name, "expected an individual name");
        continue;
      }
      k.vocabulary.constants.insert(name);
      if (auto x = individual(ind.get<std::string>(), where + ".constants." + name)) k.constants[name] = *x;
    }
  }
  if (const json* ps = rd.get(js, "predicates", where, kObject, false)) {
    for (const auto& [name, rel] : ps->items()) {
      const std::string at = where + ".predicates." + name;
      if (!rel.is_string() || !c.relations.count(rel.get<std::string>())) {
        rd.fail(at, "expected the name of a relation of this structure");
        continue;
      }
      k.predicates[name] = rel.get<std::string>();
      k.vocabulary.predicates[name] = c.relations.at(rel.get<std::string>()).arity;
    }
  }
  if (rd.issues.size() == start) {
    try {
      k.validate();
    } catch (const Error& e) {
      rd.fail(where, e.what());
    }
  }
  if (const json* ax = rd.get(js, "axioms", where, kArray, false)) {
    Signature sig;
    try {
      sig = k.vocabulary.signature();
    } catch (const Error& e) {
      rd.fail(where, e.what());
    }
    const auto texts = rd.strings(*ax, where + ".axioms");
    for (std::size_t i = 0; i < texts.size(); ++i) {
      Term t;
      if (rd.formula(texts[i], sig, where + ".axioms[" + std::to_string(i) + "]", t)) st.axioms.push_back(t);
    }
  }
  doc.structures.push_back(std::move(st));
}

}  // namespace

DocumentError::DocumentError(std::vector<Issue> issues) : Error(join_issues(issues)), issues_(std::move(issues)) {}

EngineState Document::state() const {
  EngineState s = initial_state(discourse);
  for (const auto& [sid, label] : selected) {
    const auto& pool = discourse.candidates.at(sid);
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (pool[i].label == label) s.choice[sid] = static_cast<int>(i);
    }
  }
  s.active = active;
  for (const auto& [a, l] : logic) s.logic[a] = LogicSpec::parse(l);
  return s;
}

void Document::record(const RunResult& res) {
  selected.clear();
  for (const auto& [sid, i] : res.best.choice) selected[sid] = discourse.candidates.at(sid).at(i).label;
  logic.clear();
  for (const auto& [a, l] : res.best.logic) logic[a] = l.str();
  active = res.best.active;
  settled = std::set<std::string>(res.promoted.begin(), res.promoted.end());
}

Document parse_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DocumentError(std::vector<Issue>{{"$", "malformed JSON at byte " + std::to_string(e.byte)}});
  }
  Reader rd;
  Document doc;
  if (!root.is_object()) throw DocumentError(std::vector<Issue>{{"$", "expected a JSON object"}});
  const std::string schema = rd.str(root, "schema", "$");
  if (!schema.empty() && schema != kSchema) rd.fail("schema", "unsupported schema '" + schema + "', expected herm/1");
  read_signature(rd, root, doc);

  Discourse& d = doc.discourse;
  std::set<std::string> labels;
  if (const json* ss = rd.get(root, "sentences", "$", kArray)) {
    for (std::size_t i = 0; i < ss->size(); ++i) {
      const std::string where = "sentences[" + std::to_string(i) + "]";
      const json& sj = (*ss)[i];
      if (!sj.is_object()) {
        rd.fail(where, "expected object");
        continue;
      }
      const std::string id = rd.str(sj, "id", where);
      const std::string txt = rd.str(sj, "text", where);
      if (id.empty()) continue;
      if (d.corpus.sentences.count(id)) rd.fail(where + ".id", "duplicate sentence id '" + id + "'");
      d.corpus.sentences[id] = txt;
      std::vector<LabeledFormula> pool;
      if (const json* cs = rd.get(sj, "candidates", where, kArray)) {
        if (cs->empty()) rd.fail(where + ".candidates", "empty candidate pool");
        for (std::size_t j = 0; j < cs->size(); ++j) {
          const std::string at = where + ".candidates[" + std::to_string(j) + "]";
          const json& cj = (*cs)[j];
          if (!cj.is_object()) {
            rd.fail(at, "expected object");
            continue;
          }
          LabeledFormula lf;
          lf.label = rd.str(cj, "label", at);
          const std::string f = rd.str(cj, "formula", at);
          if (!lf.label.empty() && !labels.insert(lf.label).second) {
            rd.fail(at + ".label", "duplicate formula label '" + lf.label + "'");
          }
          if (const json* sel = rd.get(cj, "selected", at, json::value_t::boolean, false); sel && sel->get<bool>()) {
            if (doc.selected.count(id)) rd.fail(at + ".selected", "more than one candidate selected");
            doc.selected[id] = lf.label;
          }
          if (!f.empty() && rd.lifted(f, doc.signature, at + ".formula", lf.formula)) pool.push_back(lf);
        }
      }
      d.candidates[id] = pool;
    }
  }

  std::set<std::string> arg_ids;
  if (const json* as = rd.get(root, "arguments", "$", kArray)) {
    for (std::size_t i = 0; i < as->size(); ++i) {
      const std::string where = "arguments[" + std::to_string(i) + "]";
      const json& aj = (*as)[i];
      if (!aj.is_object()) {
        rd.fail(where, "expected object");
        continue;
      }
      CorpusArgument a;
      a.id = rd.str(aj, "id", where);
      if (!a.id.empty() && !arg_ids.insert(a.id).second) rd.fail(where + ".id", "duplicate argument id '" + a.id + "'");
      if (const json* ps = rd.get(aj, "premises", where, kArray)) a.premises = rd.strings(*ps, where + ".premises");
      a.conclusion = rd.str(aj, "conclusion", where);
      for (std::size_t j = 0; j < a.premises.size(); ++j) {
        if (!d.corpus.sentences.count(a.premises[j])) {
          rd.fail(where + ".premises[" + std::to_string(j) + "]", "unknown sentence '" + a.premises[j] + "'");
        }
      }
      if (!a.conclusion.empty() && !d.corpus.sentences.count(a.conclusion)) {
        rd.fail(where + ".conclusion", "unknown sentence '" + a.conclusion + "'");
      }
      const std::string tag = rd.str(aj, "tag", where, false);
      if (tag == "incorrect") {
        a.correct = false;
      } else if (!tag.empty() && tag != "correct") {
        rd.fail(where + ".tag", "expected 'correct' or 'incorrect'");
      }
      if (const json* ls = rd.get(aj, "logics", where, kArray, false)) {
        const auto specs = rd.strings(*ls, where + ".logics");
        if (specs.empty()) rd.fail(where + ".logics", "no admissible logic");
        for (std::size_t j = 0; j < specs.size(); ++j) {
          if (specs[j] == "*") continue;
          try {
            LogicSpec::parse(specs[j]);
          } catch (const Error& e) {
            rd.fail(where + ".logics[" + std::to_string(j) + "]", e.what());
          }
        }
        if (!a.id.empty()) d.logics[a.id] = specs;
      }
      const std::string chosen = rd.str(aj, "selected_logic", where, false);
      if (!chosen.empty()) {
        try {
          LogicSpec::parse(chosen);
          doc.logic[a.id] = chosen;
        } catch (const Error& e) {
          rd.fail(where + ".selected_logic", e.what());
        }
      }
      d.corpus.arguments.push_back(a);
    }
  }

  if (const json* pj = rd.get(root, "postulates", "$", kArray, false)) {
    for (std::size_t i = 0; i < pj->size(); ++i) {
      const std::string where = "postulates[" + std::to_string(i) + "]";
      const json& p = (*pj)[i];
      if (!p.is_object()) {
        rd.fail(where, "expected object");
        continue;
      }
      LabeledFormula lf;
      lf.label = rd.str(p, "label", where);
      const std::string f = rd.str(p, "formula", where);
      if (!lf.label.empty() && !labels.insert(lf.label).second) {
        rd.fail(where + ".label", "duplicate formula label '" + lf.label + "'");
      }
      const std::string status = rd.str(p, "status", where, false);
      if (status == "active") {
        doc.active.insert(lf.label);
      } else if (status == "settled") {
        doc.active.insert(lf.label);
        doc.settled.insert(lf.label);
      } else if (!status.empty() && status != "inactive") {
        rd.fail(where + ".status", "expected inactive, active or settled");
      }
      if (!f.empty() && rd.lifted(f, doc.signature, where + ".formula", lf.formula)) d.postulates.push_back(lf);
    }
  }

  if (const json* nj = rd.get(root, "network", "$", kObject, false)) {
    if (const json* nodes = rd.get(*nj, "nodes", "network", kArray, false)) {
      d.network.nodes = rd.strings(*nodes, "network.nodes");
    } else {
      for (const auto& a : d.corpus.arguments) d.network.nodes.push_back(a.id);
    }
    std::set<std::string> nodes(d.network.nodes.begin(), d.network.nodes.end());
    for (std::size_t i = 0; i < d.network.nodes.size(); ++i) {
      if (!arg_ids.count(d.network.nodes[i])) {
        rd.fail("network.nodes[" + std::to_string(i) + "]", "unknown argument '" + d.network.nodes[i] + "'");
      }
    }
    std::set<Edge> seen;
    if (const json* es = rd.get(*nj, "edges", "network", kArray)) {
      for (std::size_t i = 0; i < es->size(); ++i) {
        const std::string where = "network.edges[" + std::to_string(i) + "]";
        const json& ej = (*es)[i];
        if (!ej.is_object()) {
          rd.fail(where, "expected object");
          continue;
        }
        Edge e;
        e.from = rd.str(ej, "from", where);
        e.to = rd.str(ej, "to", where);
        const std::string pol = rd.str(ej, "polarity", where);
        if (pol == "support") {
          e.polarity = Polarity::Support;
        } else if (pol != "attack") {
          rd.fail(where + ".polarity", "expected 'attack' or 'support'");
          continue;
        }
        if (!nodes.count(e.from)) rd.fail(where + ".from", "unknown node '" + e.from + "'");
        if (!nodes.count(e.to)) rd.fail(where + ".to", "unknown node '" + e.to + "'");
        if (e.from == e.to) rd.fail(where, "self-edge on '" + e.from + "'");
        if (!seen.insert(e).second) rd.fail(where, "duplicate edge");
        d.network.intended.push_back(e);
      }
    }
  }

  if (const json* sj = rd.get(root, "structures", "$", kArray, false)) {
    for (std::size_t i = 0; i < sj->size(); ++i) {
      const std::string where = "structures[" + std::to_string(i) + "]";
      if (!(*sj)[i].is_object()) {
        rd.fail(where, "expected object");
        continue;
      }
      read_structure(rd, (*sj)[i], where, doc);
    }
  }

  for (const auto& key : root.items()) {
    static const std::set<std::string> known{"schema",    "signature", "sentences", "arguments",
                                             "postulates", "network",  "structures"};
    if (!known.count(key.key())) rd.fail(key.key(), "unknown section");
  }
  if (rd.issues.empty()) {
    try {
      d.validate();
    } catch (const Error& e) {
      rd.fail("$", e.what());
    }
  }
  if (!rd.issues.empty()) throw DocumentError(rd.issues);
  return doc;
}

Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError(std::vector<Issue>{{path, "cannot read file"}});
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

std::string save_document(const Document& doc) {
  const Discourse& d = doc.discourse;
  json root;
  root["schema"] = kSchema;
  json consts = json::object();
  for (const auto& [name, ty] : doc.signature.constants()) consts[name] = ty.str();
  root["signature"] = {{"constants", consts}};
  if (!doc.bases.empty()) root["signature"]["bases"] = doc.bases;

  json sentences = json::array();
  for (const auto& [id, txt] : d.corpus.sentences) {
    json cands = json::array();
    for (const auto& c : d.candidates.at(id)) {
      json cj = {{"label", c.label}, {"formula", print(c.formula)}};
      auto sel = doc.selected.find(id);
      if (sel != doc.selected.end() && sel->second == c.label) cj["selected"] = true;
      cands.push_back(cj);
    }
    sentences.push_back({{"id", id}, {"text", txt}, {"candidates", cands}});
  }
  root["sentences"] = sentences;

  json args = json::array();
  for (const auto& a : d.corpus.arguments) {
    json aj = {{"id", a.id},
               {"premises", a.premises},
               {"conclusion", a.conclusion},
               {"tag", a.correct ? "correct" : "incorrect"}};
    auto ls = d.logics.find(a.id);
    if (ls != d.logics.end()) aj["logics"] = ls->second;
    auto chosen = doc.logic.find(a.id);
    if (chosen != doc.logic.end()) aj["selected_logic"] = chosen->second;
    args.push_back(aj);
  }
  root["arguments"] = args;

  json posts = json::array();
  for (const auto& p : d.postulates) {
    const char* status = doc.settled.count(p.label) ? "settled" : doc.active.count(p.label) ? "active" : "inactive";
    posts.push_back({{"label", p.label}, {"formula", print(p.formula)}, {"status", status}});
  }
  root["postulates"] = posts;

  if (!d.network.nodes.empty()) {
    json edges = json::array();
    for (const auto& e : d.network.intended) {
      edges.push_back({{"from", e.from}, {"to", e.to}, {"polarity", to_string(e.polarity)}});
    }
    root["network"] = {{"nodes", d.network.nodes}, {"edges", edges}};
  }

  if (!doc.structures.empty()) {
    json sts = json::array();
    for (const auto& st : doc.structures) {
      const auto& c = st.commitment.structure;
      json rels = json::object();
      for (const auto& [name, rel] : c.relations) {
        json ext = json::object();
        for (std::size_t w = 0; w < c.worlds.size(); ++w) {
          json tuples = json::array();
          for (const auto& t : rel.by_world[w]) {
            json tj = json::array();
            for (auto x : t) tj.push_back(c.individuals[x]);
            tuples.push_back(tj);
          }
          ext[c.worlds[w]] = tuples;
        }
        rels[name] = {{"arity", rel.arity}, {"extensions", ext}};
      }
      json cs = json::object();
      for (const auto& [name, x] : st.commitment.constants) cs[name] = c.individuals[x];
      json axioms = json::array();
      for (const auto& a : st.axioms) axioms.push_back(print(a));
      sts.push_back({{"id", st.id},
                     {"individuals", c.individuals},
                     {"worlds", c.worlds},
                     {"relations", rels},
                     {"constants", cs},
                     {"predicates", st.commitment.predicates},
                     {"axioms", axioms}});
    }
    root["structures"] = sts;
  }
  return root.dump(2) + "\n";
}

std::string export_tptp(const Document& doc) {
  std::string out;
  for (const auto& p : doc.discourse.postulates) out += to_tptp({p.label, Role::MeaningPostulate, p.formula}) + "\n";
  for (const auto& [sid, pool] : doc.discourse.candidates) {
    for (const auto& c : pool) out += to_tptp({c.label, Role::Candidate, c.formula}) + "\n";
  }
  return out;
}

int import_tptp(Document& doc, std::string_view text) {
  std::vector<NamedFormula> fs;
  try {
    fs = parse_tptp(text, doc.signature);
  } catch (const ParseError& e) {
    throw DocumentError(std::vector<Issue>{{"tptp:" + std::to_string(e.span().line) + ":" + std::to_string(e.span().column), e.what()}});
  }
  std::set<std::string> labels;
  for (const auto& p : doc.discourse.postulates) labels.insert(p.label);
  for (const auto& [sid, pool] : doc.discourse.candidates) {
    for (const auto& c : pool) labels.insert(c.label);
  }
  std::vector<Issue> issues;
  Document next = doc;
  int taken = 0;
  for (const auto& f : fs) {
    const std::string where = "tptp:" + f.label;
    if (f.role != Role::MeaningPostulate && f.role != Role::Candidate) continue;
    if (!f.term.ty().is_lifted()) {
      issues.push_back({where, "expected a modal formula (w>o)"});
      continue;
    }
    if (!labels.insert(f.label).second) {
      issues.push_back({where, "duplicate formula label '" + f.label + "'"});
      continue;
    }
    if (f.role == Role::MeaningPostulate) {
      next.discourse.postulates.push_back({f.label, f.term});
      ++taken;
      continue;
    }
    const auto cut = f.label.rfind('_');
    const std::string sid = cut == std::string::npos ? "" : f.label.substr(0, cut);
    if (!next.discourse.candidates.count(sid)) {
      issues.push_back({where, "label does not name a sentence as <sentence>_<suffix>"});
      continue;
    }
    next.discourse.candidates[sid].push_back({f.label, f.term});
    ++taken;
  }
  if (!issues.empty()) throw DocumentError(issues);
  doc = std::move(next);
  return taken;
}

}  // namespace herm
