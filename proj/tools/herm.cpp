// herm: command-line front end over .herm corpus documents.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "herm/document.hpp"
#include "herm/syntax.hpp"
#include "json.hpp"

using namespace herm;
using ojson = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kFail = 1, kUnknown = 2, kUsage = 64, kData = 65 };

// Bad flag values or references to ids the document does not have.
struct UsageError : Error {
  using Error::Error;
};

void emit_error(const std::string& kind, int code, const std::vector<Issue>& issues) {
  ojson j;
  j["error"] = {{"kind", kind}, {"code", code}, {"issues", ojson::array()}};
  for (const auto& i : issues) {
    std::cerr << "herm: " << (i.where.empty() ? "" : i.where + ": ") << i.message << "\n";
    j["error"]["issues"].push_back({{"where", i.where}, {"message", i.message}});
  }
  std::cerr << j.dump() << "\n";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError(std::vector<Issue>{{path, "cannot read file"}});
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_to(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

std::string fmt(double x) {
  if (x == -std::numeric_limits<double>::infinity()) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

// Options shared by the subcommands that ask the reasoner.
struct Common {
  std::string file;
  Budget budget;
  bool no_cache = false;
};

// Budget defaults come from the environment; flags override them.
Budget env_budget;

void add_common(CLI::App* sub, Common& c, bool budget = true) {
  c.budget = env_budget;
  sub->add_option("file", c.file, "corpus document (.herm)")->required();
  if (!budget) return;
  sub->add_option("--max-worlds", c.budget.max_worlds, "model-search bound on worlds (env HERM_MAX_WORLDS)")
      ->capture_default_str();
  sub->add_option("--max-individuals", c.budget.max_individuals,
                  "model-search bound on individuals (env HERM_MAX_INDIVIDUALS)")
      ->capture_default_str();
  sub->add_option("--depth", c.budget.max_depth, "tableau depth bound (env HERM_DEPTH)")->capture_default_str();
  sub->add_option("--timeout-ms", c.budget.timeout_ms, "per-query time limit (env HERM_TIMEOUT_MS)")
      ->capture_default_str();
  sub->add_flag("--no-cache", c.no_cache, "disable the verdict cache");
}

ojson stats_json(const Reasoner& r) {
  const auto s = r.stats();
  return {{"queries", s.queries},     {"cache_hits", s.cache_hits}, {"valid", s.valid},
          {"invalid", s.invalid},     {"unknown", s.unknown}};
}

std::string stats_text(const Reasoner& r) {
  const auto s = r.stats();
  return "reasoner: " + std::to_string(s.queries) + " queries, " + std::to_string(s.cache_hits) + " cache hits, " +
         std::to_string(s.unknown) + " unknown\n";
}

void emit(const std::string& text, const ojson& machine) {
  std::cout << text << "--- json\n" << machine.dump(2) << "\n";
}

LogicSpec logic_flag(const std::string& text) {
  try {
    return LogicSpec::parse(text);
  } catch (const Error& e) {
    throw UsageError(std::string("--logic: ") + e.what());
  }
}

Term formula_flag(const std::string& text, const Signature& sig) {
  try {
    return parse_formula(text, sig);
  } catch (const ParseError& e) {
    throw DocumentError(std::vector<Issue>{
        {"formula:" + std::to_string(e.span().column), std::string(to_string(e.kind())) + ": " + e.what()}});
  }
}

const CorpusArgument& find_argument(const Document& doc, const std::string& id) {
  for (const auto& a : doc.discourse.corpus.arguments) {
    if (a.id == id) return a;
  }
  throw UsageError("unknown argument '" + id + "'");
}

// ---------------------------------------------------------------- parse

struct ParseOpts {
  Common c;
  std::string out, export_tptp, import_tptp;
};

int cmd_parse(const ParseOpts& o) {
  Document doc = load_document(o.c.file);
  int imported = 0;
  if (!o.import_tptp.empty()) imported = import_tptp(doc, slurp(o.import_tptp));
  const auto& d = doc.discourse;
  std::size_t candidates = 0;
  for (const auto& [sid, pool] : d.candidates) candidates += pool.size();
  ojson j = {{"schema", kSchema},
             {"sentences", d.corpus.sentences.size()},
             {"candidates", candidates},
             {"arguments", d.corpus.arguments.size()},
             {"postulates", d.postulates.size()},
             {"edges", d.network.intended.size()},
             {"structures", doc.structures.size()},
             {"imported", imported}};
  std::ostringstream t;
  t << "ok " << o.c.file << "\n";
  for (const auto& [k, v] : j.items()) {
    if (k != "schema") t << "  " << k << " " << v.get<std::size_t>() << "\n";
  }
  if (!o.out.empty()) write_to(o.out, save_document(doc));
  if (!o.export_tptp.empty()) write_to(o.export_tptp, export_tptp(doc));
  if (o.out != "-" && o.export_tptp != "-") emit(t.str(), j);
  return kOk;
}

// ---------------------------------------------------------------- embed

struct EmbedOpts {
  Common c;
  std::string formula, sentence, logic;
  bool validized = false;
};

int cmd_embed(const EmbedOpts& o) {
  const Document doc = load_document(o.c.file);
  if (o.formula.empty() == o.sentence.empty()) throw UsageError("give exactly one of --formula and --sentence");
  Term phi;
  LogicSpec spec = LogicSpec::preset("K");
  if (!o.sentence.empty()) {
    const auto fm = formalization(doc.state(), doc.discourse);
    auto it = fm.find(o.sentence);
    if (it == fm.end()) throw UsageError("unknown sentence '" + o.sentence + "'");
    phi = it->second.formula;
    spec = it->second.spec;
  } else {
    phi = formula_flag(o.formula, doc.signature);
  }
  if (!o.logic.empty()) spec = logic_flag(o.logic);
  const auto res = embed(phi, spec);
  const Term out = o.validized ? validize(res.hol_term, spec.validity) : res.hol_term;
  ojson j = {{"logic", spec.str()}, {"source", print(phi)}, {"term", print(out)}, {"frame", ojson::array()},
             {"auxiliary", ojson::object()}};
  std::ostringstream t;
  t << "logic " << spec.str() << "\nsource " << print(phi) << "\nterm " << print(out) << "\n";
  for (const auto& f : res.frame_theory) {
    t << "frame " << f.label << " " << print(f.term) << "\n";
    j["frame"].push_back({{"label", f.label}, {"formula", print(f.term)}});
  }
  for (const auto& [name, ty] : res.aux_signature) {
    t << "const " << name << " : " << ty.str() << "\n";
    j["auxiliary"][name] = ty.str();
  }
  emit(t.str(), j);
  return kOk;
}

// ---------------------------------------------------------------- check

struct CheckOpts {
  Common c;
  std::vector<std::string> args;
  std::string logic;
  bool no_circularity = false;
};

const char* outcome(const CorrectnessReport& rep) {
  return rep.pass() ? "pass" : rep.overall == Tri::No ? "fail" : "unknown";
}

int cmd_check(const CheckOpts& o) {
  const Document doc = load_document(o.c.file);
  const auto& d = doc.discourse;
  std::vector<std::string> ids = o.args;
  if (ids.empty()) {
    for (const auto& a : d.corpus.arguments) ids.push_back(a.id);
  }
  for (const auto& id : ids) find_argument(doc, id);
  const EngineState s = doc.state();
  auto args = formalized_arguments(s, d);
  const auto theory = active_theory(s, d);
  Reasoner r(!o.c.no_cache);
  std::ostringstream t;
  ojson j = {{"arguments", ojson::array()}};
  bool failed = false, unknown = false;
  for (const auto& id : ids) {
    Argument a = args.at(id);
    if (!o.logic.empty()) a.spec = logic_flag(o.logic);
    const auto rep = check_correctness(a, theory, o.c.budget, r, {!o.no_circularity});
    failed = failed || rep.overall == Tri::No;
    unknown = unknown || rep.overall == Tri::Unknown;
    t << "argument " << id << "  logic " << a.spec.str() << "\n";
    for (const auto& p : a.premises) t << "  premise     " << p.label << "  " << print(p.term) << "\n";
    t << "  conclusion  " << a.conclusion.label << "  " << print(a.conclusion.term) << "\n";
    t << "  postulates ";
    if (a.postulates.empty()) t << " none";
    for (const auto& p : a.postulates) t << " " << p;
    t << "\n  validity    " << to_string(rep.validity.kind) << "  [" << rep.validity.certificate << "]\n";
    t << "  consistency " << to_string(rep.consistency.kind) << "  [" << rep.consistency.certificate << "]\n";
    t << "  circular    " << to_string(rep.circular);
    if (!rep.circular_premise.empty()) t << "  (" << rep.circular_premise << ")";
    t << "\n  idle       ";
    if (rep.idle_premises.empty() && rep.idle_unknown.empty()) t << " none";
    for (const auto& p : rep.idle_premises) t << " " << p;
    for (const auto& p : rep.idle_unknown) t << " " << p << "?";
    t << "\n  overall     " << outcome(rep) << "\n";
    j["arguments"].push_back({{"id", id},
                              {"logic", a.spec.str()},
                              {"validity", to_string(rep.validity.kind)},
                              {"validity_certificate", rep.validity.certificate},
                              {"consistency", to_string(rep.consistency.kind)},
                              {"consistency_certificate", rep.consistency.certificate},
                              {"circular", to_string(rep.circular)},
                              {"idle", rep.idle_premises},
                              {"idle_unknown", rep.idle_unknown},
                              {"overall", outcome(rep)}});
  }
  t << stats_text(r);
  j["reasoner"] = stats_json(r);
  emit(t.str(), j);
  return failed ? kFail : unknown ? kUnknown : kOk;
}

// ---------------------------------------------------------------- models

struct ModelsOpts {
  Common c;
  std::string arg, logic;
  std::vector<std::string> formulas;
};

int cmd_models(const ModelsOpts& o) {
  const Document doc = load_document(o.c.file);
  if (o.arg.empty() == o.formulas.empty()) throw UsageError("give exactly one of --arg and --formula");
  const EngineState s = doc.state();
  const auto theory = active_theory(s, doc.discourse);
  Reasoner r(!o.c.no_cache);
  std::ostringstream t;
  ojson j;
  std::optional<FiniteModel> model;
  int code = kOk;
  if (!o.arg.empty()) {
    find_argument(doc, o.arg);
    const Argument a = formalized_arguments(s, doc.discourse).at(o.arg);
    const LogicSpec spec = o.logic.empty() ? a.spec : logic_flag(o.logic);
    std::vector<Term> prem;
    for (const auto& p : a.premises) prem.push_back(p.term);
    prem.insert(prem.end(), theory.begin(), theory.end());
    const auto v = r.entails(prem, a.conclusion.term, spec, o.c.budget);
    j = {{"query", "countermodel"}, {"argument", o.arg}, {"logic", spec.str()}, {"verdict", to_string(v.kind)},
         {"certificate", v.certificate}};
    t << "countermodel search for " << o.arg << " under " << spec.str() << ": " << to_string(v.kind) << "  ["
      << v.certificate << "]\n";
    model = v.countermodel;
    if (v.valid()) code = kFail;
    if (v.unknown()) code = kUnknown;
  } else {
    std::vector<Term> fs = theory;
    for (const auto& f : o.formulas) fs.push_back(formula_flag(f, doc.signature));
    const LogicSpec spec = o.logic.empty() ? LogicSpec::preset("K") : logic_flag(o.logic);
    const auto c = r.consistent(fs, spec, o.c.budget);
    j = {{"query", "model"}, {"logic", spec.str()}, {"verdict", to_string(c.kind)}, {"certificate", c.certificate}};
    t << "model search under " << spec.str() << ": " << to_string(c.kind) << "  [" << c.certificate << "]\n";
    model = c.model;
    if (c.kind == SatKind::Unsat) code = kFail;
    if (c.kind == SatKind::Unknown) code = kUnknown;
  }
  if (model) {
    t << kripke_text(*model);
    j["model"] = model->str();
  }
  t << stats_text(r);
  j["reasoner"] = stats_json(r);
  emit(t.str(), j);
  return code;
}

// ---------------------------------------------------------------- score

struct ScoreOpts {
  Common c;
  std::vector<std::string> sentences;
  bool strict = false;
  AdequacyWeights w;
};

int cmd_score(const ScoreOpts& o) {
  const Document doc = load_document(o.c.file);
  const auto& d = doc.discourse;
  for (const auto& sid : o.sentences) {
    if (!d.candidates.count(sid)) throw UsageError("unknown sentence '" + sid + "'");
  }
  const EngineState s = doc.state();
  const auto fm = formalization(s, d);
  AdequacyContext ctx;
  ctx.corpus = &d.corpus;
  ctx.fmap = &fm;
  ctx.theory = active_theory(s, d);
  ctx.arg_specs = s.logic;
  ctx.budget = o.c.budget;
  ctx.strict = o.strict;
  Reasoner r(!o.c.no_cache);
  std::ostringstream t;
  ojson j = {{"sentences", ojson::array()}};
  for (const auto& [sid, pool] : d.candidates) {
    if (!o.sentences.empty() && std::find(o.sentences.begin(), o.sentences.end(), sid) == o.sentences.end()) continue;
    std::vector<std::pair<std::string, Term>> cands;
    for (const auto& c : pool) cands.push_back({c.label, c.formula});
    const auto scores = score_candidates(sid, cands, fm.at(sid).spec, ctx, o.w, r);
    t << "sentence " << sid << "  \"" << d.corpus.sentences.at(sid) << "\"\n";
    std::size_t width = 9;
    for (const auto& c : scores) width = std::max(width, c.label.size());
    auto pad = [&](const std::string& x) { return x + std::string(width - x.size(), ' '); };
    t << "    " << pad("candidate") << "  reliable  ambitiousness  simplicity  aggregate  formula\n";
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < scores.size(); ++i) {
      const auto& c = scores[i];
      char line[160];
      std::snprintf(line, sizeof line, "  %s %s  %-8s  %13s  %10zu  %9s  ", i == std::size_t(s.choice.at(sid)) ? "*" : " ",
                    pad(c.label).c_str(), to_string(c.score.reliable), fmt(c.score.ambitiousness).c_str(),
                    c.score.simplicity, fmt(c.score.aggregate).c_str());
      t << line << print(c.formula) << "\n";
      rows.push_back({{"candidate", c.label},
                      {"selected", i == std::size_t(s.choice.at(sid))},
                      {"reliable", to_string(c.score.reliable)},
                      {"ambitiousness", c.score.ambitiousness},
                      {"simplicity", c.score.simplicity},
                      {"aggregate", fmt(c.score.aggregate)}});
    }
    j["sentences"].push_back({{"id", sid}, {"candidates", rows}});
  }
  t << stats_text(r);
  j["reasoner"] = stats_json(r);
  emit(t.str(), j);
  return kOk;
}

// ---------------------------------------------------------------- network

struct NetworkOpts {
  Common c;
  std::string dot;
  double lambda = 0.5;
};

int cmd_network(const NetworkOpts& o) {
  const Document doc = load_document(o.c.file);
  const auto& d = doc.discourse;
  const EngineState s = doc.state();
  Reasoner r(!o.c.no_cache);
  const auto rep =
      role_fulfillment(d.network, formalized_arguments(s, d), active_theory(s, d), o.c.budget, r, o.lambda);
  std::ostringstream t;
  ojson j = {{"edges", ojson::array()}};
  t << "from  to  polarity  status  via\n";
  auto row = [&](const Edge& e, const std::string& status, const std::vector<Mechanism>& via) {
    t << e.from << "  " << e.to << "  " << to_string(e.polarity) << "  " << status;
    ojson v = ojson::array();
    for (auto m : via) {
      t << (v.empty() ? "  " : ",") << to_string(m);
      v.push_back(to_string(m));
    }
    t << "\n";
    j["edges"].push_back(
        {{"from", e.from}, {"to", e.to}, {"polarity", to_string(e.polarity)}, {"status", status}, {"via", v}});
  };
  for (const auto& e : rep.intended) row(e.edge, e.realized ? "realized" : "missing", e.via);
  for (const auto& e : rep.spurious) {
    std::vector<Mechanism> via;
    for (const auto& rel : rep.relations) {
      if (rel.edge() == e && std::find(via.begin(), via.end(), rel.mechanism) == via.end()) via.push_back(rel.mechanism);
    }
    row(e, "spurious", via);
  }
  t << "relations\n";
  j["relations"] = ojson::array();
  for (const auto& rel : rep.relations) {
    t << "  " << rel.from << " " << to_string(rel.mechanism) << " " << rel.to
      << (rel.target.empty() ? "" : ":" + rel.target) << "  [" << rel.certificate << "]\n";
    j["relations"].push_back({{"from", rel.from},
                              {"to", rel.to},
                              {"mechanism", to_string(rel.mechanism)},
                              {"target", rel.target},
                              {"certificate", rel.certificate}});
  }
  std::vector<Edge> attacks;
  for (const auto& rel : rep.relations) {
    if (rel.polarity == Polarity::Attack) attacks.push_back(rel.edge());
  }
  const auto grounded = grounded_extension(d.network.nodes, attacks);
  t << "role fulfillment " << fmt(rep.score) << (rep.empty ? " (no intended edges)" : "") << "\n";
  t << "grounded extension:";
  for (const auto& g : grounded) t << " " << g;
  if (grounded.empty()) t << " none";
  t << "\n";
  j["role_fulfillment"] = rep.score;
  j["grounded"] = grounded;
  const std::string dot = to_dot(d.network, rep);
  if (o.dot.empty()) {
    t << dot;
  } else {
    write_to(o.dot, dot);
  }
  t << stats_text(r);
  j["reasoner"] = stats_json(r);
  emit(t.str(), j);
  return kOk;
}

// ---------------------------------------------------------------- concept

struct ConceptOpts {
  Common c;
  std::string structure;
  bool list = false;
};

int cmd_concept(const ConceptOpts& o) {
  const Document doc = load_document(o.c.file);
  bool found = o.structure.empty();
  std::ostringstream t;
  ojson j = {{"structures", ojson::array()}};
  for (const auto& st : doc.structures) {
    if (!o.structure.empty() && st.id != o.structure) continue;
    found = true;
    const auto& k = st.commitment;
    const auto n = static_cast<std::uint32_t>(k.structure.individuals.size());
    const auto intended = intended_models(k);
    const auto total = model_count(k.vocabulary, n);
    const auto classes = isomorphism_classes(intended, n);
    t << "structure " << st.id << "  individuals " << n << "  worlds " << k.structure.worlds.size() << "\n";
    t << "  intended models " << intended.size() << " of " << total << "  (" << classes
      << " up to renaming individuals)\n";
    ojson sj = {{"id", st.id}, {"intended", intended.size()}, {"total", total}, {"isomorphism_classes", classes}};
    if (o.list) {
      for (std::size_t i = 0; i < intended.size(); ++i) {
        std::istringstream lines(intended[i].str(k.structure.individuals));
        std::string part, line;
        while (std::getline(lines, part)) line += (line.empty() ? "" : "; ") + part;
        t << "    model " << i + 1 << ": " << line << "\n";
      }
    }
    const auto fit = ontology_fit(st.axioms, k);
    t << "  axioms " << st.axioms.size() << "  admitted " << fit.admitted << "  intended admitted "
      << fit.intended_admitted << "\n";
    t << "  soundness " << fmt(fit.soundness) << "  coverage " << fmt(fit.coverage) << "\n";
    sj["axioms"] = st.axioms.size();
    sj["admitted"] = fit.admitted;
    sj["intended_admitted"] = fit.intended_admitted;
    sj["soundness"] = fit.soundness;
    sj["coverage"] = fit.coverage;
    j["structures"].push_back(sj);
  }
  if (!found) throw UsageError("unknown structure '" + o.structure + "'");
  emit(t.str(), j);
  return kOk;
}

// ---------------------------------------------------------------- search

struct SearchOpts {
  Common c;
  EngineConfig cfg;
  std::string out, trace, report;
};

int cmd_search(SearchOpts o) {
  Document doc = load_document(o.c.file);
  o.cfg.budget = o.c.budget;
  try {
    o.cfg.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  Reasoner r(!o.c.no_cache);
  const RunResult res = run(doc.discourse, o.cfg, r);
  doc.record(res);
  if (!o.out.empty()) write_to(o.out, save_document(doc));
  if (!o.trace.empty()) write_to(o.trace, trace_text(res.trace));
  const std::string text = report_text(res, doc.discourse) + stats_text(r);
  ojson j = {{"termination", res.termination},
             {"iterations", res.trace.size()},
             {"objective", fmt(res.best_breakdown.total)},
             {"maximum", fmt(res.maximum)},
             {"maximal", res.best_breakdown.maximal},
             {"promoted", res.promoted},
             {"unrealizable", ojson::array()},
             {"reasoner", stats_json(r)}};
  for (const auto& e : res.unrealizable) {
    j["unrealizable"].push_back({{"from", e.from}, {"to", e.to}, {"polarity", to_string(e.polarity)}});
  }
  if (o.report.empty()) {
    emit(text, j);
  } else {
    write_to(o.report, text + "--- json\n" + j.dump(2) + "\n");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    env_budget = Budget::from_env();
  } catch (const Error& e) {
    emit_error("usage", kUsage, {{"environment", e.what()}});
    return kUsage;
  }
  CLI::App app{"herm: formalize and check natural-language arguments in modal HOL"};
  app.require_subcommand(0, 1);

  ParseOpts po;
  auto* parse = app.add_subcommand("parse", "validate a document; convert formula sections to and from TPTP");
  add_common(parse, po.c, false);
  parse->add_option("--out", po.out, "write the normalized document here ('-' for stdout)");
  parse->add_option("--export-tptp", po.export_tptp, "write postulates and candidates as THF ('-' for stdout)");
  parse->add_option("--import-tptp", po.import_tptp, "merge THF definitions and candidates before writing");

  EmbedOpts eo;
  auto* emb = app.add_subcommand("embed", "print the HOL embedding of a formula");
  add_common(emb, eo.c, false);
  emb->add_option("--formula", eo.formula, "formula over the document signature");
  emb->add_option("--sentence", eo.sentence, "embed the sentence's selected candidate");
  emb->add_option("--logic", eo.logic, "logic, e.g. K, S4/local, K+reflexive/actualist");
  emb->add_flag("--validized", eo.validized, "print the o-typed validity statement instead");

  CheckOpts co;
  auto* check = app.add_subcommand("check", "correctness report for arguments (exit 0 pass, 1 fail, 2 unknown)");
  add_common(check, co.c);
  check->add_option("--arg", co.args, "argument id (repeatable; default all)");
  check->add_option("--logic", co.logic, "override every argument's logic");
  check->add_flag("--no-circularity", co.no_circularity, "skip the circularity test");

  ModelsOpts mo;
  auto* models = app.add_subcommand("models", "countermodel for an argument, or a model of formulas");
  add_common(models, mo.c);
  models->add_option("--arg", mo.arg, "find a countermodel to this argument");
  models->add_option("--formula", mo.formulas, "find a model of these formulas (repeatable)");
  models->add_option("--logic", mo.logic, "logic (default: the argument's, else K)");

  ScoreOpts so;
  auto* score = app.add_subcommand("score", "adequacy table of every candidate");
  add_common(score, so.c);
  score->add_option("--sentence", so.sentences, "restrict to these sentences (repeatable)");
  score->add_flag("--strict", so.strict, "Unknown verdicts make reliability unknown");
  score->add_option("--w-ambitiousness", so.w.ambitiousness, "weight of ambitiousness")->capture_default_str();
  score->add_option("--w-simplicity", so.w.simplicity, "weight of normalized symbol count")->capture_default_str();

  NetworkOpts no;
  auto* net = app.add_subcommand("network", "realized attack and support against the intended network");
  add_common(net, no.c);
  net->add_option("--dot", no.dot, "write the Graphviz dump here instead of stdout");
  net->add_option("--lambda", no.lambda, "spurious edge penalty")->capture_default_str();

  ConceptOpts cpo;
  auto* conc = app.add_subcommand("concept", "intended-model counts and ontology fit of the structures");
  add_common(conc, cpo.c, false);
  conc->add_option("--structure", cpo.structure, "only this structure");
  conc->add_flag("--list", cpo.list, "list the intended models");

  SearchOpts sro;
  auto* search = app.add_subcommand("search", "simulated-annealing search for the best formalization");
  add_common(search, sro.c);
  auto& cfg = sro.cfg;
  search->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  search->add_option("--iters", cfg.iterations, "iteration budget")->capture_default_str();
  search->add_option("--t0", cfg.t0, "initial temperature")->capture_default_str();
  search->add_option("--alpha", cfg.alpha, "geometric cooling factor")->capture_default_str();
  search->add_option("--stagnation", cfg.stagnation, "stop after this many iterations without improvement")
      ->capture_default_str();
  search->add_option("--promote-min", cfg.promote_min, "passing arguments a promoted postulate must serve")
      ->capture_default_str();
  search->add_option("--retries", cfg.retries, "re-proposals after a move breaking the postulates")
      ->capture_default_str();
  search->add_option("--w-net", cfg.w_net, "weight of role fulfillment")->capture_default_str();
  search->add_option("--lambda", cfg.lambda, "spurious edge penalty")->capture_default_str();
  search->add_flag("--strict", cfg.strict, "Unknown verdicts make reliability unknown");
  search->add_flag("--no-circularity", [&](std::int64_t) { cfg.circularity = false; }, "skip the circularity test");
  search->add_option("--out", sro.out, "write the document with the selections recorded ('-' for stdout)");
  search->add_option("--trace", sro.trace, "write the per-iteration trace (tab-separated)");
  search->add_option("--report", sro.report, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("usage", kUsage, {{"", e.what()}});
    return kUsage;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    emit_error("usage", kUsage, {{"", "a subcommand is required"}});
    return kUsage;
  }

  try {
    if (*parse) return cmd_parse(po);
    if (*emb) return cmd_embed(eo);
    if (*check) return cmd_check(co);
    if (*models) return cmd_models(mo);
    if (*score) return cmd_score(so);
    if (*net) return cmd_network(no);
    if (*conc) return cmd_concept(cpo);
    if (*search) return cmd_search(sro);
  } catch (const UsageError& e) {
    emit_error("usage", kUsage, {{"", e.what()}});
    return kUsage;
  } catch (const DocumentError& e) {
    emit_error("data", kData, e.issues());
    return kData;
  } catch (const Error& e) {
    emit_error("domain", kFail, {{"", e.what()}});
    return kFail;
  }
  return kUsage;
}
