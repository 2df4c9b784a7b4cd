// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "adequacy_corpus.hpp"
#include "concept_oracle.hpp"
#include "correctness_suite.hpp"
#include "generators.hpp"
#include "kripke_oracle.hpp"
#include "herm/document.hpp"
#include "herm/embedding.hpp"
#include "herm/reasoner.hpp"
#include "herm/syntax.hpp"

using namespace herm;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Failures {
  std::ostringstream log;
  int count = 0;
  void note(const std::string& what) {
    if (count++ < 5) log << "\n    " << what;
  }
};

// ---------------------------------------------------------------- 1

// Schema instances over literals; each has at most three modal operators.
Term schema_instance(std::mt19937& rng) {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  auto literal = [&] {
    Term a = testing::ModalGen::atom(pick(6));
    return pick(3) == 0 ? mk_not(a) : a;
  };
  auto prop = [&] {
    Term a = literal();
    if (pick(2)) return a;
    Term b = literal();
    return pick(2) ? mk_and(a, b) : mk_or(a, b);
  };
  const Term A = prop(), B = prop();
  switch (pick(12)) {
    case 0: return mk_implies(mk_box(mk_implies(A, B)), mk_implies(mk_box(A), mk_box(B)));
    case 1: return mk_implies(mk_box(A), A);
    case 2: return mk_implies(A, mk_box(mk_dia(A)));
    case 3: return mk_implies(mk_box(A), mk_box(mk_box(A)));
    case 4: return mk_implies(mk_dia(A), mk_box(mk_dia(A)));
    case 5: return mk_iff(mk_box(A), mk_not(mk_dia(mk_not(A))));
    case 6: return mk_implies(mk_dia(mk_or(A, B)), mk_or(mk_dia(A), mk_dia(B)));
    case 7: return mk_implies(mk_box(mk_or(A, B)), mk_or(mk_box(A), mk_box(B)));
    case 8: return mk_implies(mk_dia(A), mk_box(A));
    case 9: return mk_implies(mk_dia(mk_box(A)), mk_box(mk_dia(A)));
    case 10: return mk_implies(mk_dia(mk_dia(A)), mk_dia(A));
    default: return mk_implies(A, mk_box(A));
  }
}

Outcome prover_oracle_agreement() {
  constexpr int kPerClass = 500;
  constexpr int kBound = 4;  // = 1 + the modal-operator cap below
  // Formulas draw from six atoms but use at most four, which keeps the
  // oracle's valuation space at 2^16 per frame.
  Outcome out;
  Failures bad;
  Budget b;
  b.max_worlds = kBound;
  std::ostringstream summary;
  for (const char* name : {"K", "T", "KB", "S4", "S5"}) {
    const auto spec = LogicSpec::preset(name);
    testing::ModalGen gen(2024);
    std::mt19937 rng(99);
    Reasoner r;
    int valid = 0, invalid = 0;
    for (int i = 0; i < kPerClass;) {
      const Term phi = i % 2 ? schema_instance(rng) : gen.gen(6, 3);
      testing::KripkeOracle oracle(phi);
      if (oracle.modal_count() > kBound - 1 || oracle.atom_count() > 4) continue;
      ++i;
      const Verdict v = r.entails({}, phi, spec, b);
      const int cm = oracle.countermodel_size(spec, kBound);
      const std::string where = std::string(name) + ": " + print(phi);
      if (v.unknown()) bad.note(where + " unknown");
      if (v.valid() && cm) bad.note(where + " valid, oracle countermodel with " + std::to_string(cm) + " worlds");
      if (v.invalid() && !cm) bad.note(where + " invalid, oracle finds no countermodel");
      const std::string cert = check_certificate(v, {}, phi, spec);
      if (!cert.empty()) bad.note(where + " certificate: " + cert);
      if (v.valid()) {
        ++valid;
        // a valid verdict must leave the model finder empty-handed
        if (find_model(countermodel_goals({}, &phi, spec), b).model) bad.note(where + " valid and refutable");
      }
      if (v.invalid()) ++invalid;
    }
    summary << ' ' << name << " " << valid << "V/" << invalid << "I";
  }
  out.pass = bad.count == 0;
  out.detail = "disagreements " + std::to_string(bad.count) + ";" + summary.str() + bad.log.str();
  return out;
}

// ---------------------------------------------------------------- 2

Outcome frame_correspondence() {
  struct Row {
    const char* formula;
    const char* logic;
    bool valid;
  };
  const Row rows[] = {
      {"box p => p", "K", false},
      {"box p => p", "T", true},
      {"p => box dia p", "K", false},
      {"p => box dia p", "KB", true},
      {"box p => box box p", "S4", true},
      {"dia p => box dia p", "S5", true},
      {"box (p => q) => (box p => box q)", "K", true},
      {"box (p => q) => (box p => box q)", "T", true},
      {"box (p => q) => (box p => box q)", "KB", true},
      {"box (p => q) => (box p => box q)", "S4", true},
      {"box (p => q) => (box p => box q)", "S5", true},
  };
  const Signature sig = testing::generator_signature();
  Outcome out;
  Failures bad;
  Reasoner r;
  for (const auto& row : rows) {
    const auto spec = LogicSpec::preset(row.logic);
    const Term phi = parse_formula(row.formula, sig);
    const Verdict v = r.entails({}, phi, spec, Budget{});
    const std::string where = std::string(row.formula) + " in " + row.logic;
    if (v.kind != (row.valid ? VerdictKind::Valid : VerdictKind::Invalid)) {
      bad.note(where + ": " + to_string(v.kind));
    }
    const std::string cert = check_certificate(v, {}, phi, spec);
    if (!cert.empty()) bad.note(where + ": " + cert);
  }
  out.pass = bad.count == 0;
  out.detail = std::to_string(std::size(rows)) + " rows, mismatches " + std::to_string(bad.count) + bad.log.str();
  return out;
}

// ---------------------------------------------------------------- 3

Term possibilist(const Term& t) {
  switch (t.kind()) {
    case TermKind::Const:
      if (t.is_logical() && t.op() == LogicalOp::MForallA) return Term::logical(LogicalOp::MForall, Ty::e());
      if (t.is_logical() && t.op() == LogicalOp::MExistsA) return Term::logical(LogicalOp::MExists, Ty::e());
      return t;
    case TermKind::Lam: return Term::lam(t.name(), t.var_ty(), possibilist(t.body()));
    case TermKind::App: return Term::app(possibilist(t.fn()), possibilist(t.arg()));
    default: return t;
  }
}

Outcome embedding_laws() {
  Outcome out;
  Failures bad;
  testing::TermGen gen(31);
  std::mt19937 rng(5);
  const auto spec = LogicSpec::parse("K/actualist");
  const Signature sig = gen.signature();
  int checks = 0;
  for (int i = 0; i < 200; ++i) {
    const Term phi = gen.gen(Ty::lifted(), 4);
    const Term box = embed_term(mk_box(phi), spec);
    const Term dual = embed_term(mk_not(mk_dia(mk_not(phi))), spec);
    const Term actual = embed_term(phi, spec);
    const Term poss = embed_term(possibilist(phi), spec);
    for (std::uint32_t nw = 1; nw <= 3; ++nw) {
      for (std::uint32_t ne = 1; ne <= 2; ++ne) {
        FiniteModel m = testing::random_model(rng, sig, nw, ne);
        auto& ex = m.interp[kExistsAt].table;
        std::fill(ex.begin(), ex.end(), 1u);
        Evaluator ev(m);
        for (std::uint32_t w = 0; w < nw; ++w) {
          ++checks;
          if (ev.holds_at(box, w) != ev.holds_at(dual, w)) bad.note("duality fails for " + print(phi));
          if (ev.holds_at(actual, w) != ev.holds_at(poss, w)) bad.note("domains differ for " + print(phi));
        }
      }
    }
  }
  out.pass = bad.count == 0;
  out.detail = "200 formulas, " + std::to_string(checks) + " world checks, violations " + std::to_string(bad.count) +
               bad.log.str();
  return out;
}

// ---------------------------------------------------------------- 4

Outcome correctness_suite() {
  Outcome out;
  Failures bad;
  Reasoner r;
  const auto& suite = testing::correctness_suite();
  for (const auto& x : suite) {
    const std::string diff = testing::compare(x, check_correctness(testing::build(x), testing::build_theory(x), Budget{}, r));
    if (!diff.empty()) bad.note(diff);
  }
  out.pass = bad.count == 0;
  out.detail = std::to_string(suite.size()) + " arguments, mismatches " + std::to_string(bad.count) + bad.log.str();
  return out;
}

// ---------------------------------------------------------------- 5

Outcome conceptualization() {
  Outcome out;
  Failures bad;
  std::mt19937 rng(2024);
  double enum_s = 0;
  int cases = 0;
  std::size_t models = 0;
  for (std::uint32_t n = 1; n <= 3; ++n) {
    for (std::uint32_t w = 1; w <= 3; ++w) {
      for (int shape = 0; shape < 12; ++shape) {
        // up to two unary predicates and one binary, up to two constants
        const auto k = testing::random_commitment(rng, n, w, shape % 3, 1 + shape % 2, shape / 6);
        const auto t0 = std::chrono::steady_clock::now();
        const auto got = intended_models(k);
        enum_s += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const auto want = testing::oracle_intended(k);
        ++cases;
        models += got.size();
        if (std::set<FOModel>(got.begin(), got.end()) != want || got.size() != want.size()) {
          bad.note("n=" + std::to_string(n) + " w=" + std::to_string(w) + " shape " + std::to_string(shape) +
                   ": enumeration differs from the oracle");
        }
        for (const auto& m : got) {
          if (!is_intended_model(m, k)) bad.note("enumerated model fails the membership test");
        }
      }
    }
  }
  const auto toy = testing::toy_commitment();
  if (intended_models(toy).size() != 2) bad.note("toy commitment should have 2 intended models");
  const auto fit = ontology_fit({parse_formula("~ (fish @ nemo)", toy.vocabulary.signature())}, toy);
  if (fit.soundness != 0.5) bad.note("soundness of ~fish(nemo) is " + std::to_string(fit.soundness));
  if (enum_s >= 1.0) bad.note("enumeration took " + std::to_string(enum_s) + "s");
  out.pass = bad.count == 0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d commitments, %zu intended models, enumeration %.4fs, soundness %.1f", cases,
                models, enum_s, fit.soundness);
  out.detail = buf + bad.log.str();
  return out;
}

// ---------------------------------------------------------------- 6

Outcome adequacy_recount() {
  Outcome out;
  Failures bad;
  testing::FishCorpus fc;
  const AdequacyWeights w;
  std::size_t lo = SIZE_MAX, hi = 0;
  for (const auto& [label, t] : fc.candidates) {
    lo = std::min(lo, symbol_count(t));
    hi = std::max(hi, symbol_count(t));
  }
  int rejections = 0;
  // every tagging of the two arguments, both candidates
  for (int tags = 0; tags < 4; ++tags) {
    Corpus corpus = fc.corpus;
    corpus.arguments[0].correct = tags & 1;
    corpus.arguments[1].correct = tags & 2;
    Reasoner scorer;
    AdequacyContext ctx;
    ctx.corpus = &corpus;
    ctx.fmap = &fc.fmap;
    const auto scores = score_candidates("s1", fc.candidates, fc.spec, ctx, w, scorer);
    for (const auto& cs : scores) {
      // recount from raw queries
      Reasoner raw(false);
      int correct = 0, correct_valid = 0;
      bool violated = false;
      for (const auto& a : corpus.arguments) {
        std::vector<Term> ps;
        for (const auto& sid : a.premises) ps.push_back(sid == "s1" ? cs.formula : fc.fmap.at(sid).formula);
        const Verdict v = raw.entails(ps, fc.fmap.at(a.conclusion).formula, fc.spec, Budget{});
        if (v.unknown()) bad.note("unexpected unknown verdict");
        if (a.correct) {
          ++correct;
          correct_valid += v.valid();
        } else if (v.valid()) {
          violated = true;
        }
      }
      const double amb = correct ? static_cast<double>(correct_valid) / correct : 1.0;
      const double norm = static_cast<double>(symbol_count(cs.formula) - lo) / hi;
      const double want = violated ? kRejected : w.ambitiousness * amb - w.simplicity * norm;
      const std::string where = "tags " + std::to_string(tags) + " " + cs.label;
      if ((cs.score.reliable == Tri::No) != violated) bad.note(where + ": reliability differs from recount");
      if (cs.score.ambitiousness != amb) bad.note(where + ": ambitiousness differs from recount");
      if (cs.score.aggregate != want) bad.note(where + ": aggregate differs from recount");
      rejections += violated;
    }
    if (tags == 3 && !(scores[0].score.aggregate > scores[1].score.aggregate)) {
      bad.note("de re reading should outscore de dicto when both arguments are correct");
    }
  }
  out.pass = bad.count == 0 && rejections > 0;
  out.detail = "8 scorings, mismatches " + std::to_string(bad.count) + ", hard rejections " + std::to_string(rejections) +
               bad.log.str();
  return out;
}

// ---------------------------------------------------------------- 7

std::string fixture(const std::string& name) { return std::string(HERM_FIXTURES) + "/" + name; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool best_nondecreasing(const std::vector<TraceEntry>& trace) {
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (trace[i].best < trace[i - 1].best) return false;
  }
  return true;
}

// The command line search, run in a scratch directory; returns report,
// trace and document concatenated, or empty on a nonzero exit.
std::string cli_search(const std::filesystem::path& dir, const std::string& tag) {
  const auto base = dir / tag;
  const std::string cmd = std::string(HERM_CLI) + " search " + fixture("planted.herm") + " --seed 7 --trace " +
                          (base.string() + ".tsv") + " --out " + (base.string() + ".herm") + " > " +
                          (base.string() + ".txt") + " 2>&1";
  if (std::system(cmd.c_str()) != 0) return "";
  return slurp(base.string() + ".txt") + slurp(base.string() + ".tsv") + slurp(base.string() + ".herm");
}

Outcome engine_end_to_end() {
  Outcome out;
  Failures bad;
  const auto doc = load_document(fixture("planted.herm"));
  const auto& d = doc.discourse;
  // the fixture has the advertised shape
  std::size_t few = 0;
  for (const auto& [sid, pool] : d.candidates) few += pool.size() < 2;
  if (d.corpus.arguments.size() != 4 || few || d.postulates.size() < 3 || d.network.intended.size() != 3) {
    bad.note("planted fixture does not have the required shape");
  }

  EngineConfig c;
  c.seed = 7;
  Reasoner r;
  const auto res = run(d, c, r);
  if (res.termination != "maximum") bad.note("terminated by " + res.termination + ", not at the maximum");
  if (res.best_breakdown.total != res.maximum || !res.best_breakdown.maximal) bad.note("best state is not maximal");
  if (res.trace.size() > 500) bad.note("more than 500 iterations");
  if (res.promoted != std::vector<std::string>{"whales_are_mammals"}) {
    std::string got;
    for (const auto& p : res.promoted) got += " " + p;
    bad.note("promoted:" + (got.empty() ? std::string(" none") : got));
  }

  const auto dir = std::filesystem::temp_directory_path() / ("herm-accept-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::string one = cli_search(dir, "one"), two = cli_search(dir, "two");
  std::filesystem::remove_all(dir);
  if (one.empty() || two.empty()) bad.note("command line search failed");
  if (one != two) bad.note("command line runs differ");
  if (one.find("termination: maximum") == std::string::npos) bad.note("command line run missed the maximum");

  const auto contra = load_document(fixture("contra.herm"));
  Reasoner rc;
  const auto cres = run(contra.discourse, c, rc);
  if (cres.termination != "stagnation") bad.note("contradictory fixture terminated by " + cres.termination);
  const Edge attack{"A", "B", Polarity::Attack};
  if (cres.unrealizable != std::vector<Edge>{attack}) bad.note("unrealizable edge A->B (attack) not flagged alone");

  out.pass = bad.count == 0;
  out.detail = "planted: " + res.termination + " after " + std::to_string(res.trace.size()) +
               " iterations, objective " + std::to_string(res.best_breakdown.total) + "/" +
               std::to_string(res.maximum) + "; contradictory: " + cres.termination + " after " +
               std::to_string(cres.trace.size()) + bad.log.str();
  return out;
}

// ---------------------------------------------------------------- 8

std::string verdict_line(const Verdict& v) { return std::string(to_string(v.kind)) + " " + v.certificate; }

Outcome determinism() {
  Outcome out;
  Failures bad;
  int traces = 0, entries = 0, compared = 0;
  for (const char* name : {"toy.herm", "planted.herm", "contra.herm"}) {
    const auto doc = load_document(fixture(name));
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      EngineConfig c;
      c.seed = seed;
      c.iterations = 200;
      Reasoner cached, uncached(false);
      const auto a = run(doc.discourse, c, cached);
      ++traces;
      entries += static_cast<int>(a.trace.size());
      if (!best_nondecreasing(a.trace)) bad.note(std::string(name) + " seed " + std::to_string(seed) + ": best decreased");
      const auto b = run(doc.discourse, c, uncached);
      ++compared;
      if (report_text(a, doc.discourse) != report_text(b, doc.discourse) || trace_text(a.trace) != trace_text(b.trace)) {
        bad.note(std::string(name) + " seed " + std::to_string(seed) + ": cache changes the run");
      }
    }
  }
  // every verdict of the correctness suite, cached against fresh
  Reasoner cached;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& x : testing::correctness_suite()) {
      const Argument a = testing::build(x);
      std::vector<Term> ps;
      for (const auto& p : a.premises) ps.push_back(p.term);
      for (const auto& t : testing::build_theory(x)) ps.push_back(t);
      Reasoner fresh(false);
      ++compared;
      if (verdict_line(cached.entails(ps, a.conclusion.term, a.spec, Budget{})) !=
          verdict_line(fresh.entails(ps, a.conclusion.term, a.spec, Budget{}))) {
        bad.note(std::string(x.id) + ": cached verdict differs");
      }
    }
  }
  out.pass = bad.count == 0;
  out.detail = std::to_string(traces) + " traces (" + std::to_string(entries) + " entries), " +
               std::to_string(compared) + " cache on/off comparisons, violations " + std::to_string(bad.count) +
               bad.log.str();
  return out;
}

// ----------------------------------------------------------------

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // 0 = untimed
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "prover-oracle agreement", 300, prover_oracle_agreement},
      {2, "frame correspondence", 10, frame_correspondence},
      {3, "embedding laws", 0, embedding_laws},
      {4, "correctness suite", 0, correctness_suite},
      {5, "conceptualization", 0, conceptualization},
      {6, "adequacy scoring", 0, adequacy_recount},
      {7, "engine end-to-end", 120, engine_end_to_end},
      {8, "determinism and cache transparency", 0, determinism},
  };
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failed = 0;
  for (const auto& c : all) {
    if (only && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && s > c.limit_s) {
      o.pass = false;
      o.detail += " (over the time limit)";
    }
    std::printf("criterion %d %s  %s  [%.2fs] %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, s, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
