#pragma once

// Hand-annotated arguments covering each correctness failure mode and their
// combinations.

#include <string>
#include <vector>

#include "generators.hpp"
#include "herm/correctness.hpp"
#include "herm/syntax.hpp"

namespace herm::testing {

struct AnnotatedArgument {
  const char* id;
  const char* logic;
  std::vector<std::pair<const char*, const char*>> premises;  // label, formula
  const char* conclusion;
  std::vector<const char*> theory;
  VerdictKind validity;
  SatKind consistency;
  Tri circular;
  const char* circular_premise;
  std::vector<std::string> idle;
  Tri overall;
};

inline Signature suite_signature() {
  Signature s = generator_signature();
  s.declare("s", Ty::lifted());
  s.declare("vertebrate", Ty::arrow({Ty::e(), Ty::w(), Ty::o()}));
  return s;
}

inline const std::vector<AnnotatedArgument>& correctness_suite() {
  using V = VerdictKind;
  using S = SatKind;
  static const std::vector<AnnotatedArgument> suite = {
      {"modus-ponens", "K", {{"a", "p"}, {"b", "p => q"}}, "q", {},
       V::Valid, S::Sat, Tri::No, "", {}, Tri::Yes},
      {"affirming-consequent", "K", {{"a", "p => q"}, {"b", "q"}}, "p", {},
       V::Invalid, S::Sat, Tri::No, "", {}, Tri::No},
      {"explosion", "K", {{"a", "p"}, {"b", "~ p"}}, "q", {},
       V::Valid, S::Unsat, Tri::No, "", {}, Tri::No},
      {"restates-premise", "K", {{"a", "q"}, {"b", "p"}}, "q", {},
       V::Valid, S::Sat, Tri::Yes, "a", {"b"}, Tri::No},
      {"single-premise-circle", "K", {{"a", "p & q"}}, "q", {},
       V::Valid, S::Sat, Tri::Yes, "a", {}, Tri::No},
      {"idle-extra", "K", {{"a", "p"}, {"b", "p => q"}, {"c", "s"}}, "q", {},
       V::Valid, S::Sat, Tri::No, "", {"c"}, Tri::No},
      {"k-distribution", "K", {{"a", "box (p => q)"}, {"b", "box p"}}, "box q", {},
       V::Valid, S::Sat, Tri::No, "", {}, Tri::Yes},
      {"needs-reflexivity", "K", {{"a", "box p"}, {"b", "box (p => q)"}}, "q", {},
       V::Invalid, S::Sat, Tri::No, "", {}, Tri::No},
      {"reflexive-frames", "T", {{"a", "box p"}, {"b", "box (p => q)"}}, "q", {},
       V::Valid, S::Sat, Tri::No, "", {}, Tri::Yes},
      {"explosion-and-idle", "K", {{"a", "p"}, {"b", "~ p"}, {"c", "s"}}, "q", {},
       V::Valid, S::Unsat, Tri::No, "", {"c"}, Tri::No},
      {"contradictory-premise", "K", {{"a", "p & ~ p"}, {"b", "s"}}, "q", {},
       V::Valid, S::Unsat, Tri::Yes, "a", {"b"}, Tri::No},
      {"postulate-does-the-work", "S4", {{"a", "fish @ a"}, {"b", "c"}}, "box (vertebrate @ a)",
       {"! [X:e]: (fish @ X => box (vertebrate @ X))"},
       V::Valid, S::Sat, Tri::Yes, "a", {"b"}, Tri::No},
  };
  return suite;
}

inline Argument build(const AnnotatedArgument& x) {
  const Signature sig = suite_signature();
  Argument a;
  a.id = x.id;
  a.spec = LogicSpec::parse(x.logic);
  for (const auto& [label, text] : x.premises) a.premises.push_back({label, Role::Premise, parse_formula(text, sig)});
  a.conclusion = {"concl", Role::Conclusion, parse_formula(x.conclusion, sig)};
  return a;
}

inline std::vector<Term> build_theory(const AnnotatedArgument& x) {
  const Signature sig = suite_signature();
  std::vector<Term> out;
  for (const char* t : x.theory) out.push_back(parse_formula(t, sig));
  return out;
}

// Empty when the report matches the annotation, else the first mismatch.
inline std::string compare(const AnnotatedArgument& x, const CorrectnessReport& r) {
  auto field = [&](const char* name, const std::string& want, const std::string& got) {
    return std::string(x.id) + ": " + name + " expected " + want + ", got " + got;
  };
  if (r.validity.kind != x.validity) return field("validity", to_string(x.validity), to_string(r.validity.kind));
  if (r.consistency.kind != x.consistency) {
    return field("consistency", to_string(x.consistency), to_string(r.consistency.kind));
  }
  if (r.circular != x.circular) return field("circular", to_string(x.circular), to_string(r.circular));
  if (r.circular_premise != x.circular_premise) return field("circular premise", x.circular_premise, r.circular_premise);
  if (r.idle_premises != x.idle) {
    std::string want, got;
    for (const auto& s : x.idle) want += s + " ";
    for (const auto& s : r.idle_premises) got += s + " ";
    return field("idle", "{" + want + "}", "{" + got + "}");
  }
  if (!r.idle_unknown.empty()) return field("idle unknown", "none", r.idle_unknown.front());
  if (r.overall != x.overall) return field("overall", to_string(x.overall), to_string(r.overall));
  return "";
}

}  // namespace herm::testing
