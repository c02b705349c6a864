// Copyright 2026 The Modulo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"

namespace modulo {
namespace {

using testing::At;
using testing::C;
using testing::F;
using testing::T;

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome fail(const std::string& why) { return {false, why}; }

bool steps_are(const Normalization& n, const std::vector<std::string>& terms) {
  if (n.steps.size() != terms.size()) return false;
  for (std::size_t i = 0; i < terms.size(); ++i)
    if (n.steps[i].term != T(terms[i])) return false;
  return true;
}

ProverOptions with_mode(ProverMode m) {
  ProverOptions o;
  o.mode = m;
  return o;
}

Outcome rewriting() {
  RewriteSystem rs = testing::load_theory("assoc.thy").rules;
  Term t = T("plus(plus(a,plus(b,c)),plus(d,e))");
  Term u = T("plus(plus(a,b),plus(plus(c,d),e))");
  if (normalize(rs, t) != T("plus(a,plus(b,plus(c,plus(d,e))))")) return fail("normal form " + to_string(normalize(rs, t)));
  JoinResult j = join(rs, t, u);
  if (!j.joinable) return fail("not joinable");
  if (j.left.steps.size() > 4 || j.right.steps.size() > 4) return fail("joining sequence longer than 4");
  if (!steps_are(j.left, {"plus(a,plus(plus(b,c),plus(d,e)))", "plus(a,plus(b,plus(c,plus(d,e))))"}))
    return fail("left sequence differs from the expected one");
  if (!steps_are(j.right, {"plus(plus(a,b),plus(c,plus(d,e)))", "plus(a,plus(b,plus(c,plus(d,e))))"}))
    return fail("right sequence differs from the expected one");
  return {true, "2 + 2 steps, as expected"};
}

Outcome confluence() {
  if (!critical_pairs(testing::load_theory("assoc.thy").rules).locally_confluent())
    return fail("associativity reported non-joinable");
  RewriteSystem split{{make_term_rule("left", T("p"), T("q")), make_term_rule("right", T("p"), T("r"))}, {}};
  CriticalPairReport r = is_locally_confluent(split);
  auto bad = r.non_joinable();
  if (r.locally_confluent() || bad.size() != 1) return fail("expected exactly one non-joinable pair");
  std::set<Term> pair{bad[0]->left, bad[0]->right};
  if (pair != std::set<Term>{T("q"), T("r")}) return fail("wrong pair");
  return {true, "assoc joinable; (q, r) reported"};
}

Outcome equational_unification() {
  TheoryFile th = testing::load_theory("assoc.thy");
  auto r = e_unify(th.rules, T("plus(plus(a,plus(b,c)),plus(d,e))"), T("plus(plus(a,b),plus(plus(c,d),e))"));
  if (std::find(r.unifiers.begin(), r.unifiers.end(), Substitution{}) == r.unifiers.end())
    return fail("empty substitution not found");
  std::vector<SourcedClause> in{{C("P(plus(plus(a,plus(b,c)),plus(d,e)))")},
                                {C("~P(plus(plus(a,b),plus(plus(c,d),e)))"), ClauseSource::NegatedGoal}};
  ProverOptions o = with_mode(ProverMode::EquationalResolution);
  SaturationResult s = saturate(in, th.rules, o);
  if (s.verdict != Verdict::Refuted) return fail(std::string("verdict ") + to_string(s.verdict));
  if (!s.refutation().ends_in_empty_clause()) return fail("trace does not end in the empty clause");
  if (TraceCheck c = check_trace(s.trace, in, th.rules, o); !c) return fail("trace replay: " + c.reason);
  return {true, "{} found; refuted in " + std::to_string(s.refutation().steps.size()) + " steps"};
}

Outcome resolution_modulo() {
  TheoryFile th = testing::load_theory("timeszero.thy");
  ClausalProblem p = clausal_form(th.axioms, {th.goal("square")->formula});
  ProverOptions o = with_mode(ProverMode::ResolutionModulo);
  SaturationResult s = saturate(p.clauses, th.rules, o);
  if (s.verdict != Verdict::Refuted) return fail(std::string("verdict ") + to_string(s.verdict));
  const Clause want = C("a = 0");
  for (const TraceStep& step : s.refutation().steps) {
    if (step.inference == "ext_narrow" && step.clause == want) {
      if (TraceCheck c = check_trace(s.trace, p.clauses, th.rules, o); !c) return fail("trace replay: " + c.reason);
      return {true, format_step(step)};
    }
  }
  return fail("no narrowed clause {eq(a,0)} in\n" + format_trace(s.trace));
}

Outcome crabbe_contrast() {
  TheoryFile th = testing::load_theory("crabbe.thy");
  const Formula& goal = th.goal("notB")->formula;
  SaturationResult modulo = saturate(clausal_form(th.axioms, {goal}).clauses, th.rules,
                                     with_mode(ProverMode::ResolutionModulo));
  ClausalProblem four = clausal_form(rules_to_axioms(th.rules), {goal});
  if (four.clauses.size() != 4) return fail("expected four clauses");
  ProverOptions o = with_mode(ProverMode::Resolution);
  SaturationResult axioms = saturate(four.clauses, {}, o);
  if (modulo.verdict != Verdict::Saturated) return fail(std::string("(a) verdict ") + to_string(modulo.verdict));
  if (axioms.verdict != Verdict::Refuted) return fail(std::string("(b) verdict ") + to_string(axioms.verdict));
  DerivationTrace proof = axioms.refutation();
  if (proof.inference_count() != 3) return fail("(b) " + std::to_string(proof.inference_count()) + " inferences");
  // B (negated goal), then A from B and {A, ~B}, then the empty clause with ~A.
  const TraceStep& last = proof.steps.back();
  const TraceStep* a = last.parents.empty() ? nullptr : proof.find(last.parents[0]);
  const TraceStep* not_a = last.parents.size() < 2 ? nullptr : proof.find(last.parents[1]);
  if (!a || !not_a) return fail("(b) malformed refutation");
  if (a->clause != C("~A")) std::swap(a, not_a);
  if (not_a->clause != C("A") || a->clause != C("~A") || not_a->inference != "resolve")
    return fail("(b) last step is not A against ~A");
  std::set<std::string> from;
  for (std::size_t p : not_a->parents) from.insert(to_string(proof.find(p)->clause.sorted()));
  if (from != std::set<std::string>{to_string(C("B").sorted()), to_string(C("A \\/ ~B").sorted())}) return fail("(b) A not derived from B and {A, ~B}");
  if (TraceCheck c = check_trace(axioms.trace, four.clauses, {}, o); !c) return fail("(b) replay: " + c.reason);
  return {true, "(a) Saturated, (b) Refuted in 3 inferences"};
}

Outcome repair() {
  if (!clausal_equiv({F("A <=> B /\\ ~A")}, {F("A <=> false"), F("B <=> A")})) return fail("clausal forms differ");
  TheoryFile th = testing::load_theory("repaired.thy");
  SaturationResult s = saturate(clausal_form(th.axioms, {th.goal("notB")->formula}).clauses, th.rules,
                                with_mode(ProverMode::ResolutionModulo));
  if (s.verdict != Verdict::Refuted) return fail(std::string("verdict ") + to_string(s.verdict));
  return {true, "same clausal form; refuted modulo"};
}

struct GoldenProof {
  const char* file;
  const char* name;
  bool cut;
};
constexpr GoldenProof kGolden[] = {{"arith.thy", "even4", false}, {"timeszero.thy", "square", false},
                                   {"crabbe.thy", "notB", true}};

Outcome sequent_checker() {
  std::string summary;
  for (const GoldenProof& g : kGolden) {
    TheoryFile th = testing::load_theory(g.file);
    const ProofNode& p = th.proof(g.name)->proof;
    ProofCheck c = check_proof(p, th.rules);
    if (!c.valid) return fail(std::string(g.name) + " invalid at " + to_string(c.path) + ": " + c.detail);
    if (uses_cut(p) != g.cut) return fail(std::string(g.name) + " cut use differs");
    int strict = exit_code(c, uses_cut(p), true);
    if (strict != (g.cut ? kNotEstablished : kEstablished)) return fail(std::string(g.name) + " cut-free exit code");
    if (exit_code(c, uses_cut(p), false) != kEstablished) return fail(std::string(g.name) + " exit code");
    summary += std::string(summary.empty() ? "" : ", ") + g.name + (g.cut ? " (cut)" : "");
  }
  return {true, summary};
}

// Random ground clauses and proposition rules over A, B, C, D.
Outcome soundness() {
  std::mt19937 rng(2026);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  const std::vector<std::string> names{"A", "B", "C", "D"};
  std::function<Formula(int)> prop = [&](int d) -> Formula {
    if (d <= 0 || pick(3) == 0) {
      std::size_t k = pick(names.size() + 1);
      return k == names.size() ? (pick(2) ? Formula::top() : Formula::bottom()) : Formula::atom(names[k]);
    }
    switch (pick(4)) {
      case 0: return Formula::negation(prop(d - 1));
      case 1: return Formula::conjunction(prop(d - 1), prop(d - 1));
      case 2: return Formula::disjunction(prop(d - 1), prop(d - 1));
      default: return Formula::implication(prop(d - 1), prop(d - 1));
    }
  };
  const ProverMode modes[] = {ProverMode::Resolution, ProverMode::Paramodulation, ProverMode::EquationalResolution,
                              ProverMode::ResolutionModulo};
  int refuted = 0, saturated = 0, limited = 0;
  for (int i = 0; i < 200; ++i) {
    std::vector<Clause> clauses;
    for (std::size_t k = 0, n = 2 + pick(8); k < n; ++k) {
      std::vector<Literal> lits;
      for (std::size_t m = 0, w = 1 + pick(2); m < w; ++m) lits.push_back({pick(2) == 0, Atom{names[pick(4)], {}}});
      clauses.emplace_back(std::move(lits));
    }
    RewriteSystem rs;
    for (std::size_t k = 0, n = pick(3); k < n; ++k)
      rs.prop_rules.push_back(make_prop_rule("r" + std::to_string(k), Atom{names[pick(4)], {}}, prop(2)));
    ProverOptions o = with_mode(modes[i % 4]);
    o.limits.max_clauses = 2000;
    o.limits.max_iterations = 2000;
    SaturationResult s = saturate(clauses, rs, o);
    if (s.verdict != Verdict::Refuted) {
      ++(s.verdict == Verdict::Saturated ? saturated : limited);
      continue;
    }
    ++refuted;
    Formula all = Formula::top();
    for (const Clause& c : clauses) all = Formula::conjunction(all, c.to_formula());
    for (const Formula& ax : rules_to_axioms(rs)) all = Formula::conjunction(all, ax);
    if (!tautology(Formula::negation(all))) {
      std::ostringstream os;
      os << "false refutation in " << to_string(o.mode) << " of";
      for (const Clause& c : clauses) os << ' ' << c;
      return fail(os.str());
    }
  }
  if (refuted < 50) return fail("only " + std::to_string(refuted) + " refutations exercised");
  return {true, std::to_string(refuted) + " refutations confirmed; " + std::to_string(saturated) + " saturated, " +
                    std::to_string(limited) + " over limits"};
}

Outcome unification() {
  testing::TermGen gen(2027);
  RewriteSystem rs{{make_term_rule("collapse", T("k(X,X)"), T("X")), make_term_rule("involution", T("f(f(X))"), T("X"))}, {}};
  NarrowingOptions deep;
  deep.depth = 3;
  NarrowingOptions flat;
  flat.depth = 0;
  std::size_t unified = 0, emitted = 0;
  for (int i = 0; i < 500; ++i) {
    Term t = gen.term(3), u = gen.term(3);
    auto s = mgu(t, u);
    if (s) {
      ++unified;
      if (s->apply(t) != s->apply(u)) return fail("mgu does not unify " + to_string(t) + " and " + to_string(u));
      if (!s->is_idempotent()) return fail("mgu not idempotent");
    }
    for (const Substitution& e : e_unify(rs, t, u, deep).unifiers) {
      ++emitted;
      if (!equivalent(rs, e.apply(t), e.apply(u))) return fail("unsound unifier for " + to_string(t) + " =? " + to_string(u));
    }
    auto zero = e_unify(rs, t, u, flat).unifiers;
    if (zero.size() != (s ? 1u : 0u)) return fail("depth 0 differs from mgu on " + to_string(t) + " =? " + to_string(u));
    if (s && zero[0].apply(t) != s->apply(t)) return fail("depth 0 unifier differs from mgu");
  }
  return {true, std::to_string(unified) + " syntactic, " + std::to_string(emitted) + " equational unifiers checked"};
}

Outcome checker_regression() {
  std::size_t total = 0;
  for (const GoldenProof& g : kGolden) {
    TheoryFile th = testing::load_theory(g.file);
    for (const testing::Mutation& m : testing::single_node_mutations(th.proof(g.name)->proof)) {
      ++total;
      ProofCheck c = check_proof(m.proof, th.rules);
      if (c.valid) return fail(std::string(g.name) + " " + to_string(m.path) + " " + m.what + " still valid");
      if (c.path != m.path)
        return fail(std::string(g.name) + " " + m.what + " at " + to_string(m.path) + " reported at " + to_string(c.path));
    }
  }
  return {true, std::to_string(total) + " mutations rejected at their node"};
}

}  // namespace
}  // namespace modulo

int main() {
  using namespace modulo;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"rewriting normal form and joining sequences", rewriting},
      {"local confluence report", confluence},
      {"equational unification and resolution", equational_unification},
      {"resolution modulo narrows to a = 0", resolution_modulo},
      {"contrast: rules saturate, axioms refute", crabbe_contrast},
      {"repaired system", repair},
      {"golden sequent proofs", sequent_checker},
      {"soundness on random ground problems", soundness},
      {"unification properties", unification},
      {"single-node proof mutations", checker_regression},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > 5.0) o = {false, o.detail + " (took over 5 s)"};
    failures += !o.pass;
    std::printf("%s %2zu %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(), secs);
  }
  return failures == 0 ? 0 : 1;
}
