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

// Given-clause saturation in four modes:
//
//   Resolution            binary resolution + factoring, syntactic unifiers
//   Paramodulation        + paramodulation; term rules enter as equations
//   EquationalResolution  resolution and factoring with narrowing-based
//                         unifiers modulo the term rules, which are not clauses
//   ResolutionModulo      EquationalResolution + narrowing of clause literals
//                         with proposition rules
//
// Every kept clause is recorded in a DerivationTrace that check_trace()
// replays independently of the search loop.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "modulo/clausify.hpp"
#include "modulo/narrowing.hpp"
#include "modulo/signature.hpp"

namespace modulo {

enum class ProverMode { Resolution, Paramodulation, EquationalResolution, ResolutionModulo };

inline const char* to_string(ProverMode m) {
  switch (m) {
    case ProverMode::Resolution: return "resolution";
    case ProverMode::Paramodulation: return "paramod";
    case ProverMode::EquationalResolution: return "eqres";
    case ProverMode::ResolutionModulo: return "modulo";
  }
  return "?";
}

inline std::optional<ProverMode> parse_mode(const std::string& s) {
  if (s == "resolution") return ProverMode::Resolution;
  if (s == "paramod" || s == "paramodulation") return ProverMode::Paramodulation;
  if (s == "eqres" || s == "equational-resolution") return ProverMode::EquationalResolution;
  if (s == "modulo" || s == "resolution-modulo") return ProverMode::ResolutionModulo;
  return std::nullopt;
}

inline bool uses_equational_unification(ProverMode m) {
  return m == ProverMode::EquationalResolution || m == ProverMode::ResolutionModulo;
}

// ---------------------------------------------------------------------------
// Unifier selection

// Syntactic unification when no term rules are given, narrowing otherwise.
// `truncated` records whether any equational search was cut by its bound.
struct UnifierContext {
  const RewriteSystem* rules = nullptr;
  NarrowingOptions narrowing;
  bool truncated = false;

  static UnifierContext syntactic() { return {}; }
  static UnifierContext modulo(const RewriteSystem& rs, NarrowingOptions opt = {}) {
    return UnifierContext{&rs, opt, false};
  }

  std::vector<Substitution> unify(const Atom& a, const Atom& b) {
    if (a.predicate != b.predicate || a.args.size() != b.args.size()) return {};
    if (rules == nullptr || rules->term_rules.empty()) {
      if (auto s = mgu(a, b)) return {*s};
      return {};
    }
    auto [t, u] = atom_args_as_terms(a, b);
    EUnifyResult r = e_unify(*rules, t, u, narrowing);
    truncated = truncated || r.depth_exhausted;
    return std::move(r.unifiers);
  }
};

/// A conclusion together with the unifier and rule that produced it.
struct Inference {
  Clause clause;
  Substitution sigma;
  std::string rule;
};

namespace detail {

inline std::vector<Literal> without(const Clause& c, std::size_t skip) {
  std::vector<Literal> out;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (i != skip) out.push_back(c.literals()[i]);
  return out;
}

}  // namespace detail

/// Binary resolvents on every complementary literal pair. Clauses must be renamed apart.
inline std::vector<Inference> resolve(const Clause& c1, const Clause& c2, UnifierContext& ctx) {
  std::vector<Inference> out;
  for (std::size_t i = 0; i < c1.size(); ++i) {
    for (std::size_t j = 0; j < c2.size(); ++j) {
      const Literal& l = c1.literals()[i];
      const Literal& m = c2.literals()[j];
      if (l.positive == m.positive) continue;
      for (const Substitution& s : ctx.unify(l.atom, m.atom)) {
        std::vector<Literal> lits;
        for (const Literal& x : detail::without(c1, i)) lits.push_back(s.apply(x));
        for (const Literal& x : detail::without(c2, j)) lits.push_back(s.apply(x));
        out.push_back({Clause(std::move(lits)), s, {}});
      }
    }
  }
  return out;
}

inline std::vector<Inference> resolve(const Clause& c1, const Clause& c2) {
  UnifierContext ctx;
  return resolve(c1, c2, ctx);
}

/// Factors from unifying two literals of the same polarity.
inline std::vector<Inference> factor(const Clause& c, UnifierContext& ctx) {
  std::vector<Inference> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      const Literal& l = c.literals()[i];
      const Literal& m = c.literals()[j];
      if (l.positive != m.positive) continue;
      for (const Substitution& s : ctx.unify(l.atom, m.atom))
        out.push_back({s.apply(Clause(detail::without(c, j))).merged(), s, {}});
    }
  }
  return out;
}

inline std::vector<Inference> factor(const Clause& c) {
  UnifierContext ctx;
  return factor(c, ctx);
}

/// Replaces equals by equals: every positive equality of `from`, used in both
/// orientations, into every non-variable subterm of `into`. Clauses must be
/// renamed apart. Neither side of an equation is used when it is a bare variable.
inline std::vector<Inference> paramodulate(const Clause& from, const Clause& into) {
  std::vector<Inference> out;
  for (std::size_t k = 0; k < from.size(); ++k) {
    const Literal& eq = from.literals()[k];
    if (!eq.positive || !eq.atom.is_equality()) continue;
    for (int dir = 0; dir < 2; ++dir) {
      const Term& lhs = eq.atom.args[dir];
      const Term& rhs = eq.atom.args[1 - dir];
      if (lhs.is_variable()) continue;
      for (std::size_t i = 0; i < into.size(); ++i) {
        const Literal& target = into.literals()[i];
        for (std::size_t a = 0; a < target.atom.args.size(); ++a) {
          for (const Position& p : function_positions(target.atom.args[a])) {
            auto s = mgu(subterm_at(target.atom.args[a], p), lhs);
            if (!s) continue;
            Literal replaced = target;
            replaced.atom.args[a] = replace_at(target.atom.args[a], p, rhs);
            std::vector<Literal> lits;
            for (std::size_t m = 0; m < into.size(); ++m)
              lits.push_back(s->apply(m == i ? replaced : into.literals()[m]));
            for (const Literal& x : detail::without(from, k)) lits.push_back(s->apply(x));
            out.push_back({Clause(std::move(lits)), *s, {}});
          }
        }
      }
    }
  }
  return out;
}

namespace detail {

inline TermRule rename_term_rule(const TermRule& r, const VarSet& avoid) {
  return rename_rule_away(r, avoid);
}

inline PropRule rename_prop_rule(const PropRule& r, const VarSet& avoid) {
  VarSet used = avoid;
  VarSet own = free_vars(r.lhs);
  used.insert(own.begin(), own.end());
  Substitution ren;
  for (const std::string& v : own) {
    if (!avoid.contains(v)) continue;
    std::string fresh = fresh_variable(v, used);
    used.insert(fresh);
    ren.bind(v, Term::variable(fresh));
  }
  return PropRule{r.name, ren.apply(r.lhs), ren.apply(r.rhs)};
}

}  // namespace detail

/// Oriented paramodulation: unify a non-variable subterm of the clause with a
/// term-rule lhs, instantiate the clause and put the rhs in place.
inline std::vector<Inference> narrow_clause_term(const RewriteSystem& rs, const Clause& c) {
  std::vector<Inference> out;
  VarSet vars = c.vars();
  for (const TermRule& rule : rs.term_rules) {
    TermRule r = detail::rename_term_rule(rule, vars);
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Literal& lit = c.literals()[i];
      for (std::size_t a = 0; a < lit.atom.args.size(); ++a) {
        for (const Position& p : function_positions(lit.atom.args[a])) {
          auto s = mgu(subterm_at(lit.atom.args[a], p), r.lhs);
          if (!s) continue;
          Literal replaced = lit;
          replaced.atom.args[a] = replace_at(lit.atom.args[a], p, r.rhs);
          std::vector<Literal> lits;
          for (std::size_t m = 0; m < c.size(); ++m)
            lits.push_back(s->apply(m == i ? replaced : c.literals()[m]));
          out.push_back({Clause(std::move(lits)), *s, r.name});
        }
      }
    }
  }
  return out;
}

/// Result of narrowing one literal with a proposition rule: all clauses of
/// the re-clausified instance are added together.
struct NarrowedSet {
  std::vector<Clause> clauses;
  Substitution sigma;
  std::string rule;
};

/// Extended narrowing: a literal whose atom unifies with a proposition-rule
/// lhs is replaced by the instantiated rhs (negated for a negative literal)
/// and the resulting quantifier-free formula is put back in clausal form.
inline std::vector<NarrowedSet> ext_narrow(const RewriteSystem& rs, const Clause& c,
                                           UnifierContext& ctx) {
  std::vector<NarrowedSet> out;
  VarSet vars = c.vars();
  for (const PropRule& rule : rs.prop_rules) {
    PropRule r = detail::rename_prop_rule(rule, vars);
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Literal& lit = c.literals()[i];
      for (const Substitution& s : ctx.unify(lit.atom, r.lhs)) {
        std::vector<Formula> parts;
        for (const Literal& x : detail::without(c, i)) parts.push_back(s.apply(x).to_formula());
        Formula body = s.apply(r.rhs);
        parts.push_back(lit.positive ? body : Formula::negation(body));
        out.push_back({cnf(disjunction_of(parts)), s, r.name});
      }
    }
  }
  return out;
}

inline std::vector<NarrowedSet> ext_narrow(const RewriteSystem& rs, const Clause& c) {
  UnifierContext ctx = UnifierContext::modulo(rs);
  return ext_narrow(rs, c, ctx);
}

namespace detail {

inline void collect_function_symbols(const Term& t, std::map<std::string, std::size_t>& out) {
  if (t.is_variable()) return;
  out.emplace(t.name(), t.arity());
  for (const Term& a : t.args()) collect_function_symbols(a, out);
}

inline void collect_signature(const Formula& f, std::map<std::string, std::size_t>& fns,
                              std::map<std::string, std::size_t>& preds) {
  switch (f.kind()) {
    case Connective::Atom:
      preds.emplace(f.atom().predicate, f.atom().args.size());
      for (const Term& t : f.atom().args) collect_function_symbols(t, fns);
      return;
    case Connective::Top:
    case Connective::Bottom: return;
    case Connective::Not:
    case Connective::Forall:
    case Connective::Exists: collect_signature(f.operand(), fns, preds); return;
    default:
      collect_signature(f.left(), fns, preds);
      collect_signature(f.right(), fns, preds);
  }
}

inline std::vector<Term> vars_named(const std::string& base, std::size_t n) {
  std::vector<Term> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(Term::variable(base + std::to_string(i)));
  return out;
}

}  // namespace detail

/// The theory a rewrite system encodes: each term rule l -> r as the closed
/// equation l = r, each proposition rule A -> F as the closed equivalence
/// A <=> F, followed by the equality axioms when term rules are present.
inline std::vector<Formula> rules_to_axioms(const RewriteSystem& rs, const Signature& sig = {}) {
  std::vector<Formula> out;
  for (const TermRule& r : rs.term_rules)
    out.push_back(universal_closure(Formula::atom(equality(r.lhs, r.rhs))));
  for (const PropRule& r : rs.prop_rules)
    out.push_back(universal_closure(Formula::equivalence(Formula::atom(r.lhs), r.rhs)));
  if (rs.term_rules.empty()) return out;

  std::map<std::string, std::size_t> fns = sig.functions();
  std::map<std::string, std::size_t> preds = sig.predicates();
  for (const TermRule& r : rs.term_rules) {
    detail::collect_function_symbols(r.lhs, fns);
    detail::collect_function_symbols(r.rhs, fns);
  }
  for (const PropRule& r : rs.prop_rules)
    detail::collect_signature(Formula::atom(r.lhs), fns, preds),
        detail::collect_signature(r.rhs, fns, preds);

  const Term x = Term::variable("X"), y = Term::variable("Y"), z = Term::variable("Z");
  auto eq = [](const Term& a, const Term& b) { return Formula::atom(equality(a, b)); };
  out.push_back(universal_closure(eq(x, x)));
  out.push_back(universal_closure(Formula::implication(eq(x, y), eq(y, x))));
  out.push_back(universal_closure(
      Formula::implication(Formula::conjunction(eq(x, y), eq(y, z)), eq(x, z))));
  for (const auto& [f, n] : fns) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Term> args = detail::vars_named("X", n);
      std::vector<Term> moved = args;
      moved[i] = Term::variable("Y");
      out.push_back(universal_closure(Formula::implication(
          eq(args[i], moved[i]), eq(Term::apply(f, args), Term::apply(f, moved)))));
    }
  }
  for (const auto& [p, n] : preds) {
    if (p == kEquality) continue;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Term> args = detail::vars_named("X", n);
      std::vector<Term> moved = args;
      moved[i] = Term::variable("Y");
      out.push_back(universal_closure(Formula::implication(
          Formula::conjunction(eq(args[i], moved[i]), Formula::atom(p, args)),
          Formula::atom(p, moved))));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Saturation

struct SaturationLimits {
  std::size_t max_clauses = 20000;
  std::size_t max_iterations = 10000;
  std::size_t narrowing_depth = kDefaultNarrowingDepth;
  std::size_t fuel = kDefaultFuel;
};

struct ProverOptions {
  ProverMode mode = ProverMode::Resolution;
  SaturationLimits limits;
  bool subsumption = true;
  bool tautology_deletion = true;
  /// Paramodulation mode only: use term rules one way, by narrowing clauses,
  /// instead of adding them as equations.
  bool oriented = false;
};

struct TraceStep {
  std::size_t id = 0;
  Clause clause;
  std::string inference;  // axiom | negated_goal | theory | resolve | factor | paramod | narrow | ext_narrow
  std::vector<std::size_t> parents;
  Substitution substitution;
  std::string rule;
};

struct DerivationTrace {
  std::vector<TraceStep> steps;

  const TraceStep* find(std::size_t id) const {
    auto it = std::lower_bound(steps.begin(), steps.end(), id,
                               [](const TraceStep& s, std::size_t v) { return s.id < v; });
    if (it != steps.end() && it->id == id) return &*it;
    for (const TraceStep& s : steps)
      if (s.id == id) return &s;
    return nullptr;
  }

  bool ends_in_empty_clause() const { return !steps.empty() && steps.back().clause.is_empty(); }

  /// The steps `id` depends on, in trace order.
  DerivationTrace ancestors_of(std::size_t id) const {
    std::set<std::size_t> needed{id};
    for (auto it = steps.rbegin(); it != steps.rend(); ++it)
      if (needed.contains(it->id)) needed.insert(it->parents.begin(), it->parents.end());
    DerivationTrace out;
    for (const TraceStep& s : steps)
      if (needed.contains(s.id)) out.steps.push_back(s);
    return out;
  }

  /// Number of steps that are not input clauses from the theory.
  std::size_t inference_count() const {
    std::size_t n = 0;
    for (const TraceStep& s : steps)
      if (s.inference != "axiom" && s.inference != "theory") ++n;
    return n;
  }
};

inline std::string format_step(const TraceStep& s) {
  std::ostringstream os;
  os << s.id << ". " << s.clause << " [" << s.inference;
  for (std::size_t i = 0; i < s.parents.size(); ++i) os << (i ? "," : " ") << s.parents[i];
  if (!s.parents.empty()) os << " σ=" << s.substitution;
  if (!s.rule.empty()) os << " rw=" << s.rule;
  os << ']';
  return os.str();
}

inline std::string format_trace(const DerivationTrace& t) {
  std::string out;
  for (const TraceStep& s : t.steps) out += format_step(s) + "\n";
  return out;
}

enum class Verdict { Refuted, Saturated, LimitExceeded };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Refuted: return "Refuted";
    case Verdict::Saturated: return "Saturated";
    case Verdict::LimitExceeded: return "LimitExceeded";
  }
  return "?";
}

struct SaturationResult {
  Verdict verdict = Verdict::Saturated;
  DerivationTrace trace;
  std::vector<Clause> final_clauses;  // the active set when saturated
  std::string reason;                 // which limit tripped
  std::size_t iterations = 0;

  /// The derivation of the empty clause, restricted to its ancestors.
  DerivationTrace refutation() const {
    if (verdict != Verdict::Refuted) return {};
    return trace.ancestors_of(trace.steps.back().id);
  }
};

namespace detail {

inline Clause normalize_clause(const RewriteSystem& rs, const Clause& c, std::size_t fuel) {
  if (rs.term_rules.empty()) return c;
  std::vector<Literal> lits;
  for (const Literal& l : c.literals()) lits.push_back({l.positive, normalize_atom(rs, l.atom, fuel)});
  return Clause(std::move(lits));
}

inline bool subsumes_from(const std::vector<Literal>& d, std::size_t i, const Clause& c,
                          Bindings& b) {
  if (i == d.size()) return true;
  for (const Literal& l : c.literals()) {
    if (l.positive != d[i].positive || l.atom.predicate != d[i].atom.predicate ||
        l.atom.args.size() != d[i].atom.args.size())
      continue;
    Bindings trial = b;
    bool ok = true;
    for (std::size_t k = 0; ok && k < l.atom.args.size(); ++k)
      ok = match_into(d[i].atom.args[k], l.atom.args[k], trial);
    if (ok && subsumes_from(d, i + 1, c, trial)) return true;
  }
  return false;
}

// Theory clauses a mode adds on its own: reflexivity and, unless oriented,
// the term rules as equations and the proposition rules as equivalences.
inline std::vector<std::pair<Clause, std::string>> theory_clauses(const RewriteSystem& rs,
                                                                  const ProverOptions& opt) {
  std::vector<std::pair<Clause, std::string>> out;
  if (opt.mode != ProverMode::Paramodulation) return out;
  out.push_back({Clause{pos(equality(Term::variable("X"), Term::variable("X")))}, ""});
  if (!opt.oriented)
    for (const TermRule& r : rs.term_rules) out.push_back({Clause{pos(equality(r.lhs, r.rhs))}, r.name});
  for (const PropRule& r : rs.prop_rules)
    for (const Clause& c : cnf(Formula::equivalence(Formula::atom(r.lhs), r.rhs)))
      out.push_back({c, r.name});
  return out;
}

}  // namespace detail

/// D subsumes C when some instance of D's literals is contained in C and D is no longer than C.
inline bool subsumes(const Clause& d, const Clause& c) {
  if (d.size() > c.size()) return false;
  Bindings b;
  return detail::subsumes_from(d.literals(), 0, c, b);
}

namespace detail {

class Saturator {
 public:
  Saturator(const RewriteSystem& rs, const ProverOptions& opt)
      : rs_(opt.mode == ProverMode::Resolution ? RewriteSystem{} : rs),
        opt_(opt),
        ctx_(uses_equational_unification(opt.mode)
                 ? UnifierContext::modulo(rs_, NarrowingOptions{opt.limits.narrowing_depth,
                                                                opt.limits.fuel})
                 : UnifierContext::syntactic()) {}

  SaturationResult run(const std::vector<SourcedClause>& inputs) {
    try {
      // Negated-goal clauses are queued first so that search starts from the goal.
      for (int pass = 0; pass < 2; ++pass)
        for (const SourcedClause& sc : inputs)
          if ((sc.source == ClauseSource::NegatedGoal) == (pass == 0))
            if (add(sc.clause, pass == 0 ? "negated_goal" : "axiom", {}, {}, {})) return finish(Verdict::Refuted);
      for (const auto& [c, rule] : theory_clauses(rs_, opt_))
        if (add(c, "theory", {}, {}, rule)) return finish(Verdict::Refuted);

      while (!by_age_.empty()) {
        if (result_.iterations >= opt_.limits.max_iterations) {
          result_.reason = "iteration limit";
          return finish(Verdict::LimitExceeded);
        }
        std::size_t given = pick();
        ++result_.iterations;
        if (opt_.subsumption && subsumed_by_active(clauses_[given])) continue;
        active_.push_back(given);
        if (infer(given)) return finish(Verdict::Refuted);
      }
      if (ctx_.truncated) {
        result_.reason = "equational unification truncated at depth " +
                         std::to_string(opt_.limits.narrowing_depth);
        return finish(Verdict::LimitExceeded);
      }
      return finish(Verdict::Saturated);
    } catch (const LimitHit& e) {
      result_.reason = e.what;
      return finish(Verdict::LimitExceeded);
    } catch (const FuelExhausted& e) {
      result_.reason = e.what();
      return finish(Verdict::LimitExceeded);
    }
  }

 private:
  struct LimitHit {
    std::string what;
  };

  SaturationResult finish(Verdict v) {
    result_.verdict = v;
    for (std::size_t id : active_) result_.final_clauses.push_back(clauses_[id]);
    return std::move(result_);
  }

  std::size_t pick() {
    std::size_t id;
    if (result_.iterations % 2 == 0) {
      id = *by_age_.begin();
    } else {
      id = by_weight_.begin()->second;
    }
    by_age_.erase(id);
    by_weight_.erase({clauses_[id].weight(), id});
    return id;
  }

  bool subsumed_by_active(const Clause& c) const {
    for (std::size_t a : active_)
      if (subsumes(clauses_.at(a), c)) return true;
    return false;
  }

  // Returns true when the empty clause was added.
  bool add(const Clause& raw, const std::string& inference, std::vector<std::size_t> parents,
           const Substitution& sigma, const std::string& rule) {
    Clause c = raw.merged();
    if (uses_equational_unification(opt_.mode))
      c = normalize_clause(rs_, c, opt_.limits.fuel).merged();
    c = tidy_variables(c);
    if (opt_.tautology_deletion && c.is_tautology()) return false;
    for (const auto& [id, kept] : clauses_) {
      if (!retained(id)) continue;
      if (opt_.subsumption ? subsumes(kept, c) : is_variant(kept, c)) return false;
    }
    if (clauses_.size() >= opt_.limits.max_clauses) throw LimitHit{"clause limit"};
    std::size_t id = next_id_++;
    clauses_.emplace(id, c);
    result_.trace.steps.push_back({id, c, inference, std::move(parents), sigma, rule});
    if (c.is_empty()) return true;
    by_age_.insert(id);
    by_weight_.insert({c.weight(), id});
    return false;
  }

  bool retained(std::size_t id) const {
    return by_age_.contains(id) ||
           std::find(active_.begin(), active_.end(), id) != active_.end();
  }

  bool infer(std::size_t given) {
    const Clause g = clauses_[given];
    for (Inference& inf : factor(g, ctx_))
      if (add(inf.clause, "factor", {given}, inf.sigma, {})) return true;
    const std::vector<std::size_t> partners = active_;
    for (std::size_t a : partners) {
      Clause other = rename_away(clauses_[a], g.vars());
      for (Inference& inf : resolve(g, other, ctx_))
        if (add(inf.clause, "resolve", {given, a}, inf.sigma, {})) return true;
      if (opt_.mode == ProverMode::Paramodulation) {
        for (Inference& inf : paramodulate(g, other))
          if (add(inf.clause, "paramod", {given, a}, inf.sigma, {})) return true;
        if (a != given)
          for (Inference& inf : paramodulate(other, g))
            if (add(inf.clause, "paramod", {a, given}, inf.sigma, {})) return true;
      }
    }
    if (opt_.mode == ProverMode::Paramodulation && opt_.oriented)
      for (Inference& inf : narrow_clause_term(rs_, g))
        if (add(inf.clause, "narrow", {given}, inf.sigma, inf.rule)) return true;
    if (opt_.mode == ProverMode::ResolutionModulo)
      for (NarrowedSet& ns : ext_narrow(rs_, g, ctx_))
        for (const Clause& c : ns.clauses)
          if (add(c, "ext_narrow", {given}, ns.sigma, ns.rule)) return true;
    return false;
  }

  RewriteSystem rs_;
  ProverOptions opt_;
  UnifierContext ctx_;
  std::map<std::size_t, Clause> clauses_;
  std::set<std::size_t> by_age_;
  std::set<std::pair<std::size_t, std::size_t>> by_weight_;
  std::vector<std::size_t> active_;
  std::size_t next_id_ = 1;
  SaturationResult result_;
};

}  // namespace detail

/// Fair given-clause saturation (age and weight picks alternate 1:1).
inline SaturationResult saturate(const std::vector<SourcedClause>& clauses,
                                 const RewriteSystem& rs, const ProverOptions& opt = {}) {
  detail::Saturator s(rs, opt);
  return s.run(clauses);
}

inline SaturationResult saturate(const std::vector<Clause>& clauses, const RewriteSystem& rs,
                                 const ProverOptions& opt = {}) {
  std::vector<SourcedClause> in;
  for (const Clause& c : clauses) in.push_back({c, ClauseSource::Axiom, 0});
  return saturate(in, rs, opt);
}

// ---------------------------------------------------------------------------
// Trace replay

struct TraceCheck {
  bool ok = true;
  std::optional<std::size_t> failing_step;
  std::string reason;
  explicit operator bool() const { return ok; }
};

/// Re-derives every step of the trace from its recorded parents with the
/// named inference, independently of the saturation loop.
inline TraceCheck check_trace(const DerivationTrace& trace, const std::vector<SourcedClause>& inputs,
                              const RewriteSystem& rs_in, const ProverOptions& opt) {
  const RewriteSystem rs = opt.mode == ProverMode::Resolution ? RewriteSystem{} : rs_in;
  UnifierContext ctx = uses_equational_unification(opt.mode)
                           ? UnifierContext::modulo(rs, NarrowingOptions{opt.limits.narrowing_depth,
                                                                         opt.limits.fuel})
                           : UnifierContext::syntactic();
  auto post = [&](const Clause& c) {
    Clause m = c.merged();
    if (uses_equational_unification(opt.mode)) m = detail::normalize_clause(rs, m, opt.limits.fuel).merged();
    return m;
  };
  auto fail = [](std::size_t id, std::string why) { return TraceCheck{false, id, std::move(why)}; };

  std::map<std::size_t, Clause> known;
  for (const TraceStep& s : trace.steps) {
    if (known.contains(s.id)) return fail(s.id, "duplicate step id");
    std::vector<Clause> parents;
    for (std::size_t p : s.parents) {
      auto it = known.find(p);
      if (it == known.end() || p >= s.id) return fail(s.id, "unknown or later parent " + std::to_string(p));
      parents.push_back(it->second);
    }
    std::vector<Clause> candidates;
    const std::string& inf = s.inference;
    try {
      if (inf == "axiom" || inf == "negated_goal") {
        if (!parents.empty()) return fail(s.id, "input step with parents");
        ClauseSource want = inf == "axiom" ? ClauseSource::Axiom : ClauseSource::NegatedGoal;
        for (const SourcedClause& sc : inputs)
          if (sc.source == want) candidates.push_back(post(sc.clause));
      } else if (inf == "theory") {
        for (const auto& [c, _] : detail::theory_clauses(rs, opt)) candidates.push_back(post(c));
      } else if (inf == "resolve" && parents.size() == 2) {
        Clause b = rename_away(parents[1], parents[0].vars());
        for (Inference& r : resolve(parents[0], b, ctx)) candidates.push_back(post(r.clause));
      } else if (inf == "factor" && parents.size() == 1) {
        for (Inference& r : factor(parents[0], ctx)) candidates.push_back(post(r.clause));
      } else if (inf == "paramod" && parents.size() == 2 && opt.mode == ProverMode::Paramodulation) {
        Clause b = rename_away(parents[1], parents[0].vars());
        for (Inference& r : paramodulate(parents[0], b)) candidates.push_back(post(r.clause));
        Clause a = rename_away(parents[0], parents[1].vars());
        for (Inference& r : paramodulate(a, parents[1])) candidates.push_back(post(r.clause));
      } else if (inf == "narrow" && parents.size() == 1 && opt.mode == ProverMode::Paramodulation) {
        for (Inference& r : narrow_clause_term(rs, parents[0]))
          if (s.rule.empty() || r.rule == s.rule) candidates.push_back(post(r.clause));
      } else if (inf == "ext_narrow" && parents.size() == 1 &&
                 opt.mode == ProverMode::ResolutionModulo) {
        for (NarrowedSet& ns : ext_narrow(rs, parents[0], ctx))
          if (s.rule.empty() || ns.rule == s.rule)
            for (const Clause& c : ns.clauses) candidates.push_back(post(c));
      } else {
        return fail(s.id, "inference '" + inf + "' not applicable here");
      }
    } catch (const FuelExhausted& e) {
      return fail(s.id, e.what());
    }
    bool found = false;
    for (const Clause& c : candidates) found = found || is_variant(c, s.clause);
    if (!found) return fail(s.id, "clause " + to_string(s.clause) + " is not a conclusion of " + inf);
    known.emplace(s.id, s.clause);
  }
  return {};
}

}  // namespace modulo
