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

// Term and proposition rewriting: matching, one-step reduction,
// leftmost-innermost normalization, the congruence test on terms and
// formulas, and critical-pair analysis.

#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "modulo/print.hpp"
#include "modulo/unify.hpp"

namespace modulo {

inline constexpr std::size_t kDefaultFuel = 10000;
inline constexpr std::size_t kDefaultPairFuel = 1000;
inline constexpr std::size_t kDefaultEquivDepth = 8;

/// The step budget ran out before a normal form (or a decision) was reached.
class FuelExhausted : public Error {
 public:
  using Error::Error;
};

/// A rule violates lhs/rhs variable inclusion or shape restrictions.
class RuleError : public Error {
 public:
  using Error::Error;
};

struct TermRule {
  std::string name;
  Term lhs;
  Term rhs;
  friend bool operator==(const TermRule&, const TermRule&) = default;
};

struct PropRule {
  std::string name;
  Atom lhs;
  Formula rhs;
  friend bool operator==(const PropRule&, const PropRule&) = default;
};

inline TermRule make_term_rule(std::string name, Term lhs, Term rhs) {
  if (lhs.is_variable())
    throw RuleError("rule " + name + ": left-hand side must not be a variable");
  VarSet lv = lhs.vars();
  for (const std::string& v : rhs.vars())
    if (!lv.contains(v))
      throw RuleError("rule " + name + ": variable " + v + " of the right-hand side is not bound by the left-hand side");
  return TermRule{std::move(name), std::move(lhs), std::move(rhs)};
}

inline PropRule make_prop_rule(std::string name, Atom lhs, Formula rhs) {
  if (!rhs.is_quantifier_free())
    throw RuleError("proposition rule " + name + ": right-hand side must be quantifier-free");
  VarSet lv = free_vars(lhs);
  for (const std::string& v : rhs.free_vars())
    if (!lv.contains(v))
      throw RuleError("proposition rule " + name + ": variable " + v + " of the right-hand side is not bound by the left-hand side");
  return PropRule{std::move(name), std::move(lhs), std::move(rhs)};
}

struct RewriteSystem {
  std::vector<TermRule> term_rules;
  std::vector<PropRule> prop_rules;

  bool empty() const { return term_rules.empty() && prop_rules.empty(); }
  friend bool operator==(const RewriteSystem&, const RewriteSystem&) = default;
};

/// sigma with sigma(pattern) == subject and domain within the pattern's variables.
inline std::optional<Substitution> match_term(const Term& pattern, const Term& subject) {
  Bindings b;
  if (!match_into(pattern, subject, b)) return std::nullopt;
  return to_substitution(b);
}

inline std::optional<Substitution> match_atom(const Atom& pattern, const Atom& subject) {
  if (pattern.predicate != subject.predicate || pattern.args.size() != subject.args.size())
    return std::nullopt;
  Bindings b;
  for (std::size_t i = 0; i < pattern.args.size(); ++i)
    if (!match_into(pattern.args[i], subject.args[i], b)) return std::nullopt;
  return to_substitution(b);
}

/// One rewrite step: the whole resulting term, the rule used, and where.
struct Reduct {
  Term term;
  std::string rule;
  Position position;
};

namespace detail {

inline void collect_reducts(const RewriteSystem& rs, const Term& root, const Term& t,
                            Position& pos, std::vector<Reduct>& out) {
  if (t.is_variable()) return;
  for (const TermRule& r : rs.term_rules) {
    Bindings b;
    if (match_into(r.lhs, t, b))
      out.push_back({replace_at(root, pos, to_substitution(b).apply(r.rhs)), r.name, pos});
  }
  for (std::size_t i = 0; i < t.arity(); ++i) {
    pos.push_back(i);
    collect_reducts(rs, root, t.args()[i], pos, out);
    pos.pop_back();
  }
}

// Leftmost-innermost redex: arguments left to right first, then the root.
inline std::optional<std::pair<Position, Term>> innermost_redex(const RewriteSystem& rs,
                                                                const Term& t,
                                                                Position& pos,
                                                                const TermRule** used) {
  if (t.is_variable()) return std::nullopt;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    pos.push_back(i);
    auto found = innermost_redex(rs, t.args()[i], pos, used);
    pos.pop_back();
    if (found) return found;
  }
  for (const TermRule& r : rs.term_rules) {
    Bindings b;
    if (match_into(r.lhs, t, b)) {
      *used = &r;
      return std::make_pair(pos, to_substitution(b).apply(r.rhs));
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// All one-step reducts at every position by every term rule, with provenance.
inline std::vector<Reduct> rewrite_step_traced(const RewriteSystem& rs, const Term& t) {
  std::vector<Reduct> out;
  Position pos;
  detail::collect_reducts(rs, t, t, pos, out);
  return out;
}

/// Distinct one-step reducts; empty iff t is in normal form.
inline std::vector<Term> rewrite_step(const RewriteSystem& rs, const Term& t) {
  std::vector<Term> out;
  for (Reduct& r : rewrite_step_traced(rs, t))
    if (std::find(out.begin(), out.end(), r.term) == out.end()) out.push_back(std::move(r.term));
  return out;
}

struct Normalization {
  Term start;
  Term normal_form;
  std::vector<Reduct> steps;
};

inline Normalization normalize_traced(const RewriteSystem& rs, const Term& t,
                                      std::size_t fuel = kDefaultFuel) {
  Normalization n{t, t, {}};
  if (rs.term_rules.empty()) return n;
  while (true) {
    Position pos;
    const TermRule* used = nullptr;
    auto redex = detail::innermost_redex(rs, n.normal_form, pos, &used);
    if (!redex) return n;
    if (n.steps.size() >= fuel)
      throw FuelExhausted("no normal form of " + to_string(t) + " within " +
                          std::to_string(fuel) + " steps");
    n.normal_form = replace_at(n.normal_form, redex->first, redex->second);
    n.steps.push_back({n.normal_form, used->name, std::move(redex->first)});
  }
}

inline Term normalize(const RewriteSystem& rs, const Term& t, std::size_t fuel = kDefaultFuel) {
  return normalize_traced(rs, t, fuel).normal_form;
}

/// Decides the congruence when rs is confluent and terminating; otherwise it
/// only tests joinability of leftmost-innermost normal forms.
inline bool equivalent(const RewriteSystem& rs, const Term& t, const Term& u,
                       std::size_t fuel = kDefaultFuel) {
  if (t == u) return true;
  return normalize(rs, t, fuel) == normalize(rs, u, fuel);
}

// ---------------------------------------------------------------------------
// Critical pairs

enum class PairStatus { Trivial, Joinable, NotJoinable, Unknown };

inline const char* to_string(PairStatus s) {
  switch (s) {
    case PairStatus::Trivial: return "trivial";
    case PairStatus::Joinable: return "joinable";
    case PairStatus::NotJoinable: return "not-joinable";
    case PairStatus::Unknown: return "unknown";
  }
  return "?";
}

struct CriticalPair {
  std::string outer_rule;
  std::string inner_rule;
  Position position;  // of the inner redex inside the outer left-hand side
  Term peak;
  Term left;   // peak rewritten at the root by the outer rule
  Term right;  // peak rewritten at `position` by the inner rule
  PairStatus status = PairStatus::Unknown;
  std::optional<Term> left_normal;   // joining reducts, present iff joinable
  std::optional<Term> right_normal;

  bool joinable() const { return status == PairStatus::Trivial || status == PairStatus::Joinable; }
};

struct CriticalPairReport {
  std::vector<CriticalPair> pairs;

  bool locally_confluent() const {
    return std::all_of(pairs.begin(), pairs.end(), [](const auto& p) { return p.joinable(); });
  }
  bool has_unknown() const {
    return std::any_of(pairs.begin(), pairs.end(),
                       [](const auto& p) { return p.status == PairStatus::Unknown; });
  }
  std::vector<const CriticalPair*> non_joinable() const {
    std::vector<const CriticalPair*> out;
    for (const auto& p : pairs)
      if (p.status == PairStatus::NotJoinable) out.push_back(&p);
    return out;
  }
};

namespace detail {

inline TermRule rename_rule_away(const TermRule& r, const VarSet& avoid) {
  VarSet used = avoid;
  VarSet own = r.lhs.vars();
  used.insert(own.begin(), own.end());
  Substitution ren;
  for (const std::string& v : own) {
    if (!avoid.contains(v)) continue;
    std::string fresh = fresh_variable(v, used);
    used.insert(fresh);
    ren.bind(v, Term::variable(fresh));
  }
  return TermRule{r.name, ren.apply(r.lhs), ren.apply(r.rhs)};
}

inline void decide_pair(const RewriteSystem& rs, CriticalPair& cp, std::size_t fuel) {
  if (cp.left == cp.right) {
    cp.status = PairStatus::Trivial;
    cp.left_normal = cp.left;
    cp.right_normal = cp.right;
    return;
  }
  try {
    Term l = normalize(rs, cp.left, fuel);
    Term r = normalize(rs, cp.right, fuel);
    if (l == r) {
      cp.status = PairStatus::Joinable;
      cp.left_normal = l;
      cp.right_normal = r;
    } else {
      cp.status = PairStatus::NotJoinable;
    }
  } catch (const FuelExhausted&) {
    cp.status = PairStatus::Unknown;
  }
}

}  // namespace detail

/// Overlaps of every rule lhs into every non-variable position of every
/// (renamed-apart) rule lhs. Root overlaps of a rule with itself are listed as
/// trivial; symmetric root overlaps between two rules are listed once.
inline CriticalPairReport critical_pairs(const RewriteSystem& rs,
                                         std::size_t fuel = kDefaultPairFuel) {
  CriticalPairReport report;
  const auto& rules = rs.term_rules;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const TermRule& outer = rules[i];
    for (std::size_t j = 0; j < rules.size(); ++j) {
      TermRule inner = detail::rename_rule_away(rules[j], outer.lhs.vars());
      for (const Position& p : function_positions(outer.lhs)) {
        if (p.empty() && j < i) continue;
        if (p.empty() && i == j) {
          CriticalPair cp{outer.name, inner.name, p, outer.lhs, outer.rhs, outer.rhs, PairStatus::Trivial, {}, {}};
          cp.status = PairStatus::Trivial;
          cp.left_normal = cp.right_normal = outer.rhs;
          report.pairs.push_back(std::move(cp));
          continue;
        }
        auto sigma = mgu(subterm_at(outer.lhs, p), inner.lhs);
        if (!sigma) continue;
        Term peak = sigma->apply(outer.lhs);
        CriticalPair cp{outer.name, inner.name, p, peak, sigma->apply(outer.rhs),
                        replace_at(peak, p, sigma->apply(inner.rhs)), PairStatus::Unknown, {}, {}};
        detail::decide_pair(rs, cp, fuel);
        report.pairs.push_back(std::move(cp));
      }
    }
  }
  return report;
}

inline CriticalPairReport is_locally_confluent(const RewriteSystem& rs,
                                               std::size_t fuel = kDefaultPairFuel) {
  return critical_pairs(rs, fuel);
}

struct JoinResult {
  bool joinable = false;
  Normalization left;
  Normalization right;
  /// Set when the system fails the local-confluence check, in which case a
  /// negative answer may under-approximate the congruence.
  std::optional<std::string> warning;
};

/// `equivalent` together with both rewriting sequences meeting at the shared normal form.
inline JoinResult join(const RewriteSystem& rs, const Term& t, const Term& u,
                       std::size_t fuel = kDefaultFuel) {
  JoinResult r{false, normalize_traced(rs, t, fuel), normalize_traced(rs, u, fuel), {}};
  r.joinable = r.left.normal_form == r.right.normal_form;
  CriticalPairReport cps = critical_pairs(rs);
  if (!cps.locally_confluent())
    r.warning = cps.has_unknown()
                    ? "local confluence could not be established; the answer may under-approximate the congruence"
                    : "rewrite system is not locally confluent; the answer may under-approximate the congruence";
  return r;
}

// ---------------------------------------------------------------------------
// Formulas

inline Atom normalize_atom(const RewriteSystem& rs, const Atom& a, std::size_t fuel) {
  Atom out{a.predicate, {}};
  for (const Term& t : a.args) out.args.push_back(normalize(rs, t, fuel));
  return out;
}

/// Normalizes every term occurring in the formula by the term rules.
inline Formula normalize_terms(const RewriteSystem& rs, const Formula& f,
                               std::size_t fuel = kDefaultFuel) {
  if (rs.term_rules.empty()) return f;
  switch (f.kind()) {
    case Connective::Atom: return Formula::atom(normalize_atom(rs, f.atom(), fuel));
    case Connective::Top:
    case Connective::Bottom: return f;
    case Connective::Not: return Formula::negation(normalize_terms(rs, f.operand(), fuel));
    case Connective::Forall:
    case Connective::Exists:
      return Formula::quantified(f.kind(), f.bound_variable(), normalize_terms(rs, f.body(), fuel));
    default:
      return Formula::binary(f.kind(), normalize_terms(rs, f.left(), fuel),
                             normalize_terms(rs, f.right(), fuel));
  }
}

namespace detail {

template <class AtomStep>
void rewrite_atoms(const Formula& f, AtomStep&& step, std::vector<Formula>& out) {
  switch (f.kind()) {
    case Connective::Atom: step(f.atom(), out); return;
    case Connective::Top:
    case Connective::Bottom: return;
    case Connective::Not: {
      std::vector<Formula> inner;
      rewrite_atoms(f.operand(), step, inner);
      for (Formula& g : inner) out.push_back(Formula::negation(std::move(g)));
      return;
    }
    case Connective::Forall:
    case Connective::Exists: {
      std::vector<Formula> inner;
      rewrite_atoms(f.body(), step, inner);
      for (Formula& g : inner)
        out.push_back(Formula::quantified(f.kind(), f.bound_variable(), std::move(g)));
      return;
    }
    default: {
      std::vector<Formula> l, r;
      rewrite_atoms(f.left(), step, l);
      for (Formula& g : l) out.push_back(Formula::binary(f.kind(), std::move(g), f.right()));
      rewrite_atoms(f.right(), step, r);
      for (Formula& g : r) out.push_back(Formula::binary(f.kind(), f.left(), std::move(g)));
    }
  }
}

inline void prop_rule_step(const RewriteSystem& rs, const Atom& a, std::vector<Formula>& out) {
  for (const PropRule& r : rs.prop_rules)
    if (auto sigma = match_atom(r.lhs, a)) out.push_back(sigma->apply(r.rhs));
}

inline void push_unique(std::vector<Formula>& out, Formula f) {
  if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(std::move(f));
}

}  // namespace detail

/// Formulas obtained by rewriting one atom occurrence with a proposition rule
/// or one term occurrence with a term rule.
inline std::vector<Formula> prop_rewrite_step(const RewriteSystem& rs, const Formula& f) {
  std::vector<Formula> raw;
  detail::rewrite_atoms(
      f,
      [&rs](const Atom& a, std::vector<Formula>& out) {
        detail::prop_rule_step(rs, a, out);
        for (std::size_t i = 0; i < a.args.size(); ++i) {
          for (Term& t : rewrite_step(rs, a.args[i])) {
            Atom b = a;
            b.args[i] = std::move(t);
            out.push_back(Formula::atom(std::move(b)));
          }
        }
      },
      raw);
  std::vector<Formula> out;
  for (Formula& g : raw) detail::push_unique(out, std::move(g));
  return out;
}

struct FormulaEquivOptions {
  std::size_t fuel = kDefaultFuel;
  std::size_t depth = kDefaultEquivDepth;
  std::size_t max_states = 20000;
};

// Term rules are applied by normalization. Proposition rules need not
// terminate (A -> B /\ ~A), so they are explored by a bounded bidirectional
// breadth-first search over term-normal formulas: meeting at a common reduct
// proves equivalence, exhausting both reduct sets disproves it, and anything
// else is reported as FuelExhausted.
inline bool formula_equiv(const RewriteSystem& rs, const Formula& f, const Formula& g,
                          const FormulaEquivOptions& opt = {}) {
  Formula a = normalize_terms(rs, f, opt.fuel);
  Formula b = normalize_terms(rs, g, opt.fuel);
  if (alpha_equivalent(a, b)) return true;
  if (rs.prop_rules.empty()) return false;

  struct Side {
    std::unordered_set<std::string> seen;
    std::vector<Formula> frontier;
  };
  Side sides[2];
  sides[0].seen.insert(alpha_key(a));
  sides[0].frontier.push_back(a);
  sides[1].seen.insert(alpha_key(b));
  sides[1].frontier.push_back(b);

  auto successors = [&](const Formula& x) {
    std::vector<Formula> raw;
    detail::rewrite_atoms(
        x, [&rs](const Atom& at, std::vector<Formula>& out) { detail::prop_rule_step(rs, at, out); },
        raw);
    for (Formula& y : raw) y = normalize_terms(rs, y, opt.fuel);
    return raw;
  };

  for (std::size_t level = 0; level < opt.depth; ++level) {
    for (int s = 0; s < 2; ++s) {
      Side& me = sides[s];
      Side& other = sides[1 - s];
      std::vector<Formula> next;
      for (const Formula& x : me.frontier) {
        for (Formula& y : successors(x)) {
          std::string key = alpha_key(y);
          if (other.seen.contains(key)) return true;
          if (me.seen.insert(key).second) next.push_back(std::move(y));
        }
      }
      me.frontier = std::move(next);
      if (me.seen.size() + other.seen.size() > opt.max_states)
        throw FuelExhausted("equivalence search exceeded " + std::to_string(opt.max_states) +
                            " states");
    }
    if (sides[0].frontier.empty() && sides[1].frontier.empty()) return false;
  }
  if (sides[0].frontier.empty() && sides[1].frontier.empty()) return false;
  throw FuelExhausted("equivalence of " + to_string(f) + " and " + to_string(g) +
                      " undecided within depth " + std::to_string(opt.depth));
}

}  // namespace modulo
