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

// Clausal normal form by plain distribution, universal closure, clause-set
// comparison and the ground truth-table tautology test.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "modulo/print.hpp"

namespace modulo {

/// tautology() was given a formula with variables or quantifiers.
class NotGround : public Error {
 public:
  using Error::Error;
};

struct SkolemSymbol {
  std::string name;
  std::size_t arity;
  friend bool operator==(const SkolemSymbol&, const SkolemSymbol&) = default;
};

// Fresh Skolem symbols sk0, sk1, ... skipping names in `reserved`. One
// registry per clausification call chain; nothing is global.
class SkolemRegistry {
 public:
  SkolemRegistry() = default;
  explicit SkolemRegistry(std::set<std::string> reserved) : reserved_(std::move(reserved)) {}

  std::string fresh(std::size_t arity) {
    std::string name;
    do {
      name = "sk" + std::to_string(next_++);
    } while (reserved_.contains(name));
    reserved_.insert(name);
    symbols_.push_back({name, arity});
    return name;
  }

  void reserve(const std::string& name) { reserved_.insert(name); }
  const std::vector<SkolemSymbol>& symbols() const { return symbols_; }

 private:
  std::set<std::string> reserved_;
  std::vector<SkolemSymbol> symbols_;
  std::size_t next_ = 0;
};

namespace detail {

inline void collect_symbols(const Term& t, std::set<std::string>& out) {
  if (t.is_variable()) return;
  out.insert(t.name());
  for (const Term& a : t.args()) collect_symbols(a, out);
}

inline void collect_symbols(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Connective::Atom:
      for (const Term& t : f.atom().args) collect_symbols(t, out);
      return;
    case Connective::Top:
    case Connective::Bottom: return;
    case Connective::Not:
    case Connective::Forall:
    case Connective::Exists: collect_symbols(f.operand(), out); return;
    default:
      collect_symbols(f.left(), out);
      collect_symbols(f.right(), out);
  }
}

}  // namespace detail

/// Quantifies every free variable universally, in name order (outermost first).
inline Formula universal_closure(const Formula& f) {
  VarSet fv = f.free_vars();
  Formula out = f;
  for (auto it = fv.rbegin(); it != fv.rend(); ++it) out = Formula::forall(*it, out);
  return out;
}

inline Formula universal_closure(const Clause& c) { return universal_closure(c.to_formula()); }

namespace detail {

inline Formula nnf(const Formula& f, bool negate) {
  switch (f.kind()) {
    case Connective::Atom: return negate ? Formula::negation(f) : f;
    case Connective::Top: return negate ? Formula::bottom() : f;
    case Connective::Bottom: return negate ? Formula::top() : f;
    case Connective::Not: return nnf(f.operand(), !negate);
    case Connective::And:
    case Connective::Or: {
      Connective c = f.kind();
      if (negate) c = c == Connective::And ? Connective::Or : Connective::And;
      return Formula::binary(c, nnf(f.left(), negate), nnf(f.right(), negate));
    }
    case Connective::Implies:
      // A => B  ==  ~A \/ B
      if (negate)
        return Formula::conjunction(nnf(f.left(), false), nnf(f.right(), true));
      return Formula::disjunction(nnf(f.left(), true), nnf(f.right(), false));
    case Connective::Iff:
      // A <=> B  ==  (~A \/ B) /\ (A \/ ~B);   ~(A <=> B)  ==  (A \/ B) /\ (~A \/ ~B)
      if (negate)
        return Formula::conjunction(Formula::disjunction(nnf(f.left(), false), nnf(f.right(), false)),
                                    Formula::disjunction(nnf(f.left(), true), nnf(f.right(), true)));
      return Formula::conjunction(Formula::disjunction(nnf(f.left(), true), nnf(f.right(), false)),
                                  Formula::disjunction(nnf(f.left(), false), nnf(f.right(), true)));
    case Connective::Forall:
    case Connective::Exists: {
      Connective q = f.kind();
      if (negate) q = q == Connective::Forall ? Connective::Exists : Connective::Forall;
      return Formula::quantified(q, f.bound_variable(), nnf(f.body(), negate));
    }
  }
  return f;
}

inline Formula skolemize(const Formula& f, std::vector<std::string>& universals, VarSet& used,
                         SkolemRegistry& reg) {
  switch (f.kind()) {
    case Connective::Forall: {
      std::string var = fresh_variable(f.bound_variable(), used);
      used.insert(var);
      Formula body = var == f.bound_variable()
                         ? f.body()
                         : Substitution{{f.bound_variable(), Term::variable(var)}}.apply(f.body());
      universals.push_back(var);
      Formula inner = skolemize(body, universals, used, reg);
      universals.pop_back();
      return Formula::forall(var, inner);
    }
    case Connective::Exists: {
      VarSet body_free = f.body().free_vars();
      std::vector<Term> args;
      for (const std::string& u : universals)
        if (body_free.contains(u)) args.push_back(Term::variable(u));
      std::string name = reg.fresh(args.size());
      Term sk = Term::apply(name, std::move(args));
      return skolemize(Substitution{{f.bound_variable(), sk}}.apply(f.body()), universals, used,
                       reg);
    }
    case Connective::Not:
      return Formula::negation(skolemize(f.operand(), universals, used, reg));
    case Connective::And:
    case Connective::Or:
    case Connective::Implies:
    case Connective::Iff:
      return Formula::binary(f.kind(), skolemize(f.left(), universals, used, reg),
                             skolemize(f.right(), universals, used, reg));
    default: return f;
  }
}

using LiteralSet = std::vector<Literal>;

// Clause set of a quantifier-free NNF formula; top is the empty set, bottom
// the set holding the empty clause.
inline std::vector<LiteralSet> distribute(const Formula& f) {
  switch (f.kind()) {
    case Connective::Atom: return {{pos(f.atom())}};
    case Connective::Not: return {{neg(f.operand().atom())}};
    case Connective::Top: return {};
    case Connective::Bottom: return std::vector<LiteralSet>(1);
    case Connective::Forall: return distribute(f.body());
    case Connective::And: {
      auto l = distribute(f.left());
      auto r = distribute(f.right());
      l.insert(l.end(), r.begin(), r.end());
      return l;
    }
    case Connective::Or: {
      auto l = distribute(f.left());
      auto r = distribute(f.right());
      std::vector<LiteralSet> out;
      for (const auto& x : l)
        for (const auto& y : r) {
          LiteralSet c = x;
          c.insert(c.end(), y.begin(), y.end());
          out.push_back(std::move(c));
        }
      return out;
    }
    default: return {};  // unreachable after nnf + skolemize
  }
}

}  // namespace detail

/// Negation normal form: no =>, <=>, and negation only on atoms.
inline Formula nnf(const Formula& f) { return detail::nnf(f, false); }

/// Replaces existentials by Skolem terms over the enclosing universal
/// variables; free variables are universally closed first. Bound variables
/// are renamed apart. Universal quantifiers remain.
inline Formula skolemize(const Formula& f, SkolemRegistry& reg) {
  Formula g = nnf(universal_closure(f));
  std::vector<std::string> universals;
  VarSet used;
  std::set<std::string> symbols;
  detail::collect_symbols(g, symbols);
  for (const std::string& s : symbols) reg.reserve(s);
  return detail::skolemize(g, universals, used, reg);
}

inline Formula skolemize(const Formula& f) {
  SkolemRegistry reg;
  return skolemize(f, reg);
}

/// Drops duplicate literals, tautological clauses and duplicate clauses.
inline std::vector<Clause> simplify_clause_set(const std::vector<Clause>& in) {
  std::vector<Clause> out;
  for (const Clause& c : in) {
    Clause m = c.merged();
    if (m.is_tautology()) continue;
    bool dup = false;
    for (const Clause& d : out) dup = dup || d.sorted() == m.sorted();
    if (!dup) out.push_back(std::move(m));
  }
  return out;
}

/// Clause set equisatisfiable with f, by plain distribution.
inline std::vector<Clause> cnf(const Formula& f, SkolemRegistry& reg) {
  std::vector<Clause> raw;
  for (auto& lits : detail::distribute(skolemize(f, reg))) raw.emplace_back(std::move(lits));
  return simplify_clause_set(raw);
}

inline std::vector<Clause> cnf(const Formula& f) {
  SkolemRegistry reg;
  return cnf(f, reg);
}

enum class ClauseSource { Axiom, NegatedGoal };

struct SourcedClause {
  Clause clause;
  ClauseSource source = ClauseSource::Axiom;
  std::size_t formula_index = 0;
};

struct ClausalProblem {
  std::vector<SourcedClause> clauses;
  SkolemRegistry skolems;

  std::vector<Clause> clause_set() const {
    std::vector<Clause> out;
    for (const auto& c : clauses) out.push_back(c.clause);
    return out;
  }
};

/// cl(antecedent, ~succedent): the antecedent formulas and the negated
/// succedent formulas, clausified with one shared Skolem registry.
inline ClausalProblem clausal_form(const std::vector<Formula>& antecedent,
                                   const std::vector<Formula>& succedent) {
  ClausalProblem p;
  std::set<std::string> symbols;
  for (const Formula& f : antecedent) detail::collect_symbols(f, symbols);
  for (const Formula& f : succedent) detail::collect_symbols(f, symbols);
  for (const std::string& s : symbols) p.skolems.reserve(s);

  auto add = [&p](const std::vector<Clause>& cs, ClauseSource src, std::size_t idx) {
    for (const Clause& c : cs) {
      bool dup = false;
      for (const auto& d : p.clauses) dup = dup || d.clause.sorted() == c.sorted();
      if (!dup) p.clauses.push_back({c, src, idx});
    }
  };
  for (std::size_t i = 0; i < antecedent.size(); ++i)
    add(cnf(antecedent[i], p.skolems), ClauseSource::Axiom, i);
  for (std::size_t i = 0; i < succedent.size(); ++i)
    add(cnf(Formula::negation(universal_closure(succedent[i])), p.skolems),
        ClauseSource::NegatedGoal, i);
  return p;
}

namespace detail {

inline std::vector<Clause> variant_reduced(const std::vector<Clause>& in) {
  std::vector<Clause> out;
  for (const Clause& c : simplify_clause_set(in)) {
    bool dup = false;
    for (const Clause& d : out) dup = dup || is_variant(c, d);
    if (!dup) out.push_back(c);
  }
  return out;
}

}  // namespace detail

/// Two clause sets are equal up to literal order, duplicates, tautologies
/// and variable renaming.
inline bool same_clause_set(const std::vector<Clause>& a, const std::vector<Clause>& b) {
  auto x = detail::variant_reduced(a);
  auto y = detail::variant_reduced(b);
  auto covered = [](const std::vector<Clause>& from, const std::vector<Clause>& in) {
    for (const Clause& c : from) {
      bool found = false;
      for (const Clause& d : in) found = found || is_variant(c, d);
      if (!found) return false;
    }
    return true;
  };
  return covered(x, y) && covered(y, x);
}

/// The two axiom sets have the same clausal form.
inline bool clausal_equiv(const std::vector<Formula>& axioms1,
                          const std::vector<Formula>& axioms2) {
  return same_clause_set(clausal_form(axioms1, {}).clause_set(),
                         clausal_form(axioms2, {}).clause_set());
}

namespace detail {

inline void collect_atoms(const Formula& f, std::vector<Atom>& out) {
  switch (f.kind()) {
    case Connective::Atom:
      for (const Term& t : f.atom().args)
        if (!t.is_ground()) throw NotGround("tautology: variable in " + to_string(f));
      if (std::find(out.begin(), out.end(), f.atom()) == out.end()) out.push_back(f.atom());
      return;
    case Connective::Top:
    case Connective::Bottom: return;
    case Connective::Forall:
    case Connective::Exists: throw NotGround("tautology: quantifier in input");
    case Connective::Not: collect_atoms(f.operand(), out); return;
    default:
      collect_atoms(f.left(), out);
      collect_atoms(f.right(), out);
  }
}

}  // namespace detail

/// Truth value of a quantifier-free formula under an assignment of its atoms.
inline bool evaluate(const Formula& f, const std::vector<Atom>& atoms, std::uint64_t assignment) {
  switch (f.kind()) {
    case Connective::Atom: {
      auto it = std::find(atoms.begin(), atoms.end(), f.atom());
      return (assignment >> (it - atoms.begin())) & 1U;
    }
    case Connective::Top: return true;
    case Connective::Bottom: return false;
    case Connective::Not: return !evaluate(f.operand(), atoms, assignment);
    case Connective::And: return evaluate(f.left(), atoms, assignment) && evaluate(f.right(), atoms, assignment);
    case Connective::Or: return evaluate(f.left(), atoms, assignment) || evaluate(f.right(), atoms, assignment);
    case Connective::Implies: return !evaluate(f.left(), atoms, assignment) || evaluate(f.right(), atoms, assignment);
    case Connective::Iff: return evaluate(f.left(), atoms, assignment) == evaluate(f.right(), atoms, assignment);
    default: throw NotGround("evaluate: quantifier in input");
  }
}

/// Truth-table test of a ground quantifier-free formula.
inline bool tautology(const Formula& f) {
  std::vector<Atom> atoms;
  detail::collect_atoms(f, atoms);
  if (atoms.size() > 24) throw Error("tautology: too many atoms for a truth table");
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << atoms.size()); ++m)
    if (!evaluate(f, atoms, m)) return false;
  return true;
}

}  // namespace modulo
