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

#pragma once

#include <algorithm>
#include <cassert>
#include <compare>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "modulo/term.hpp"

namespace modulo {

/// Atomic proposition P(t1, ..., tn). Propositional atoms have no arguments.
struct Atom {
  std::string predicate;
  std::vector<Term> args;

  bool is_equality() const { return predicate == kEquality && args.size() == 2; }

  void collect_vars(VarSet& out) const {
    for (const Term& t : args) t.collect_vars(out);
  }
  std::size_t size() const {
    std::size_t n = 1;
    for (const Term& t : args) n += t.size();
    return n;
  }

  friend bool operator==(const Atom&, const Atom&) = default;
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
    if (auto c = a.predicate <=> b.predicate; c != 0) return c;
    if (auto c = a.args.size() <=> b.args.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.args.size(); ++i)
      if (auto c = a.args[i] <=> b.args[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }
};

inline Atom equality(Term lhs, Term rhs) {
  return Atom{std::string(kEquality), {std::move(lhs), std::move(rhs)}};
}

enum class Connective { Atom, Top, Bottom, Not, And, Or, Implies, Iff, Forall, Exists };

inline bool is_binary(Connective c) {
  return c == Connective::And || c == Connective::Or || c == Connective::Implies ||
         c == Connective::Iff;
}
inline bool is_quantifier(Connective c) {
  return c == Connective::Forall || c == Connective::Exists;
}

// Immutable first-order formula with shared subformulas. Structural equality
// compares bound variable names literally; see alpha_equivalent() for the
// renaming-insensitive comparison.
class Formula {
 public:
  static Formula atom(Atom a) {
    auto n = std::make_shared<Node>(Connective::Atom);
    n->atom = std::move(a);
    return Formula(std::move(n));
  }
  static Formula atom(std::string predicate, std::vector<Term> args = {}) {
    return atom(Atom{std::move(predicate), std::move(args)});
  }
  static Formula top() { return Formula(std::make_shared<Node>(Connective::Top)); }
  static Formula bottom() { return Formula(std::make_shared<Node>(Connective::Bottom)); }
  static Formula negation(Formula f) {
    auto n = std::make_shared<Node>(Connective::Not);
    n->children = {std::move(f)};
    return Formula(std::move(n));
  }
  static Formula binary(Connective c, Formula l, Formula r) {
    assert(is_binary(c));
    auto n = std::make_shared<Node>(c);
    n->children = {std::move(l), std::move(r)};
    return Formula(std::move(n));
  }
  static Formula conjunction(Formula l, Formula r) {
    return binary(Connective::And, std::move(l), std::move(r));
  }
  static Formula disjunction(Formula l, Formula r) {
    return binary(Connective::Or, std::move(l), std::move(r));
  }
  static Formula implication(Formula l, Formula r) {
    return binary(Connective::Implies, std::move(l), std::move(r));
  }
  static Formula equivalence(Formula l, Formula r) {
    return binary(Connective::Iff, std::move(l), std::move(r));
  }
  static Formula quantified(Connective c, std::string var, Formula body) {
    assert(is_quantifier(c));
    auto n = std::make_shared<Node>(c);
    n->var = std::move(var);
    n->children = {std::move(body)};
    return Formula(std::move(n));
  }
  static Formula forall(std::string var, Formula body) {
    return quantified(Connective::Forall, std::move(var), std::move(body));
  }
  static Formula exists(std::string var, Formula body) {
    return quantified(Connective::Exists, std::move(var), std::move(body));
  }

  Connective kind() const { return node_->kind; }
  bool is_atom() const { return kind() == Connective::Atom; }
  const Atom& atom() const { return node_->atom; }
  /// Operand of a negation, or body of a quantifier.
  const Formula& operand() const { return node_->children.at(0); }
  const Formula& body() const { return node_->children.at(0); }
  const Formula& left() const { return node_->children.at(0); }
  const Formula& right() const { return node_->children.at(1); }
  const std::string& bound_variable() const { return node_->var; }

  std::size_t size() const {
    switch (kind()) {
      case Connective::Atom: return atom().size();
      case Connective::Top:
      case Connective::Bottom: return 1;
      default: {
        std::size_t n = 1;
        for (const Formula& c : node_->children) n += c.size();
        return n;
      }
    }
  }

  bool is_quantifier_free() const {
    if (is_quantifier(kind())) return false;
    for (const Formula& c : node_->children)
      if (!c.is_quantifier_free()) return false;
    return true;
  }

  void collect_free_vars(VarSet& out) const {
    switch (kind()) {
      case Connective::Atom: atom().collect_vars(out); return;
      case Connective::Top:
      case Connective::Bottom: return;
      case Connective::Forall:
      case Connective::Exists: {
        VarSet inner;
        body().collect_free_vars(inner);
        inner.erase(bound_variable());
        out.insert(inner.begin(), inner.end());
        return;
      }
      default:
        for (const Formula& c : node_->children) c.collect_free_vars(out);
    }
  }

  VarSet free_vars() const {
    VarSet out;
    collect_free_vars(out);
    return out;
  }

  /// Every variable name occurring anywhere, bound or free.
  void collect_all_vars(VarSet& out) const {
    if (kind() == Connective::Atom) atom().collect_vars(out);
    if (is_quantifier(kind())) out.insert(bound_variable());
    for (const Formula& c : node_->children) c.collect_all_vars(out);
  }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    if (a.kind() == Connective::Atom) return a.atom() == b.atom();
    if (a.node_->var != b.node_->var) return false;
    return a.node_->children == b.node_->children;
  }

  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.kind() <=> b.kind(); c != 0) return c;
    if (a.kind() == Connective::Atom) return a.atom() <=> b.atom();
    if (auto c = a.node_->var <=> b.node_->var; c != 0) return c;
    const auto& x = a.node_->children;
    const auto& y = b.node_->children;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (auto c = x[i] <=> y[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

 private:
  struct Node {
    explicit Node(Connective k) : kind(k) {}
    Connective kind;
    Atom atom;
    std::string var;
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Right-nested conjunction / disjunction of a list; empty lists give top / bottom.
inline Formula conjunction_of(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::top();
  Formula acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = Formula::conjunction(fs[i], acc);
  return acc;
}
inline Formula disjunction_of(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::bottom();
  Formula acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = Formula::disjunction(fs[i], acc);
  return acc;
}

struct Literal {
  bool positive = true;
  Atom atom;

  Literal negated() const { return Literal{!positive, atom}; }
  Formula to_formula() const {
    Formula a = Formula::atom(atom);
    return positive ? a : Formula::negation(a);
  }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
    if (auto c = a.atom <=> b.atom; c != 0) return c;
    return a.positive <=> b.positive;
  }
};

// Disjunction of literals with implicitly universally quantified free
// variables. The empty clause denotes refutation.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Literal> lits) : literals_(std::move(lits)) {}
  Clause(std::initializer_list<Literal> lits) : literals_(lits) {}

  const std::vector<Literal>& literals() const { return literals_; }
  std::size_t size() const { return literals_.size(); }
  bool is_empty() const { return literals_.empty(); }

  VarSet vars() const {
    VarSet out;
    for (const Literal& l : literals_) l.atom.collect_vars(out);
    return out;
  }
  bool is_ground() const { return vars().empty(); }

  /// Symbol count, used as clause weight by the prover.
  std::size_t weight() const {
    std::size_t n = 0;
    for (const Literal& l : literals_) n += l.atom.size();
    return n;
  }

  /// Drops repeated identical literals, keeping first occurrences in order.
  Clause merged() const {
    std::vector<Literal> out;
    for (const Literal& l : literals_)
      if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    return Clause(std::move(out));
  }

  /// Literals sorted by the total syntactic order, duplicates removed.
  Clause sorted() const {
    std::vector<Literal> out = literals_;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return Clause(std::move(out));
  }

  bool is_tautology() const {
    // eq(t,t) is not counted: in plain resolution eq is an ordinary predicate.
    for (const Literal& l : literals_) {
      for (const Literal& m : literals_)
        if (l.positive && !m.positive && l.atom == m.atom) return true;
    }
    return false;
  }

  Formula to_formula() const {
    std::vector<Formula> fs;
    for (const Literal& l : literals_) fs.push_back(l.to_formula());
    return disjunction_of(fs);
  }

  friend bool operator==(const Clause&, const Clause&) = default;

 private:
  std::vector<Literal> literals_;
};

inline Literal pos(Atom a) { return Literal{true, std::move(a)}; }
inline Literal neg(Atom a) { return Literal{false, std::move(a)}; }

/// Two-sided sequent: antecedent |- succedent.
struct Sequent {
  std::vector<Formula> antecedent;
  std::vector<Formula> succedent;

  VarSet free_vars() const {
    VarSet out;
    for (const Formula& f : antecedent) f.collect_free_vars(out);
    for (const Formula& f : succedent) f.collect_free_vars(out);
    return out;
  }
  friend bool operator==(const Sequent&, const Sequent&) = default;
};

}  // namespace modulo
