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

// Shared fixtures: a permissive test signature, concrete-syntax shorthands
// and random term/formula generators with fixed seeds.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "modulo/cli.hpp"

namespace modulo::testing {

inline Signature& test_signature() {
  static Signature sig = [] {
    Signature s;
    for (const char* c : {"a", "b", "c", "d", "e", "p", "q", "r", "0"}) s.declare_function(c, 0);
    for (const char* f : {"f", "g", "h", "s"}) s.declare_function(f, 1);
    for (const char* f : {"plus", "times", "k"}) s.declare_function(f, 2);
    for (const char* p : {"A", "B", "C", "D"}) s.declare_predicate(p, 0);
    for (const char* p : {"P", "Q"}) s.declare_predicate(p, 1);
    s.declare_predicate("R", 2);
    return s;
  }();
  return sig;
}

inline Term T(const std::string& s) { return parse_term(s, test_signature()); }
inline Formula F(const std::string& s) { return parse_formula(s, test_signature()); }
inline Atom At(const std::string& s) { return F(s).atom(); }

namespace detail {
inline void literals_of(const Formula& f, std::vector<Literal>& out) {
  switch (f.kind()) {
    case Connective::Or:
      literals_of(f.left(), out);
      literals_of(f.right(), out);
      return;
    case Connective::Bottom: return;
    case Connective::Not: out.push_back(neg(f.operand().atom())); return;
    default: out.push_back(pos(f.atom()));
  }
}
}  // namespace detail

/// Clause from a disjunction of literals; "false" is the empty clause.
inline Clause C(const std::string& s) {
  std::vector<Literal> lits;
  detail::literals_of(F(s), lits);
  return Clause(std::move(lits));
}

inline Sequent S(const std::string& s) { return parse_sequent(s, test_signature()); }

inline TheoryFile load_theory(const std::string& name) {
  return parse_theory(read_file(std::string(MODULO_THEORY_DIR) + "/" + name));
}

inline RewriteSystem assoc_rules() {
  return {{make_term_rule("assoc", T("plus(plus(X,Y),Z)"), T("plus(X,plus(Y,Z))"))}, {}};
}

inline RewriteSystem peano_rules() {
  return {{make_term_rule("plus0", T("plus(0,Y)"), T("Y")),
           make_term_rule("plusS", T("plus(s(X),Y)"), T("s(plus(X,Y))")),
           make_term_rule("times0", T("times(0,Y)"), T("0")),
           make_term_rule("timesS", T("times(s(X),Y)"), T("plus(Y,times(X,Y))"))},
          {}};
}

inline RewriteSystem crabbe_rules() {
  return {{}, {make_prop_rule("crabbe", At("A"), F("B /\\ ~A"))}};
}

inline RewriteSystem times_zero_rules() {
  return {{}, {make_prop_rule("timeszero", At("times(X,Y) = 0"), F("X = 0 \\/ Y = 0"))}};
}

/// Random terms over a, b, f/1, k/2 and the given variables.
class TermGen {
 public:
  explicit TermGen(unsigned seed, std::vector<std::string> vars = {"X", "Y", "Z"})
      : rng_(seed), vars_(std::move(vars)) {}

  Term term(int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 3);
    switch (pick(rng_)) {
      case 0: return Term::variable(vars_[index(vars_.size())]);
      case 1: return Term::apply(index(2) ? "a" : "b");
      case 2: return Term::apply("f", {term(depth - 1)});
      default: return Term::apply("k", {term(depth - 1), term(depth - 1)});
    }
  }

  Term ground(int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 2);
    switch (pick(rng_)) {
      case 0: return Term::apply(index(2) ? "a" : "b");
      case 1: return Term::apply("f", {ground(depth - 1)});
      default: return Term::apply("k", {ground(depth - 1), ground(depth - 1)});
    }
  }

  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  std::mt19937& rng() { return rng_; }

 private:
  std::mt19937 rng_;
  std::vector<std::string> vars_;
};

/// Every ground term over a, b, f/1, k/2 up to the given depth.
inline std::vector<Term> ground_terms(int depth) {
  std::vector<Term> out{Term::apply("a"), Term::apply("b")};
  for (int d = 0; d < depth; ++d) {
    std::vector<Term> next = out;
    for (const Term& t : out) next.push_back(Term::apply("f", {t}));
    for (const Term& t : out)
      for (const Term& u : out) next.push_back(Term::apply("k", {t, u}));
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    out = std::move(next);
  }
  return out;
}

/// One changed node of a proof: its path and what was done to it.
struct Mutation {
  NodePath path;
  std::string what;
  ProofNode proof;
};

/// Every single-node mutation of a proof: another rule tag, a different
/// witness (wrapped in s), or one premise deleted.
inline std::vector<Mutation> single_node_mutations(const ProofNode& root) {
  std::vector<Mutation> out;
  for (const NodePath& path : all_paths(root)) {
    const ProofNode& original = node_at(root, path);
    for (SequentRule r : kAllSequentRules) {
      if (r == original.rule) continue;
      Mutation m{path, std::string("rule ") + to_string(original.rule) + " -> " + to_string(r), root};
      node_at(m.proof, path).rule = r;
      out.push_back(std::move(m));
    }
    if (original.witness) {
      Mutation m{path, "witness " + to_string(*original.witness) + " -> s(...)", root};
      node_at(m.proof, path).witness = Term::apply("s", {*original.witness});
      out.push_back(std::move(m));
    }
    for (std::size_t k = 0; k < original.premises.size(); ++k) {
      Mutation m{path, "delete premise " + std::to_string(k), root};
      auto& prem = node_at(m.proof, path).premises;
      prem.erase(prem.begin() + static_cast<std::ptrdiff_t>(k));
      out.push_back(std::move(m));
    }
  }
  return out;
}

}  // namespace modulo::testing
