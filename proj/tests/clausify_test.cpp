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

#include <gtest/gtest.h>

#include <functional>
#include <map>

#include "support.hpp"

namespace modulo {
namespace {

using testing::C;
using testing::F;

bool same(const std::vector<Clause>& got, const std::vector<std::string>& want) {
  std::vector<Clause> w;
  for (const std::string& s : want) w.push_back(C(s));
  return same_clause_set(got, w);
}

TEST(Cnf, NegatedProductGoal) {
  auto cs = cnf(F("~(exists Z. (times(a,a) = Z => a = Z))"));
  EXPECT_TRUE(same(cs, {"times(a,a) = Z", "~ a = Z"})) << cs.size();
}

TEST(Cnf, CrabbeEquivalence) {
  EXPECT_TRUE(same(cnf(F("A <=> B /\\ ~A")), {"~A \\/ B", "~A", "A \\/ ~B"}));
}

TEST(Nnf, AtomIsUnchanged) {
  EXPECT_EQ(nnf(F("P(a)")), F("P(a)"));
  EXPECT_EQ(nnf(F("~~P(a)")), F("P(a)"));
}

TEST(Nnf, PushesNegationInward) {
  EXPECT_EQ(nnf(F("~(A /\\ (B => C))")), F("~A \\/ (B /\\ ~C)"));
  EXPECT_EQ(nnf(F("~forall X. P(X)")), F("exists X. ~P(X)"));
}

TEST(Skolemize, ExistentialUnderUniversalBecomesFunction) {
  SkolemRegistry reg;
  Formula g = skolemize(F("forall X. exists Y. R(X,Y)"), reg);
  ASSERT_EQ(reg.symbols().size(), 1u);
  EXPECT_EQ(reg.symbols()[0], (SkolemSymbol{"sk0", 1}));
  ASSERT_EQ(g.kind(), Connective::Forall);
  const Atom& a = g.body().atom();
  EXPECT_EQ(a.args[1], Term::apply("sk0", {Term::variable(g.bound_variable())}));
}

TEST(Skolemize, FreeVariablesAreClosedFirst) {
  SkolemRegistry reg;
  skolemize(F("exists Y. R(X,Y)"), reg);
  ASSERT_EQ(reg.symbols().size(), 1u);
  EXPECT_EQ(reg.symbols()[0].arity, 1u);
}

TEST(Skolemize, SymbolsAreFreshForTheInput) {
  Formula f = Formula::conjunction(F("exists Y. P(Y)"), Formula::atom("P", {Term::apply("sk0")}));
  ClausalProblem p = clausal_form({f}, {});
  ASSERT_EQ(p.skolems.symbols().size(), 1u);
  EXPECT_EQ(p.skolems.symbols()[0].name, "sk1");
}

TEST(ClausalForm, NegatedGoalOnly) {
  ClausalProblem p = clausal_form({}, {F("~B")});
  EXPECT_TRUE(same(p.clause_set(), {"B"}));
  ASSERT_EQ(p.clauses.size(), 1u);
  EXPECT_EQ(p.clauses[0].source, ClauseSource::NegatedGoal);
}

TEST(ClausalForm, CrabbeProblem) {
  ClausalProblem p = clausal_form({F("A <=> B /\\ ~A")}, {F("~B")});
  EXPECT_TRUE(same(p.clause_set(), {"~A \\/ B", "~A", "A \\/ ~B", "B"}));
}

TEST(ClausalForm, SameFormulaOnBothSides) {
  EXPECT_TRUE(same(clausal_form({F("P(a)")}, {F("P(a)")}).clause_set(), {"P(a)", "~P(a)"}));
}

TEST(UniversalClosure, Examples) {
  EXPECT_EQ(universal_closure(F("X = X")), F("forall X. X = X"));
  EXPECT_EQ(universal_closure(F("P(a) => Q(b)")), F("P(a) => Q(b)"));
  EXPECT_EQ(universal_closure(C("~P(X) \\/ R(X,Y)")), F("forall X. forall Y. (~P(X) \\/ R(X,Y))"));
}

TEST(ClausalEquiv, Examples) {
  EXPECT_TRUE(clausal_equiv({F("A <=> B /\\ ~A")}, {F("A <=> false"), F("B <=> A")}));
  EXPECT_TRUE(clausal_equiv({F("P(a)")}, {F("P(a)")}));
  EXPECT_FALSE(clausal_equiv({F("A <=> false")}, {F("A <=> true")}));
}

TEST(ClausalEquiv, IgnoresVariableNames) {
  EXPECT_TRUE(clausal_equiv({F("forall X. P(X)")}, {F("forall Y. P(Y)")}));
  EXPECT_FALSE(clausal_equiv({F("forall X. R(X,X)")}, {F("forall X. forall Y. R(X,Y)")}));
}

TEST(ClausalEquiv, IsAnEquivalenceRelation) {
  std::vector<std::vector<Formula>> pool = {
      {F("A <=> B /\\ ~A")}, {F("A <=> false"), F("B <=> A")}, {F("~A"), F("A \\/ ~B"), F("B => A")},
      {F("A")},          {F("A /\\ A")},                     {F("A \\/ B")},
      {F("B \\/ A")},    {F("true")},                        {F("A \\/ ~A")},
      {F("~A /\\ (B => A)")},
  };
  for (const auto& x : pool) {
    EXPECT_TRUE(clausal_equiv(x, x));
    for (const auto& y : pool) {
      bool e = clausal_equiv(x, y);
      EXPECT_EQ(e, clausal_equiv(y, x));
      if (!e) continue;
      for (const auto& z : pool)
        if (clausal_equiv(y, z)) {
          EXPECT_TRUE(clausal_equiv(x, z));
        }
    }
  }
}

TEST(Tautology, Examples) {
  EXPECT_TRUE(tautology(F("~(P(a) /\\ ~P(a))")));
  EXPECT_FALSE(tautology(F("P(a) \\/ Q(a)")));
  EXPECT_TRUE(tautology(F("~(B /\\ ~A /\\ (A \\/ ~B))")));
}

TEST(Tautology, RejectsNonGroundInput) {
  EXPECT_THROW(tautology(F("P(X) \\/ ~P(X)")), NotGround);
  EXPECT_THROW(tautology(F("forall X. P(X) \\/ ~P(X)")), NotGround);
}

// Independent truth-table evaluator keyed by printed atoms.
bool eval_prop(const Formula& f, const std::map<std::string, bool>& v) {
  switch (f.kind()) {
    case Connective::Atom: return v.at(to_string(f));
    case Connective::Top: return true;
    case Connective::Bottom: return false;
    case Connective::Not: return !eval_prop(f.operand(), v);
    case Connective::And: return eval_prop(f.left(), v) && eval_prop(f.right(), v);
    case Connective::Or: return eval_prop(f.left(), v) || eval_prop(f.right(), v);
    case Connective::Implies: return !eval_prop(f.left(), v) || eval_prop(f.right(), v);
    case Connective::Iff: return eval_prop(f.left(), v) == eval_prop(f.right(), v);
    default: throw std::logic_error("quantifier");
  }
}

Formula random_prop(testing::TermGen& gen, const std::vector<Formula>& atoms, int depth) {
  if (depth <= 0 || gen.index(4) == 0) {
    switch (gen.index(10)) {
      case 0: return Formula::top();
      case 1: return Formula::bottom();
      default: return atoms[gen.index(atoms.size())];
    }
  }
  Formula l = random_prop(gen, atoms, depth - 1);
  switch (gen.index(5)) {
    case 0: return Formula::negation(l);
    case 1: return Formula::conjunction(l, random_prop(gen, atoms, depth - 1));
    case 2: return Formula::disjunction(l, random_prop(gen, atoms, depth - 1));
    case 3: return Formula::implication(l, random_prop(gen, atoms, depth - 1));
    default: return Formula::equivalence(l, random_prop(gen, atoms, depth - 1));
  }
}

TEST(Tautology, AgreesWithBruteForceOverFourAtoms) {
  std::vector<Formula> atoms = {F("A"), F("P(a)"), F("R(a,b)"), F("Q(f(b))")};
  testing::TermGen gen(41);
  int tautologies = 0;
  for (int i = 0; i < 400; ++i) {
    Formula f = random_prop(gen, atoms, 4);
    bool all = true;
    for (int m = 0; m < 16; ++m) {
      std::map<std::string, bool> v;
      for (int k = 0; k < 4; ++k) v[to_string(atoms[k])] = (m >> k) & 1;
      all = all && eval_prop(f, v);
    }
    tautologies += all;
    EXPECT_EQ(tautology(f), all) << to_string(f);
  }
  EXPECT_GT(tautologies, 0);
}

// Finite first-order structures over constants a, b and predicates P/1, R/2.
struct Structure {
  int size = 2;
  std::map<std::string, std::vector<int>> functions;
  std::map<std::string, std::vector<int>> predicates;
};

int table_index(const std::vector<int>& args, int size) {
  int k = 0;
  for (int a : args) k = k * size + a;
  return k;
}

int eval_term(const Term& t, const Structure& m, const std::map<std::string, int>& env) {
  if (t.is_variable()) return env.at(t.name());
  std::vector<int> args;
  for (const Term& u : t.args()) args.push_back(eval_term(u, m, env));
  return m.functions.at(t.name())[table_index(args, m.size)];
}

bool eval_fo(const Formula& f, const Structure& m, std::map<std::string, int>& env) {
  switch (f.kind()) {
    case Connective::Atom: {
      std::vector<int> args;
      for (const Term& u : f.atom().args) args.push_back(eval_term(u, m, env));
      return m.predicates.at(f.atom().predicate)[table_index(args, m.size)];
    }
    case Connective::Top: return true;
    case Connective::Bottom: return false;
    case Connective::Not: return !eval_fo(f.operand(), m, env);
    case Connective::And: return eval_fo(f.left(), m, env) && eval_fo(f.right(), m, env);
    case Connective::Or: return eval_fo(f.left(), m, env) || eval_fo(f.right(), m, env);
    case Connective::Implies: return !eval_fo(f.left(), m, env) || eval_fo(f.right(), m, env);
    case Connective::Iff: return eval_fo(f.left(), m, env) == eval_fo(f.right(), m, env);
    default: {
      const std::string& x = f.bound_variable();
      auto saved = env.find(x) == env.end() ? std::optional<int>() : std::optional<int>(env[x]);
      bool any = false, all = true;
      for (int d = 0; d < m.size; ++d) {
        env[x] = d;
        bool b = eval_fo(f.body(), m, env);
        any = any || b;
        all = all && b;
      }
      if (saved) env[x] = *saved; else env.erase(x);
      return f.kind() == Connective::Forall ? all : any;
    }
  }
}

bool clauses_hold(const std::vector<Clause>& cs, const Structure& m) {
  for (const Clause& c : cs) {
    VarSet vs = c.vars();
    std::vector<std::string> vars(vs.begin(), vs.end());
    std::size_t rows = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) rows *= static_cast<std::size_t>(m.size);
    for (std::size_t r = 0; r < rows; ++r) {
      std::map<std::string, int> env;
      std::size_t k = r;
      for (const std::string& v : vars) {
        env[v] = static_cast<int>(k % m.size);
        k /= m.size;
      }
      bool sat = false;
      for (const Literal& l : c.literals()) sat = sat || eval_fo(l.to_formula(), m, env);
      if (!sat) return false;
    }
  }
  return true;
}

// Calls visit for every way of filling the given tables with values below `range`.
void each_table_fill(std::vector<std::vector<int>*> tables, int range, const std::function<bool()>& visit) {
  std::vector<int*> cells;
  for (auto* t : tables)
    for (int& x : *t) cells.push_back(&x);
  for (int* c : cells) *c = 0;
  while (true) {
    if (visit()) return;
    std::size_t i = 0;
    while (i < cells.size() && ++*cells[i] == range) *cells[i++] = 0;
    if (i == cells.size()) return;
  }
}

Formula random_closed(testing::TermGen& gen, std::vector<std::string>& bound, int depth) {
  auto term = [&] {
    std::size_t k = gen.index(bound.size() + 2);
    if (k < bound.size()) return Term::variable(bound[k]);
    return Term::apply(k == bound.size() ? "a" : "b");
  };
  if (depth <= 0 || gen.index(5) == 0) {
    if (gen.index(2)) return Formula::atom("P", {term()});
    return Formula::atom("R", {term(), term()});
  }
  switch (gen.index(7)) {
    case 0: return Formula::negation(random_closed(gen, bound, depth - 1));
    case 1: return Formula::conjunction(random_closed(gen, bound, depth - 1), random_closed(gen, bound, depth - 1));
    case 2: return Formula::disjunction(random_closed(gen, bound, depth - 1), random_closed(gen, bound, depth - 1));
    case 3: return Formula::implication(random_closed(gen, bound, depth - 1), random_closed(gen, bound, depth - 1));
    case 4: return Formula::equivalence(random_closed(gen, bound, depth - 1), random_closed(gen, bound, depth - 1));
    default: {
      std::string x = bound.size() % 2 ? "Y" : "X";
      if (bound.size() >= 2) x += std::to_string(bound.size());
      bound.push_back(x);
      Formula body = random_closed(gen, bound, depth - 1);
      bound.pop_back();
      return Formula::quantified(gen.index(2) ? Connective::Forall : Connective::Exists, x, body);
    }
  }
}

// For every structure over the input symbols, the formula holds iff some
// interpretation of the Skolem symbols makes its clause set true. This is
// stronger than equisatisfiability and is checked on domains of size 1 and 2.
TEST(Cnf, EquisatisfiableOverSmallDomains) {
  testing::TermGen gen(43);
  int checked = 0, with_skolems = 0;
  for (int i = 0; checked < 60 && i < 1000; ++i) {
    std::vector<std::string> bound;
    Formula f = random_closed(gen, bound, 4);
    SkolemRegistry reg;
    std::vector<Clause> cs = cnf(f, reg);
    std::size_t skolem_cells = 0;
    for (const SkolemSymbol& s : reg.symbols()) skolem_cells += std::size_t{1} << s.arity;
    if (skolem_cells > 6) continue;
    ++checked;
    with_skolems += !reg.symbols().empty();
    for (int size = 1; size <= 2; ++size) {
      Structure m;
      m.size = size;
      m.functions["a"] = {0};
      m.functions["b"] = {0};
      m.predicates["P"] = std::vector<int>(size);
      m.predicates["R"] = std::vector<int>(size * size);
      for (const SkolemSymbol& s : reg.symbols()) m.functions[s.name] = std::vector<int>(std::size_t{1} << (s.arity * (size - 1)));
      std::vector<std::vector<int>*> skolems;
      for (const SkolemSymbol& s : reg.symbols()) skolems.push_back(&m.functions[s.name]);
      each_table_fill({&m.functions["a"], &m.functions["b"]}, size, [&] {
        each_table_fill({&m.predicates["P"], &m.predicates["R"]}, 2, [&] {
          std::map<std::string, int> env;
          bool holds = eval_fo(f, m, env);
          bool expands = false;
          each_table_fill(skolems, size, [&] { return expands = clauses_hold(cs, m); });
          EXPECT_EQ(holds, expands) << to_string(f) << " size " << size;
          return false;
        });
        return false;
      });
    }
  }
  EXPECT_EQ(checked, 60);
  EXPECT_GT(with_skolems, 10);
}

bool is_nnf(const Formula& f) {
  switch (f.kind()) {
    case Connective::Implies:
    case Connective::Iff: return false;
    case Connective::Not: return f.operand().is_atom();
    case Connective::And:
    case Connective::Or: return is_nnf(f.left()) && is_nnf(f.right());
    case Connective::Forall:
    case Connective::Exists: return is_nnf(f.body());
    default: return true;
  }
}

bool has_existential(const Formula& f) {
  switch (f.kind()) {
    case Connective::Exists: return true;
    case Connective::Forall:
    case Connective::Not: return has_existential(f.operand());
    case Connective::And:
    case Connective::Or:
    case Connective::Implies:
    case Connective::Iff: return has_existential(f.left()) || has_existential(f.right());
    default: return false;
  }
}

TEST(Cnf, OutputShape) {
  testing::TermGen gen(47);
  for (int i = 0; i < 300; ++i) {
    std::vector<std::string> bound;
    Formula f = random_closed(gen, bound, 5);
    EXPECT_TRUE(is_nnf(nnf(f))) << to_string(f);
    Formula s = skolemize(f);
    EXPECT_TRUE(is_nnf(s));
    EXPECT_FALSE(has_existential(s));
    for (const Clause& c : cnf(f)) {
      EXPECT_FALSE(c.is_tautology());
      EXPECT_EQ(c.merged().literals().size(), c.literals().size());
    }
  }
}

}  // namespace
}  // namespace modulo
