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

// Equational unification modulo a term rewrite system by basic narrowing on
// the unification problem.
//
// A search state keeps the problem as an unsubstituted skeleton plus the
// accumulated substitution. Only non-variable skeleton positions are
// narrowed, so subterms introduced by the substitution are never touched.
// States are explored breadth-first by narrowing depth; at every state the
// instantiated problem is first tried by syntactic unification.

#pragma once

#include <deque>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "modulo/rewrite.hpp"

namespace modulo {

inline constexpr std::size_t kDefaultNarrowingDepth = 6;

struct NarrowingOptions {
  std::size_t depth = kDefaultNarrowingDepth;
  std::size_t fuel = kDefaultFuel;       // for the soundness re-check
  std::size_t max_states = 200000;       // hitting it counts as truncation
};

struct UnifProblem {
  std::vector<Equation> skeleton;
  Substitution sigma;  // idempotent
  std::size_t depth = 0;
};

// Lazy enumerator of equational unifiers of t =? u. Every emitted
// substitution is idempotent, restricted to the variables of t and u, and has
// been re-checked with `equivalent`. Once the identity substitution is found
// the search stops, since every other unifier is an instance of it.
class EUnifier {
 public:
  EUnifier(RewriteSystem rs, Term t, Term u, NarrowingOptions opt = {})
      : rs_(std::move(rs)), t_(std::move(t)), u_(std::move(u)), opt_(opt) {
    goal_vars_ = t_.vars();
    u_.collect_vars(goal_vars_);
    used_ = goal_vars_;
    for (const TermRule& r : rs_.term_rules) r.lhs.collect_vars(rule_vars_);
    queue_.push_back(UnifProblem{{{t_, u_}}, {}, 0});
  }

  std::optional<Substitution> next() {
    while (!queue_.empty()) {
      UnifProblem st = std::move(queue_.front());
      queue_.pop_front();
      expand(st);
      std::vector<Equation> inst;
      for (const auto& [l, r] : st.skeleton) inst.emplace_back(st.sigma.apply(l), st.sigma.apply(r));
      auto theta = unify_all(std::move(inst));
      if (!theta) continue;
      Substitution sol = compose(st.sigma, *theta).restricted(goal_vars_);
      if (!emitted_.insert(to_string(sol)).second) continue;
      if (!verified(sol)) {
        ++rejected_;
        continue;
      }
      if (sol.empty()) {
        queue_.clear();
        exhausted_ = false;
      }
      return sol;
    }
    return std::nullopt;
  }

  std::vector<Substitution> all() {
    std::vector<Substitution> out;
    while (auto s = next()) out.push_back(std::move(*s));
    return out;
  }

  /// Some state was pruned by the depth or state bound: absence of further
  /// unifiers is not evidence that none exist.
  bool depth_exhausted() const { return exhausted_; }
  std::size_t rejected() const { return rejected_; }
  std::size_t states_explored() const { return states_; }

 private:
  bool verified(const Substitution& s) const {
    try {
      return equivalent(rs_, s.apply(t_), s.apply(u_), opt_.fuel);
    } catch (const FuelExhausted&) {
      return false;
    }
  }

  TermRule renamed(const TermRule& r) {
    Substitution ren;
    for (const std::string& v : r.lhs.vars()) {
      std::string name;
      do {
        name = v + "_" + std::to_string(++counter_);
      } while (used_.contains(name));
      used_.insert(name);
      ren.bind(v, Term::variable(name));
    }
    return TermRule{r.name, ren.apply(r.lhs), ren.apply(r.rhs)};
  }

  void expand(const UnifProblem& st) {
    if (rs_.term_rules.empty()) return;
    for (std::size_t e = 0; e < st.skeleton.size(); ++e) {
      for (int side = 0; side < 2; ++side) {
        const Term& s = side == 0 ? st.skeleton[e].first : st.skeleton[e].second;
        for (const Position& p : function_positions(s)) {
          Term sub = st.sigma.apply(subterm_at(s, p));
          for (const TermRule& rule : rs_.term_rules) {
            // Cheap filter before renaming: head symbols must agree.
            if (rule.lhs.name() != sub.name() || rule.lhs.arity() != sub.arity()) continue;
            TermRule r = renamed(rule);
            auto theta = mgu(sub, r.lhs);
            if (!theta) continue;
            if (st.depth >= opt_.depth || states_ >= opt_.max_states) {
              exhausted_ = true;
              continue;
            }
            UnifProblem child{st.skeleton, compose(st.sigma, *theta), st.depth + 1};
            Term replaced = replace_at(s, p, r.rhs);
            (side == 0 ? child.skeleton[e].first : child.skeleton[e].second) = replaced;
            ++states_;
            queue_.push_back(std::move(child));
          }
        }
      }
    }
  }

  RewriteSystem rs_;
  Term t_, u_;
  NarrowingOptions opt_;
  VarSet goal_vars_;
  VarSet used_;
  VarSet rule_vars_;
  std::deque<UnifProblem> queue_;
  std::set<std::string> emitted_;
  std::size_t counter_ = 0;
  std::size_t states_ = 0;
  std::size_t rejected_ = 0;
  bool exhausted_ = false;
};

struct EUnifyResult {
  std::vector<Substitution> unifiers;
  bool depth_exhausted = false;
};

inline EUnifyResult e_unify(const RewriteSystem& rs, const Term& t, const Term& u,
                            const NarrowingOptions& opt = {}) {
  EUnifier en(rs, t, u, opt);
  EUnifyResult r;
  r.unifiers = en.all();
  r.depth_exhausted = en.depth_exhausted();
  return r;
}

/// Argument tuples of two atoms as a single unification problem.
inline std::pair<Term, Term> atom_args_as_terms(const Atom& a, const Atom& b) {
  return {Term::apply("$args", a.args), Term::apply("$args", b.args)};
}

}  // namespace modulo
