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

// Proof objects for two-sided sequent calculus modulo a rewrite system.
//
// Sequents are formula lists. Premises are compared with the conclusion as
// multisets up to alpha-equivalence, so exchange is implicit; weakening and
// contraction are explicit rules. Logical rules name their principal formula
// by side and index in the conclusion and check the connective modulo the
// rewrite congruence with formula_equiv.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modulo/rewrite.hpp"

namespace modulo {

enum class SequentRule {
  Axiom,
  Cut,
  ContractionLeft,
  ContractionRight,
  WeakeningLeft,
  WeakeningRight,
  NotLeft,
  NotRight,
  AndLeft,
  AndRight,
  OrLeft,
  OrRight,
  ImpliesLeft,
  ImpliesRight,
  ForallLeft,
  ForallRight,
  ExistsLeft,
  ExistsRight,
};

inline constexpr SequentRule kAllSequentRules[] = {
    SequentRule::Axiom,        SequentRule::Cut,          SequentRule::ContractionLeft,
    SequentRule::ContractionRight, SequentRule::WeakeningLeft, SequentRule::WeakeningRight,
    SequentRule::NotLeft,      SequentRule::NotRight,     SequentRule::AndLeft,
    SequentRule::AndRight,     SequentRule::OrLeft,       SequentRule::OrRight,
    SequentRule::ImpliesLeft,  SequentRule::ImpliesRight, SequentRule::ForallLeft,
    SequentRule::ForallRight,  SequentRule::ExistsLeft,   SequentRule::ExistsRight,
};

inline const char* to_string(SequentRule r) {
  switch (r) {
    case SequentRule::Axiom: return "Axiom";
    case SequentRule::Cut: return "Cut";
    case SequentRule::ContractionLeft: return "ContractionLeft";
    case SequentRule::ContractionRight: return "ContractionRight";
    case SequentRule::WeakeningLeft: return "WeakeningLeft";
    case SequentRule::WeakeningRight: return "WeakeningRight";
    case SequentRule::NotLeft: return "NotLeft";
    case SequentRule::NotRight: return "NotRight";
    case SequentRule::AndLeft: return "AndLeft";
    case SequentRule::AndRight: return "AndRight";
    case SequentRule::OrLeft: return "OrLeft";
    case SequentRule::OrRight: return "OrRight";
    case SequentRule::ImpliesLeft: return "ImpliesLeft";
    case SequentRule::ImpliesRight: return "ImpliesRight";
    case SequentRule::ForallLeft: return "ForallLeft";
    case SequentRule::ForallRight: return "ForallRight";
    case SequentRule::ExistsLeft: return "ExistsLeft";
    case SequentRule::ExistsRight: return "ExistsRight";
  }
  return "?";
}

inline std::optional<SequentRule> parse_sequent_rule(const std::string& s) {
  for (SequentRule r : kAllSequentRules)
    if (s == to_string(r)) return r;
  return std::nullopt;
}

inline std::size_t rule_arity(SequentRule r) {
  switch (r) {
    case SequentRule::Axiom: return 0;
    case SequentRule::Cut:
    case SequentRule::AndRight:
    case SequentRule::OrLeft:
    case SequentRule::ImpliesLeft: return 2;
    default: return 1;
  }
}

/// A formula of the conclusion: side and index.
struct FormulaRef {
  bool left = true;
  std::size_t index = 0;
  friend bool operator==(const FormulaRef&, const FormulaRef&) = default;
};

inline std::string to_string(const FormulaRef& r) {
  return (r.left ? "L" : "R") + std::to_string(r.index);
}

struct ProofNode {
  SequentRule rule = SequentRule::Axiom;
  Sequent conclusion;
  std::vector<ProofNode> premises;
  std::optional<Term> witness;             // ForallLeft, ExistsRight
  std::optional<std::string> eigenvariable;  // ForallRight, ExistsLeft
  std::vector<FormulaRef> principal;

  std::size_t node_count() const {
    std::size_t n = 1;
    for (const ProofNode& p : premises) n += p.node_count();
    return n;
  }
};

/// Premise indices from the root.
using NodePath = std::vector<std::size_t>;

inline std::string to_string(const NodePath& p) {
  std::string out = "root";
  for (std::size_t i : p) out += "." + std::to_string(i);
  return out;
}

inline ProofNode& node_at(ProofNode& root, const NodePath& path) {
  ProofNode* n = &root;
  for (std::size_t i : path) n = &n->premises.at(i);
  return *n;
}

inline const ProofNode& node_at(const ProofNode& root, const NodePath& path) {
  const ProofNode* n = &root;
  for (std::size_t i : path) n = &n->premises.at(i);
  return *n;
}

/// Every node path in pre-order.
inline std::vector<NodePath> all_paths(const ProofNode& root) {
  std::vector<NodePath> out;
  std::function<void(const ProofNode&, NodePath&)> walk = [&](const ProofNode& n, NodePath& p) {
    out.push_back(p);
    for (std::size_t i = 0; i < n.premises.size(); ++i) {
      p.push_back(i);
      walk(n.premises[i], p);
      p.pop_back();
    }
  };
  NodePath p;
  walk(root, p);
  return out;
}

enum class CheckReason {
  ArityMismatch,
  SideConditionFailed,
  EigenvariableViolation,
  EquivUndecidedWithinFuel,
  MalformedNode,
};

inline const char* to_string(CheckReason r) {
  switch (r) {
    case CheckReason::ArityMismatch: return "ArityMismatch";
    case CheckReason::SideConditionFailed: return "SideConditionFailed";
    case CheckReason::EigenvariableViolation: return "EigenvariableViolation";
    case CheckReason::EquivUndecidedWithinFuel: return "EquivUndecidedWithinFuel";
    case CheckReason::MalformedNode: return "MalformedNode";
  }
  return "?";
}

struct ProofCheck {
  bool valid = true;
  NodePath path;
  CheckReason reason = CheckReason::SideConditionFailed;
  std::string detail;
  explicit operator bool() const { return valid; }
};

inline bool uses_cut(const ProofNode& p) {
  if (p.rule == SequentRule::Cut) return true;
  for (const ProofNode& q : p.premises)
    if (uses_cut(q)) return true;
  return false;
}

namespace detail {

using Formulas = std::vector<Formula>;

// Multiset difference up to alpha-equivalence; nullopt unless `sub` is contained in `whole`.
inline std::optional<Formulas> minus(const Formulas& whole, const Formulas& sub) {
  std::vector<std::string> keys;
  for (const Formula& f : whole) keys.push_back(alpha_key(f));
  std::vector<bool> taken(whole.size(), false);
  for (const Formula& f : sub) {
    std::string k = alpha_key(f);
    bool found = false;
    for (std::size_t i = 0; i < whole.size() && !found; ++i)
      if (!taken[i] && keys[i] == k) taken[i] = found = true;
    if (!found) return std::nullopt;
  }
  Formulas out;
  for (std::size_t i = 0; i < whole.size(); ++i)
    if (!taken[i]) out.push_back(whole[i]);
  return out;
}

inline bool same_multiset(const Formulas& a, const Formulas& b) {
  if (a.size() != b.size()) return false;
  auto d = minus(a, b);
  return d && d->empty();
}

inline Formulas erase_at(const Formulas& fs, std::size_t i) {
  Formulas out = fs;
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
  return out;
}

inline Formulas plus(Formulas fs, const Formula& f) {
  fs.push_back(f);
  return fs;
}

struct Failure {
  CheckReason reason;
  std::string detail;
};

class NodeChecker {
 public:
  NodeChecker(const RewriteSystem& rs, const FormulaEquivOptions& opt, const ProofNode& n)
      : rs_(rs), opt_(opt), n_(n), gamma_(n.conclusion.antecedent), delta_(n.conclusion.succedent) {}

  void check() {
    if (n_.premises.size() != rule_arity(n_.rule))
      fail(CheckReason::ArityMismatch, std::string(to_string(n_.rule)) + " takes " +
                                           std::to_string(rule_arity(n_.rule)) + " premise(s), got " +
                                           std::to_string(n_.premises.size()));
    switch (n_.rule) {
      case SequentRule::Axiom: return axiom();
      case SequentRule::Cut: return cut();
      case SequentRule::ContractionLeft: return contraction(true);
      case SequentRule::ContractionRight: return contraction(false);
      case SequentRule::WeakeningLeft: return weakening(true);
      case SequentRule::WeakeningRight: return weakening(false);
      case SequentRule::NotLeft: return not_rule(true);
      case SequentRule::NotRight: return not_rule(false);
      case SequentRule::AndLeft: return two_on_one_premise(true, Connective::And);
      case SequentRule::OrRight: return two_on_one_premise(false, Connective::Or);
      case SequentRule::AndRight: return split(false, Connective::And);
      case SequentRule::OrLeft: return split(true, Connective::Or);
      case SequentRule::ImpliesLeft: return implies_left();
      case SequentRule::ImpliesRight: return implies_right();
      case SequentRule::ForallLeft: return instance(true, Connective::Forall);
      case SequentRule::ExistsRight: return instance(false, Connective::Exists);
      case SequentRule::ForallRight: return eigen(false, Connective::Forall);
      case SequentRule::ExistsLeft: return eigen(true, Connective::Exists);
    }
  }

 private:
  [[noreturn]] static void fail(CheckReason r, std::string why) { throw Failure{r, std::move(why)}; }

  // nullopt when the search is cut off before an answer.
  std::optional<bool> try_equiv(const Formula& a, const Formula& b, std::string* why = nullptr) const {
    try {
      return formula_equiv(rs_, a, b, opt_);
    } catch (const FuelExhausted& e) {
      if (why) *why = e.what();
      return std::nullopt;
    }
  }

  bool equiv(const Formula& a, const Formula& b) const {
    std::string why;
    auto r = try_equiv(a, b, &why);
    if (!r) fail(CheckReason::EquivUndecidedWithinFuel, why);
    return *r;
  }

  // Succeeds if any candidate is equivalent; undecided candidates only
  // matter when none succeeds.
  void require_any_equiv(const Formula& c, const std::vector<Formula>& candidates) const {
    std::string undecided;
    for (const Formula& x : candidates) {
      auto r = try_equiv(c, x, &undecided);
      if (r && *r) return;
    }
    if (!undecided.empty()) fail(CheckReason::EquivUndecidedWithinFuel, undecided);
    fail(CheckReason::SideConditionFailed, to_string(c) + " is not equivalent to " + to_string(candidates.front()));
  }

  void require_equiv(const Formula& a, const Formula& b) const {
    if (!equiv(a, b)) fail(CheckReason::SideConditionFailed, to_string(a) + " is not equivalent to " + to_string(b));
  }

  const Sequent& premise(std::size_t i) const { return n_.premises[i].conclusion; }

  // The single principal formula on the given side; its position is returned.
  std::size_t principal(bool left) const {
    if (n_.principal.size() != 1 || n_.principal[0].left != left)
      fail(CheckReason::MalformedNode, std::string(to_string(n_.rule)) + " needs one principal formula on the " +
                                           (left ? "left" : "right"));
    std::size_t i = n_.principal[0].index;
    if (i >= (left ? gamma_ : delta_).size())
      fail(CheckReason::MalformedNode, "principal index " + to_string(n_.principal[0]) + " out of range");
    return i;
  }

  // Premise side minus the expected context must leave exactly `count` formulas.
  Formulas extras(const Formulas& prem, const Formulas& context, std::size_t count, const char* what) const {
    auto d = minus(prem, context);
    if (!d || d->size() != count)
      fail(CheckReason::SideConditionFailed, std::string(what) + ": premise does not extend the context by " +
                                                 std::to_string(count) + " formula(s)");
    return *d;
  }

  void same(const Formulas& a, const Formulas& b, const char* what) const {
    if (!same_multiset(a, b)) fail(CheckReason::SideConditionFailed, std::string(what) + " context differs");
  }

  void axiom() {
    if (n_.principal.size() == 2) {
      FormulaRef l = n_.principal[0], r = n_.principal[1];
      if (!l.left) std::swap(l, r);
      if (!l.left || r.left || l.index >= gamma_.size() || r.index >= delta_.size())
        fail(CheckReason::MalformedNode, "axiom needs one left and one right principal formula");
      require_equiv(gamma_[l.index], delta_[r.index]);
      return;
    }
    if (!n_.principal.empty()) fail(CheckReason::MalformedNode, "axiom needs zero or two principal formulas");
    std::string undecided;
    for (const Formula& a : gamma_)
      for (const Formula& b : delta_)
        if (auto r = try_equiv(a, b, &undecided); r && *r) return;
    if (!undecided.empty()) fail(CheckReason::EquivUndecidedWithinFuel, undecided);
    fail(CheckReason::SideConditionFailed, "no antecedent formula is equivalent to a succedent formula");
  }

  void cut() {
    const Sequent& p1 = premise(0);
    const Sequent& p2 = premise(1);
    same(p1.antecedent, gamma_, "cut left premise antecedent");
    same(p2.succedent, delta_, "cut right premise succedent");
    Formula a = extras(p1.succedent, delta_, 1, "cut")[0];
    Formula b = extras(p2.antecedent, gamma_, 1, "cut")[0];
    require_equiv(a, b);
  }

  void contraction(bool left) {
    std::size_t i = principal(left);
    const Formulas& side = left ? gamma_ : delta_;
    const Sequent& p = premise(0);
    same(left ? p.antecedent : p.succedent, plus(side, side[i]), "contraction");
    same(left ? p.succedent : p.antecedent, left ? delta_ : gamma_, "contraction");
  }

  void weakening(bool left) {
    std::size_t i = principal(left);
    const Formulas& side = left ? gamma_ : delta_;
    const Sequent& p = premise(0);
    same(left ? p.antecedent : p.succedent, erase_at(side, i), "weakening");
    same(left ? p.succedent : p.antecedent, left ? delta_ : gamma_, "weakening");
  }

  void not_rule(bool left) {
    std::size_t i = principal(left);
    const Formula& c = (left ? gamma_ : delta_)[i];
    const Sequent& p = premise(0);
    Formula a = left ? extras(p.succedent, delta_, 1, "not-left")[0]
                     : extras(p.antecedent, gamma_, 1, "not-right")[0];
    same(left ? p.antecedent : p.succedent, erase_at(left ? gamma_ : delta_, i), "negation");
    require_equiv(c, Formula::negation(a));
  }

  // AndLeft and OrRight: C is replaced by both components on the same side.
  void two_on_one_premise(bool left, Connective op) {
    std::size_t i = principal(left);
    const Formula& c = (left ? gamma_ : delta_)[i];
    const Sequent& p = premise(0);
    Formulas rest = erase_at(left ? gamma_ : delta_, i);
    Formulas ab = extras(left ? p.antecedent : p.succedent, rest, 2, to_string(n_.rule));
    same(left ? p.succedent : p.antecedent, left ? delta_ : gamma_, to_string(n_.rule));
    require_any_equiv(c, {Formula::binary(op, ab[0], ab[1]), Formula::binary(op, ab[1], ab[0])});
  }

  // AndRight and OrLeft: one component per premise.
  void split(bool left, Connective op) {
    std::size_t i = principal(left);
    const Formula& c = (left ? gamma_ : delta_)[i];
    Formulas rest = erase_at(left ? gamma_ : delta_, i);
    Formulas parts;
    for (std::size_t k = 0; k < 2; ++k) {
      const Sequent& p = premise(k);
      parts.push_back(extras(left ? p.antecedent : p.succedent, rest, 1, to_string(n_.rule))[0]);
      same(left ? p.succedent : p.antecedent, left ? delta_ : gamma_, to_string(n_.rule));
    }
    require_equiv(c, Formula::binary(op, parts[0], parts[1]));
  }

  void implies_left() {
    std::size_t i = principal(true);
    Formulas rest = erase_at(gamma_, i);
    const Sequent& p1 = premise(0);
    const Sequent& p2 = premise(1);
    same(p1.antecedent, rest, "implies-left");
    Formula a = extras(p1.succedent, delta_, 1, "implies-left")[0];
    same(p2.succedent, delta_, "implies-left");
    Formula b = extras(p2.antecedent, rest, 1, "implies-left")[0];
    require_equiv(gamma_[i], Formula::implication(a, b));
  }

  void implies_right() {
    std::size_t i = principal(false);
    const Sequent& p = premise(0);
    Formula a = extras(p.antecedent, gamma_, 1, "implies-right")[0];
    Formula b = extras(p.succedent, erase_at(delta_, i), 1, "implies-right")[0];
    require_equiv(delta_[i], Formula::implication(a, b));
  }

  // Proposition rules have quantifier-free right-hand sides, so a formula
  // equivalent to a quantified one is itself quantified at the root.
  const Formula& quantified(bool left, std::size_t i, Connective q) const {
    const Formula& c = (left ? gamma_ : delta_)[i];
    if (c.kind() != q)
      fail(CheckReason::SideConditionFailed, to_string(c) + " is not " + (q == Connective::Forall ? "universal" : "existential"));
    return c;
  }

  // ForallLeft and ExistsRight: the premise holds the instance at the witness.
  void instance(bool left, Connective q) {
    std::size_t i = principal(left);
    const Formula& c = quantified(left, i, q);
    if (!n_.witness) fail(CheckReason::MalformedNode, std::string(to_string(n_.rule)) + " needs a witness");
    const Sequent& p = premise(0);
    Formulas rest = erase_at(left ? gamma_ : delta_, i);
    Formula a = extras(left ? p.antecedent : p.succedent, rest, 1, to_string(n_.rule))[0];
    same(left ? p.succedent : p.antecedent, left ? delta_ : gamma_, to_string(n_.rule));
    require_equiv(a, Substitution{{c.bound_variable(), *n_.witness}}.apply(c.body()));
  }

  // ForallRight and ExistsLeft: the instance at a variable free nowhere in the conclusion.
  void eigen(bool left, Connective q) {
    std::size_t i = principal(left);
    const Formula& c = quantified(left, i, q);
    std::string y = n_.eigenvariable.value_or(c.bound_variable());
    if (n_.conclusion.free_vars().contains(y))
      fail(CheckReason::EigenvariableViolation, "eigenvariable " + y + " is free in the conclusion");
    const Sequent& p = premise(0);
    Formulas rest = erase_at(left ? gamma_ : delta_, i);
    Formula a = extras(left ? p.antecedent : p.succedent, rest, 1, to_string(n_.rule))[0];
    same(left ? p.succedent : p.antecedent, left ? delta_ : gamma_, to_string(n_.rule));
    require_equiv(a, Substitution{{c.bound_variable(), Term::variable(y)}}.apply(c.body()));
  }

  const RewriteSystem& rs_;
  const FormulaEquivOptions& opt_;
  const ProofNode& n_;
  const Formulas& gamma_;
  const Formulas& delta_;
};

inline std::optional<ProofCheck> check_node(const ProofNode& n, const RewriteSystem& rs,
                                            const FormulaEquivOptions& opt, NodePath& path) {
  try {
    NodeChecker(rs, opt, n).check();
  } catch (const Failure& f) {
    return ProofCheck{false, path, f.reason, f.detail};
  }
  for (std::size_t i = 0; i < n.premises.size(); ++i) {
    path.push_back(i);
    if (auto bad = check_node(n.premises[i], rs, opt, path)) return bad;
    path.pop_back();
  }
  return std::nullopt;
}

}  // namespace detail

/// Checks every node, root first; the result names the first failing node in pre-order.
inline ProofCheck check_proof(const ProofNode& p, const RewriteSystem& rs,
                              const FormulaEquivOptions& opt = {}) {
  NodePath path;
  if (auto bad = detail::check_node(p, rs, opt, path)) return *bad;
  return {};
}

}  // namespace modulo
