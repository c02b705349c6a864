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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modulo/formula.hpp"

namespace modulo {

// Finite map from variable names to terms. Identity bindings are never stored.
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<const std::string, Term>> init) {
    for (const auto& [v, t] : init) bind(v, t);
  }

  void bind(const std::string& var, Term t) {
    if (t.is_variable() && t.name() == var) {
      map_.erase(var);
      return;
    }
    map_.insert_or_assign(var, std::move(t));
  }

  const Term* find(const std::string& var) const {
    auto it = map_.find(var);
    return it == map_.end() ? nullptr : &it->second;
  }
  bool contains(const std::string& var) const { return map_.contains(var); }
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }

  VarSet domain() const {
    VarSet out;
    for (const auto& [v, _] : map_) out.insert(v);
    return out;
  }

  /// Variables occurring in the images.
  VarSet range_vars() const {
    VarSet out;
    for (const auto& [_, t] : map_) t.collect_vars(out);
    return out;
  }

  /// Restriction to the given variables.
  Substitution restricted(const VarSet& vars) const {
    Substitution out;
    for (const auto& [v, t] : map_)
      if (vars.contains(v)) out.map_.emplace(v, t);
    return out;
  }

  Substitution without(const std::string& var) const {
    Substitution out = *this;
    out.map_.erase(var);
    return out;
  }

  Term apply(const Term& t) const {
    if (map_.empty() || t.is_ground()) return t;
    if (t.is_variable()) {
      const Term* img = find(t.name());
      return img ? *img : t;
    }
    std::vector<Term> args;
    args.reserve(t.arity());
    bool changed = false;
    for (const Term& a : t.args()) {
      args.push_back(apply(a));
      changed = changed || !(args.back() == a);
    }
    return changed ? Term::apply(t.name(), std::move(args)) : t;
  }

  Atom apply(const Atom& a) const {
    Atom out{a.predicate, {}};
    out.args.reserve(a.args.size());
    for (const Term& t : a.args) out.args.push_back(apply(t));
    return out;
  }

  Literal apply(const Literal& l) const { return Literal{l.positive, apply(l.atom)}; }

  Clause apply(const Clause& c) const {
    std::vector<Literal> out;
    out.reserve(c.size());
    for (const Literal& l : c.literals()) out.push_back(apply(l));
    return Clause(std::move(out));
  }

  // Capture-avoiding: a bound variable that would capture a variable of an
  // image is renamed to a fresh primed name first.
  Formula apply(const Formula& f) const {
    if (map_.empty()) return f;
    switch (f.kind()) {
      case Connective::Atom: return Formula::atom(apply(f.atom()));
      case Connective::Top:
      case Connective::Bottom: return f;
      case Connective::Not: return Formula::negation(apply(f.operand()));
      case Connective::Forall:
      case Connective::Exists: {
        const VarSet body_free = f.body().free_vars();
        Substitution inner;
        VarSet image_vars;
        for (const auto& [v, t] : map_) {
          if (v == f.bound_variable() || !body_free.contains(v)) continue;
          inner.map_.emplace(v, t);
          t.collect_vars(image_vars);
        }
        if (inner.empty()) return f;
        std::string var = f.bound_variable();
        Formula body = f.body();
        if (image_vars.contains(var)) {
          VarSet used = image_vars;
          used.insert(body_free.begin(), body_free.end());
          f.body().collect_all_vars(used);
          for (const auto& [v, _] : inner.map_) used.insert(v);
          std::string renamed = fresh_variable(var, used);
          body = Substitution{{var, Term::variable(renamed)}}.apply(body);
          var = renamed;
        }
        return Formula::quantified(f.kind(), var, inner.apply(body));
      }
      default: return Formula::binary(f.kind(), apply(f.left()), apply(f.right()));
    }
  }

  /// Idempotent form: images rewritten until no domain variable occurs in them.
  /// Precondition: the bindings are acyclic.
  Substitution normalized() const {
    Substitution cur = *this;
    for (std::size_t round = 0; round <= map_.size(); ++round) {
      Substitution next;
      bool changed = false;
      for (const auto& [v, t] : cur.map_) {
        Term img = cur.apply(t);
        changed = changed || !(img == t);
        next.bind(v, img);
      }
      cur = std::move(next);
      if (!changed) break;
    }
    return cur;
  }

  bool is_idempotent() const {
    for (const auto& [_, t] : map_)
      for (const auto& [v, _2] : map_)
        if (t.occurs(v)) return false;
    return true;
  }

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<std::string, Term> map_;
};

/// compose(s, t) applied to e equals t applied to (s applied to e).
inline Substitution compose(const Substitution& first, const Substitution& second) {
  Substitution out;
  for (const auto& [v, t] : first) out.bind(v, second.apply(t));
  for (const auto& [v, t] : second)
    if (!first.contains(v)) out.bind(v, t);
  return out;
}

inline VarSet free_vars(const Term& t) { return t.vars(); }
inline VarSet free_vars(const Atom& a) {
  VarSet out;
  a.collect_vars(out);
  return out;
}
inline VarSet free_vars(const Clause& c) { return c.vars(); }
inline VarSet free_vars(const Formula& f) { return f.free_vars(); }

/// Renames the variables of `c` that occur in `avoid` to fresh primed names.
inline Clause rename_away(const Clause& c, const VarSet& avoid) {
  VarSet vars = c.vars();
  VarSet used = avoid;
  used.insert(vars.begin(), vars.end());
  Substitution ren;
  for (const std::string& v : vars) {
    if (!avoid.contains(v)) continue;
    std::string fresh = fresh_variable(v, used);
    used.insert(fresh);
    ren.bind(v, Term::variable(fresh));
  }
  return ren.apply(c);
}

/// Variants of the two clauses with disjoint variable sets; the first is kept as is.
inline std::pair<Clause, Clause> rename_apart(const Clause& c1, const Clause& c2) {
  return {c1, rename_away(c2, c1.vars())};
}

namespace detail {

inline bool match_var_renaming(const Term& a, const Term& b,
                               std::map<std::string, std::string>& fwd,
                               std::map<std::string, std::string>& bwd) {
  if (a.is_variable() || b.is_variable()) {
    if (!a.is_variable() || !b.is_variable()) return false;
    auto f = fwd.find(a.name());
    auto g = bwd.find(b.name());
    if (f == fwd.end() && g == bwd.end()) {
      fwd.emplace(a.name(), b.name());
      bwd.emplace(b.name(), a.name());
      return true;
    }
    return f != fwd.end() && g != bwd.end() && f->second == b.name() && g->second == a.name();
  }
  if (a.name() != b.name() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!match_var_renaming(a.args()[i], b.args()[i], fwd, bwd)) return false;
  return true;
}

inline bool variant_search(const std::vector<Literal>& xs, const std::vector<Literal>& ys,
                           std::size_t i, std::vector<bool>& used,
                           std::map<std::string, std::string>& fwd,
                           std::map<std::string, std::string>& bwd) {
  if (i == xs.size()) return true;
  for (std::size_t j = 0; j < ys.size(); ++j) {
    if (used[j] || xs[i].positive != ys[j].positive ||
        xs[i].atom.predicate != ys[j].atom.predicate ||
        xs[i].atom.args.size() != ys[j].atom.args.size())
      continue;
    auto f2 = fwd;
    auto b2 = bwd;
    bool ok = true;
    for (std::size_t k = 0; ok && k < xs[i].atom.args.size(); ++k)
      ok = match_var_renaming(xs[i].atom.args[k], ys[j].atom.args[k], f2, b2);
    if (!ok) continue;
    used[j] = true;
    if (variant_search(xs, ys, i + 1, used, f2, b2)) return true;
    used[j] = false;
  }
  return false;
}

}  // namespace detail

/// True iff the clauses are equal as literal multisets up to a bijective variable renaming.
inline bool is_variant(const Clause& a, const Clause& b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  std::map<std::string, std::string> fwd, bwd;
  return detail::variant_search(a.literals(), b.literals(), 0, used, fwd, bwd);
}

/// Renames clause variables back toward their unprimed base names where that
/// introduces no clash. Keeps derived clauses readable.
inline void vars_in_order(const Term& t, std::vector<std::string>& order, VarSet& seen) {
  if (t.is_variable()) {
    if (seen.insert(t.name()).second) order.push_back(t.name());
    return;
  }
  for (const Term& a : t.args()) vars_in_order(a, order, seen);
}

inline Clause tidy_variables(const Clause& c) {
  std::vector<std::string> order;
  VarSet seen;
  for (const Literal& l : c.literals())
    for (const Term& t : l.atom.args) vars_in_order(t, order, seen);
  VarSet taken;
  Substitution ren;
  for (const std::string& v : order) {
    std::string base = v;
    while (!base.empty() && base.back() == '\'') base.pop_back();
    if (auto us = base.find('_'); us != std::string::npos && us > 0) base = base.substr(0, us);
    if (base.empty()) base = v;
    std::string name = fresh_variable(base, taken);
    taken.insert(name);
    if (name != v) ren.bind(v, Term::variable(name));
  }
  return ren.apply(c);
}

namespace detail {

inline void alpha_key(const Formula& f, std::vector<std::string>& bound, std::string& out);

inline void alpha_key_term(const Term& t, const std::vector<std::string>& bound,
                           std::string& out) {
  if (t.is_variable()) {
    for (std::size_t i = bound.size(); i-- > 0;) {
      if (bound[i] == t.name()) {
        out += "#" + std::to_string(bound.size() - 1 - i);
        return;
      }
    }
    out += "?" + t.name();
    return;
  }
  out += t.name();
  if (t.arity() == 0) return;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ',';
    alpha_key_term(t.args()[i], bound, out);
  }
  out += ')';
}

inline void alpha_key(const Formula& f, std::vector<std::string>& bound, std::string& out) {
  switch (f.kind()) {
    case Connective::Atom:
      out += f.atom().predicate;
      out += '(';
      for (std::size_t i = 0; i < f.atom().args.size(); ++i) {
        if (i) out += ',';
        alpha_key_term(f.atom().args[i], bound, out);
      }
      out += ')';
      return;
    case Connective::Top: out += "T"; return;
    case Connective::Bottom: out += "F"; return;
    case Connective::Not:
      out += "~";
      alpha_key(f.operand(), bound, out);
      return;
    case Connective::Forall:
    case Connective::Exists:
      out += f.kind() == Connective::Forall ? "A." : "E.";
      bound.push_back(f.bound_variable());
      alpha_key(f.body(), bound, out);
      bound.pop_back();
      return;
    default:
      out += '[';
      out += std::to_string(static_cast<int>(f.kind()));
      alpha_key(f.left(), bound, out);
      out += '|';
      alpha_key(f.right(), bound, out);
      out += ']';
  }
}

}  // namespace detail

/// Canonical string identifying the alpha-equivalence class of a formula.
inline std::string alpha_key(const Formula& f) {
  std::vector<std::string> bound;
  std::string out;
  detail::alpha_key(f, bound, out);
  return out;
}

inline bool alpha_equivalent(const Formula& a, const Formula& b) {
  return a == b || alpha_key(a) == alpha_key(b);
}

}  // namespace modulo
