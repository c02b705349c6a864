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

// Syntactic most-general unification (Robinson, with occurs check).

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modulo/substitution.hpp"

namespace modulo {

using Equation = std::pair<Term, Term>;

/// Solves all equations simultaneously, extending `start`. The result is idempotent.
inline std::optional<Substitution> unify_all(std::vector<Equation> pending,
                                             Substitution start = {}) {
  Substitution sigma = std::move(start);
  while (!pending.empty()) {
    auto [lhs, rhs] = std::move(pending.back());
    pending.pop_back();
    Term s = sigma.apply(lhs);
    Term t = sigma.apply(rhs);
    if (s == t) continue;
    if (!s.is_variable() && t.is_variable()) std::swap(s, t);
    if (s.is_variable()) {
      if (t.occurs(s.name())) return std::nullopt;
      Substitution single{{s.name(), t}};
      Substitution next;
      for (const auto& [v, img] : sigma) next.bind(v, single.apply(img));
      next.bind(s.name(), t);
      sigma = std::move(next);
      continue;
    }
    if (s.name() != t.name() || s.arity() != t.arity()) return std::nullopt;
    for (std::size_t i = s.arity(); i-- > 0;) pending.emplace_back(s.args()[i], t.args()[i]);
  }
  return sigma;
}

inline std::optional<Substitution> mgu(const Term& t, const Term& u) {
  return unify_all({{t, u}});
}

inline std::optional<Substitution> mgu(const Atom& a, const Atom& b) {
  if (a.predicate != b.predicate || a.args.size() != b.args.size()) return std::nullopt;
  std::vector<Equation> eqs;
  for (std::size_t i = a.args.size(); i-- > 0;) eqs.emplace_back(a.args[i], b.args[i]);
  return unify_all(std::move(eqs));
}

using Bindings = std::map<std::string, Term>;

/// One-way matching: extends `b` so that b(pattern) == subject, binding only
/// pattern variables. On failure `b` is left unspecified.
inline bool match_into(const Term& pattern, const Term& subject, Bindings& b) {
  if (pattern.is_variable()) {
    auto [it, inserted] = b.emplace(pattern.name(), subject);
    return inserted || it->second == subject;
  }
  if (subject.is_variable() || pattern.name() != subject.name() ||
      pattern.arity() != subject.arity())
    return false;
  for (std::size_t i = 0; i < pattern.arity(); ++i)
    if (!match_into(pattern.args()[i], subject.args()[i], b)) return false;
  return true;
}

inline Substitution to_substitution(const Bindings& b) {
  Substitution s;
  for (const auto& [v, t] : b) s.bind(v, t);
  return s;
}

}  // namespace modulo
