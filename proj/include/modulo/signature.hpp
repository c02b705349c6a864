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

#include <map>
#include <optional>
#include <string>

#include "modulo/formula.hpp"

namespace modulo {

// Function and predicate symbols with fixed arities. The two namespaces are
// independent; the equality predicate is always present.
class Signature {
 public:
  Signature() { predicates_.emplace(std::string(kEquality), 2); }

  void declare_function(const std::string& name, std::size_t arity) {
    declare(functions_, name, arity, "function");
  }
  void declare_predicate(const std::string& name, std::size_t arity) {
    declare(predicates_, name, arity, "predicate");
  }

  std::optional<std::size_t> function_arity(const std::string& name) const {
    auto it = functions_.find(name);
    if (it == functions_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> predicate_arity(const std::string& name) const {
    auto it = predicates_.find(name);
    if (it == predicates_.end()) return std::nullopt;
    return it->second;
  }

  const std::map<std::string, std::size_t>& functions() const { return functions_; }
  const std::map<std::string, std::size_t>& predicates() const { return predicates_; }

  void check(const Term& t) const {
    if (t.is_variable()) return;
    auto ar = function_arity(t.name());
    if (!ar) throw SignatureError("undeclared function symbol '" + t.name() + "'");
    if (*ar != t.arity())
      throw SignatureError("function '" + t.name() + "' expects " + std::to_string(*ar) +
                           " arguments, got " + std::to_string(t.arity()));
    for (const Term& a : t.args()) check(a);
  }

  void check(const Atom& a) const {
    auto ar = predicate_arity(a.predicate);
    if (!ar) throw SignatureError("undeclared predicate '" + a.predicate + "'");
    if (*ar != a.args.size())
      throw SignatureError("predicate '" + a.predicate + "' expects " + std::to_string(*ar) +
                           " arguments, got " + std::to_string(a.args.size()));
    for (const Term& t : a.args) check(t);
  }

  void check(const Formula& f) const {
    switch (f.kind()) {
      case Connective::Atom: check(f.atom()); return;
      case Connective::Top:
      case Connective::Bottom: return;
      case Connective::Not:
      case Connective::Forall:
      case Connective::Exists: check(f.operand()); return;
      default:
        check(f.left());
        check(f.right());
    }
  }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  static void declare(std::map<std::string, std::size_t>& table, const std::string& name,
                      std::size_t arity, const char* what) {
    auto [it, inserted] = table.emplace(name, arity);
    if (!inserted && it->second != arity)
      throw SignatureError(std::string(what) + " '" + name + "' redeclared with arity " +
                           std::to_string(arity) + " (was " + std::to_string(it->second) + ")");
  }

  std::map<std::string, std::size_t> functions_;
  std::map<std::string, std::size_t> predicates_;
};

}  // namespace modulo
