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

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace modulo {

/// Base class of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A term or formula does not respect the declared signature.
class SignatureError : public Error {
 public:
  using Error::Error;
};

/// Name of the built-in binary equality predicate.
inline constexpr std::string_view kEquality = "eq";
/// Peano constructors used by decimal numerals.
inline constexpr std::string_view kZero = "0";
inline constexpr std::string_view kSucc = "s";

inline void hash_combine(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

using VarSet = std::set<std::string>;

// First-order term: a variable or a function symbol applied to arguments.
// Terms are immutable and share structure; copying is cheap.
class Term {
 public:
  static Term variable(std::string name) {
    return Term(std::make_shared<const Node>(true, std::move(name), std::vector<Term>{}));
  }

  static Term apply(std::string symbol, std::vector<Term> args = {}) {
    return Term(std::make_shared<const Node>(false, std::move(symbol), std::move(args)));
  }

  /// s^n(0).
  static Term numeral(std::size_t n) {
    Term t = apply(std::string(kZero));
    for (std::size_t i = 0; i < n; ++i) t = apply(std::string(kSucc), {t});
    return t;
  }

  bool is_variable() const { return node_->is_var; }
  bool is_constant() const { return !node_->is_var && node_->args.empty(); }
  const std::string& name() const { return node_->name; }
  const std::vector<Term>& args() const { return node_->args; }
  std::size_t arity() const { return node_->args.size(); }
  std::size_t hash() const { return node_->hash; }
  /// Number of symbol occurrences, variables included.
  std::size_t size() const { return node_->size; }
  bool is_ground() const { return node_->ground; }

  /// Value of a Peano numeral, or -1 when the term is not one.
  long numeral_value() const {
    long n = 0;
    const Term* t = this;
    while (!t->is_variable() && t->name() == kSucc && t->arity() == 1) {
      ++n;
      t = &t->args()[0];
    }
    if (t->is_variable() || t->name() != kZero || t->arity() != 0) return -1;
    return n;
  }

  bool occurs(std::string_view var) const {
    if (is_variable()) return name() == var;
    if (ground()) return false;
    for (const Term& a : args())
      if (a.occurs(var)) return true;
    return false;
  }

  void collect_vars(VarSet& out) const {
    if (is_variable()) {
      out.insert(name());
      return;
    }
    if (ground()) return;
    for (const Term& a : args()) a.collect_vars(out);
  }

  VarSet vars() const {
    VarSet out;
    collect_vars(out);
    return out;
  }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->hash != b.node_->hash || a.node_->is_var != b.node_->is_var ||
        a.node_->name != b.node_->name || a.arity() != b.arity())
      return false;
    for (std::size_t i = 0; i < a.arity(); ++i)
      if (!(a.args()[i] == b.args()[i])) return false;
    return true;
  }

  // Total syntactic order: variables first, then by symbol, arity, arguments.
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (a.is_variable() != b.is_variable())
      return a.is_variable() ? std::strong_ordering::less : std::strong_ordering::greater;
    if (auto c = a.name() <=> b.name(); c != 0) return c;
    if (auto c = a.arity() <=> b.arity(); c != 0) return c;
    for (std::size_t i = 0; i < a.arity(); ++i)
      if (auto c = a.args()[i] <=> b.args()[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

 private:
  struct Node {
    Node(bool var, std::string n, std::vector<Term> a)
        : is_var(var), name(std::move(n)), args(std::move(a)) {
      hash = std::hash<std::string>{}(name) + (is_var ? 1 : 0);
      size = 1;
      ground = !is_var;
      for (const Term& t : args) {
        hash_combine(hash, t.hash());
        size += t.size();
        ground = ground && t.is_ground();
      }
    }
    bool is_var;
    std::string name;
    std::vector<Term> args;
    std::size_t hash = 0;
    std::size_t size = 0;
    bool ground = true;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  bool ground() const { return node_->ground; }

  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// Path of argument indices from the root; empty for the root itself.
using Position = std::vector<std::size_t>;

inline const Term& subterm_at(const Term& t, const Position& pos, std::size_t from = 0) {
  if (from == pos.size()) return t;
  return subterm_at(t.args().at(pos[from]), pos, from + 1);
}

inline Term replace_at(const Term& t, const Position& pos, const Term& replacement,
                       std::size_t from = 0) {
  if (from == pos.size()) return replacement;
  std::vector<Term> args = t.args();
  args.at(pos[from]) = replace_at(args[pos[from]], pos, replacement, from + 1);
  return Term::apply(t.name(), std::move(args));
}

/// Non-variable positions in pre-order (root first, then arguments left to right).
inline void function_positions(const Term& t, std::vector<Position>& out, Position& prefix) {
  if (t.is_variable()) return;
  out.push_back(prefix);
  for (std::size_t i = 0; i < t.arity(); ++i) {
    prefix.push_back(i);
    function_positions(t.args()[i], out, prefix);
    prefix.pop_back();
  }
}

inline std::vector<Position> function_positions(const Term& t) {
  std::vector<Position> out;
  Position prefix;
  function_positions(t, out, prefix);
  return out;
}

/// Appends primes to `base` until the name is outside `used`.
inline std::string fresh_variable(const std::string& base, const VarSet& used) {
  std::string name = base;
  while (used.contains(name)) name += '\'';
  return name;
}

}  // namespace modulo
