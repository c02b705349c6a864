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

// Concrete syntax printer. Output re-parses to the same structure:
//   ~ binds tightest, then /\, \/, =>, <=>; /\ and \/ associate left,
//   => and <=> associate right; quantifiers extend as far right as possible
//   and are parenthesized whenever they are an operand.

#pragma once

#include <ostream>
#include <sstream>
#include <string>

#include "modulo/substitution.hpp"

namespace modulo {

inline void print(std::ostream& os, const Term& t) {
  if (t.is_variable()) {
    os << t.name();
    return;
  }
  if (long n = t.numeral_value(); n >= 0) {
    os << n;
    return;
  }
  os << t.name();
  if (t.arity() == 0) return;
  os << '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) os << ',';
    print(os, t.args()[i]);
  }
  os << ')';
}

inline void print(std::ostream& os, const Atom& a) {
  os << a.predicate;
  if (a.args.empty()) return;
  os << '(';
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) os << ',';
    print(os, a.args[i]);
  }
  os << ')';
}

inline void print(std::ostream& os, const Literal& l) {
  if (!l.positive) os << '~';
  print(os, l.atom);
}

inline void print(std::ostream& os, const Clause& c) {
  os << '{';
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << ", ";
    print(os, c.literals()[i]);
  }
  os << '}';
}

namespace detail {

inline int precedence(Connective c) {
  switch (c) {
    case Connective::Iff: return 1;
    case Connective::Implies: return 2;
    case Connective::Or: return 3;
    case Connective::And: return 4;
    case Connective::Not: return 5;
    case Connective::Forall:
    case Connective::Exists: return 0;
    default: return 6;
  }
}

inline bool right_assoc(Connective c) {
  return c == Connective::Implies || c == Connective::Iff;
}

inline const char* symbol(Connective c) {
  switch (c) {
    case Connective::And: return " /\\ ";
    case Connective::Or: return " \\/ ";
    case Connective::Implies: return " => ";
    case Connective::Iff: return " <=> ";
    default: return "?";
  }
}

}  // namespace detail

inline void print(std::ostream& os, const Formula& f);

namespace detail {

inline void print_operand(std::ostream& os, const Formula& f, bool parens) {
  if (parens) os << '(';
  print(os, f);
  if (parens) os << ')';
}

}  // namespace detail

inline void print(std::ostream& os, const Formula& f) {
  using detail::precedence;
  switch (f.kind()) {
    case Connective::Atom: print(os, f.atom()); return;
    case Connective::Top: os << "true"; return;
    case Connective::Bottom: os << "false"; return;
    case Connective::Not: {
      os << '~';
      const Connective k = f.operand().kind();
      detail::print_operand(os, f.operand(), is_binary(k) || is_quantifier(k));
      return;
    }
    case Connective::Forall:
    case Connective::Exists:
      os << (f.kind() == Connective::Forall ? "forall " : "exists ") << f.bound_variable()
         << ". ";
      print(os, f.body());
      return;
    default: {
      const int p = precedence(f.kind());
      const Connective lk = f.left().kind();
      const Connective rk = f.right().kind();
      const bool right = detail::right_assoc(f.kind());
      bool lp = is_quantifier(lk) || (is_binary(lk) && (precedence(lk) < p ||
                                                        (precedence(lk) == p && right)));
      bool rp = is_quantifier(rk) || (is_binary(rk) && (precedence(rk) < p ||
                                                        (precedence(rk) == p && !right)));
      detail::print_operand(os, f.left(), lp);
      os << detail::symbol(f.kind());
      detail::print_operand(os, f.right(), rp);
    }
  }
}

inline void print(std::ostream& os, const Substitution& s) {
  os << '{';
  bool first = true;
  for (const auto& [v, t] : s) {
    if (!first) os << ", ";
    first = false;
    os << v << "->";
    print(os, t);
  }
  os << '}';
}

inline void print(std::ostream& os, const Sequent& s) {
  for (std::size_t i = 0; i < s.antecedent.size(); ++i) {
    if (i) os << ", ";
    print(os, s.antecedent[i]);
  }
  os << (s.antecedent.empty() ? "|-" : " |-");
  for (std::size_t i = 0; i < s.succedent.size(); ++i) {
    os << (i ? ", " : " ");
    print(os, s.succedent[i]);
  }
}

template <class T>
std::string to_string(const T& x) {
  std::ostringstream os;
  print(os, x);
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Term& t) { print(os, t); return os; }
inline std::ostream& operator<<(std::ostream& os, const Atom& a) { print(os, a); return os; }
inline std::ostream& operator<<(std::ostream& os, const Literal& l) { print(os, l); return os; }
inline std::ostream& operator<<(std::ostream& os, const Clause& c) { print(os, c); return os; }
inline std::ostream& operator<<(std::ostream& os, const Formula& f) { print(os, f); return os; }
inline std::ostream& operator<<(std::ostream& os, const Substitution& s) { print(os, s); return os; }
inline std::ostream& operator<<(std::ostream& os, const Sequent& s) { print(os, s); return os; }

}  // namespace modulo
