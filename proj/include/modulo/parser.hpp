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

// Theory files.
//
//   sig f/2.                  function symbol (constants are f/0)
//   pred P/1.                 predicate symbol; eq/2 is built in
//   rule <term> -> <term>.
//   prule <atom> -> <formula>.
//   axiom <formula>.
//   goal <name>: <formula>.
//   proof <name>:             followed by indented node lines, children
//     rule=<Tag> seq="..."    indented deeper than their parent
//
// Formulas use ~ /\ \/ => <=>, true, false, forall X. and exists X.; the
// infix t = u abbreviates eq(t,u). Identifiers starting with an uppercase
// letter are variables in term position. Decimal numerals stand for
// s(...s(0)) and declare 0/0 and s/1. `#` starts a comment.

#pragma once

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "modulo/sequent.hpp"
#include "modulo/signature.hpp"

namespace modulo {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& msg)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct Goal {
  std::string name;
  Formula formula;
  friend bool operator==(const Goal&, const Goal&) = default;
};

struct NamedProof {
  std::string name;
  ProofNode proof;
};

struct TheoryFile {
  Signature signature;
  RewriteSystem rules;
  std::vector<Formula> axioms;
  std::vector<Goal> goals;
  std::vector<NamedProof> proofs;

  const Goal* goal(const std::string& name) const {
    for (const Goal& g : goals)
      if (g.name == name) return &g;
    return nullptr;
  }
  const NamedProof* proof(const std::string& name) const {
    for (const NamedProof& p : proofs)
      if (p.name == name) return &p;
    return nullptr;
  }
};

namespace detail {

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

inline std::vector<Token> lex(const std::string& src, std::size_t first_line = 1, std::size_t first_col = 1) {
  static const char* const kPunct[] = {"<=>", "=>", "->", "|-", "/\\", "\\/", "(", ")", ",",
                                       ".",   ":",  "/",  "~",  "="};
  std::vector<Token> out;
  std::size_t line = first_line, col = first_col;
  std::size_t end_line = line, end_col = col;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t{Tok::Punct, "", line, col};
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      t.kind = Tok::Ident;
      t.text = src.substr(i, j - i);
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Number;
      t.text = src.substr(i, j - i);
      advance(j - i);
    } else {
      bool matched = false;
      for (const char* p : kPunct) {
        std::string s(p);
        if (src.compare(i, s.size(), s) == 0) {
          t.text = s;
          advance(s.size());
          matched = true;
          break;
        }
      }
      if (!matched) throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
    end_line = line;
    end_col = col;
  }
  // End of input is reported just after the last token, not after trailing blank lines.
  out.push_back(Token{Tok::End, "", end_line, end_col});
  return out;
}

inline bool is_variable_name(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

class Parser {
 public:
  Parser(std::vector<Token> toks, Signature& sig, bool declare_numerals = true)
      : toks_(std::move(toks)), sig_(sig), declare_numerals_(declare_numerals) {}

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(const char* punct) const { return peek().kind == Tok::Punct && peek().text == punct; }
  bool at_ident(const char* word) const { return peek().kind == Tok::Ident && peek().text == word; }
  bool at_end() const { return peek().kind == Tok::End; }

  Token take() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  [[noreturn]] void error(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(t.line, t.column, msg + (t.kind == Tok::End ? " at end of input" : " near '" + t.text + "'"));
  }

  void expect(const char* punct) {
    if (!at(punct)) error(std::string("expected '") + punct + "'");
    take();
  }

  std::string ident(const char* what) {
    if (peek().kind != Tok::Ident) error(std::string("expected ") + what);
    return take().text;
  }

  std::size_t number() {
    if (peek().kind != Tok::Number) error("expected a number");
    const Token t = take();
    try {
      return std::stoul(t.text);
    } catch (const std::exception&) {
      throw ParseError(t.line, t.column, "number out of range");
    }
  }

  // --- terms

  Term numeral(std::size_t n) {
    if (declare_numerals_) {
      sig_.declare_function(std::string(kZero), 0);
      sig_.declare_function(std::string(kSucc), 1);
    }
    return Term::numeral(n);
  }

  std::vector<Term> term_args() {
    std::vector<Term> args;
    if (!at("(")) return args;
    take();
    args.push_back(term());
    while (at(",")) {
      take();
      args.push_back(term());
    }
    expect(")");
    return args;
  }

  Term application(const Token& head, std::vector<Term> args, bool had_parens) {
    if (is_variable_name(head.text)) {
      if (had_parens) throw ParseError(head.line, head.column, "variable " + head.text + " applied to arguments");
      return Term::variable(head.text);
    }
    auto ar = sig_.function_arity(head.text);
    if (!ar) throw ParseError(head.line, head.column, "undeclared function symbol '" + head.text + "'");
    if (*ar != args.size())
      throw ParseError(head.line, head.column, "function '" + head.text + "' expects " + std::to_string(*ar) +
                                                   " arguments, got " + std::to_string(args.size()));
    return Term::apply(head.text, std::move(args));
  }

  Term term() {
    if (peek().kind == Tok::Number) return numeral(number());
    if (peek().kind != Tok::Ident) error("expected a term");
    Token head = take();
    bool parens = at("(");
    std::vector<Term> args = term_args();
    return application(head, std::move(args), parens);
  }

  // --- formulas

  Atom atom_or_equation() {
    if (peek().kind == Tok::Number) {
      Term l = term();
      expect("=");
      return equality(l, term());
    }
    if (peek().kind != Tok::Ident) error("expected a formula");
    Token head = take();
    bool parens = at("(");
    std::vector<Term> args = term_args();
    if (at("=")) {
      take();
      Term l = application(head, std::move(args), parens);
      return equality(l, term());
    }
    auto ar = sig_.predicate_arity(head.text);
    if (!ar) throw ParseError(head.line, head.column, "undeclared predicate '" + head.text + "'");
    if (*ar != args.size())
      throw ParseError(head.line, head.column, "predicate '" + head.text + "' expects " + std::to_string(*ar) +
                                                   " arguments, got " + std::to_string(args.size()));
    return Atom{head.text, std::move(args)};
  }

  Formula formula() { return iff(); }

  Formula iff() {
    Formula l = implies();
    if (!at("<=>")) return l;
    take();
    return Formula::equivalence(l, iff());
  }

  Formula implies() {
    Formula l = disj();
    if (!at("=>")) return l;
    take();
    return Formula::implication(l, implies());
  }

  Formula disj() {
    Formula l = conj();
    while (at("\\/")) {
      take();
      l = Formula::disjunction(l, conj());
    }
    return l;
  }

  Formula conj() {
    Formula l = unary();
    while (at("/\\")) {
      take();
      l = Formula::conjunction(l, unary());
    }
    return l;
  }

  Formula unary() {
    if (at("~")) {
      take();
      return Formula::negation(unary());
    }
    if (at_ident("forall") || at_ident("exists")) {
      bool all = take().text == "forall";
      std::string v = ident("a bound variable");
      if (!is_variable_name(v)) error("bound variable must start with an uppercase letter");
      expect(".");
      return Formula::quantified(all ? Connective::Forall : Connective::Exists, v, formula());
    }
    if (at_ident("true")) {
      take();
      return Formula::top();
    }
    if (at_ident("false")) {
      take();
      return Formula::bottom();
    }
    if (at("(")) {
      take();
      Formula f = formula();
      expect(")");
      return f;
    }
    return Formula::atom(atom_or_equation());
  }

  std::vector<Formula> formula_list(const char* stop) {
    std::vector<Formula> out;
    if (at(stop) || at_end()) return out;
    out.push_back(formula());
    while (at(",")) {
      take();
      out.push_back(formula());
    }
    return out;
  }

  Sequent sequent() {
    Sequent s;
    s.antecedent = formula_list("|-");
    expect("|-");
    s.succedent = formula_list("|-");
    return s;
  }

  void finish() {
    if (!at_end()) error("unexpected trailing input");
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Signature& sig_;
  bool declare_numerals_;
};

struct ProofLine {
  std::size_t line;
  std::size_t indent;
  std::string text;
};

// key=value pairs; values are double-quoted strings or runs of non-space characters.
inline std::vector<std::pair<std::string, std::string>> node_fields(const ProofLine& pl) {
  std::vector<std::pair<std::string, std::string>> out;
  const std::string& s = pl.text;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    std::size_t eq = s.find('=', i);
    if (eq == std::string::npos) throw ParseError(pl.line, pl.indent + i + 1, "expected key=value");
    std::string key = s.substr(i, eq - i);
    i = eq + 1;
    std::string value;
    if (i < s.size() && s[i] == '"') {
      std::size_t close = s.find('"', i + 1);
      if (close == std::string::npos) throw ParseError(pl.line, pl.indent + i + 1, "unterminated string");
      value = s.substr(i + 1, close - i - 1);
      i = close + 1;
    } else {
      std::size_t j = i;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
      value = s.substr(i, j - i);
      i = j;
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

inline std::vector<FormulaRef> parse_principal(const std::string& v, std::size_t line) {
  std::vector<FormulaRef> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.size() < 2 || (item[0] != 'L' && item[0] != 'R'))
      throw ParseError(line, 1, "principal entries look like L0 or R1, got '" + item + "'");
    try {
      out.push_back({item[0] == 'L', std::stoul(item.substr(1))});
    } catch (const std::exception&) {
      throw ParseError(line, 1, "bad principal index '" + item + "'");
    }
  }
  return out;
}

}  // namespace detail

/// Builds a proof node from its textual fields: rule, seq, witness, eigen, principal.
inline ProofNode make_proof_node(const std::vector<std::pair<std::string, std::string>>& fields,
                                 Signature& sig, std::size_t line = 1) {
  ProofNode n;
  bool have_rule = false, have_seq = false;
  for (const auto& [k, v] : fields) {
    if (k == "rule") {
      auto r = parse_sequent_rule(v);
      if (!r) throw ParseError(line, 1, "unknown rule tag '" + v + "'");
      n.rule = *r;
      have_rule = true;
    } else if (k == "seq") {
      detail::Parser p(detail::lex(v, line), sig);
      n.conclusion = p.sequent();
      p.finish();
      have_seq = true;
    } else if (k == "witness") {
      detail::Parser p(detail::lex(v, line), sig);
      n.witness = p.term();
      p.finish();
    } else if (k == "eigen") {
      if (!detail::is_variable_name(v)) throw ParseError(line, 1, "eigenvariable must be a variable");
      n.eigenvariable = v;
    } else if (k == "principal") {
      n.principal = detail::parse_principal(v, line);
    } else {
      throw ParseError(line, 1, "unknown proof field '" + k + "'");
    }
  }
  if (!have_rule || !have_seq) throw ParseError(line, 1, "proof node needs rule= and seq=");
  return n;
}

namespace detail {

inline ProofNode proof_tree(const std::vector<ProofLine>& lines, std::size_t& i, Signature& sig) {
  const ProofLine& me = lines[i++];
  ProofNode n = make_proof_node(node_fields(me), sig, me.line);
  if (i < lines.size() && lines[i].indent > me.indent) {
    const std::size_t child_indent = lines[i].indent;
    while (i < lines.size() && lines[i].indent > me.indent) {
      if (lines[i].indent != child_indent)
        throw ParseError(lines[i].line, lines[i].indent + 1, "inconsistent indentation in proof block");
      n.premises.push_back(proof_tree(lines, i, sig));
    }
  }
  return n;
}

}  // namespace detail

/// Parses an indentation-nested proof block.
inline ProofNode parse_proof_block(const std::string& text, Signature& sig, std::size_t first_line = 1) {
  std::vector<detail::ProofLine> lines;
  std::stringstream ss(text);
  std::string raw;
  for (std::size_t ln = first_line; std::getline(ss, raw); ++ln) {
    std::string s = raw.substr(0, raw.find('#'));
    std::size_t ind = s.find_first_not_of(" \t");
    if (ind == std::string::npos) continue;
    std::size_t last = s.find_last_not_of(" \t\r");
    lines.push_back({ln, ind, s.substr(ind, last - ind + 1)});
  }
  if (lines.empty()) throw ParseError(first_line, 1, "empty proof block");
  std::size_t i = 0;
  ProofNode root = detail::proof_tree(lines, i, sig);
  if (i != lines.size())
    throw ParseError(lines[i].line, lines[i].indent + 1, "proof block has more than one root");
  return root;
}

inline Term parse_term(const std::string& text, Signature& sig) {
  detail::Parser p(detail::lex(text), sig);
  Term t = p.term();
  p.finish();
  return t;
}

inline Formula parse_formula(const std::string& text, Signature& sig) {
  detail::Parser p(detail::lex(text), sig);
  Formula f = p.formula();
  p.finish();
  return f;
}

inline Sequent parse_sequent(const std::string& text, Signature& sig) {
  detail::Parser p(detail::lex(text), sig);
  Sequent s = p.sequent();
  p.finish();
  return s;
}

namespace detail {

inline std::string trim_right(const std::string& s) {
  std::size_t e = s.find_last_not_of(" \t\r");
  return e == std::string::npos ? "" : s.substr(0, e + 1);
}

}  // namespace detail

inline TheoryFile parse_theory(const std::string& text) {
  TheoryFile th;
  // Proof blocks are line-oriented; cut them out first and blank their
  // lines so that token positions stay correct.
  std::vector<std::string> lines;
  {
    std::stringstream ss(text);
    std::string l;
    while (std::getline(ss, l)) lines.push_back(l);
  }
  struct Block {
    std::string name;
    std::size_t first_line;
    std::string body;
  };
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string code = detail::trim_right(lines[i].substr(0, lines[i].find('#')));
    if (code.rfind("proof", 0) != 0 || (code.size() > 5 && detail::ident_char(code[5]))) continue;
    detail::Parser hp(detail::lex(code, i + 1), th.signature);
    hp.take();
    std::string name = hp.ident("a proof name");
    hp.expect(":");
    hp.finish();
    lines[i].clear();
    Block b{name, i + 2, ""};
    std::size_t j = i + 1;
    for (; j < lines.size(); ++j) {
      const std::string& l = lines[j];
      std::size_t ind = l.find_first_not_of(" \t");
      bool blank = ind == std::string::npos || l[ind] == '#';
      if (!blank && ind == 0) break;
      b.body += l + "\n";
      lines[j].clear();
    }
    blocks.push_back(std::move(b));
    i = j - 1;
  }
  std::string rest;
  for (const std::string& l : lines) rest += l + "\n";

  detail::Parser p(detail::lex(rest), th.signature);
  std::size_t term_rules = 0, prop_rules = 0;
  while (!p.at_end()) {
    const detail::Token kw = p.peek();
    std::string word = p.ident("a declaration keyword");
    try {
      if (word == "sig" || word == "pred") {
        std::string name = p.peek().kind == detail::Tok::Number ? p.take().text : p.ident("a symbol name");
        p.expect("/");
        std::size_t ar = p.number();
        if (word == "sig") {
          th.signature.declare_function(name, ar);
        } else {
          th.signature.declare_predicate(name, ar);
        }
      } else if (word == "rule") {
        Term l = p.term();
        p.expect("->");
        Term r = p.term();
        th.rules.term_rules.push_back(make_term_rule("rule" + std::to_string(++term_rules), l, r));
      } else if (word == "prule") {
        Atom l = p.atom_or_equation();
        p.expect("->");
        Formula r = p.formula();
        th.rules.prop_rules.push_back(make_prop_rule("prule" + std::to_string(++prop_rules), l, r));
      } else if (word == "axiom") {
        th.axioms.push_back(p.formula());
      } else if (word == "goal") {
        std::string name = p.ident("a goal name");
        p.expect(":");
        if (th.goal(name)) throw ParseError(kw.line, kw.column, "duplicate goal '" + name + "'");
        th.goals.push_back({name, p.formula()});
      } else {
        throw ParseError(kw.line, kw.column, "unknown declaration '" + word + "'");
      }
    } catch (const RuleError& e) {
      throw ParseError(kw.line, kw.column, e.what());
    } catch (const SignatureError& e) {
      throw ParseError(kw.line, kw.column, e.what());
    }
    p.expect(".");
  }
  for (Block& b : blocks) {
    if (th.proof(b.name)) throw ParseError(b.first_line - 1, 1, "duplicate proof '" + b.name + "'");
    th.proofs.push_back({b.name, parse_proof_block(b.body, th.signature, b.first_line)});
  }
  return th;
}

// ---------------------------------------------------------------------------
// Printing back to the concrete syntax

inline void print_proof_block(std::ostream& os, const ProofNode& n, std::size_t indent) {
  os << std::string(indent, ' ') << "rule=" << to_string(n.rule) << " seq=\"" << n.conclusion << '"';
  if (n.witness) os << " witness=" << *n.witness;
  if (n.eigenvariable) os << " eigen=" << *n.eigenvariable;
  if (!n.principal.empty()) {
    os << " principal=";
    for (std::size_t i = 0; i < n.principal.size(); ++i) os << (i ? "," : "") << to_string(n.principal[i]);
  }
  os << '\n';
  for (const ProofNode& p : n.premises) print_proof_block(os, p, indent + 2);
}

inline std::string print_theory(const TheoryFile& th) {
  std::ostringstream os;
  for (const auto& [f, n] : th.signature.functions()) os << "sig " << f << '/' << n << ".\n";
  for (const auto& [p, n] : th.signature.predicates())
    if (p != kEquality) os << "pred " << p << '/' << n << ".\n";
  for (const TermRule& r : th.rules.term_rules) os << "rule " << r.lhs << " -> " << r.rhs << ".\n";
  for (const PropRule& r : th.rules.prop_rules) os << "prule " << r.lhs << " -> " << r.rhs << ".\n";
  for (const Formula& a : th.axioms) os << "axiom " << a << ".\n";
  for (const Goal& g : th.goals) os << "goal " << g.name << ": " << g.formula << ".\n";
  for (const NamedProof& p : th.proofs) {
    os << "proof " << p.name << ":\n";
    print_proof_block(os, p.proof, 2);
  }
  return os.str();
}

inline bool same_proof(const ProofNode& a, const ProofNode& b) {
  if (a.rule != b.rule || !(a.conclusion == b.conclusion) || a.witness != b.witness ||
      a.eigenvariable != b.eigenvariable || a.principal != b.principal ||
      a.premises.size() != b.premises.size())
    return false;
  for (std::size_t i = 0; i < a.premises.size(); ++i)
    if (!same_proof(a.premises[i], b.premises[i])) return false;
  return true;
}

inline bool same_theory(const TheoryFile& a, const TheoryFile& b) {
  if (!(a.signature == b.signature) || !(a.rules == b.rules) || a.axioms != b.axioms ||
      a.goals != b.goals || a.proofs.size() != b.proofs.size())
    return false;
  for (std::size_t i = 0; i < a.proofs.size(); ++i)
    if (a.proofs[i].name != b.proofs[i].name || !same_proof(a.proofs[i].proof, b.proofs[i].proof))
      return false;
  return true;
}

}  // namespace modulo
