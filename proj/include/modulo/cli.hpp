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

// Command-line front end. Exit codes:
//   0  goal established, proof valid, or query answered positively
//   1  not established (Saturated, Invalid, cut-bearing under --require-cut-free)
//   2  a limit was exceeded
//   3  input error

#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "modulo/json_io.hpp"

namespace modulo {

enum ExitCode : int { kEstablished = 0, kNotEstablished = 1, kLimitExceeded = 2, kInputError = 3 };

inline int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Refuted: return kEstablished;
    case Verdict::Saturated: return kNotEstablished;
    case Verdict::LimitExceeded: return kLimitExceeded;
  }
  return kInputError;
}

inline int exit_code(const ProofCheck& c, bool cut_bearing, bool require_cut_free) {
  if (!c.valid) return kNotEstablished;
  return cut_bearing && require_cut_free ? kNotEstablished : kEstablished;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

inline std::string position_string(const Position& p) {
  if (p.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "." : "") + std::to_string(p[i]);
  return out;
}

inline void print_sequence(std::ostream& out, const Normalization& n, const char* indent) {
  out << indent << n.start << '\n';
  for (const Reduct& r : n.steps)
    out << indent << "-> " << r.term << "  [" << r.rule << " at " << position_string(r.position) << "]\n";
}

inline json sequence_json(const Normalization& n) {
  json steps = json::array();
  for (const Reduct& r : n.steps)
    steps.push_back({{"term", to_string(r.term)}, {"rule", r.rule}, {"position", r.position}});
  return json{{"start", to_string(n.start)}, {"normal_form", to_string(n.normal_form)}, {"steps", steps}};
}

}  // namespace detail

/// Runs the command line; all output goes to `out` and `err`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rewriting, resolution modulo and sequent-proof checking on theory files", "modulo"};
  app.require_subcommand(1);
  std::string emit = "text";
  app.add_option("--emit", emit, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::string file, t_text, u_text, goal_name, proof_name, proof_file, mode_text = "resolution";
  std::size_t fuel = kDefaultFuel, depth = kDefaultNarrowingDepth, equiv_depth = kDefaultEquivDepth;
  SaturationLimits limits;
  bool axiomatize = false, require_cut_free = false, oriented = false, no_subsumption = false,
       no_tautology = false, full_trace = false;

  auto* normalize_cmd = app.add_subcommand("normalize", "Normal form of a term with its rewriting sequence");
  normalize_cmd->add_option("file", file)->required();
  normalize_cmd->add_option("term", t_text)->required();
  normalize_cmd->add_option("--fuel", fuel);

  auto* equiv_cmd = app.add_subcommand("equiv", "Decide t == u by joining normal forms");
  equiv_cmd->add_option("file", file)->required();
  equiv_cmd->add_option("t", t_text)->required();
  equiv_cmd->add_option("u", u_text)->required();
  equiv_cmd->add_option("--fuel", fuel);

  auto* confluence_cmd = app.add_subcommand("confluence", "Critical pairs and local confluence");
  confluence_cmd->add_option("file", file)->required();
  confluence_cmd->add_option("--fuel", fuel, "Steps per critical pair")->default_val(kDefaultPairFuel);

  auto* unify_cmd = app.add_subcommand("unify", "Unifiers modulo the term rules, by narrowing");
  unify_cmd->add_option("file", file)->required();
  unify_cmd->add_option("t", t_text)->required();
  unify_cmd->add_option("u", u_text)->required();
  unify_cmd->add_option("--depth", depth);
  unify_cmd->add_option("--fuel", fuel);

  auto* clausify_cmd = app.add_subcommand("clausify", "Clausal form of the axioms and the negated goal");
  clausify_cmd->add_option("file", file)->required();
  clausify_cmd->add_option("--goal", goal_name);

  auto* prove_cmd = app.add_subcommand("prove", "Refute the axioms and the negated goal by saturation");
  prove_cmd->add_option("file", file)->required();
  prove_cmd->add_option("--goal", goal_name);
  prove_cmd->add_option("--mode", mode_text)
      ->check(CLI::IsMember({"resolution", "paramod", "eqres", "modulo"}));
  prove_cmd->add_option("--max-clauses", limits.max_clauses);
  prove_cmd->add_option("--max-iterations", limits.max_iterations);
  prove_cmd->add_option("--depth", limits.narrowing_depth, "Narrowing depth for unification");
  prove_cmd->add_option("--fuel", limits.fuel);
  prove_cmd->add_flag("--axiomatize", axiomatize, "Turn the rules into axioms and use plain resolution");
  prove_cmd->add_flag("--oriented", oriented, "Paramodulation mode: narrow with term rules instead of equations");
  prove_cmd->add_flag("--no-subsumption", no_subsumption);
  prove_cmd->add_flag("--no-tautology-deletion", no_tautology);
  prove_cmd->add_flag("--full-trace", full_trace, "Print every kept clause, not only the refutation");

  auto* check_cmd = app.add_subcommand("check", "Check a sequent proof modulo the rules");
  check_cmd->add_option("file", file)->required();
  auto* proof_opt = check_cmd->add_option("--proof", proof_name, "Named proof in the theory file");
  check_cmd->add_option("--proof-file", proof_file, "Proof in the structured JSON form")->excludes(proof_opt);
  check_cmd->add_flag("--require-cut-free", require_cut_free);
  check_cmd->add_option("--fuel", fuel);
  check_cmd->add_option("--depth", equiv_depth, "Search depth for equivalence modulo proposition rules");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : kInputError;
  }
  const bool as_json = emit == "json";

  try {
    TheoryFile th = parse_theory(read_file(file));

    if (normalize_cmd->parsed()) {
      Term t = parse_term(t_text, th.signature);
      try {
        Normalization n = normalize_traced(th.rules, t, fuel);
        if (as_json) {
          out << detail::sequence_json(n).dump(2) << '\n';
        } else {
          out << n.normal_form << '\n';
          detail::print_sequence(out, n, "  ");
        }
        return kEstablished;
      } catch (const FuelExhausted& e) {
        err << e.what() << '\n';
        return kLimitExceeded;
      }
    }

    if (equiv_cmd->parsed()) {
      Term t = parse_term(t_text, th.signature);
      Term u = parse_term(u_text, th.signature);
      try {
        JoinResult j = join(th.rules, t, u, fuel);
        if (j.warning) err << "warning: " << *j.warning << '\n';
        if (as_json) {
          json r{{"equivalent", j.joinable}, {"left", detail::sequence_json(j.left)},
                 {"right", detail::sequence_json(j.right)}};
          if (j.warning) r["warning"] = *j.warning;
          out << r.dump(2) << '\n';
        } else {
          out << (j.joinable ? "true" : "false") << '\n';
          if (j.joinable) {
            detail::print_sequence(out, j.left, "  ");
            detail::print_sequence(out, j.right, "  ");
          }
        }
        return j.joinable ? kEstablished : kNotEstablished;
      } catch (const FuelExhausted& e) {
        err << e.what() << '\n';
        return kLimitExceeded;
      }
    }

    if (confluence_cmd->parsed()) {
      CriticalPairReport r = critical_pairs(th.rules, fuel);
      if (as_json) {
        out << to_json(r).dump(2) << '\n';
      } else {
        for (const CriticalPair& cp : r.pairs) {
          out << cp.outer_rule << '/' << cp.inner_rule << " at " << detail::position_string(cp.position) << ": "
              << cp.peak << "  =>  (" << cp.left << ", " << cp.right << ")  " << to_string(cp.status);
          if (cp.status == PairStatus::Joinable) out << " at " << *cp.left_normal;
          out << '\n';
        }
        out << (r.locally_confluent() ? "locally confluent" : r.has_unknown() ? "unknown" : "not locally confluent")
            << '\n';
      }
      if (r.locally_confluent()) return kEstablished;
      return r.has_unknown() && r.non_joinable().empty() ? kLimitExceeded : kNotEstablished;
    }

    if (unify_cmd->parsed()) {
      Term t = parse_term(t_text, th.signature);
      Term u = parse_term(u_text, th.signature);
      EUnifyResult r = e_unify(th.rules, t, u, NarrowingOptions{depth, fuel});
      if (as_json) {
        json us = json::array();
        for (const Substitution& s : r.unifiers) us.push_back(to_json(s));
        out << json{{"unifiers", us}, {"depth_exhausted", r.depth_exhausted}}.dump(2) << '\n';
      } else {
        for (const Substitution& s : r.unifiers) out << s << '\n';
        if (r.unifiers.empty()) out << "no unifier found\n";
        if (r.depth_exhausted) out << "DepthExhausted\n";
      }
      if (!r.unifiers.empty()) return kEstablished;
      return r.depth_exhausted ? kLimitExceeded : kNotEstablished;
    }

    std::vector<Formula> succedent;
    if (!goal_name.empty()) {
      const Goal* g = th.goal(goal_name);
      if (!g) throw Error("no goal named '" + goal_name + "'");
      succedent.push_back(g->formula);
    }

    if (clausify_cmd->parsed()) {
      ClausalProblem p = clausal_form(th.axioms, succedent);
      if (as_json) {
        json cs = json::array();
        for (const SourcedClause& c : p.clauses)
          cs.push_back({{"clause", to_string(c.clause)},
                        {"source", c.source == ClauseSource::Axiom ? "axiom" : "negated_goal"}});
        out << cs.dump(2) << '\n';
      } else {
        for (const SourcedClause& c : p.clauses) out << c.clause << '\n';
      }
      return kEstablished;
    }

    if (prove_cmd->parsed()) {
      ProverOptions opt;
      opt.mode = *parse_mode(mode_text);
      opt.limits = limits;
      opt.oriented = oriented;
      opt.subsumption = !no_subsumption;
      opt.tautology_deletion = !no_tautology;
      std::vector<Formula> axioms = th.axioms;
      RewriteSystem rs = th.rules;
      if (axiomatize) {
        for (const Formula& f : rules_to_axioms(rs, th.signature)) axioms.push_back(f);
        rs = {};
        opt.mode = ProverMode::Resolution;
      }
      ClausalProblem p = clausal_form(axioms, succedent);
      SaturationResult r = saturate(p.clauses, rs, opt);
      if (as_json) {
        out << to_json(r).dump(2) << '\n';
      } else {
        out << to_string(r.verdict);
        if (!r.reason.empty()) out << " (" << r.reason << ")";
        out << '\n';
        if (r.verdict == Verdict::Refuted)
          out << format_trace(full_trace ? r.trace : r.refutation());
        else if (full_trace)
          out << format_trace(r.trace);
        else if (r.verdict == Verdict::Saturated)
          for (const Clause& c : r.final_clauses) out << "  " << c << '\n';
      }
      return exit_code(r.verdict);
    }

    if (check_cmd->parsed()) {
      ProofNode proof;
      if (!proof_file.empty()) {
        json j;
        try {
          j = json::parse(read_file(proof_file));
        } catch (const json::parse_error& e) {
          throw ParseError(1, 1, e.what());
        }
        proof = proof_from_json(j, th.signature);
      } else {
        if (proof_name.empty()) throw Error("check needs --proof or --proof-file");
        const NamedProof* np = th.proof(proof_name);
        if (!np) throw Error("no proof named '" + proof_name + "'");
        proof = np->proof;
      }
      FormulaEquivOptions eo;
      eo.fuel = fuel;
      eo.depth = equiv_depth;
      ProofCheck c = check_proof(proof, th.rules, eo);
      const bool cut = uses_cut(proof);
      if (as_json) {
        json j = to_json(c);
        j["uses_cut"] = cut;
        out << j.dump(2) << '\n';
      } else if (!c.valid) {
        out << "Invalid at " << to_string(c.path) << ": " << to_string(c.reason) << ": " << c.detail << '\n';
      } else {
        out << (cut && require_cut_free ? "Valid-but-cut-bearing" : "Valid") << '\n';
      }
      return exit_code(c, cut, require_cut_free);
    }
  } catch (const ParseError& e) {
    err << file << ':' << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace modulo
