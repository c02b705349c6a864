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

// Structured (JSON) forms of traces, reports and proof objects. Needs
// nlohmann/json on the include path; the rest of the library does not.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "modulo/parser.hpp"
#include "modulo/prover.hpp"

namespace modulo {

using json = nlohmann::json;

inline json to_json(const Substitution& s) {
  json j = json::object();
  for (const auto& [v, t] : s) j[v] = to_string(t);
  return j;
}

inline json to_json(const TraceStep& s) {
  json j{{"id", s.id}, {"clause", to_string(s.clause)}, {"inference", s.inference},
         {"parents", s.parents}, {"substitution", to_json(s.substitution)}};
  if (!s.rule.empty()) j["rule"] = s.rule;
  return j;
}

inline json to_json(const DerivationTrace& t) {
  json j = json::array();
  for (const TraceStep& s : t.steps) j.push_back(to_json(s));
  return j;
}

inline json to_json(const CriticalPair& cp) {
  json j{{"outer_rule", cp.outer_rule}, {"inner_rule", cp.inner_rule}, {"position", cp.position},
         {"peak", to_string(cp.peak)}, {"left", to_string(cp.left)}, {"right", to_string(cp.right)},
         {"status", to_string(cp.status)}};
  if (cp.left_normal) j["left_normal"] = to_string(*cp.left_normal);
  if (cp.right_normal) j["right_normal"] = to_string(*cp.right_normal);
  return j;
}

inline json to_json(const CriticalPairReport& r) {
  json pairs = json::array();
  for (const CriticalPair& cp : r.pairs) pairs.push_back(to_json(cp));
  return json{{"locally_confluent", r.locally_confluent()}, {"has_unknown", r.has_unknown()},
              {"pairs", pairs}};
}

inline json to_json(const ProofNode& n) {
  json j{{"rule", to_string(n.rule)}, {"seq", to_string(n.conclusion)}};
  if (n.witness) j["witness"] = to_string(*n.witness);
  if (n.eigenvariable) j["eigen"] = *n.eigenvariable;
  if (!n.principal.empty()) {
    std::string p;
    for (std::size_t i = 0; i < n.principal.size(); ++i) p += (i ? "," : "") + to_string(n.principal[i]);
    j["principal"] = p;
  }
  json prem = json::array();
  for (const ProofNode& q : n.premises) prem.push_back(to_json(q));
  j["premises"] = prem;
  return j;
}

/// Reads the structured proof form: {"rule", "seq", "witness"?, "eigen"?,
/// "principal"? (string "L0,R0" or array), "premises"?: [...]}.
inline ProofNode proof_from_json(const json& j, Signature& sig) {
  if (!j.is_object()) throw ParseError(1, 1, "proof node must be a JSON object");
  std::vector<std::pair<std::string, std::string>> fields;
  for (const auto& [k, v] : j.items()) {
    if (k == "premises") continue;
    if (k == "principal" && v.is_array()) {
      std::string joined;
      for (const json& e : v) joined += (joined.empty() ? "" : ",") + e.get<std::string>();
      fields.emplace_back(k, joined);
    } else if (v.is_string()) {
      fields.emplace_back(k, v.get<std::string>());
    } else {
      throw ParseError(1, 1, "proof field '" + k + "' must be a string");
    }
  }
  ProofNode n = make_proof_node(fields, sig);
  if (j.contains("premises"))
    for (const json& p : j.at("premises")) n.premises.push_back(proof_from_json(p, sig));
  return n;
}

inline json to_json(const ProofCheck& c) {
  if (c.valid) return json{{"valid", true}};
  return json{{"valid", false}, {"path", c.path}, {"reason", to_string(c.reason)}, {"detail", c.detail}};
}

inline json to_json(const SaturationResult& r) {
  json j{{"verdict", to_string(r.verdict)}, {"iterations", r.iterations}, {"trace", to_json(r.trace)}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (r.verdict == Verdict::Refuted) j["refutation"] = to_json(r.refutation());
  if (r.verdict == Verdict::Saturated) {
    json cs = json::array();
    for (const Clause& c : r.final_clauses) cs.push_back(to_string(c));
    j["final_clauses"] = cs;
  }
  return j;
}

}  // namespace modulo
