#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "conservativity.hpp"
#include "decide.hpp"
#include "hilbert.hpp"
#include "syntax.hpp"

namespace paramodal {

using Json = nlohmann::ordered_json;

// "designated" refers to the last formula covered, the query's target.
inline Json to_json(const PartialValuation& v) {
  Json assignment = Json::object();
  for (std::size_t i = 0; i < v.formulas.size(); ++i) assignment[print(v.formulas[i])] = v.domain.name(v.values[i]);
  bool designated = !v.values.empty() && v.domain.is_designated(v.values.back());
  return {{"logic", v.logic}, {"assignment", assignment}, {"designated", designated}};
}

inline Json to_json(const std::optional<PartialValuation>& v) { return v ? to_json(*v) : Json(nullptr); }

inline Json to_json(const Verdict& v) {
  return {{"status", std::string(to_string(v.status))}, {"model", to_json(v.model)}, {"countermodel", to_json(v.countermodel)}};
}

// One JSON object per line: a header with the columns, then one per row.
inline std::string to_json_lines(const TruthTable& t) {
  Json columns = Json::array();
  for (const auto& f : t.formulas) columns.push_back(print(f));
  std::string out = Json{{"logic", t.logic}, {"columns", columns}}.dump() + "\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    Json cells = Json::array();
    for (auto x : t.rows[r]) cells.push_back(t.domain.name(x));
    out += Json{{"row", cells}, {"designated", t.designated(r)}}.dump() + "\n";
  }
  return out;
}

inline Json to_json(const ProofCheck& c) {
  Json j{{"ok", c.ok}};
  if (!c.ok) {
    j["line"] = c.line;
    j["reason"] = c.reason;
  }
  return j;
}

inline Json to_json(const SweepReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures)
    failures.push_back({{"schema", f.schema}, {"instance", print(f.instance)}, {"countermodel", to_json(f.countermodel)}});
  return {{"instances", r.instances}, {"failures", failures}};
}

inline Json to_json(const Mismatch& m) {
  Json premises = Json::array();
  for (const auto& p : m.premises) premises.push_back(print(p));
  Json j{{"formula", print(m.formula)},
         {"component_verdict", m.component_verdict ? "valid" : "invalid"},
         {"combined_verdict", m.combined_verdict ? "valid" : "invalid"}};
  if (!m.premises.empty()) j["premises"] = premises;
  if (m.witness) j["witness"] = to_json(*m.witness);
  return j;
}

inline Json to_json(const ConservativityReport& r) {
  Json mismatches = Json::array();
  for (const auto& m : r.mismatches) mismatches.push_back(to_json(m));
  return {{"component", r.component.tag()},
          {"combined", r.combined.tag()},
          {"sampled", r.sampled},
          {"entailments", r.entailments},
          {"exhaustive", r.exhaustive},
          {"held", r.held},
          {"mismatches", mismatches}};
}

}  // namespace paramodal
