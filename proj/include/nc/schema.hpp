#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nc/report.hpp"

namespace nc {

enum class ArrowMonad { None, List, Maybe };

struct VertexDecl {
  std::string id;
  std::string label;  // singular indefinite noun phrase

  bool operator==(const VertexDecl&) const = default;
};

struct ArrowDecl {
  std::string id;
  std::string label;  // verb phrase
  std::string source;
  std::string target;
  ArrowMonad monad = ArrowMonad::None;

  bool operator==(const ArrowDecl&) const = default;
};

/// Both sides are arrow-id sequences in application order: the target of
/// step i must be the source of step i+1.
struct PathEquivalence {
  std::vector<std::string> lhs;
  std::vector<std::string> rhs;

  bool operator==(const PathEquivalence&) const = default;
};

/// A categorical schema: a directed multigraph with labelled vertices and
/// arrows plus declared path equivalences. Immutable after construction.
struct Schema {
  std::string name;
  std::vector<VertexDecl> vertices;
  std::vector<ArrowDecl> arrows;
  std::vector<PathEquivalence> equivalences;

  bool operator==(const Schema&) const = default;

  const VertexDecl* vertex(const std::string& id) const {
    for (const auto& v : vertices)
      if (v.id == id) return &v;
    return nullptr;
  }

  const ArrowDecl* arrow(const std::string& id) const {
    for (const auto& a : arrows)
      if (a.id == id) return &a;
    return nullptr;
  }

  std::vector<const ArrowDecl*> out_arrows(const std::string& vertex_id) const {
    std::vector<const ArrowDecl*> out;
    for (const auto& a : arrows)
      if (a.source == vertex_id) out.push_back(&a);
    return out;
  }
};

/// Source/target of a composable path, or nullopt if some step is unknown or
/// consecutive steps do not line up.
inline std::optional<std::pair<std::string, std::string>> path_endpoints(
    const Schema& s, const std::vector<std::string>& path) {
  if (path.empty()) return std::nullopt;
  const ArrowDecl* first = s.arrow(path.front());
  if (!first) return std::nullopt;
  std::string src = first->source;
  std::string at = first->target;
  for (size_t i = 1; i < path.size(); ++i) {
    const ArrowDecl* a = s.arrow(path[i]);
    if (!a || a->source != at) return std::nullopt;
    at = a->target;
  }
  return std::make_pair(src, at);
}

inline ValidationReport validate_schema(const Schema& s) {
  ValidationReport report;
  std::map<std::string, int> vertex_count, arrow_count;
  for (const auto& v : s.vertices) {
    if (++vertex_count[v.id] == 2)
      report.add(Severity::Error, "vertex " + v.id, "duplicate vertex id");
    if (v.label.empty()) report.add(Severity::Error, "vertex " + v.id, "empty label");
  }
  for (const auto& a : s.arrows) {
    if (++arrow_count[a.id] == 2) report.add(Severity::Error, "arrow " + a.id, "duplicate arrow id");
    if (!vertex_count.count(a.source))
      report.add(Severity::Error, "arrow " + a.id, "unknown source vertex '" + a.source + "'");
    if (!vertex_count.count(a.target))
      report.add(Severity::Error, "arrow " + a.id, "unknown target vertex '" + a.target + "'");
  }
  for (size_t i = 0; i < s.equivalences.size(); ++i) {
    const auto& eq = s.equivalences[i];
    std::string loc = "equivalence #" + std::to_string(i + 1);
    auto check_side = [&](const std::vector<std::string>& path, const char* side)
        -> std::optional<std::pair<std::string, std::string>> {
      if (path.empty()) {
        report.add(Severity::Error, loc, std::string(side) + " path is empty");
        return std::nullopt;
      }
      for (const auto& id : path) {
        if (!s.arrow(id)) {
          report.add(Severity::Error, loc, std::string(side) + " names unknown arrow '" + id + "'");
          return std::nullopt;
        }
      }
      auto ends = path_endpoints(s, path);
      if (!ends)
        report.add(Severity::Error, loc, std::string(side) + " path is not composable");
      return ends;
    };
    auto l = check_side(eq.lhs, "lhs");
    auto r = check_side(eq.rhs, "rhs");
    if (l && r && *l != *r)
      report.add(Severity::Error, loc,
                 "endpoint mismatch: lhs is " + l->first + " -> " + l->second + ", rhs is " +
                     r->first + " -> " + r->second);
  }
  report.sort();
  return report;
}

/// Replaces one vertex by a set of new ones and drops every arrow and
/// equivalence, leaving a discrete schema.
inline Schema refine_to_discrete(const Schema& s, const std::string& drop,
                                 std::vector<VertexDecl> add) {
  if (!s.vertex(drop)) throw error("refine_to_discrete: unknown vertex '" + drop + "'");
  Schema out;
  out.name = s.name + "_refined";
  for (const auto& v : s.vertices)
    if (v.id != drop) out.vertices.push_back(v);
  for (auto& v : add) {
    if (out.vertex(v.id)) throw error("refine_to_discrete: vertex id collision '" + v.id + "'");
    out.vertices.push_back(std::move(v));
  }
  return out;
}

struct CollapseResult {
  Schema schema;                                  // always the one-object schema A_prime
  std::map<std::string, std::string> vertex_map;  // constant map onto its object
};

inline Schema builtin_schema(const std::string& name);

/// Constant-functor collapse: every vertex goes to the unique object `a`.
inline CollapseResult collapse(const Schema& s) {
  CollapseResult out;
  out.schema = builtin_schema("A_prime");
  for (const auto& v : s.vertices) out.vertex_map[v.id] = out.schema.vertices.front().id;
  return out;
}

inline Schema builtin_schema(const std::string& name) {
  if (name == "A") {
    Schema s;
    s.name = "A";
    s.vertices = {{"A", "a sender"},  {"B", "an object"},  {"C", "a receiver"},
                  {"D", "a subject"}, {"E", "a helper"},   {"F", "an opponent"}};
    s.arrows = {{"a1", "contractualizes", "A", "B"},
                {"a2", "inherits", "C", "B"},
                {"a3", "seeks to conjoin with", "D", "B"},
                {"a4", "assists", "E", "D"},
                {"a5", "hinders", "F", "D"},
                {"a6", "assists a conjunction with", "E", "B"},
                {"a7", "hinders a conjunction with", "F", "B"}};
    // Paths in application order: assists, then seeks-to-conjoin.
    s.equivalences = {{{"a4", "a3"}, {"a6"}}, {{"a5", "a3"}, {"a7"}}};
    return s;
  }
  if (name == "A_refined") {
    Schema base = builtin_schema("A");
    return refine_to_discrete(base, "D",
                              {{"S1", "a subject of doing"}, {"S2", "a subject of state"}});
  }
  if (name == "A_prime") {
    Schema s;
    s.name = "A_prime";
    s.vertices = {{"a", "an actant"}};
    return s;
  }
  if (name == "N") {
    Schema s;
    s.name = "N";
    s.vertices = {{"P", "a narrative program"},
                  {"a", "an actant"},
                  {"M", "a mode"},
                  {"S", "a source text"}};
    s.arrows = {{"actorializes", "actorializes", "P", "a", ArrowMonad::List},
                {"hasJunctionType", "has junction type", "P", "M"},
                {"isDiscoursivizationOf", "is discoursivization of", "P", "S"},
                {"dependsOn", "depends on", "P", "P", ArrowMonad::Maybe}};
    return s;
  }
  throw error("unknown builtin schema '" + name + "' (expected A, A_refined, A_prime, N)");
}

// --- file format ------------------------------------------------------

inline nlohmann::ordered_json schema_to_json(const Schema& s) {
  nlohmann::ordered_json j;
  j["name"] = s.name;
  j["vertices"] = nlohmann::ordered_json::array();
  for (const auto& v : s.vertices) j["vertices"].push_back({{"id", v.id}, {"label", v.label}});
  j["arrows"] = nlohmann::ordered_json::array();
  for (const auto& a : s.arrows) {
    nlohmann::ordered_json ja{
        {"id", a.id}, {"label", a.label}, {"source", a.source}, {"target", a.target}};
    if (a.monad == ArrowMonad::List) ja["monad"] = "list";
    if (a.monad == ArrowMonad::Maybe) ja["monad"] = "maybe";
    j["arrows"].push_back(std::move(ja));
  }
  j["equivalences"] = nlohmann::ordered_json::array();
  for (const auto& eq : s.equivalences)
    j["equivalences"].push_back({{"lhs", eq.lhs}, {"rhs", eq.rhs}});
  return j;
}

inline std::string serialize_schema(const Schema& s) { return schema_to_json(s).dump(2) + "\n"; }

inline Schema schema_from_json(const nlohmann::json& j, const std::string& origin = "<schema>") {
  try {
    Schema s;
    s.name = j.at("name").get<std::string>();
    for (const auto& jv : j.at("vertices"))
      s.vertices.push_back({jv.at("id").get<std::string>(), jv.at("label").get<std::string>()});
    for (const auto& ja : j.value("arrows", nlohmann::json::array())) {
      ArrowDecl a{ja.at("id").get<std::string>(), ja.at("label").get<std::string>(),
                  ja.at("source").get<std::string>(), ja.at("target").get<std::string>()};
      std::string m = ja.value("monad", "");
      if (m == "list")
        a.monad = ArrowMonad::List;
      else if (m == "maybe")
        a.monad = ArrowMonad::Maybe;
      else if (!m.empty())
        throw error(origin + ": arrow " + a.id + ": unknown monad '" + m + "'");
      s.arrows.push_back(std::move(a));
    }
    for (const auto& je : j.value("equivalences", nlohmann::json::array()))
      s.equivalences.push_back({je.at("lhs").get<std::vector<std::string>>(),
                                je.at("rhs").get<std::vector<std::string>>()});
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw error(origin + ": " + e.what());
  }
}

inline Schema parse_schema(const std::string& text, const std::string& origin = "<schema>") {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw error(origin + ": " + e.what());
  }
  return schema_from_json(j, origin);
}

}  // namespace nc
