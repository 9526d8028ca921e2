#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nc/csv.hpp"
#include "nc/instance.hpp"
#include "nc/report.hpp"

namespace nc {

enum class Role {
  SubjectDoing,
  SubjectState,
  Object,
  Sender,
  Receiver,
  Helper,
  Opponent,
};

inline constexpr std::string_view kRoleNames[] = {
    "SubjectDoing", "SubjectState", "Object", "Sender", "Receiver", "Helper", "Opponent"};

inline std::string_view role_name(Role r) { return kRoleNames[static_cast<int>(r)]; }

inline std::optional<Role> parse_role(std::string_view name) {
  for (int i = 0; i < 7; ++i)
    if (kRoleNames[i] == name) return static_cast<Role>(i);
  return std::nullopt;
}

/// A discourse entity indexed by its actantial role. Identity is the pair:
/// Hare_SubjectDoing and Hare_SubjectState are distinct actants.
struct RoleIndexedActant {
  std::string entity;
  Role role;

  auto operator<=>(const RoleIndexedActant&) const = default;

  std::string id() const { return entity + "_" + std::string(role_name(role)); }

  /// Parses `name_Role`, splitting at the last underscore. Entity names may
  /// contain spaces ("race win") but not underscores.
  static RoleIndexedActant parse(const std::string& token) {
    std::string t = apply_spelling_aliases(csv::trim(token));
    size_t split = t.rfind('_');
    if (split == std::string::npos || split == 0)
      throw error("unparseable actant id '" + token + "' (expected name_Role)");
    auto role = parse_role(std::string_view(t).substr(split + 1));
    if (!role) throw error("unknown role '" + t.substr(split + 1) + "' in '" + token + "'");
    return {t.substr(0, split), *role};
  }
};

enum class Junction { Conjunction, Disjunction };

inline std::string junction_symbol(Junction j, bool ascii = false) {
  if (ascii) return j == Junction::Conjunction ? "cap" : "cup";
  return j == Junction::Conjunction ? "∩" : "∪";
}

inline std::optional<Junction> parse_junction(const std::string& cell) {
  if (cell == "cap" || cell == "∩") return Junction::Conjunction;
  if (cell == "cup" || cell == "∪") return Junction::Disjunction;
  return std::nullopt;
}

/// One row of the NP table in canonical form [S1, S2, X1..Xk].
struct NarrativeProgram {
  std::string id;
  std::string source;  // opaque: "is discoursivization of"
  Junction junction = Junction::Conjunction;
  std::optional<std::string> depends_on;
  std::vector<RoleIndexedActant> actorializes;

  const RoleIndexedActant& subject_doing() const { return actorializes[0]; }
  const RoleIndexedActant& subject_state() const { return actorializes[1]; }
  size_t participant_count() const { return actorializes.size() - 2; }
};

struct NPCorpus {
  std::vector<NarrativeProgram> programs;  // table order
  std::set<RoleIndexedActant> actants;

  const NarrativeProgram* find(const std::string& id) const {
    for (const auto& p : programs)
      if (p.id == id) return &p;
    return nullptr;
  }

  const NarrativeProgram& require(const std::string& id) const {
    const NarrativeProgram* p = find(id);
    if (!p) throw error("unknown NP id '" + id + "'");
    return *p;
  }
};

/// Reads the role-indexed actant set X off an instance of the one-object
/// schema: every row id of its single table must parse as `name_Role`.
inline std::set<RoleIndexedActant> derive_actants(const Instance& inst) {
  if (inst.schema.vertices.size() != 1)
    throw error("derive_actants: expected a one-vertex schema, got '" + inst.schema.name + "'");
  const Table& table = inst.table(inst.schema.vertices.front().id);
  std::set<RoleIndexedActant> actants;
  for (const auto& row : table.row_ids) actants.insert(RoleIndexedActant::parse(row));
  if (actants.size() != table.row_ids.size())
    throw error("derive_actants: row ids collapse to fewer actants");
  return actants;
}

inline constexpr std::string_view kNpHeader[] = {"ID", "isDiscoursivizationOf", "hasJunctionType",
                                                 "dependsOn", "actorializes"};

/// Parses the NP table CSV, enforcing canonical form, actant membership, and
/// an acyclic dependency relation.
inline NPCorpus parse_np_table(const std::string& csv_text,
                               const std::set<RoleIndexedActant>& actants,
                               const std::string& origin = "np table") {
  NPCorpus corpus;
  corpus.actants = actants;
  auto rows = csv::parse(csv_text, origin);
  if (rows.empty()) throw error(origin + ": missing header");
  if (rows.front().size() != 5)
    throw error(origin + ": header must be ID,isDiscoursivizationOf,hasJunctionType,dependsOn,actorializes");
  for (int i = 0; i < 5; ++i)
    if (rows.front()[i] != kNpHeader[i])
      throw error(origin + ": header column " + std::to_string(i + 1) + " must be '" +
                  std::string(kNpHeader[i]) + "', got '" + rows.front()[i] + "'");

  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    std::string where = origin + " row " + std::to_string(r + 1);
    if (row.size() != 5) throw error(where + ": expected 5 cells");
    NarrativeProgram p;
    p.id = row[0];
    if (p.id.empty()) throw error(where + ": empty NP id");
    if (corpus.find(p.id)) throw error(where + ": duplicate NP id '" + p.id + "'");
    p.source = row[1];
    auto junction = parse_junction(row[2]);
    if (!junction) throw error(where + ": junction must be cap or cup, got '" + row[2] + "'");
    p.junction = *junction;
    if (row[3] != "*") p.depends_on = row[3];

    size_t start = 0;
    const std::string& list = row[4];
    while (start <= list.size()) {
      size_t sep = list.find(';', start);
      std::string token = list.substr(start, sep - start);
      p.actorializes.push_back(RoleIndexedActant::parse(token));
      if (sep == std::string::npos) break;
      start = sep + 1;
    }
    if (p.actorializes.size() < 3)
      throw error(where + ": canonical form needs S1, S2 and at least one participant");
    if (p.actorializes[0].role != Role::SubjectDoing)
      throw error(where + ": canonical form: element 0 must be SubjectDoing, got " +
                  p.actorializes[0].id());
    if (p.actorializes[1].role != Role::SubjectState)
      throw error(where + ": canonical form: element 1 must be SubjectState, got " +
                  p.actorializes[1].id());
    for (const auto& x : p.actorializes)
      if (!actants.count(x)) throw error(where + ": unknown actant '" + x.id() + "'");
    corpus.programs.push_back(std::move(p));
  }

  for (const auto& p : corpus.programs)
    if (p.depends_on && !corpus.find(*p.depends_on))
      throw error(origin + ": " + p.id + " depends on unknown NP '" + *p.depends_on + "'");

  // Maybe gives each program at most one dependency, so cycles are simple
  // chains; walk each one.
  for (const auto& p : corpus.programs) {
    std::vector<std::string> chain{p.id};
    const NarrativeProgram* at = &p;
    while (at->depends_on) {
      at = corpus.find(*at->depends_on);
      for (const auto& seen : chain)
        if (seen == at->id) {
          std::string msg = "dependency cycle: ";
          for (const auto& c : chain) msg += c + " -> ";
          throw error(origin + ": " + msg + at->id);
        }
      chain.push_back(at->id);
    }
  }
  return corpus;
}

/// Topological order: every NP after its dependency, basic NPs in table
/// order. Deterministic by repeated stable scans.
inline std::vector<std::string> dependency_order(const NPCorpus& corpus) {
  std::vector<std::string> order;
  std::set<std::string> placed;
  while (order.size() < corpus.programs.size()) {
    size_t before = order.size();
    for (const auto& p : corpus.programs) {
      if (placed.count(p.id)) continue;
      if (!p.depends_on || placed.count(*p.depends_on)) {
        order.push_back(p.id);
        placed.insert(p.id);
      }
    }
    if (order.size() == before) throw error("dependency_order: corpus has a cycle");
  }
  return order;
}

struct FormulaOptions {
  bool inline_deps = false;  // expand dependency ids into their own formulas
  bool ascii = false;
};

/// Greimas formula notation. Role subscripts are dropped, matching the prose
/// forms: a basic NP is `{S1 -> (S2 J X)}`, a dependent one `{NPdep {...}}`.
inline std::string emit_formula(const NPCorpus& corpus, const std::string& id,
                                FormulaOptions opts = {}) {
  const NarrativeProgram& p = corpus.require(id);
  std::string arrow = opts.ascii ? "->" : "→";
  std::string junction = junction_symbol(p.junction, opts.ascii);
  std::string participants;
  if (p.participant_count() == 1) {
    participants = p.actorializes[2].entity;
  } else {
    participants = "{";
    for (size_t i = 2; i < p.actorializes.size(); ++i)
      participants += (i > 2 ? ", " : "") + p.actorializes[i].entity;
    participants += "}";
  }
  std::string body = "{" + p.subject_doing().entity + " " + arrow + " (" +
                     p.subject_state().entity + " " + junction + " " + participants + ")}";
  if (!p.depends_on) return body;
  std::string dep =
      opts.inline_deps ? emit_formula(corpus, *p.depends_on, opts) : *p.depends_on;
  return "{" + dep + " " + body + "}";
}

/// Canonical CSV for the corpus; parse_np_table of the result is identity.
inline std::string serialize_np_table(const NPCorpus& corpus) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"ID", "isDiscoursivizationOf", "hasJunctionType", "dependsOn", "actorializes"});
  for (const auto& p : corpus.programs) {
    std::string list;
    for (size_t i = 0; i < p.actorializes.size(); ++i)
      list += (i ? ";" : "") + p.actorializes[i].id();
    rows.push_back({p.id, p.source, p.junction == Junction::Conjunction ? "cap" : "cup",
                    p.depends_on ? *p.depends_on : "*", list});
  }
  return csv::write(rows);
}

}  // namespace nc
