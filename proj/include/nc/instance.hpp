#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "nc/csv.hpp"
#include "nc/report.hpp"
#include "nc/schema.hpp"

namespace nc {

/// The source table spells "perseverance" inconsistently; loading normalizes
/// to the majority spelling so that table rows and formula text agree.
inline std::string apply_spelling_aliases(const std::string& token) {
  static const std::map<std::string, std::string> aliases = {
      {"perserverence", "perseverance"},
      {"perserverance", "perseverance"},
  };
  size_t split = token.rfind('_');
  std::string name = split == std::string::npos ? token : token.substr(0, split);
  auto it = aliases.find(name);
  if (it == aliases.end()) return token;
  return split == std::string::npos ? it->second : it->second + token.substr(split);
}

/// One table per schema vertex: an ordered ID column plus one foreign-key
/// column per out-arrow. Maybe absence is stored as an empty value list and
/// written back as `*`; List cells hold zero or more values.
struct Table {
  std::string vertex;
  std::vector<std::string> row_ids;
  std::map<std::string, std::map<std::string, std::vector<std::string>>> cells;  // arrow -> row -> values

  const std::vector<std::string>& cell(const std::string& arrow, const std::string& row) const {
    auto col = cells.find(arrow);
    if (col == cells.end()) throw error("table " + vertex + ": no column '" + arrow + "'");
    auto c = col->second.find(row);
    if (c == col->second.end()) throw error("table " + vertex + ": no row '" + row + "'");
    return c->second;
  }

  bool has_row(const std::string& row) const {
    for (const auto& id : row_ids)
      if (id == row) return true;
    return false;
  }
};

struct Instance {
  Schema schema;
  std::map<std::string, Table> tables;  // keyed by vertex id

  const Table& table(const std::string& vertex) const {
    auto it = tables.find(vertex);
    if (it == tables.end()) throw error("no table for vertex '" + vertex + "'");
    return it->second;
  }
};

namespace detail {

inline std::vector<std::string> parse_cell(const std::string& raw, ArrowMonad monad,
                                           const std::string& where) {
  auto normalized = [&](std::string v) { return apply_spelling_aliases(csv::trim(v)); };
  switch (monad) {
    case ArrowMonad::None:
      if (raw.empty() || raw == "*" || raw.find(';') != std::string::npos)
        throw error(where + ": malformed cell '" + raw + "' (expected a single row id)");
      return {normalized(raw)};
    case ArrowMonad::Maybe:
      if (raw == "*") return {};
      if (raw.empty() || raw.find(';') != std::string::npos)
        throw error(where + ": malformed cell '" + raw + "' (expected a row id or *)");
      return {normalized(raw)};
    case ArrowMonad::List: {
      std::vector<std::string> values;
      if (csv::trim(raw).empty()) return values;
      size_t start = 0;
      while (true) {
        size_t sep = raw.find(';', start);
        std::string piece = csv::trim(raw.substr(start, sep - start));
        if (piece.empty()) throw error(where + ": malformed list cell '" + raw + "'");
        values.push_back(normalized(piece));
        if (sep == std::string::npos) break;
        start = sep + 1;
      }
      return values;
    }
  }
  throw error(where + ": unreachable");
}

}  // namespace detail

/// Parses one CSV per vertex (header `ID,<arrow-id>,...`) and validates the
/// Table invariants plus referential integrity. Vertices absent from `files`
/// get empty tables.
inline Instance load_instance(const Schema& schema,
                              const std::map<std::string, std::string>& files) {
  Instance inst;
  inst.schema = schema;
  for (const auto& [vertex, _] : files)
    if (!schema.vertex(vertex)) throw error("table file for unknown vertex '" + vertex + "'");

  for (const auto& v : schema.vertices) {
    Table table;
    table.vertex = v.id;
    auto out = schema.out_arrows(v.id);
    for (const auto* a : out) table.cells[a->id];  // every column exists, possibly empty

    auto it = files.find(v.id);
    if (it != files.end() && !csv::trim(it->second).empty()) {
      auto rows = csv::parse(it->second, "table " + v.id);
      const auto& header = rows.front();
      if (header.empty() || header[0] != "ID")
        throw error("table " + v.id + ": header must start with ID");
      std::vector<const ArrowDecl*> columns;
      std::set<std::string> seen;
      for (size_t c = 1; c < header.size(); ++c) {
        const ArrowDecl* a = schema.arrow(header[c]);
        if (!a || a->source != v.id)
          throw error("table " + v.id + ": extra column '" + header[c] + "'");
        if (!seen.insert(a->id).second)
          throw error("table " + v.id + ": duplicate column '" + a->id + "'");
        columns.push_back(a);
      }
      for (const auto* a : out)
        if (!seen.count(a->id)) throw error("table " + v.id + ": missing column '" + a->id + "'");

      for (size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        std::string where = "table " + v.id + " row " + std::to_string(r + 1);
        if (row.size() != header.size())
          throw error(where + ": expected " + std::to_string(header.size()) + " cells, got " +
                      std::to_string(row.size()));
        std::string id = apply_spelling_aliases(row[0]);
        if (id.empty()) throw error(where + ": empty row id");
        if (table.has_row(id)) throw error(where + ": duplicate row id '" + id + "'");
        table.row_ids.push_back(id);
        for (size_t c = 0; c < columns.size(); ++c)
          table.cells[columns[c]->id][id] =
              detail::parse_cell(row[c + 1], columns[c]->monad, where);
      }
    }
    inst.tables[v.id] = std::move(table);
  }

  // Referential integrity: every foreign key names a row of the target table.
  for (const auto& a : schema.arrows) {
    const Table& src = inst.table(a.source);
    const Table& dst = inst.table(a.target);
    for (const auto& row : src.row_ids)
      for (const auto& value : src.cell(a.id, row))
        if (!dst.has_row(value))
          throw error("table " + a.source + " row '" + row + "': column " + a.id +
                      " references missing row '" + value + "' of table " + a.target);
  }
  return inst;
}

/// Chases plain foreign-key columns along `path` (application order) starting
/// from `row`. The empty path is the identity.
inline std::string eval_path(const Instance& inst, const std::vector<std::string>& path,
                             const std::string& row) {
  if (path.empty()) return row;
  auto ends = path_endpoints(inst.schema, path);
  if (!ends) throw error("eval_path: path is not composable");
  for (const auto& id : path) {
    const ArrowDecl* a = inst.schema.arrow(id);
    if (a->monad != ArrowMonad::None)
      throw error("eval_path: monadic arrow '" + id + "' on path");
  }
  std::string at = row;
  std::string vertex = ends->first;
  if (!inst.table(vertex).has_row(at))
    throw error("eval_path: no row '" + at + "' in table " + vertex);
  for (const auto& id : path) {
    const ArrowDecl* a = inst.schema.arrow(id);
    const auto& values = inst.table(vertex).cell(id, at);
    if (values.size() != 1 || !inst.table(a->target).has_row(values[0]))
      throw error("eval_path: dangling key at " + vertex + "." + at + "." + id);
    at = values[0];
    vertex = a->target;
  }
  return at;
}

/// Checks every declared path equivalence pointwise on every row of its
/// source table. Equivalences touching monadic arrows are skipped (none are
/// declared in the built-in schemas).
inline ValidationReport check_functoriality(const Instance& inst) {
  ValidationReport report;
  auto path_str = [](const std::vector<std::string>& p) {
    std::string s;
    for (size_t i = 0; i < p.size(); ++i) s += (i ? ";" : "") + p[i];
    return s;
  };
  for (const auto& eq : inst.schema.equivalences) {
    auto ends = path_endpoints(inst.schema, eq.lhs);
    if (!ends) continue;  // schema-level problem, reported by validate_schema
    bool monadic = false;
    for (const auto& side : {eq.lhs, eq.rhs})
      for (const auto& id : side)
        if (inst.schema.arrow(id) && inst.schema.arrow(id)->monad != ArrowMonad::None)
          monadic = true;
    if (monadic) continue;
    const Table& src = inst.table(ends->first);
    for (const auto& row : src.row_ids) {
      std::string lhs, rhs;
      try {
        lhs = eval_path(inst, eq.lhs, row);
        rhs = eval_path(inst, eq.rhs, row);
      } catch (const error& e) {
        report.add(Severity::Error, ends->first + "." + row, e.what());
        continue;
      }
      if (lhs != rhs)
        report.add(Severity::Error, ends->first + "." + row,
                   path_str(eq.lhs) + " gives '" + lhs + "' but " + path_str(eq.rhs) +
                       " gives '" + rhs + "'");
    }
  }
  report.sort();
  return report;
}

/// Canonical CSV per vertex: ID column, then out-arrows in schema order, rows
/// in stored order. load_instance of the result reproduces the instance.
inline std::map<std::string, std::string> serialize_instance(const Instance& inst) {
  std::map<std::string, std::string> out;
  for (const auto& v : inst.schema.vertices) {
    const Table& table = inst.table(v.id);
    auto arrows = inst.schema.out_arrows(v.id);
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"ID"};
    for (const auto* a : arrows) header.push_back(a->id);
    rows.push_back(header);
    for (const auto& id : table.row_ids) {
      std::vector<std::string> row{id};
      for (const auto* a : arrows) {
        const auto& values = table.cell(a->id, id);
        if (a->monad == ArrowMonad::Maybe && values.empty()) {
          row.push_back("*");
        } else {
          std::string joined;
          for (size_t i = 0; i < values.size(); ++i) joined += (i ? ";" : "") + values[i];
          row.push_back(joined);
        }
      }
      rows.push_back(std::move(row));
    }
    out[v.id] = csv::write(rows);
  }
  return out;
}

}  // namespace nc
