#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "nc/instance.hpp"
#include "nc/narrative.hpp"
#include "nc/plan.hpp"
#include "nc/schema.hpp"

namespace nc::io {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error(path.string() + ": cannot open for writing");
  out << content;
}

inline Schema load_schema(const std::filesystem::path& path) {
  return parse_schema(read_file(path), path.string());
}

/// Loads `<dir>/<vertex>.csv` for every schema vertex; absent files become
/// empty tables.
inline Instance load_instance_dir(const Schema& schema, const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw error(dir.string() + ": not a directory");
  std::map<std::string, std::string> files;
  for (const auto& v : schema.vertices) {
    auto path = dir / (v.id + ".csv");
    if (std::filesystem::exists(path)) files[v.id] = read_file(path);
  }
  return load_instance(schema, files);
}

/// The actant table is the single-table instance of the one-object schema.
inline std::set<RoleIndexedActant> load_actants(const std::filesystem::path& csv_path) {
  Schema a_prime = builtin_schema("A_prime");
  Instance inst = load_instance(a_prime, {{"a", read_file(csv_path)}});
  return derive_actants(inst);
}

inline NPCorpus load_corpus(const std::filesystem::path& np_csv,
                            const std::filesystem::path& actants_csv) {
  return parse_np_table(read_file(np_csv), load_actants(actants_csv), np_csv.string());
}

inline TrajectoryPlan load_plan(const std::filesystem::path& path) {
  return parse_plan(read_file(path), path.string());
}

}  // namespace nc::io
