#pragma once

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nc {

/// Thrown for malformed inputs: bad files, type mismatches, precondition
/// violations. Well-formedness problems in otherwise loadable data (schema
/// or instance findings) go into a ValidationReport instead.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Severity { Error, Warning };

struct Finding {
  Severity severity = Severity::Error;
  std::string location;  // e.g. "E.fairness" or "equivalence #1"
  std::string message;

  bool operator==(const Finding&) const = default;
};

struct ValidationReport {
  std::vector<Finding> findings;

  void add(Severity sev, std::string location, std::string message) {
    findings.push_back({sev, std::move(location), std::move(message)});
  }

  bool ok() const {
    return std::none_of(findings.begin(), findings.end(), [](const Finding& f) {
      return f.severity == Severity::Error;
    });
  }

  // Deterministic order regardless of how checks were fanned out.
  void sort() {
    std::sort(findings.begin(), findings.end(), [](const Finding& a, const Finding& b) {
      return std::tie(a.location, a.message) < std::tie(b.location, b.message);
    });
  }

  std::string to_string() const {
    std::ostringstream out;
    for (const auto& f : findings) {
      out << (f.severity == Severity::Error ? "error" : "warning") << ": " << f.location << ": "
          << f.message << "\n";
    }
    if (findings.empty()) out << "ok: no findings\n";
    return out.str();
  }
};

}  // namespace nc
