#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace womega {

// Thrown for malformed input and violated preconditions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Violation {
  std::string kind;    // short class name, e.g. "globular", "axiom-3"
  std::string detail;  // human readable, names the offending cells
};

// Outcome of a validator. Bounded checks record the bound they used.
struct Report {
  std::vector<Violation> violations;
  std::optional<int> bound;
  std::vector<std::string> notes;

  bool ok() const { return violations.empty(); }
  void add(std::string kind, std::string detail) {
    violations.push_back({std::move(kind), std::move(detail)});
  }
  bool has(const std::string& kind) const {
    for (const auto& v : violations)
      if (v.kind == kind) return true;
    return false;
  }
  // Appends another report, prefixing its kinds with `scope/`.
  void absorb(const Report& other, const std::string& scope = "") {
    for (const auto& v : other.violations)
      violations.push_back({scope.empty() ? v.kind : scope + "/" + v.kind, v.detail});
    for (const auto& n : other.notes) notes.push_back(n);
    if (other.bound && (!bound || *other.bound > *bound)) bound = other.bound;
  }
};

}  // namespace womega
