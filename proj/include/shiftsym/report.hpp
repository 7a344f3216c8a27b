#pragma once

#include <string>
#include <utility>
#include <vector>

#include "shiftsym/parse.hpp"

namespace shiftsym {

struct Residue {
  std::string label;
  Element value;
};

/// Outcome of a verification: every identity that failed, with its
/// nonzero residue. Empty means all checks passed.
struct Report {
  std::vector<Residue> residues;
  std::vector<std::string> notes;

  [[nodiscard]] bool ok() const { return residues.empty(); }
  explicit operator bool() const { return ok(); }

  /// Records `value` as a failure under `label` unless it is zero.
  void expect_zero(const std::string& label, const Element& value) {
    if (!value.is_zero()) residues.push_back({label, value});
  }
  void fail(const std::string& label, const Element& value) { residues.push_back({label, value}); }
  void merge(const Report& other, const std::string& prefix = "") {
    for (const auto& r : other.residues) residues.push_back({prefix + r.label, r.value});
    for (const auto& n : other.notes) notes.push_back(prefix + n);
  }

  [[nodiscard]] std::string str() const {
    std::string out;
    for (const auto& r : residues) out += r.label + ": " + to_string(r.value) + "\n";
    return out;
  }
};

inline void require(const Report& r, const std::string& what) {
  if (!r.ok()) throw CheckFailure(what + "\n" + r.str());
}

}  // namespace shiftsym
