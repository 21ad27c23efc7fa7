#ifndef KOSZUL_PROBLEM_HPP
#define KOSZUL_PROBLEM_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "koszul/bott.hpp"
#include "koszul/module.hpp"

namespace koszul {

/// Optional defaults carried by a problem file; command-line flags take precedence.
struct TaskSpec {
  std::string kind;
  std::optional<int> n;
  std::optional<std::pair<int, int>> n_range;
  std::optional<int> degree_bound;
  std::optional<int> p;
  std::optional<int> q;
};

struct Problem {
  std::shared_ptr<const AlgebraSpec> algebra;
  std::shared_ptr<const ModuleSpec> module;
  TaskSpec task;
  /// Set when the module came from a "regular_sequence" block.
  std::optional<RegularIdealModule> regular_ideal;
  std::vector<Polynomial> regular_sequence;
  int check_bound = 6;
  std::string source;
};

/**
 * Parses and validates a problem document:
 *
 *   { "field": {"characteristic": 0},
 *     "algebra": {"variables": [{"name": "x", "weight": 1}], "relators": ["x^2"]},
 *     "module": {"generators": [{"name": "g", "degree": 0}], "relations": [["x"]]},
 *     "task": {"kind": "homology", "n": 2, "degree_bound": 6} }
 *
 * "module" may instead be {"regular_sequence": ["x", "y"]}. Errors carry the
 * line and column of the offending value.
 */
Problem parse_problem(std::string_view text, const std::string& source = "<input>");

/// Same problem over a different base field (coefficients are re-read there).
Problem with_characteristic(const Problem& p, std::uint32_t characteristic);

/// Bundled problem files: name -> document text.
const std::vector<std::pair<std::string, std::string>>& bundled_problems();
std::optional<std::string> bundled_problem(const std::string& name);

/**
 * Reads a problem from disk; a missing path of the form [examples/]NAME[.json]
 * or bundled:NAME falls back to the bundled copy of that name.
 */
std::pair<std::string, std::string> load_problem_text(const std::string& path);

/// {"r": 1, "n": 2, "characteristic_zero": true, "smooth_dimension": 0,
///  "entries": [{"q": 0, "j": 0, "dim": 3}, ...]}
BundleCohomologyTable parse_bundle_table(std::string_view text);

/// FNV-1a 64-bit digest, rendered as 16 hex digits.
std::string digest(std::string_view bytes);

}  // namespace koszul

#endif  // KOSZUL_PROBLEM_HPP
