#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace famfeat {

/// Scores a candidate column subset; returns CCR in percent. May throw; a
/// throwing candidate is scored 0 and the search continues.
using SubsetEvaluator = std::function<double(std::span<const std::size_t> columns)>;

struct FloatingSearchOptions {
  std::size_t r = 2;  // additions per cycle
  std::size_t l = 1;  // removals per cycle
  /// Also walk the plain greedy forward path up to the target size, so the
  /// result never scores below sequential forward selection.
  bool include_forward_path = true;
};

struct SearchStep {
  enum class Action { start, add, remove } action = Action::start;
  std::size_t feature = 0;  // column added or removed (unused for start)
  std::size_t size = 0;     // working-set size after the step
  double ccr = 0.0;
};

struct FloatingSearchResult {
  std::vector<std::size_t> ids;  // best target-sized subset, ascending
  double ccr = 0.0;
  std::vector<SearchStep> trace;
  std::vector<std::string> failures;  // evaluator errors, one per failed candidate
};

/// Plus-r take-away-l floating search over `candidates`. Starting from the
/// empty set, each cycle greedily adds r columns (maximizing CCR) and then
/// removes the l columns whose removal costs least, until a cycle ends at or
/// above `target`. Returns the best-scoring subset of exactly `target` columns
/// visited. Ties prefer the lower column index. Candidate evaluations within
/// one step run in parallel; results do not depend on thread count.
FloatingSearchResult plus_r_take_away_l(std::span<const std::size_t> candidates, std::size_t target,
                                        const FloatingSearchOptions& options,
                                        const SubsetEvaluator& evaluator);

}  // namespace famfeat
