#pragma once

#include <string>
#include <utility>
#include <vector>

#include "famfeat/classify/evaluation.hpp"

namespace famfeat {

/// Result of one `eval` run, as written to disk.
struct EvalReport {
  std::string subject;
  std::string protocol = "cv";  // "cv" or "nested"
  std::vector<std::string> classes;
  std::vector<std::string> features;  // empty for nested runs (chosen per fold)
  double sigma = 0.0;                 // chosen sigma (mean over folds when nested)
  std::vector<std::pair<double, double>> sigma_table;
  std::size_t folds = 0;
  std::uint64_t seed = 0;
  EvalResult result;

  /// Class names joined by "-vs-".
  std::string task() const;
};

std::string format_eval_report(const EvalReport& r);
EvalReport parse_eval_report(const std::string& text, const std::string& file);
EvalReport read_eval_report(const std::string& path);

struct ReportInputs {
  std::vector<std::string> eval_files;
  std::vector<std::string> selection_files;
};

/// Writes into `out_dir`:
///   ccr_by_subject.csv/.svg  one row per eval file (subject, task, CCR)
///   ccr_summary.csv          subjects x tasks, then mean and sd rows
///   class_comparison.csv     mean CCR per task with its class count
///   family_tally.csv/.svg    final features per family over all reports
///   region_tally.csv/.svg    raw and electrode-normalized region counts
///   region_tally_normalized.svg
/// Returns the paths written.
std::vector<std::string> write_report(const ReportInputs& in, const std::string& out_dir);

}  // namespace famfeat
