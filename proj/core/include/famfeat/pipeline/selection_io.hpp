#pragma once

#include <string>
#include <vector>

#include "famfeat/selection/cascade.hpp"

namespace famfeat {

/// Tab-separated report: '#' metadata lines, a "stage rank feature score"
/// header, one row per stage survivor (scores: p-value, FDR, final wrapper
/// CCR) and one "trace" row per search step.
std::string format_selection_report(const SelectionReport& r);

/// Reads back what format_selection_report wrote. Column ids index `names`,
/// which holds the union of reported features in first-appearance order.
SelectionReport parse_selection_report(const std::string& text, const std::string& file);
SelectionReport read_selection_report(const std::string& path);

struct TallyRow {
  std::string key;
  double raw = 0.0;
  double normalized = 0.0;
};

/// Final features per family; normalized is the share of the final set.
std::vector<TallyRow> family_tally(const std::vector<std::string>& features);

/// Per-channel final features per scalp region, normalized by the region's
/// electrode count. Channels outside the region table land in "unassigned"
/// (normalized by the number of such channels seen); correlation features
/// are left out.
std::vector<TallyRow> region_tally(const std::vector<std::string>& features);

std::string format_tally_csv(const std::vector<TallyRow>& rows);

}  // namespace famfeat
