#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace famfeat {

std::string xml_escape(std::string_view s);

/// Standalone SVG bar chart, one bar per label, y axis from 0 to the largest
/// value (or 1 when all values are 0).
std::string bar_chart_svg(const std::string& title, const std::vector<std::string>& labels,
                          const std::vector<double>& values, const std::string& y_label);

}  // namespace famfeat
