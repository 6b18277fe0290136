#include "famfeat/pipeline/svg.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "famfeat/error.hpp"

namespace famfeat {

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string bar_chart_svg(const std::string& title, const std::vector<std::string>& labels,
                          const std::vector<double>& values, const std::string& y_label) {
  if (labels.size() != values.size()) throw ParameterError("bar chart labels and values differ in length");
  const double bar_w = 48.0, gap = 16.0, left = 70.0, top = 40.0, plot_h = 240.0, bottom = 90.0;
  const double width = left + static_cast<double>(labels.size()) * (bar_w + gap) + gap + 20.0;
  const double height = top + plot_h + bottom;
  double vmax = 0.0;
  for (double v : values) {
    if (std::isfinite(v)) vmax = std::max(vmax, v);
  }
  if (vmax <= 0.0) vmax = 1.0;

  std::string out = fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" viewBox=\"0 0 {:.0f} {:.0f}\">\n",
      width, height, width, height);
  out += fmt::format("  <text x=\"{:.1f}\" y=\"22\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">{}</text>\n",
                     width / 2.0, xml_escape(title));
  out += fmt::format("  <line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"black\"/>\n", left, top,
                     top + plot_h);
  out += fmt::format("  <line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"black\"/>\n", left,
                     top + plot_h, width - 10.0);
  for (int t = 0; t <= 4; ++t) {
    const double v = vmax * t / 4.0;
    const double y = top + plot_h - plot_h * t / 4.0;
    out += fmt::format("  <text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{:.3g}</text>\n",
                       left - 6.0, y + 4.0, v);
  }
  out += fmt::format(
      "  <text transform=\"translate(16 {:.1f}) rotate(-90)\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
      top + plot_h / 2.0, xml_escape(y_label));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double v = std::isfinite(values[i]) ? std::max(values[i], 0.0) : 0.0;
    const double h = plot_h * v / vmax;
    const double x = left + gap + static_cast<double>(i) * (bar_w + gap);
    out += fmt::format("  <rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"#4a78a8\"/>\n", x,
                       top + plot_h - h, bar_w, h);
    out += fmt::format("  <text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">{:.3g}</text>\n",
                       x + bar_w / 2.0, top + plot_h - h - 4.0, values[i]);
    out += fmt::format(
        "  <text transform=\"translate({:.1f} {:.1f}) rotate(40)\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
        x + bar_w / 2.0 - 6.0, top + plot_h + 14.0, xml_escape(labels[i]));
  }
  out += "</svg>\n";
  return out;
}

}  // namespace famfeat
