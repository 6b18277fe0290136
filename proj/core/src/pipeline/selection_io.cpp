#include "famfeat/pipeline/selection_io.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

#include "famfeat/error.hpp"
#include "famfeat/features/extract.hpp"
#include "famfeat/pipeline/io.hpp"

namespace famfeat {
namespace {

std::string action_text(const SearchStep& s, const std::vector<std::string>& names) {
  switch (s.action) {
    case SearchStep::Action::start: return "start";
    case SearchStep::Action::add: return "+" + names.at(s.feature);
    case SearchStep::Action::remove: return "-" + names.at(s.feature);
  }
  return "start";
}

}  // namespace

std::string format_selection_report(const SelectionReport& r) {
  std::string out = "# famfeat selection report v1\n";
  out += fmt::format("# classes\t{}\t{}\n", r.class_a, r.class_b);
  out += fmt::format("# partial\t{}\n", r.partial ? 1 : 0);
  out += fmt::format("# stage2_shortfall\t{}\n", r.stage2_shortfall ? 1 : 0);
  out += fmt::format("# degenerate_columns\t{}\n", r.degenerate_columns);
  out += fmt::format("# wrapper_failures\t{}\n", r.failures.size());
  out += "stage\trank\tfeature\tscore\n";
  auto rows = [&](const char* stage, const std::vector<std::size_t>& ids, auto score) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      out += fmt::format("{}\t{}\t{}\t", stage, i + 1, r.names.at(ids[i]));
      append_double(out, score(i));
      out += '\n';
    }
  };
  rows("1", r.stage1, [&](std::size_t i) { return r.stage1_p[i]; });
  rows("2", r.stage2, [&](std::size_t i) { return r.stage2_fdr[i]; });
  rows("3", r.stage3, [&](std::size_t) { return r.stage3_ccr; });
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    out += fmt::format("trace\t{}\t{}\t", i, action_text(r.trace[i], r.names));
    append_double(out, r.trace[i].ccr);
    out += '\n';
  }
  return out;
}

SelectionReport parse_selection_report(const std::string& text, const std::string& file) {
  SelectionReport r;
  std::unordered_map<std::string, std::size_t> index;
  auto id_of = [&](const std::string& name) {
    auto [it, inserted] = index.emplace(name, r.names.size());
    if (inserted) r.names.push_back(name);
    return it->second;
  };
  std::size_t pos = 0, line_no = 0;
  bool header_seen = false, classes_seen = false;
  std::size_t trace_size = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto f = split(line, '\t');
    if (line.front() == '#') {
      if (f.size() == 3 && f[0] == "# classes") {
        r.class_a = std::string(f[1]);
        r.class_b = std::string(f[2]);
        classes_seen = true;
      } else if (f.size() == 2 && f[0] == "# partial") {
        r.partial = f[1] == "1";
      } else if (f.size() == 2 && f[0] == "# stage2_shortfall") {
        r.stage2_shortfall = f[1] == "1";
      } else if (f.size() == 2 && f[0] == "# degenerate_columns") {
        r.degenerate_columns = static_cast<std::size_t>(parse_double(f[1], file, line_no));
      }
      continue;
    }
    if (!header_seen) {
      if (line != "stage\trank\tfeature\tscore") throw InputError(file, line_no, "expected the column header");
      header_seen = true;
      continue;
    }
    if (f.size() != 4) throw InputError(file, line_no, fmt::format("expected 4 fields, found {}", f.size()));
    const double score = parse_double(f[3], file, line_no);
    const std::string name(f[2]);
    if (f[0] == "1") {
      r.stage1.push_back(id_of(name));
      r.stage1_p.push_back(score);
    } else if (f[0] == "2") {
      r.stage2.push_back(id_of(name));
      r.stage2_fdr.push_back(score);
    } else if (f[0] == "3") {
      r.stage3.push_back(id_of(name));
      r.stage3_ccr = score;
    } else if (f[0] == "trace") {
      SearchStep s;
      s.ccr = score;
      if (name == "start") {
        s.action = SearchStep::Action::start;
      } else if (!name.empty() && (name[0] == '+' || name[0] == '-')) {
        s.action = name[0] == '+' ? SearchStep::Action::add : SearchStep::Action::remove;
        s.feature = id_of(name.substr(1));
        trace_size += name[0] == '+' ? 1 : 0;
        trace_size -= name[0] == '-' ? 1 : 0;
      } else {
        throw InputError(file, line_no, "unknown trace action '" + name + "'");
      }
      s.size = trace_size;
      r.trace.push_back(s);
    } else {
      throw InputError(file, line_no, "unknown stage '" + std::string(f[0]) + "'");
    }
  }
  if (!header_seen || !classes_seen) throw InputError(file, 0, "not a selection report");
  return r;
}

SelectionReport read_selection_report(const std::string& path) {
  return parse_selection_report(read_text_file(path), path);
}

std::vector<TallyRow> family_tally(const std::vector<std::string>& features) {
  std::vector<TallyRow> rows;
  for (auto f : kAllFamilies) rows.push_back({std::string(to_string(f)), 0.0, 0.0});
  for (const auto& name : features) {
    const auto id = parse_feature_name(name);
    rows[static_cast<std::size_t>(id.family)].raw += 1.0;
  }
  for (auto& r : rows) r.normalized = features.empty() ? 0.0 : r.raw / static_cast<double>(features.size());
  return rows;
}

std::vector<TallyRow> region_tally(const std::vector<std::string>& features) {
  std::vector<TallyRow> rows;
  for (auto reg : kAllRegions) rows.push_back({std::string(to_string(reg)), 0.0, 0.0});
  TallyRow unassigned{"unassigned", 0.0, 0.0};
  std::set<std::string> unassigned_channels;
  for (const auto& name : features) {
    const auto id = parse_feature_name(name);
    if (id.family == FeatureFamily::correlation) continue;
    const auto& ch = id.channels.front();
    if (const auto reg = region_of(ch)) {
      rows[static_cast<std::size_t>(*reg)].raw += 1.0;
    } else {
      unassigned.raw += 1.0;
      unassigned_channels.insert(ch);
    }
  }
  for (std::size_t i = 0; i < kAllRegions.size(); ++i) {
    rows[i].normalized = rows[i].raw / static_cast<double>(region_electrodes(kAllRegions[i]).size());
  }
  unassigned.normalized = unassigned_channels.empty() ? 0.0 : unassigned.raw / static_cast<double>(unassigned_channels.size());
  rows.push_back(unassigned);
  return rows;
}

std::string format_tally_csv(const std::vector<TallyRow>& rows) {
  std::string out = "group,raw,normalized\n";
  for (const auto& r : rows) {
    out += r.key;
    out += ',';
    append_double(out, r.raw);
    out += ',';
    append_double(out, r.normalized);
    out += '\n';
  }
  return out;
}

}  // namespace famfeat
