#include "famfeat/pipeline/features_csv.hpp"

#include <cmath>
#include <unordered_map>

#include <fmt/format.h>

#include "famfeat/error.hpp"
#include "famfeat/pipeline/io.hpp"

namespace famfeat {

std::size_t FeatureTable::missing_count() const {
  return static_cast<std::size_t>(values.array().isNaN().count());
}

std::string format_feature_csv(const FeatureTable& t) {
  std::string out;
  out.reserve(static_cast<std::size_t>(t.values.size()) * 20 + t.names.size() * 24);
  for (const auto& n : t.names) {
    out += n;
    out += ',';
  }
  out += "label\n";
  for (Eigen::Index i = 0; i < t.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < t.values.cols(); ++j) {
      append_double(out, t.values(i, j));
      out += ',';
    }
    out += to_string(t.labels.at(static_cast<std::size_t>(i)));
    out += '\n';
  }
  return out;
}

FeatureTable parse_feature_csv(const std::string& text, const std::string& file) {
  FeatureTable t;
  std::vector<double> flat;
  std::size_t pos = 0, line_no = 0;
  bool header = true;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (header) {
      if (fields.size() < 2 || fields.back() != "label") {
        throw InputError(file, line_no, "header must list feature names followed by 'label'");
      }
      for (std::size_t j = 0; j + 1 < fields.size(); ++j) t.names.emplace_back(fields[j]);
      header = false;
      continue;
    }
    if (fields.size() != t.names.size() + 1) {
      throw InputError(file, line_no, fmt::format("expected {} fields, found {}", t.names.size() + 1, fields.size()));
    }
    for (std::size_t j = 0; j < t.names.size(); ++j) flat.push_back(parse_double(fields[j], file, line_no));
    try {
      t.labels.push_back(parse_familiarity(fields.back()));
    } catch (const ParameterError& e) {
      throw InputError(file, line_no, e.what());
    }
  }
  if (header) throw InputError(file, 1, "missing header row");
  const auto rows = static_cast<Eigen::Index>(t.labels.size());
  const auto cols = static_cast<Eigen::Index>(t.names.size());
  t.values.resize(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) t.values(i, j) = flat[static_cast<std::size_t>(i * cols + j)];
  }
  return t;
}

FeatureTable read_feature_csv(const std::string& path) { return parse_feature_csv(read_text_file(path), path); }

FeatureMatrix complete_columns(const FeatureTable& t, std::vector<std::string>* dropped) {
  std::vector<std::size_t> keep;
  for (Eigen::Index j = 0; j < t.values.cols(); ++j) {
    if (t.values.col(j).array().isNaN().any()) {
      if (dropped) dropped->push_back(t.names[static_cast<std::size_t>(j)]);
    } else {
      keep.push_back(static_cast<std::size_t>(j));
    }
  }
  FeatureMatrix fm;
  fm.labels = t.labels;
  fm.values.resize(t.values.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    fm.values.col(static_cast<Eigen::Index>(k)) = t.values.col(static_cast<Eigen::Index>(keep[k]));
    fm.names.push_back(t.names[keep[k]]);
  }
  return fm;
}

FeatureMatrix named_columns(const FeatureTable& t, const std::vector<std::string>& names) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t j = 0; j < t.names.size(); ++j) index.emplace(t.names[j], j);
  FeatureMatrix fm;
  fm.labels = t.labels;
  fm.names = names;
  fm.values.resize(t.values.rows(), static_cast<Eigen::Index>(names.size()));
  for (std::size_t k = 0; k < names.size(); ++k) {
    const auto it = index.find(names[k]);
    if (it == index.end()) throw ParameterError("feature '" + names[k] + "' is not in the feature table");
    const auto col = t.values.col(static_cast<Eigen::Index>(it->second));
    if (col.array().isNaN().any()) throw ParameterError("feature '" + names[k] + "' has missing values");
    fm.values.col(static_cast<Eigen::Index>(k)) = col;
  }
  return fm;
}

}  // namespace famfeat
