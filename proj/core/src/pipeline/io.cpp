#include "famfeat/pipeline/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include <fmt/format.h>

#include "famfeat/error.hpp"

namespace famfeat {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw Error(fmt::format("cannot rename {} to {}: {}", tmp.string(), path, ec.message()));
}

void append_double(std::string& out, double v) {
  if (std::isnan(v)) {
    out += "NA";
    return;
  }
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

std::string format_double(double v) {
  std::string s;
  append_double(s, v);
  return s;
}

double parse_double(std::string_view field, const std::string& file, std::size_t line) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) field.remove_suffix(1);
  if (field == "NA") return std::numeric_limits<double>::quiet_NaN();
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw InputError(file, line, fmt::format("not a number: '{}'", field));
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string format_csv_matrix(const NamedMatrix& m) {
  std::string out;
  out.reserve(static_cast<std::size_t>(m.values.size()) * 20 + 256);
  for (std::size_t j = 0; j < m.names.size(); ++j) {
    if (j) out += ',';
    out += m.names[j];
  }
  out += '\n';
  for (Eigen::Index i = 0; i < m.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.values.cols(); ++j) {
      if (j) out += ',';
      append_double(out, m.values(i, j));
    }
    out += '\n';
  }
  return out;
}

NamedMatrix parse_csv_matrix(const std::string& text, const std::string& file) {
  NamedMatrix m;
  std::vector<double> flat;
  std::size_t line_no = 0, pos = 0, rows = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (m.names.empty()) {
      for (auto f : fields) {
        if (f.empty()) throw InputError(file, line_no, "empty column name");
        m.names.emplace_back(f);
      }
      continue;
    }
    if (fields.size() != m.names.size()) {
      throw InputError(file, line_no, fmt::format("expected {} fields, found {}", m.names.size(), fields.size()));
    }
    for (auto f : fields) flat.push_back(parse_double(f, file, line_no));
    ++rows;
  }
  if (m.names.empty()) throw InputError(file, 1, "missing header row");
  const auto cols = static_cast<Eigen::Index>(m.names.size());
  m.values.resize(static_cast<Eigen::Index>(rows), cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      m.values(static_cast<Eigen::Index>(i), j) = flat[i * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)];
    }
  }
  return m;
}

NamedMatrix read_csv_matrix(const std::string& path) { return parse_csv_matrix(read_text_file(path), path); }

}  // namespace famfeat
