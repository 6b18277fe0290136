#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace famfeat {

/// Throws InputError when the file cannot be read.
std::string read_text_file(const std::string& path);

/// Writes to a sibling temporary file and renames it over `path`, creating
/// parent directories as needed.
void write_file_atomic(const std::string& path, std::string_view content);

/// Shortest text that parses back to the same double; NaN prints as "NA".
std::string format_double(double v);
void append_double(std::string& out, double v);

/// Parses a full field as a double; "NA" yields NaN. Throws InputError.
double parse_double(std::string_view field, const std::string& file, std::size_t line);

/// Splits on a single-character delimiter; no quoting.
std::vector<std::string_view> split(std::string_view line, char delim);

/// Header row of names, then one numeric row per sample.
struct NamedMatrix {
  std::vector<std::string> names;
  Eigen::MatrixXd values;
};

std::string format_csv_matrix(const NamedMatrix& m);
NamedMatrix parse_csv_matrix(const std::string& text, const std::string& file);
NamedMatrix read_csv_matrix(const std::string& path);

}  // namespace famfeat
