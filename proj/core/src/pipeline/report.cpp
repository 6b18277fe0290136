#include "famfeat/pipeline/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <map>

#include <fmt/format.h>
#include <json.hpp>

#include "famfeat/error.hpp"
#include "famfeat/pipeline/io.hpp"
#include "famfeat/pipeline/selection_io.hpp"
#include "famfeat/pipeline/svg.hpp"

namespace famfeat {
namespace {

using nlohmann::json;
constexpr const char* kFormat = "famfeat-eval";
constexpr int kVersion = 1;

double sample_sd(const std::vector<double>& v) {
  if (v.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  double m = 0.0;
  for (double x : v) m += x;
  return m / static_cast<double>(v.size());
}

}  // namespace

std::string EvalReport::task() const {
  std::string out;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (i) out += "-vs-";
    out += classes[i];
  }
  return out;
}

std::string format_eval_report(const EvalReport& r) {
  json table = json::array();
  for (const auto& [s, c] : r.sigma_table) table.push_back({s, c});
  const json j = {{"format", kFormat},
                  {"version", kVersion},
                  {"subject", r.subject},
                  {"protocol", r.protocol},
                  {"task", r.task()},
                  {"classes", r.classes},
                  {"features", r.features},
                  {"sigma", r.sigma},
                  {"sigma_table", table},
                  {"folds", r.folds},
                  {"seed", r.seed},
                  {"ccr", r.result.ccr},
                  {"per_fold", r.result.per_fold},
                  {"confusion", r.result.confusion}};
  return j.dump(2) + "\n";
}

EvalReport parse_eval_report(const std::string& text, const std::string& file) {
  try {
    const json j = json::parse(text);
    if (j.at("format") != kFormat) throw InputError(file, 0, "not an eval file");
    if (j.at("version") != kVersion) throw InputError(file, 0, "unsupported eval file version");
    EvalReport r;
    r.subject = j.at("subject").get<std::string>();
    r.protocol = j.at("protocol").get<std::string>();
    r.classes = j.at("classes").get<std::vector<std::string>>();
    r.features = j.at("features").get<std::vector<std::string>>();
    r.sigma = j.at("sigma").get<double>();
    for (const auto& row : j.at("sigma_table")) r.sigma_table.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
    r.folds = j.at("folds").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.result.ccr = j.at("ccr").get<double>();
    r.result.per_fold = j.at("per_fold").get<std::vector<double>>();
    r.result.confusion = j.at("confusion").get<std::vector<std::vector<std::size_t>>>();
    for (const auto& c : r.classes) r.result.classes.push_back(static_cast<int>(parse_familiarity(c)));
    if (r.result.confusion.size() != r.classes.size()) throw InputError(file, 0, "confusion matrix does not match classes");
    return r;
  } catch (const json::exception& e) {
    throw InputError(file, 0, e.what());
  } catch (const InputError&) {
    throw;
  } catch (const ParameterError& e) {
    throw InputError(file, 0, e.what());
  }
}

EvalReport read_eval_report(const std::string& path) { return parse_eval_report(read_text_file(path), path); }

std::vector<std::string> write_report(const ReportInputs& in, const std::string& out_dir) {
  namespace fs = std::filesystem;
  if (in.eval_files.empty() && in.selection_files.empty()) throw ParameterError("report needs at least one input file");
  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::string& content) {
    const auto path = (fs::path(out_dir) / name).string();
    write_file_atomic(path, content);
    written.push_back(path);
  };

  if (!in.eval_files.empty()) {
    std::vector<EvalReport> evals;
    for (const auto& f : in.eval_files) evals.push_back(read_eval_report(f));

    std::string by_subject = "subject,task,protocol,ccr\n";
    std::vector<std::string> labels;
    std::vector<double> values;
    std::vector<std::string> subjects, tasks;
    std::map<std::pair<std::string, std::string>, double> cell;
    std::map<std::string, std::size_t> class_count;
    for (const auto& e : evals) {
      by_subject += fmt::format("{},{},{},", e.subject, e.task(), e.protocol);
      append_double(by_subject, e.result.ccr);
      by_subject += '\n';
      labels.push_back(e.subject + " " + e.task());
      values.push_back(e.result.ccr);
      if (std::find(subjects.begin(), subjects.end(), e.subject) == subjects.end()) subjects.push_back(e.subject);
      // Nested runs get their own column so they never overwrite plain CV.
      const auto column = e.protocol == "cv" ? e.task() : e.task() + " (" + e.protocol + ")";
      if (std::find(tasks.begin(), tasks.end(), column) == tasks.end()) tasks.push_back(column);
      cell[{e.subject, column}] = e.result.ccr;
      class_count[column] = e.classes.size();
    }
    emit("ccr_by_subject.csv", by_subject);
    emit("ccr_by_subject.svg", bar_chart_svg("Held-out CCR per subject", labels, values, "CCR (%)"));

    std::string summary = "subject";
    for (const auto& t : tasks) summary += "," + t;
    summary += '\n';
    std::map<std::string, std::vector<double>> per_task;
    for (const auto& s : subjects) {
      summary += s;
      for (const auto& t : tasks) {
        summary += ',';
        const auto it = cell.find({s, t});
        if (it == cell.end()) {
          summary += "NA";
        } else {
          append_double(summary, it->second);
          per_task[t].push_back(it->second);
        }
      }
      summary += '\n';
    }
    for (const char* row : {"mean", "sd"}) {
      summary += row;
      for (const auto& t : tasks) {
        summary += ',';
        append_double(summary, std::string(row) == "mean" ? mean_of(per_task[t]) : sample_sd(per_task[t]));
      }
      summary += '\n';
    }
    emit("ccr_summary.csv", summary);

    std::string comparison = "task,classes,subjects,mean_ccr\n";
    for (const auto& t : tasks) {
      comparison += fmt::format("{},{},{},", t, class_count[t], per_task[t].size());
      append_double(comparison, mean_of(per_task[t]));
      comparison += '\n';
    }
    emit("class_comparison.csv", comparison);
  }

  if (!in.selection_files.empty()) {
    std::vector<std::string> finals;
    for (const auto& f : in.selection_files) {
      const auto r = read_selection_report(f);
      const auto names = r.final_names();
      finals.insert(finals.end(), names.begin(), names.end());
    }
    const double reports = static_cast<double>(in.selection_files.size());
    auto fam = family_tally(finals);
    auto reg = region_tally(finals);
    // Averages per selection report, as the figures show average appearance.
    for (auto* rows : {&fam, &reg}) {
      for (auto& r : *rows) r.raw /= reports;
    }
    for (auto& r : reg) r.normalized /= reports;
    emit("family_tally.csv", format_tally_csv(fam));
    emit("region_tally.csv", format_tally_csv(reg));
    std::vector<std::string> fl, rl;
    std::vector<double> fv, rv, rn;
    for (const auto& r : fam) {
      fl.push_back(r.key);
      fv.push_back(r.raw);
    }
    for (const auto& r : reg) {
      rl.push_back(r.key);
      rv.push_back(r.raw);
      rn.push_back(r.normalized);
    }
    emit("family_tally.svg", bar_chart_svg("Final features per family", fl, fv, "features per report"));
    emit("region_tally.svg", bar_chart_svg("Final features per region", rl, rv, "features per report"));
    emit("region_tally_normalized.svg",
         bar_chart_svg("Final features per region, per electrode", rl, rn, "features per electrode"));
  }
  return written;
}

}  // namespace famfeat
