#include "famfeat/pipeline/model_io.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include "famfeat/error.hpp"
#include "famfeat/montage.hpp"
#include "famfeat/pipeline/io.hpp"

namespace famfeat {

namespace {
using nlohmann::json;
constexpr const char* kFormat = "famfeat-model";
constexpr int kVersion = 1;
}  // namespace

std::string format_model(const ModelArtifact& m) {
  json machines = json::array();
  for (const auto& svm : m.model.machines) {
    json sv = json::array();
    for (Eigen::Index i = 0; i < svm.support_vectors.rows(); ++i) {
      std::vector<double> row(svm.support_vectors.row(i).begin(), svm.support_vectors.row(i).end());
      sv.push_back(row);
    }
    machines.push_back({{"class_pair", {svm.class_pair.first, svm.class_pair.second}},
                        {"bias", svm.bias},
                        {"sigma", svm.sigma},
                        {"C", svm.C},
                        {"dual_coefficients", svm.dual_coefficients},
                        {"support_vectors", sv}});
  }
  std::vector<std::string> classes;
  for (int c : m.model.classes) classes.emplace_back(to_string(static_cast<Familiarity>(c)));
  const json j = {{"format", kFormat},
                  {"version", kVersion},
                  {"features", m.features},
                  {"classes", classes},
                  {"sigma", m.sigma},
                  {"C", m.C},
                  {"scaler", {{"mean", m.scaler.mean}, {"scale", m.scaler.scale}}},
                  {"machines", machines}};
  return j.dump(1) + "\n";
}

ModelArtifact parse_model(const std::string& text, const std::string& file) {
  try {
    const json j = json::parse(text);
    if (j.at("format") != kFormat) throw InputError(file, 0, "not a model file");
    if (j.at("version") != kVersion) throw InputError(file, 0, fmt::format("unsupported model version {}", j.at("version").dump()));
    ModelArtifact m;
    m.features = j.at("features").get<std::vector<std::string>>();
    for (const auto& c : j.at("classes").get<std::vector<std::string>>()) {
      m.model.classes.push_back(static_cast<int>(parse_familiarity(c)));
    }
    m.sigma = j.at("sigma").get<double>();
    m.C = j.at("C").get<double>();
    m.scaler.mean = j.at("scaler").at("mean").get<std::vector<double>>();
    m.scaler.scale = j.at("scaler").at("scale").get<std::vector<double>>();
    if (m.scaler.mean.size() != m.features.size() || m.scaler.scale.size() != m.features.size()) {
      throw InputError(file, 0, "scaler size does not match the feature list");
    }
    for (const auto& mj : j.at("machines")) {
      SvmModel svm;
      const auto pair = mj.at("class_pair").get<std::vector<int>>();
      if (pair.size() != 2) throw InputError(file, 0, "class_pair must have two entries");
      svm.class_pair = {pair[0], pair[1]};
      svm.bias = mj.at("bias").get<double>();
      svm.sigma = mj.at("sigma").get<double>();
      svm.C = mj.at("C").get<double>();
      svm.dual_coefficients = mj.at("dual_coefficients").get<std::vector<double>>();
      const auto sv = mj.at("support_vectors").get<std::vector<std::vector<double>>>();
      if (sv.size() != svm.dual_coefficients.size()) throw InputError(file, 0, "support vector count mismatch");
      svm.support_vectors.resize(static_cast<Eigen::Index>(sv.size()), static_cast<Eigen::Index>(m.features.size()));
      for (std::size_t i = 0; i < sv.size(); ++i) {
        if (sv[i].size() != m.features.size()) throw InputError(file, 0, "support vector dimension mismatch");
        for (std::size_t k = 0; k < sv[i].size(); ++k) {
          svm.support_vectors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = sv[i][k];
        }
      }
      m.model.machines.push_back(std::move(svm));
    }
    const std::size_t k = m.model.classes.size();
    if (k < 2 || m.model.machines.size() != k * (k - 1) / 2) throw InputError(file, 0, "machine count does not match classes");
    return m;
  } catch (const json::exception& e) {
    throw InputError(file, 0, e.what());
  } catch (const InputError&) {
    throw;
  } catch (const ParameterError& e) {
    throw InputError(file, 0, e.what());
  }
}

ModelArtifact read_model(const std::string& path) { return parse_model(read_text_file(path), path); }

}  // namespace famfeat
