#include "famfeat/pipeline/config.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "famfeat/classify/evaluation.hpp"
#include "famfeat/error.hpp"
#include "famfeat/pipeline/io.hpp"

namespace famfeat {
namespace {

using nlohmann::json;

// Reads known keys of one JSON object and rejects the rest.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path, const std::string& source)
      : j_(j), path_(std::move(path)), source_(source) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }

  template <class T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception& e) {
      fail(field(key), e.what());
    }
  }

  const json* child(const char* key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  std::string field(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.count(k)) fail(path_.empty() ? k : path_ + "." + k, "unknown key");
    }
  }

  [[noreturn]] void fail(const std::string& where, const std::string& what) const {
    throw InputError(source_, 0, fmt::format("config field '{}': {}", where, what));
  }

 private:
  const json& j_;
  std::string path_;
  const std::string& source_;
  std::set<std::string> seen_;
};

json band_list(const std::vector<Band>& bands) {
  json out = json::array();
  for (const auto& b : bands) out.push_back({{"name", b.name}, {"lo", b.lo}, {"hi", b.hi}});
  return out;
}

json to_json(const PipelineConfig& c) {
  json sub = json::array();
  for (const auto& b : c.features.plan.sub_bands) {
    sub.push_back({{"name", b.name}, {"lo", b.lo}, {"hi", b.hi}, {"parent", b.parent}});
  }
  json pairs = nullptr;
  if (c.features.pairs) {
    pairs = json::array();
    for (const auto& [a, b] : *c.features.pairs) pairs.push_back({a, b});
  }
  const auto& f = c.features.families;
  const auto& s = c.selection;
  return {
      {"filter", {{"lo", c.filter.lo}, {"hi", c.filter.hi}, {"order", c.filter.order}}},
      {"epoch_window", {{"start_s", c.window.start_s}, {"end_s", c.window.end_s}}},
      {"ica",
       {{"enabled", c.ica.enabled},
        {"components", c.ica.components},
        {"eog_threshold", c.ica.eog_threshold},
        {"max_iterations", c.ica.max_iterations},
        {"tolerance", c.ica.tolerance}}},
      {"features",
       {{"sub_bands", sub},
        {"parent_bands", band_list(c.features.plan.parents)},
        {"full_band", band_list({c.features.plan.full_band}).front()},
        {"psd_segment", c.features.psd.segment_length},
        {"psd_overlap", c.features.psd.overlap},
        {"wavelet", std::string(to_string(c.features.wavelet.kind))},
        {"wavelet_moments",
         c.features.wavelet.moments == WaveletMoments::standardized ? "standardized" : "central"},
        {"families",
         {{"statistical_time", f.statistical_time},
          {"frequency", f.frequency},
          {"harmonic", f.harmonic},
          {"wavelet", f.wavelet},
          {"correlation", f.correlation}}},
        {"pairs", pairs}}},
      {"selection",
       {{"sizes", {s.stage1_size, s.stage2_size, s.stage3_size}},
        {"alpha", s.alpha},
        {"ttest", s.ttest == TTestKind::welch ? "welch" : "pooled"},
        {"fdr_denominator", s.fdr == FdrDenominator::squared ? "squared" : "linear"},
        {"r", s.search.r},
        {"l", s.search.l},
        {"include_forward_path", s.search.include_forward_path},
        {"wrapper_sigma_scale", s.sigma_scale}}},
      {"svm",
       {{"C", c.svm.C},
        {"tolerance", c.svm.tolerance},
        {"sigma_search", c.svm.sigma_search},
        {"sigma_grid", c.svm.grid()},
        {"refine_steps", c.svm.refine_steps},
        {"default_sigma", c.svm.default_sigma}}},
      {"cv_folds", c.cv_folds},
      {"seed", c.seed},
  };
}

std::vector<Band> read_bands(const json& j, const std::string& where, const std::string& source) {
  if (!j.is_array()) throw InputError(source, 0, fmt::format("config field '{}': expected an array", where));
  std::vector<Band> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    ObjectReader r(j[i], fmt::format("{}[{}]", where, i), source);
    Band b;
    r.get("name", b.name);
    r.get("lo", b.lo);
    r.get("hi", b.hi);
    r.finish();
    out.push_back(b);
  }
  return out;
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

ExtractConfig FeatureSettings::resolve(const std::vector<std::string>& channels) const {
  ExtractConfig out;
  out.plan = plan;
  out.psd = psd;
  out.wavelet = wavelet;
  out.families = families;
  if (pairs) {
    auto index = [&](const std::string& name) {
      const auto it = std::find(channels.begin(), channels.end(), name);
      if (it == channels.end()) throw ParameterError("correlation pair names unknown channel '" + name + "'");
      return static_cast<std::size_t>(it - channels.begin());
    };
    std::vector<ChannelPair> resolved;
    for (const auto& [a, b] : *pairs) {
      auto i = index(a), j = index(b);
      if (i == j) throw ParameterError("correlation pair repeats channel '" + a + "'");
      resolved.emplace_back(std::min(i, j), std::max(i, j));
    }
    out.pairs = resolved;
  }
  return out;
}

std::vector<double> SvmSettings::grid() const { return sigma_grid.empty() ? default_sigma_grid() : sigma_grid; }

void PipelineConfig::validate() const {
  if (!(filter.lo > 0.0 && filter.lo < filter.hi)) {
    throw ParameterError(fmt::format("filter: need 0 < lo < hi, got ({}, {})", filter.lo, filter.hi));
  }
  if (filter.order < 2 || filter.order % 2 != 0 || filter.order > 16) {
    throw ParameterError(fmt::format("filter: order must be even in [2, 16], got {}", filter.order));
  }
  if (!(window.start_s >= 0.0 && window.start_s < window.end_s)) {
    throw ParameterError(fmt::format("epoch_window: need 0 <= start < end, got ({}, {})", window.start_s, window.end_s));
  }
  if (ica.enabled && ica.components < 1) throw ParameterError("ica: components must be >= 1");
  if (!(ica.eog_threshold > 0.0 && ica.eog_threshold <= 1.0)) throw ParameterError("ica: eog_threshold must lie in (0, 1]");
  features.plan.validate();
  if (features.psd.segment_length < 2) throw ParameterError("features: psd_segment must be >= 2");
  if (!(features.psd.overlap >= 0.0 && features.psd.overlap < 1.0)) {
    throw ParameterError("features: psd_overlap must lie in [0, 1)");
  }
  cascade().validate();
  if (!(svm.C > 0.0)) throw ParameterError("svm: C must be positive");
  if (!(svm.tolerance > 0.0)) throw ParameterError("svm: tolerance must be positive");
  if (!(svm.default_sigma > 0.0)) throw ParameterError("svm: default_sigma must be positive");
  for (double s : svm.sigma_grid) {
    if (!(s > 0.0)) throw ParameterError("svm: sigma_grid entries must be positive");
  }
  if (cv_folds < 2) throw ParameterError("cv_folds must be >= 2");
}

CascadeConfig PipelineConfig::cascade() const {
  CascadeConfig c = selection;
  c.seed = seed;
  c.folds = cv_folds;
  c.C = svm.C;
  c.svm.tolerance = svm.tolerance;
  return c;
}

std::string to_json_text(const PipelineConfig& config) { return to_json(config).dump(2) + "\n"; }

PipelineConfig parse_config(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source, line_of(text, e.byte > 0 ? e.byte - 1 : 0), e.what());
  }
  PipelineConfig c;
  ObjectReader root(j, "", source);
  if (const auto* f = root.child("filter")) {
    ObjectReader r(*f, "filter", source);
    r.get("lo", c.filter.lo);
    r.get("hi", c.filter.hi);
    r.get("order", c.filter.order);
    r.finish();
  }
  if (const auto* w = root.child("epoch_window")) {
    ObjectReader r(*w, "epoch_window", source);
    r.get("start_s", c.window.start_s);
    r.get("end_s", c.window.end_s);
    r.finish();
  }
  if (const auto* i = root.child("ica")) {
    ObjectReader r(*i, "ica", source);
    r.get("enabled", c.ica.enabled);
    r.get("components", c.ica.components);
    r.get("eog_threshold", c.ica.eog_threshold);
    r.get("max_iterations", c.ica.max_iterations);
    r.get("tolerance", c.ica.tolerance);
    r.finish();
  }
  if (const auto* fe = root.child("features")) {
    ObjectReader r(*fe, "features", source);
    if (const auto* sb = r.child("sub_bands")) {
      if (!sb->is_array()) r.fail("features.sub_bands", "expected an array");
      c.features.plan.sub_bands.clear();
      for (std::size_t k = 0; k < sb->size(); ++k) {
        ObjectReader br((*sb)[k], fmt::format("features.sub_bands[{}]", k), source);
        SubBand b;
        br.get("name", b.name);
        br.get("lo", b.lo);
        br.get("hi", b.hi);
        br.get("parent", b.parent);
        br.finish();
        c.features.plan.sub_bands.push_back(b);
      }
    }
    if (const auto* pb = r.child("parent_bands")) c.features.plan.parents = read_bands(*pb, "features.parent_bands", source);
    if (const auto* fb = r.child("full_band")) {
      c.features.plan.full_band = read_bands(json::array({*fb}), "features.full_band", source).front();
    }
    r.get("psd_segment", c.features.psd.segment_length);
    r.get("psd_overlap", c.features.psd.overlap);
    std::string wavelet(to_string(c.features.wavelet.kind));
    r.get("wavelet", wavelet);
    try {
      c.features.wavelet.kind = parse_wavelet(wavelet);
    } catch (const ParameterError& e) {
      r.fail("features.wavelet", e.what());
    }
    std::string moments = "standardized";
    r.get("wavelet_moments", moments);
    if (moments == "standardized") {
      c.features.wavelet.moments = WaveletMoments::standardized;
    } else if (moments == "central") {
      c.features.wavelet.moments = WaveletMoments::central;
    } else {
      r.fail("features.wavelet_moments", "expected 'standardized' or 'central'");
    }
    if (const auto* fam = r.child("families")) {
      ObjectReader fr(*fam, "features.families", source);
      fr.get("statistical_time", c.features.families.statistical_time);
      fr.get("frequency", c.features.families.frequency);
      fr.get("harmonic", c.features.families.harmonic);
      fr.get("wavelet", c.features.families.wavelet);
      fr.get("correlation", c.features.families.correlation);
      fr.finish();
    }
    if (const auto* p = r.child("pairs"); p && !p->is_null()) {
      try {
        c.features.pairs = p->get<std::vector<std::pair<std::string, std::string>>>();
      } catch (const json::exception& e) {
        r.fail("features.pairs", e.what());
      }
    }
    r.finish();
  }
  if (const auto* s = root.child("selection")) {
    ObjectReader r(*s, "selection", source);
    std::vector<std::size_t> sizes{c.selection.stage1_size, c.selection.stage2_size, c.selection.stage3_size};
    r.get("sizes", sizes);
    if (sizes.size() != 3) r.fail("selection.sizes", "expected three sizes");
    c.selection.stage1_size = sizes[0];
    c.selection.stage2_size = sizes[1];
    c.selection.stage3_size = sizes[2];
    r.get("alpha", c.selection.alpha);
    std::string ttest = "welch", fdr = "squared";
    r.get("ttest", ttest);
    r.get("fdr_denominator", fdr);
    if (ttest != "welch" && ttest != "pooled") r.fail("selection.ttest", "expected 'welch' or 'pooled'");
    if (fdr != "squared" && fdr != "linear") r.fail("selection.fdr_denominator", "expected 'squared' or 'linear'");
    c.selection.ttest = ttest == "welch" ? TTestKind::welch : TTestKind::pooled;
    c.selection.fdr = fdr == "squared" ? FdrDenominator::squared : FdrDenominator::linear;
    r.get("r", c.selection.search.r);
    r.get("l", c.selection.search.l);
    r.get("include_forward_path", c.selection.search.include_forward_path);
    r.get("wrapper_sigma_scale", c.selection.sigma_scale);
    r.finish();
  }
  if (const auto* s = root.child("svm")) {
    ObjectReader r(*s, "svm", source);
    r.get("C", c.svm.C);
    r.get("tolerance", c.svm.tolerance);
    r.get("sigma_search", c.svm.sigma_search);
    r.get("sigma_grid", c.svm.sigma_grid);
    r.get("refine_steps", c.svm.refine_steps);
    r.get("default_sigma", c.svm.default_sigma);
    r.finish();
  }
  root.get("cv_folds", c.cv_folds);
  root.get("seed", c.seed);
  root.finish();
  try {
    c.validate();
  } catch (const InputError&) {
    throw;
  } catch (const ParameterError& e) {
    throw InputError(source, 0, e.what());
  }
  return c;
}

PipelineConfig load_config(const std::string& path) { return parse_config(read_text_file(path), path); }

std::string config_hash(const PipelineConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : to_json_text(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

}  // namespace famfeat
