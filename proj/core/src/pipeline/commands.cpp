#include "famfeat/pipeline/commands.hpp"

#include <algorithm>
#include <filesystem>

#include <fmt/format.h>
#include <json.hpp>

#include "famfeat/classify/multiclass.hpp"
#include "famfeat/error.hpp"
#include "famfeat/parallel.hpp"
#include "famfeat/pipeline/dataset.hpp"
#include "famfeat/pipeline/io.hpp"
#include "famfeat/pipeline/nested.hpp"
#include "famfeat/pipeline/report.hpp"
#include "famfeat/pipeline/selection_io.hpp"
#include "famfeat/preprocess/butterworth.hpp"
#include "famfeat/preprocess/epoching.hpp"
#include "famfeat/preprocess/ica.hpp"

namespace famfeat {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

void write_provenance(const std::string& path, const std::string& command, const PipelineConfig& config,
                      json extra = json::object()) {
  json j = {{"command", command},
            {"config", json::parse(to_json_text(config))},
            {"config_hash", config_hash(config)},
            {"famfeat_version", "0.3.0"}};
  for (auto& [k, v] : extra.items()) j[k] = v;
  write_file_atomic(path, j.dump(2) + "\n");
}

std::vector<Familiarity> parse_class_list(const std::string& text) {
  std::vector<Familiarity> out;
  for (auto part : split(text, ',')) {
    const auto c = parse_familiarity(part);
    if (std::find(out.begin(), out.end(), c) != out.end()) {
      throw ParameterError("class list repeats '" + std::string(part) + "'");
    }
    out.push_back(c);
  }
  return out;
}

void check_class_count(const FeatureMatrix& fm) {
  const auto n = fm.classes().size();
  if (n != 2 && n != 3) throw ParameterError(fmt::format("train/eval handle 2 or 3 classes, input has {}", n));
}

FeatureTable filter_rows(const FeatureTable& t, const std::vector<Familiarity>& keep) {
  std::vector<Eigen::Index> rows;
  for (std::size_t i = 0; i < t.labels.size(); ++i) {
    if (std::find(keep.begin(), keep.end(), t.labels[i]) != keep.end()) rows.push_back(static_cast<Eigen::Index>(i));
  }
  FeatureTable out;
  out.names = t.names;
  out.values.resize(static_cast<Eigen::Index>(rows.size()), t.values.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.values.row(static_cast<Eigen::Index>(r)) = t.values.row(rows[r]);
    out.labels.push_back(t.labels[static_cast<std::size_t>(rows[r])]);
  }
  return out;
}

std::string sibling(const std::string& out, const std::string& suffix) {
  fs::path p(out);
  return (p.parent_path() / (p.stem().string() + suffix)).string();
}

}  // namespace

CleanedRecording clean_recording(const Recording& rec, const PipelineConfig& config) {
  CleanedRecording out;
  out.recording = bandpass_filter(rec, config.filter.lo, config.filter.hi, config.filter.order);
  if (!config.ica.enabled) {
    out.note = "ica disabled";
    return out;
  }
  if (!rec.eog_channel) {
    out.note = "no EOG channel";
    return out;
  }
  IcaOptions opts;
  opts.max_iterations = config.ica.max_iterations;
  opts.tolerance = config.ica.tolerance;
  opts.seed = config.seed;
  const auto dec = ica_decompose(out.recording, config.ica.components, opts);
  const auto eog_col = out.recording.samples.col(static_cast<Eigen::Index>(*rec.eog_channel));
  const std::vector<double> eog(eog_col.begin(), eog_col.end());
  out.removed = auto_flag_eog(dec, eog, config.ica.eog_threshold);
  out.ica_iterations = dec.iterations;
  if (!out.removed.empty()) out.recording = remove_components(out.recording, dec, out.removed);
  return out;
}

std::vector<Epoch> preprocess_recording(const Recording& rec, std::span<const Familiarity> labels,
                                        const std::string& subject, const PipelineConfig& config,
                                        CleanedRecording* cleaned) {
  config.validate();
  rec.validate();
  if (labels.size() != rec.stimulus_onsets.size()) {
    throw ParameterError(fmt::format("{} labels for {} onsets", labels.size(), rec.stimulus_onsets.size()));
  }
  // Check windows before the expensive steps so bad onsets fail fast.
  slice_epochs(rec, labels, config.window, subject);
  auto c = clean_recording(rec, config);
  auto epochs = slice_epochs(c.recording, labels, config.window, subject);
  if (cleaned) *cleaned = std::move(c);
  return epochs;
}

FeatureTable extract_features(const std::vector<Epoch>& epochs, const PipelineConfig& config,
                              std::vector<std::string>* warnings) {
  if (epochs.empty()) throw ParameterError("no epochs to extract");
  const auto& channels = epochs.front().channels;
  const auto ecfg = config.features.resolve(channels);
  FeatureTable t;
  t.names = feature_names(channels, ecfg);
  t.values.resize(static_cast<Eigen::Index>(epochs.size()), static_cast<Eigen::Index>(t.names.size()));
  std::vector<std::string> notes(epochs.size());
  parallel_for(epochs.size(), [&](std::size_t i) {
    const auto& ep = epochs[i];
    if (ep.channels != channels) throw ParameterError("epochs differ in channel layout");
    const auto tf = extract_epoch_features_tolerant(ep, ecfg);
    for (std::size_t j = 0; j < tf.features.values.size(); ++j) {
      t.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = tf.features.values[j];
    }
    if (!tf.missing.empty()) {
      notes[i] = fmt::format("epoch {} (subject '{}', trial {}): {} undefined features, first {} ({})", i, ep.subject,
                             ep.trial, tf.missing.size(), tf.missing.front(), tf.reasons.front());
    }
  });
  for (const auto& ep : epochs) t.labels.push_back(ep.label);
  if (warnings) {
    for (auto& n : notes) {
      if (!n.empty()) warnings->push_back(std::move(n));
    }
  }
  return t;
}

ModelArtifact train_model(const FeatureMatrix& fm, const PipelineConfig& config) {
  fm.validate();
  check_class_count(fm);
  std::vector<int> y;
  for (auto l : fm.labels) y.push_back(static_cast<int>(l));
  SvmOptions opts;
  opts.tolerance = config.svm.tolerance;
  ModelArtifact m;
  m.features = fm.names;
  m.C = config.svm.C;
  m.sigma = config.svm.default_sigma;
  if (config.svm.sigma_search) {
    const auto grid = config.svm.grid();
    m.sigma = sigma_search(fm.values, y, config.svm.C, grid, config.svm.refine_steps, config.cv_folds, config.seed, opts).sigma;
  }
  m.scaler = Standardizer::fit(fm.values);
  m.model = train_one_vs_one(m.scaler.apply(fm.values), y, m.sigma, m.C, opts);
  return m;
}

std::pair<Familiarity, Familiarity> parse_class_pair(const std::string& text) {
  const auto list = parse_class_list(text);
  if (list.size() != 2) throw ParameterError("expected a class pair 'a,b', got '" + text + "'");
  return {list[0], list[1]};
}

SynthFile parse_synth_file(const std::string& text, const std::string& file) {
  SynthFile s;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    throw InputError(file, 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n')), e.what());
  }
  auto fail = [&](const std::string& where, const std::string& what) -> void {
    throw InputError(file, 0, fmt::format("synth field '{}': {}", where, what));
  };
  static const std::vector<std::string> known = {"kind", "seed", "fs", "samples", "total_power", "noise_floor",
                                                 "subject", "channels", "classes", "layout"};
  if (!j.is_object()) fail("", "expected an object");
  for (const auto& [k, v] : j.items()) {
    if (std::find(known.begin(), known.end(), k) == known.end()) fail(k, "unknown key");
  }
  try {
    s.kind = j.value("kind", s.kind);
    if (s.kind != "epochs" && s.kind != "recording") fail("kind", "expected 'epochs' or 'recording'");
    s.spec.seed = j.value("seed", s.spec.seed);
    s.spec.fs = j.value("fs", s.spec.fs);
    s.spec.samples = j.value("samples", s.spec.samples);
    s.spec.total_power = j.value("total_power", s.spec.total_power);
    s.spec.noise_floor = j.value("noise_floor", s.spec.noise_floor);
    s.spec.subject = j.value("subject", s.spec.subject);
    if (j.contains("channels")) s.spec.channels = j.at("channels").get<std::vector<std::string>>();
    if (!j.contains("classes") || !j.at("classes").is_array()) fail("classes", "expected an array");
    const auto& classes = j.at("classes");
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const auto& c = classes[i];
      const auto where = fmt::format("classes[{}]", i);
      ClassProfile p;
      if (!c.contains("label")) fail(where + ".label", "missing");
      try {
        p.label = parse_familiarity(c.at("label").get<std::string>());
      } catch (const ParameterError& e) {
        fail(where + ".label", e.what());
      }
      p.epochs = c.value("epochs", std::size_t{0});
      if (c.contains("profile") == c.contains("dominant")) fail(where, "give exactly one of 'profile' or 'dominant'");
      if (c.contains("profile")) {
        p.rsp = c.at("profile").get<std::vector<double>>();
      } else {
        try {
          p.rsp = dominant_profile(s.spec.plan, c.at("dominant").get<std::string>());
        } catch (const ParameterError& e) {
          fail(where + ".dominant", e.what());
        }
      }
      s.spec.classes.push_back(std::move(p));
    }
    if (j.contains("layout")) {
      const auto& l = j.at("layout");
      s.layout.trial_s = l.value("trial_s", s.layout.trial_s);
      s.layout.lead_s = l.value("lead_s", s.layout.lead_s);
      s.layout.blink_rate_hz = l.value("blink_rate_hz", s.layout.blink_rate_hz);
      s.layout.blink_amplitude = l.value("blink_amplitude", s.layout.blink_amplitude);
      s.layout.blink_width_s = l.value("blink_width_s", s.layout.blink_width_s);
    }
  } catch (const json::exception& e) {
    throw InputError(file, 0, fmt::format("synth spec: {}", e.what()));
  }
  try {
    s.spec.validate();
  } catch (const InputError&) {
    throw;
  } catch (const ParameterError& e) {
    throw InputError(file, 0, e.what());
  }
  return s;
}

std::string provenance_path(const std::string& out, bool directory) {
  return directory ? (fs::path(out) / "provenance.json").string() : out + ".provenance.json";
}

PipelineConfig config_from_provenance(const std::string& path) {
  const auto text = read_text_file(path);
  try {
    const auto j = json::parse(text);
    return parse_config(j.at("config").dump(), path);
  } catch (const json::exception& e) {
    throw InputError(path, 0, e.what());
  }
}

int cmd_preprocess(const PipelineConfig& config, const std::string& in, const std::string& out, std::ostream& log) {
  const auto manifest = read_manifest(in);
  if (manifest.kind != DatasetKind::recordings) throw InputError(in, 0, "preprocess expects a recordings manifest");
  std::vector<Epoch> all;
  json removed = json::array();
  for (const auto& entry : manifest.recordings) {
    const auto rec = load_recording(manifest, entry);
    CleanedRecording cleaned;
    std::vector<Epoch> epochs;
    try {
      epochs = preprocess_recording(rec, entry.labels, entry.subject, config, &cleaned);
    } catch (const EpochWindowError& e) {
      throw InputError(in, 0, fmt::format("recording '{}': {}", entry.path, e.what()));
    }
    removed.push_back({{"recording", entry.path},
                       {"subject", entry.subject},
                       {"removed_components", std::vector<std::size_t>(cleaned.removed.begin(), cleaned.removed.end())},
                       {"ica_iterations", cleaned.ica_iterations},
                       {"note", cleaned.note}});
    log << fmt::format("{}: {} epochs, ICA removed {} component(s){}\n", entry.path, epochs.size(),
                       cleaned.removed.size(), cleaned.note.empty() ? "" : " (" + cleaned.note + ")");
    for (auto& ep : epochs) all.push_back(std::move(ep));
  }
  write_epoch_dataset(out, all);
  write_provenance(provenance_path(out, true), "preprocess", config, {{"input", in}, {"recordings", removed}});
  log << fmt::format("wrote {} epochs to {}\n", all.size(), out);
  return kExitOk;
}

int cmd_extract(const PipelineConfig& config, const std::string& in, const std::string& out, std::ostream& log) {
  const auto manifest = read_manifest(in);
  if (manifest.kind != DatasetKind::epochs) throw InputError(in, 0, "extract expects an epochs manifest");
  const auto epochs = load_epochs(manifest);
  std::vector<std::string> warnings;
  const auto table = extract_features(epochs, config, &warnings);
  write_file_atomic(out, format_feature_csv(table));
  write_provenance(provenance_path(out, false), "extract", config, {{"input", in}});
  for (const auto& w : warnings) log << "warning: " << w << '\n';
  log << fmt::format("extracted {} epochs x {} features; {} missing value(s)\n", table.values.rows(),
                     table.names.size(), table.missing_count());
  return kExitOk;
}

int cmd_select(const PipelineConfig& config, const std::string& in, const std::string& classes,
               const std::string& out, std::ostream& log) {
  const auto [a, b] = parse_class_pair(classes);
  const auto table = read_feature_csv(in);
  std::vector<std::string> dropped;
  const auto fm = complete_columns(table, &dropped);
  if (!dropped.empty()) log << fmt::format("excluded {} feature(s) with missing values\n", dropped.size());
  const auto report = run_selection_cascade(fm, a, b, config.cascade());
  write_file_atomic(out, format_selection_report(report));
  const auto finals = report.final_names();
  write_file_atomic(sibling(out, "_family.csv"), format_tally_csv(family_tally(finals)));
  write_file_atomic(sibling(out, "_region.csv"), format_tally_csv(region_tally(finals)));
  write_provenance(provenance_path(out, false), "select", config, {{"input", in}, {"classes", classes}});
  log << fmt::format("stage sizes {} / {} / {}; wrapper CCR {:.2f}%\n", report.stage1.size(), report.stage2.size(),
                     report.stage3.size(), report.stage3_ccr);
  for (const auto& f : report.failures) log << "warning: wrapper evaluation failed: " << f << '\n';
  if (report.partial) {
    log << fmt::format("warning: fewer than {} features survived a stage; report is partial\n",
                       config.selection.stage3_size);
    return kExitWarnings;
  }
  return kExitOk;
}

int cmd_train(const PipelineConfig& config, const std::string& in, const std::string& selection,
              const std::string& out, std::ostream& log) {
  const auto table = read_feature_csv(in);
  const auto names = read_selection_report(selection).final_names();
  if (names.empty()) throw InputError(selection, 0, "selection report lists no final features");
  const auto model = train_model(named_columns(table, names), config);
  write_file_atomic(out, format_model(model));
  write_provenance(provenance_path(out, false), "train", config, {{"input", in}, {"selection", selection}});
  log << fmt::format("trained {} machine(s) on {} features, sigma {}\n", model.model.machines.size(),
                     names.size(), model.sigma);
  return kExitOk;
}

int cmd_eval(const PipelineConfig& config, const std::string& in, const EvalArgs& args, const std::string& out,
             std::ostream& log) {
  auto table = read_feature_csv(in);
  EvalReport report;
  if (args.nested) {
    if (args.classes.empty()) throw ParameterError("nested evaluation needs --classes a,b");
    const auto [a, b] = parse_class_pair(args.classes);
    std::vector<std::string> dropped;
    const auto fm = complete_columns(table, &dropped);
    auto nested = nested_evaluate(fm, a, b, config);
    for (std::size_t f = 0; f < nested.folds.size(); ++f) {
      if (nested.folds[f].partial) log << fmt::format("warning: fold {} selection was partial\n", f);
    }
    report = std::move(nested.report);
  } else {
    if (args.selection.empty()) throw ParameterError("eval needs --selection unless --nested is given");
    if (!args.classes.empty()) table = filter_rows(table, parse_class_list(args.classes));
    const auto names = read_selection_report(args.selection).final_names();
    if (names.empty()) throw InputError(args.selection, 0, "selection report lists no final features");
    const auto fm = named_columns(table, names);
    check_class_count(fm);
    report = evaluate_columns(fm, config);
    if (!args.model_out.empty()) {
      write_file_atomic(args.model_out, format_model(train_model(fm, config)));
    }
  }
  report.subject = args.subject.empty() ? fs::path(in).stem().string() : args.subject;
  write_file_atomic(out, format_eval_report(report));
  write_provenance(provenance_path(out, false), "eval", config,
                   {{"input", in}, {"selection", args.selection}, {"nested", args.nested}});
  log << fmt::format("{} {}: CCR {:.2f}% ({}-fold, held out)\n", report.subject, report.task(), report.result.ccr,
                     report.folds);
  return kExitOk;
}

int cmd_synth(const std::string& in, std::optional<std::uint64_t> seed, const std::string& out, std::ostream& log) {
  auto file = parse_synth_file(read_text_file(in), in);
  if (seed) file.spec.seed = *seed;
  if (file.kind == "epochs") {
    const auto epochs = synth_labelled_dataset(file.spec);
    write_epoch_dataset(out, epochs);
    log << fmt::format("wrote {} synthetic epochs to {}\n", epochs.size(), out);
  } else {
    auto rec = synth_recording(file.spec, file.layout);
    const auto n = rec.labels.size();
    write_recording_dataset(out, {{std::move(rec.recording), std::move(rec.labels), file.spec.subject}});
    log << fmt::format("wrote a synthetic recording with {} onsets to {}\n", n, out);
  }
  return kExitOk;
}

int cmd_report(const std::vector<std::string>& eval_files, const std::vector<std::string>& selection_files,
               const std::string& out, std::ostream& log) {
  for (const auto& p : write_report({eval_files, selection_files}, out)) log << "wrote " << p << '\n';
  return kExitOk;
}

}  // namespace famfeat
