#include "famfeat/pipeline/dataset.hpp"

#include <algorithm>
#include <filesystem>

#include <fmt/format.h>
#include <json.hpp>

#include "famfeat/error.hpp"
#include "famfeat/pipeline/io.hpp"

namespace famfeat {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kFormat = "famfeat-dataset";
constexpr int kVersion = 1;

template <class T>
T field(const json& j, const char* key, const std::string& file, const std::string& where) {
  if (!j.contains(key)) throw InputError(file, 0, fmt::format("{}: missing '{}'", where, key));
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(file, 0, fmt::format("{}: field '{}': {}", where, key, e.what()));
  }
}

Familiarity label_field(const json& j, const std::string& file, const std::string& where) {
  const auto name = field<std::string>(j, "label", file, where);
  try {
    return parse_familiarity(name);
  } catch (const ParameterError& e) {
    throw InputError(file, 0, fmt::format("{}: {}", where, e.what()));
  }
}

std::string resolve(const Manifest& m, const std::string& rel) {
  const fs::path p(rel);
  return p.is_absolute() ? rel : (fs::path(m.directory) / p).string();
}

NamedMatrix load_matrix(const Manifest& m, const std::string& rel, const std::vector<std::string>& expected) {
  const auto path = resolve(m, rel);
  auto mat = read_csv_matrix(path);
  if (mat.names != expected) {
    throw InputError(path, 1, "column header does not match the manifest channel list");
  }
  return mat;
}

}  // namespace

Manifest read_manifest(const std::string& where) {
  const std::string path =
      fs::is_directory(where) ? (fs::path(where) / "manifest.json").string() : where;
  const std::string text = read_text_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n'));
    throw InputError(path, line, e.what());
  }
  if (!j.is_object()) throw InputError(path, 1, "manifest must be a JSON object");
  if (field<std::string>(j, "format", path, "manifest") != kFormat) {
    throw InputError(path, 0, fmt::format("manifest: format must be '{}'", kFormat));
  }
  const int version = field<int>(j, "version", path, "manifest");
  if (version != kVersion) throw InputError(path, 0, fmt::format("manifest: unsupported version {}", version));

  Manifest m;
  m.directory = fs::path(path).parent_path().string();
  const auto kind = field<std::string>(j, "kind", path, "manifest");
  if (kind == "recordings") {
    m.kind = DatasetKind::recordings;
  } else if (kind == "epochs") {
    m.kind = DatasetKind::epochs;
  } else {
    throw InputError(path, 0, "manifest: kind must be 'recordings' or 'epochs'");
  }
  m.fs = field<double>(j, "fs", path, "manifest");
  if (!(m.fs > 0.0)) throw InputError(path, 0, "manifest: fs must be positive");
  m.channels = field<std::vector<std::string>>(j, "channels", path, "manifest");
  if (m.channels.empty()) throw InputError(path, 0, "manifest: channel list is empty");
  if (j.contains("eog_channel") && !j.at("eog_channel").is_null()) {
    m.eog_channel = field<std::string>(j, "eog_channel", path, "manifest");
    if (std::find(m.channels.begin(), m.channels.end(), *m.eog_channel) == m.channels.end()) {
      throw InputError(path, 0, "manifest: eog_channel is not in the channel list");
    }
  }

  if (m.kind == DatasetKind::recordings) {
    const auto& list = j.contains("recordings") ? j.at("recordings") : json::array();
    if (!list.is_array() || list.empty()) throw InputError(path, 0, "manifest: 'recordings' must be a non-empty array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto where = fmt::format("recordings[{}]", i);
      RecordingEntry e;
      e.path = field<std::string>(list[i], "path", path, where);
      e.subject = list[i].contains("subject") ? field<std::string>(list[i], "subject", path, where) : "";
      e.onsets = field<std::vector<std::size_t>>(list[i], "onsets", path, where);
      for (const auto& name : field<std::vector<std::string>>(list[i], "labels", path, where)) {
        try {
          e.labels.push_back(parse_familiarity(name));
        } catch (const ParameterError& err) {
          throw InputError(path, 0, fmt::format("{}: {}", where, err.what()));
        }
      }
      if (e.labels.size() != e.onsets.size()) {
        throw InputError(path, 0, fmt::format("{}: {} onsets but {} labels", where, e.onsets.size(), e.labels.size()));
      }
      m.recordings.push_back(std::move(e));
    }
  } else {
    if (m.eog_channel) throw InputError(path, 0, "manifest: epoch datasets carry no eog_channel");
    const auto& list = j.contains("epochs") ? j.at("epochs") : json::array();
    if (!list.is_array() || list.empty()) throw InputError(path, 0, "manifest: 'epochs' must be a non-empty array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto where = fmt::format("epochs[{}]", i);
      EpochEntry e;
      e.path = field<std::string>(list[i], "path", path, where);
      e.subject = list[i].contains("subject") ? field<std::string>(list[i], "subject", path, where) : "";
      e.trial = list[i].contains("trial") ? field<std::size_t>(list[i], "trial", path, where) : i;
      e.label = label_field(list[i], path, where);
      m.epochs.push_back(std::move(e));
    }
  }
  return m;
}

std::string format_manifest(const Manifest& m) {
  json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["kind"] = m.kind == DatasetKind::recordings ? "recordings" : "epochs";
  j["fs"] = m.fs;
  j["channels"] = m.channels;
  if (m.eog_channel) j["eog_channel"] = *m.eog_channel;
  if (m.kind == DatasetKind::recordings) {
    json list = json::array();
    for (const auto& e : m.recordings) {
      std::vector<std::string> labels;
      for (auto l : e.labels) labels.emplace_back(to_string(l));
      list.push_back({{"path", e.path}, {"subject", e.subject}, {"onsets", e.onsets}, {"labels", labels}});
    }
    j["recordings"] = list;
  } else {
    json list = json::array();
    for (const auto& e : m.epochs) {
      list.push_back({{"path", e.path}, {"subject", e.subject}, {"trial", e.trial}, {"label", to_string(e.label)}});
    }
    j["epochs"] = list;
  }
  return j.dump(2) + "\n";
}

Recording load_recording(const Manifest& m, const RecordingEntry& entry) {
  if (m.kind != DatasetKind::recordings) throw ParameterError("manifest does not describe recordings");
  auto mat = load_matrix(m, entry.path, m.channels);
  Recording rec;
  rec.channels = m.channels;
  rec.samples = std::move(mat.values);
  rec.fs = m.fs;
  rec.stimulus_onsets = entry.onsets;
  if (m.eog_channel) {
    rec.eog_channel = static_cast<std::size_t>(
        std::find(m.channels.begin(), m.channels.end(), *m.eog_channel) - m.channels.begin());
  }
  if (!rec.samples.allFinite()) throw InputError(resolve(m, entry.path), 0, "recording contains missing or non-finite samples");
  rec.validate();
  return rec;
}

std::vector<Epoch> load_epochs(const Manifest& m) {
  if (m.kind != DatasetKind::epochs) throw ParameterError("manifest does not describe epochs");
  std::vector<Epoch> out;
  for (const auto& e : m.epochs) {
    auto mat = load_matrix(m, e.path, m.channels);
    if (!mat.values.allFinite()) throw InputError(resolve(m, e.path), 0, "epoch contains missing or non-finite samples");
    Epoch ep;
    ep.channels = m.channels;
    ep.samples = std::move(mat.values);
    ep.fs = m.fs;
    ep.label = e.label;
    ep.subject = e.subject;
    ep.trial = e.trial;
    if (!out.empty() && ep.sample_count() != out.front().sample_count()) {
      throw InputError(resolve(m, e.path), 0, "epochs differ in length");
    }
    out.push_back(std::move(ep));
  }
  return out;
}

void write_epoch_dataset(const std::string& dir, const std::vector<Epoch>& epochs) {
  if (epochs.empty()) throw ParameterError("no epochs to write");
  Manifest m;
  m.kind = DatasetKind::epochs;
  m.fs = epochs.front().fs;
  m.channels = epochs.front().channels;
  for (std::size_t i = 0; i < epochs.size(); ++i) {
    const auto& ep = epochs[i];
    if (ep.channels != m.channels || ep.fs != m.fs) throw ParameterError("epochs differ in channels or fs");
    const auto rel = fmt::format("epochs/e{:05d}.csv", i);
    write_file_atomic((fs::path(dir) / rel).string(), format_csv_matrix({ep.channels, ep.samples}));
    m.epochs.push_back({rel, ep.subject, ep.trial, ep.label});
  }
  write_file_atomic((fs::path(dir) / "manifest.json").string(), format_manifest(m));
}

void write_recording_dataset(const std::string& dir, const std::vector<LabelledRecording>& recordings) {
  if (recordings.empty()) throw ParameterError("no recordings to write");
  const auto& first = recordings.front().recording;
  Manifest m;
  m.kind = DatasetKind::recordings;
  m.fs = first.fs;
  m.channels = first.channels;
  if (first.eog_channel) m.eog_channel = first.channels.at(*first.eog_channel);
  for (std::size_t i = 0; i < recordings.size(); ++i) {
    const auto& r = recordings[i];
    if (r.recording.channels != m.channels || r.recording.fs != m.fs || r.recording.eog_channel != first.eog_channel) {
      throw ParameterError("recordings differ in channels, fs or EOG channel");
    }
    const auto rel = fmt::format("recordings/r{:03d}.csv", i);
    write_file_atomic((fs::path(dir) / rel).string(), format_csv_matrix({r.recording.channels, r.recording.samples}));
    m.recordings.push_back({rel, r.subject, r.recording.stimulus_onsets, r.labels});
  }
  write_file_atomic((fs::path(dir) / "manifest.json").string(), format_manifest(m));
}

}  // namespace famfeat
