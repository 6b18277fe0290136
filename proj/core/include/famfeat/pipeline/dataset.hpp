#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "famfeat/preprocess/recording.hpp"

namespace famfeat {

enum class DatasetKind { recordings, epochs };

struct RecordingEntry {
  std::string path;  // relative to the manifest directory
  std::string subject;
  std::vector<std::size_t> onsets;  // sample indices
  std::vector<Familiarity> labels;  // per onset
};

struct EpochEntry {
  std::string path;
  std::string subject;
  std::size_t trial = 0;
  Familiarity label = Familiarity::unfamiliar;
};

/// manifest.json: {"format": "famfeat-dataset", "version": 1, "kind", "fs",
/// "channels", "eog_channel"?, "recordings" | "epochs"}. Every listed file
/// is a CSV with a header of channel names and one row per sample.
struct Manifest {
  DatasetKind kind = DatasetKind::epochs;
  double fs = 0.0;
  std::vector<std::string> channels;
  std::optional<std::string> eog_channel;  // recordings only
  std::vector<RecordingEntry> recordings;
  std::vector<EpochEntry> epochs;
  std::string directory;  // where relative paths resolve; not serialized
};

/// Accepts the manifest file or the dataset directory holding manifest.json.
/// Throws InputError with the manifest path and, for syntax errors, the line.
Manifest read_manifest(const std::string& path);
std::string format_manifest(const Manifest& m);

Recording load_recording(const Manifest& m, const RecordingEntry& entry);
std::vector<Epoch> load_epochs(const Manifest& m);

/// Writes `dir`/manifest.json and one CSV per epoch under `dir`/epochs.
void write_epoch_dataset(const std::string& dir, const std::vector<Epoch>& epochs);

struct LabelledRecording {
  Recording recording;
  std::vector<Familiarity> labels;
  std::string subject;
};

/// Writes `dir`/manifest.json and one CSV per recording under `dir`/recordings.
/// All recordings must share fs, channels and EOG channel.
void write_recording_dataset(const std::string& dir, const std::vector<LabelledRecording>& recordings);

}  // namespace famfeat
