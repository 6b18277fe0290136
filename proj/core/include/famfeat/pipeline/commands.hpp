#pragma once

#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "famfeat/pipeline/config.hpp"
#include "famfeat/pipeline/features_csv.hpp"
#include "famfeat/pipeline/model_io.hpp"
#include "famfeat/preprocess/recording.hpp"
#include "famfeat/synth/synth.hpp"

namespace famfeat {

/// Process exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitInternal = 1, kExitInvalidInput = 2, kExitWarnings = 3 };

struct CleanedRecording {
  Recording recording;
  std::set<std::size_t> removed;  // ICA components
  std::size_t ica_iterations = 0;
  std::string note;  // why ICA was skipped, if it was
};

/// Band-pass, then ICA removal of EOG-correlated components when the
/// recording has an EOG channel and ICA is enabled.
CleanedRecording clean_recording(const Recording& rec, const PipelineConfig& config);

/// clean_recording followed by epoch slicing.
std::vector<Epoch> preprocess_recording(const Recording& rec, std::span<const Familiarity> labels,
                                        const std::string& subject, const PipelineConfig& config,
                                        CleanedRecording* cleaned = nullptr);

/// Tolerant extraction of every epoch; undefined features become NaN and
/// one warning per affected epoch is appended to `warnings`.
FeatureTable extract_features(const std::vector<Epoch>& epochs, const PipelineConfig& config,
                              std::vector<std::string>* warnings = nullptr);

/// Sigma search over all rows, then one model on all rows.
ModelArtifact train_model(const FeatureMatrix& fm, const PipelineConfig& config);

/// Parses "a,b" into two distinct classes.
std::pair<Familiarity, Familiarity> parse_class_pair(const std::string& text);

/// Synthetic dataset description, read from JSON (see README).
struct SynthFile {
  std::string kind = "epochs";  // or "recording"
  SynthSpec spec;
  RecordingLayout layout;
};

SynthFile parse_synth_file(const std::string& text, const std::string& file);

// Subcommands. Each reads its inputs, writes outputs atomically and returns
// an exit code; invalid input surfaces as ParameterError/InputError.
int cmd_preprocess(const PipelineConfig& config, const std::string& in, const std::string& out, std::ostream& log);
int cmd_extract(const PipelineConfig& config, const std::string& in, const std::string& out, std::ostream& log);
int cmd_select(const PipelineConfig& config, const std::string& in, const std::string& classes,
               const std::string& out, std::ostream& log);
int cmd_train(const PipelineConfig& config, const std::string& in, const std::string& selection,
              const std::string& out, std::ostream& log);

struct EvalArgs {
  std::string selection;  // report file; unused when nested
  std::string classes;    // "a,b": row filter, and the pair selected on when nested
  bool nested = false;
  std::string subject;
  std::string model_out;  // optional
};

int cmd_eval(const PipelineConfig& config, const std::string& in, const EvalArgs& args, const std::string& out,
             std::ostream& log);
int cmd_synth(const std::string& in, std::optional<std::uint64_t> seed, const std::string& out, std::ostream& log);
int cmd_report(const std::vector<std::string>& eval_files, const std::vector<std::string>& selection_files,
               const std::string& out, std::ostream& log);

/// Sidecar next to an output: the config (canonical JSON), its hash, the
/// command and extra fields.
std::string provenance_path(const std::string& out, bool directory);
PipelineConfig config_from_provenance(const std::string& path);

}  // namespace famfeat
