// famfeat command-line tool: one subcommand per pipeline stage.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "famfeat/error.hpp"
#include "famfeat/pipeline/commands.hpp"
#include "famfeat/pipeline/config.hpp"

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string in;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c, bool needs_config = true) {
  if (needs_config) cmd->add_option("--config", c.config, "Pipeline config (JSON); defaults apply when omitted");
  cmd->add_option("--seed", c.seed, "Seed, overriding the config");
  cmd->add_option("--in", c.in, "Input path")->required();
  cmd->add_option("--out", c.out, "Output path")->required();
}

famfeat::PipelineConfig load(const Common& c) {
  famfeat::PipelineConfig cfg = c.config.empty() ? famfeat::PipelineConfig{} : famfeat::load_config(c.config);
  if (c.seed) cfg.seed = *c.seed;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EEG familiarity feature pipeline"};
  app.require_subcommand(1);

  Common pre, ext, sel, trn, evl, syn;
  std::string classes, selection, subject, model_out, eval_classes;
  bool nested = false;
  std::vector<std::string> eval_files, selection_files;
  std::string report_out;
  std::optional<std::uint64_t> report_seed;
  std::string report_config;

  auto* c_pre = app.add_subcommand("preprocess", "Filter, remove EOG components and epoch recordings");
  add_common(c_pre, pre);
  auto* c_ext = app.add_subcommand("extract", "Extract the feature table from an epochs dataset");
  add_common(c_ext, ext);
  auto* c_sel = app.add_subcommand("select", "Run the three-stage selection cascade on a class pair");
  add_common(c_sel, sel);
  c_sel->add_option("--classes", classes, "Class pair, e.g. unfamiliar,familiar")->required();
  auto* c_trn = app.add_subcommand("train", "Train a model on the selected features");
  add_common(c_trn, trn);
  c_trn->add_option("--selection", selection, "Selection report")->required();
  auto* c_evl = app.add_subcommand("eval", "Cross-validated CCR of the selected features");
  add_common(c_evl, evl);
  c_evl->add_option("--selection", selection, "Selection report (not needed with --nested)");
  c_evl->add_option("--classes", eval_classes, "Classes to keep; with --nested, the pair to select on");
  c_evl->add_flag("--nested", nested, "Select features inside each outer fold");
  c_evl->add_option("--subject", subject, "Subject label for the report (default: input file stem)");
  c_evl->add_option("--model-out", model_out, "Also train on all rows and write the model here");
  auto* c_syn = app.add_subcommand("synth", "Generate a synthetic dataset from a spec file");
  add_common(c_syn, syn, false);
  auto* c_rep = app.add_subcommand("report", "Summary tables and figures from eval and selection files");
  c_rep->add_option("--config", report_config, "Accepted for interface symmetry; unused");
  c_rep->add_option("--seed", report_seed, "Accepted for interface symmetry; unused");
  c_rep->add_option("--in,--eval", eval_files, "Eval result files");
  c_rep->add_option("--selection", selection_files, "Selection report files");
  c_rep->add_option("--out", report_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? famfeat::kExitOk : famfeat::kExitInvalidInput;
  }

  try {
    if (*c_pre) return famfeat::cmd_preprocess(load(pre), pre.in, pre.out, std::cerr);
    if (*c_ext) return famfeat::cmd_extract(load(ext), ext.in, ext.out, std::cerr);
    if (*c_sel) return famfeat::cmd_select(load(sel), sel.in, classes, sel.out, std::cerr);
    if (*c_trn) return famfeat::cmd_train(load(trn), trn.in, selection, trn.out, std::cerr);
    if (*c_evl) {
      const famfeat::EvalArgs args{selection, eval_classes, nested, subject, model_out};
      return famfeat::cmd_eval(load(evl), evl.in, args, evl.out, std::cerr);
    }
    if (*c_syn) return famfeat::cmd_synth(syn.in, syn.seed, syn.out, std::cerr);
    if (*c_rep) return famfeat::cmd_report(eval_files, selection_files, report_out, std::cerr);
  } catch (const famfeat::ParameterError& e) {
    // InputError messages already carry file:line.
    std::cerr << "error: " << e.what() << '\n';
    return famfeat::kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return famfeat::kExitInternal;
  }
  return famfeat::kExitInternal;
}
