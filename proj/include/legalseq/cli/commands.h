// Copyright 2026 The LegalSeq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LEGALSEQ_CLI_COMMANDS_H_
#define LEGALSEQ_CLI_COMMANDS_H_

#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "legalseq/base/config.h"
#include "legalseq/corpus/stats.h"
#include "legalseq/corpus/synthetic.h"
#include "legalseq/hsln/hsln.h"
#include "legalseq/ner/ner_model.h"
#include "legalseq/textprep/textprep.h"
#include "legalseq/train/train.h"

namespace legalseq::cli {

enum class Task { kRr, kNer };
Task ParseTask(const std::string &name);
const char *TaskName(Task task);

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;    // bad input, config or labels
constexpr int kExitRuntime = 3;  // training aborted, I/O and internal failures
int ExitCodeFor(const std::exception &e);

// Value of data.train that asks for a generated corpus.
inline constexpr const char *kSyntheticData = "synthetic";

// $LEGALSEQ_PRESET_DIR, else presets/ of the source tree.
std::filesystem::path PresetDir();
std::vector<std::string> PresetNames();
Config LoadPreset(const std::string &name);

// Later layers override earlier ones: preset, config file, flags, then
// key=value overrides.
struct ConfigLayers {
  std::string preset;
  std::filesystem::path config_file;
  std::optional<unsigned long long> seed;
  std::string backend;
  std::filesystem::path out_dir;
  std::vector<std::string> overrides;
};
Config ResolveConfig(const ConfigLayers &layers);

// Everything a training run needs, parsed from one flat config. Keys:
//   run.task (rr|ner), run.model (hsln|independent, rr only), run.out
//   data.train, data.val, data.labels, data.synthetic.*
//   prep.regularize, prep.steps, prep.augment, eval.exclude
//   train.*, model.*, encoder.*
struct RunConfig {
  Task task = Task::kRr;
  std::string model = "hsln";
  std::string train_path;
  std::string val_path;  // empty: validate on the training data
  std::filesystem::path out_dir = "runs/default";
  std::filesystem::path labels_path;
  std::optional<std::string> exclude_class;
  bool regularize = false;
  RegularizeConfig regularize_config;
  bool augment = false;
  SyntheticRrOptions synthetic_rr;
  SyntheticNerOptions synthetic_ner;
  train::TrainConfig train;
  hsln::HslnConfig hsln;
  hsln::IndependentConfig independent;
  ner::NerConfig ner;
  Config resolved;

  // Rejects unknown keys and invalid values with ConfigError.
  static RunConfig FromConfig(const Config &config);
  // Checks that referenced input paths exist.
  void Validate() const;
  bool synthetic() const { return train_path == kSyntheticData; }
};

// Label set of a run: data.labels or the task default, cut to the
// generated classes for synthetic data.
LabelSet RunLabels(const RunConfig &run);

struct TrainResult {
  train::TrainOutcome outcome;
  std::filesystem::path out_dir;
};
// Writes run.conf, labels.txt, history.csv, best.ckpt and figures under run.out_dir
// (plus train.json for synthetic data).
TrainResult CmdTrain(const RunConfig &run, const train::Logger &log = nullptr);

// Corpus statistics and their figures.
CorpusStats CmdStats(const std::filesystem::path &corpus, Task task,
                     const std::filesystem::path &labels_path,
                     const std::filesystem::path &out_dir, int bucket_width = 5);

struct PreprocessOptions {
  bool regularize = true;
  RegularizeConfig regularize_config;
  bool augment = false;
  unsigned long long seed = 42;
};
// Rhetorical-role corpora only.
void CmdPreprocess(const std::filesystem::path &in, const std::filesystem::path &out,
                   const PreprocessOptions &options, const std::filesystem::path &labels_path);

// Writes predictions in the layout of the input corpus. With
// labels_path, the checkpoint's label set must match it. Preprocessing
// recorded in run.conf next to the checkpoint is applied to the input.
void CmdPredict(const std::filesystem::path &checkpoint, const std::filesystem::path &corpus,
                const std::filesystem::path &out, const std::filesystem::path &labels_path = {});

// Scores predictions against gold and writes metrics.csv and figures.
// Documents missing on either side raise IntegrityError listing their ids.
std::vector<std::pair<std::string, double>> CmdEvaluate(
    const std::filesystem::path &gold, const std::filesystem::path &pred, Task task,
    const std::filesystem::path &labels_path, const std::filesystem::path &out_dir,
    const std::optional<std::string> &exclude_class = std::nullopt);

}  // namespace legalseq::cli

#endif  // LEGALSEQ_CLI_COMMANDS_H_
