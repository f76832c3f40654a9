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

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>

#include "legalseq/base/errors.h"
#include "legalseq/cli/commands.h"

using namespace legalseq;
using namespace legalseq::cli;

namespace {

void Log(const std::string &line) { std::cerr << line << "\n"; }

struct Common {
  std::string preset;
  std::string config;
  std::optional<unsigned long long> seed;
  std::string backend;
  std::string out;
  std::vector<std::string> overrides;
};

void AddCommon(CLI::App *cmd, Common &c) {
  cmd->add_option("--preset", c.preset, "named preset from the presets directory");
  cmd->add_option("--config", c.config, "key = value config file layered over the preset")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", c.seed, "seed for initialization, dropout, shuffling and sampling");
  cmd->add_option("--backend", c.backend, "encoder backend id (hash, bert-base, legal-bert, ...)");
  cmd->add_option("--out", c.out, "output directory");
  cmd->add_option("--set", c.overrides, "override one key, e.g. --set train.epochs=3");
}

Task TaskOption(const std::string &s) { return ParseTask(s); }

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{
      "legalseq: rhetorical-role labeling and legal NER.\n"
      "Environment: LEGALSEQ_WEIGHTS_DIR holds pretrained weights as <dir>/<backend-id>;\n"
      "LEGALSEQ_PRESET_DIR overrides the preset directory.\n"
      "Exit codes: 0 success, 2 user or config error, 3 runtime failure."};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");

  std::string corpus, out, labels, task = "rr";
  int bucket = 5;
  auto *stats = app.add_subcommand("stats", "corpus statistics and figures");
  stats->add_option("corpus", corpus, "corpus JSON")->required();
  stats->add_option("--task", task, "rr or ner");
  stats->add_option("--labels", labels, "label file, one name per line");
  stats->add_option("--out", out, "report directory")->required();
  stats->add_option("--bucket", bucket, "sentence length bucket width");

  std::string pre_out, steps;
  bool augment = false, no_regularize = false;
  unsigned long long pre_seed = 42;
  auto *pre = app.add_subcommand("preprocess", "regularize and/or augment an rr corpus");
  pre->add_option("corpus", corpus, "input corpus JSON")->required();
  pre->add_option("--out", pre_out, "output corpus JSON")->required();
  pre->add_option("--steps", steps,
                  "comma list of lowercase,strip_handles,punct_filter,special_chars,"
                  "stopwords,trailing_ws (default all)");
  pre->add_flag("--no-regularize", no_regularize, "skip regularization");
  pre->add_flag("--augment", augment, "append one sentence-swapped copy of every document");
  pre->add_option("--seed", pre_seed, "augmentation seed");
  pre->add_option("--labels", labels, "label file");

  Common common;
  bool dry_run = false;
  auto *trn = app.add_subcommand("train", "train a model; writes best.ckpt and history.csv");
  AddCommon(trn, common);
  trn->add_flag("--print-config", dry_run, "print the resolved config and exit");

  std::string ckpt, pred_out;
  auto *pred = app.add_subcommand("predict", "label a corpus with a checkpoint");
  pred->add_option("--checkpoint", ckpt, "checkpoint file")->required();
  pred->add_option("corpus", corpus, "corpus JSON")->required();
  pred->add_option("--out", pred_out, "predictions JSON")->required();
  pred->add_option("--labels", labels, "label file the checkpoint must match");

  std::string gold, predictions, exclude;
  auto *ev = app.add_subcommand("evaluate", "score predictions against gold");
  ev->add_option("gold", gold, "gold corpus JSON")->required();
  ev->add_option("pred", predictions, "predictions JSON")->required();
  ev->add_option("--task", task, "rr or ner");
  ev->add_option("--labels", labels, "label file");
  ev->add_option("--out", out, "report directory")->required();
  ev->add_option("--exclude", exclude, "rr label left out of micro F1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*stats) {
      const CorpusStats s = CmdStats(corpus, TaskOption(task), labels, out, bucket);
      Log("documents " + std::to_string(s.doc_count) + ", sentences " +
          std::to_string(s.sentence_count) + ", report in " + out);
    } else if (*pre) {
      PreprocessOptions o;
      o.regularize = !no_regularize;
      o.augment = augment;
      o.seed = pre_seed;
      if (!steps.empty()) {
        o.regularize_config.enabled_steps.clear();
        std::stringstream ss(steps);
        std::string item;
        while (std::getline(ss, item, ',')) {
          if (!item.empty()) o.regularize_config.enabled_steps.insert(ParseRegularizeStep(item));
        }
      }
      CmdPreprocess(corpus, pre_out, o, labels);
    } else if (*trn) {
      ConfigLayers layers;
      layers.preset = common.preset;
      layers.config_file = common.config;
      layers.seed = common.seed;
      layers.backend = common.backend;
      layers.out_dir = common.out;
      layers.overrides = common.overrides;
      const Config config = ResolveConfig(layers);
      const RunConfig run = RunConfig::FromConfig(config);
      if (dry_run) {
        std::cout << config.ToString();
        return kExitOk;
      }
      const TrainResult r = CmdTrain(run, Log);
      Log("best epoch " + std::to_string(r.outcome.history.best_epoch) + ", outputs in " +
          r.out_dir.string());
    } else if (*pred) {
      CmdPredict(ckpt, corpus, pred_out, labels);
    } else if (*ev) {
      std::optional<std::string> ex;
      if (!exclude.empty()) ex = exclude;
      for (const auto &[k, v] : CmdEvaluate(gold, predictions, TaskOption(task), labels, out, ex)) {
        Log(k + " " + FormatDouble(v));
      }
    }
  } catch (const std::exception &e) {
    const int code = ExitCodeFor(e);
    std::cerr << "error: " << e.what() << "\n";
    return code;
  }
  return kExitOk;
}
