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

#include "legalseq/cli/commands.h"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "legalseq/base/errors.h"
#include "legalseq/corpus/corpus_io.h"
#include "legalseq/eval/metrics.h"
#include "legalseq/eval/report.h"
#include "legalseq/nn/checkpoint.h"
#include "legalseq/train/tasks.h"

namespace legalseq::cli {

namespace fs = std::filesystem;

Task ParseTask(const std::string &name) {
  if (name == "rr") return Task::kRr;
  if (name == "ner") return Task::kNer;
  throw ConfigError("unknown task '" + name + "' (expected rr or ner)");
}

const char *TaskName(Task task) { return task == Task::kRr ? "rr" : "ner"; }

int ExitCodeFor(const std::exception &e) {
  if (dynamic_cast<const ConfigError *>(&e) || dynamic_cast<const LabelError *>(&e) ||
      dynamic_cast<const ParseError *>(&e) || dynamic_cast<const IntegrityError *>(&e) ||
      dynamic_cast<const OverlapError *>(&e) || dynamic_cast<const AlignmentError *>(&e)) {
    return kExitUsage;
  }
  return kExitRuntime;
}

fs::path PresetDir() {
  if (const char *env = std::getenv("LEGALSEQ_PRESET_DIR"); env && *env) return env;
  return fs::path(LEGALSEQ_SOURCE_DIR) / "presets";
}

std::vector<std::string> PresetNames() {
  std::vector<std::string> names;
  std::error_code ec;
  for (const auto &entry : fs::directory_iterator(PresetDir(), ec)) {
    if (entry.path().extension() == ".conf") names.push_back(entry.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

Config LoadPreset(const std::string &name) {
  const fs::path path = PresetDir() / (name + ".conf");
  if (!fs::exists(path)) {
    std::string known;
    for (const auto &n : PresetNames()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown preset '" + name + "' (known: " + known + ")");
  }
  return Config::Load(path);
}

Config ResolveConfig(const ConfigLayers &layers) {
  Config c;
  if (!layers.preset.empty()) c.Merge(LoadPreset(layers.preset));
  if (!layers.config_file.empty()) {
    if (!fs::exists(layers.config_file)) {
      throw ConfigError("config file " + layers.config_file.string() + " does not exist");
    }
    c.Merge(Config::Load(layers.config_file));
  }
  if (layers.seed) c.Set("train.seed", std::to_string(*layers.seed));
  if (!layers.backend.empty()) c.Set("encoder.backend", layers.backend);
  if (!layers.out_dir.empty()) c.Set("run.out", layers.out_dir.string());
  for (const auto &kv : layers.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("override '" + kv + "' is not of the form key=value");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    c.Set(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
  }
  return c;
}

namespace {

std::set<RegularizeStep> ParseSteps(const std::string &list) {
  std::set<RegularizeStep> steps;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) steps.insert(ParseRegularizeStep(item));
  }
  return steps;
}

std::string StepsToString(const std::set<RegularizeStep> &steps) {
  std::string out;
  for (RegularizeStep s : steps) out += (out.empty() ? "" : ",") + std::string(RegularizeStepName(s));
  return out;
}

void RequirePath(const std::string &what, const fs::path &p) {
  if (!fs::exists(p)) throw ConfigError(what + " " + p.string() + " does not exist");
}

LabelSet LoadLabels(Task task, const fs::path &labels_path) {
  const LabelKind kind = task == Task::kRr ? LabelKind::kRhetoricalRole : LabelKind::kEntity;
  if (labels_path.empty()) return LabelSet::Default(kind);
  RequirePath("label file", labels_path);
  return LabelSet::Load(labels_path, kind);
}

void RequireLabeled(const std::vector<Document> &docs) {
  for (const auto &d : docs) {
    for (size_t i = 0; i < d.sentences.size(); ++i) {
      if (!d.sentences[i].rr_label) {
        throw IntegrityError("document " + d.doc_id + ": sentence " + std::to_string(i + 1) +
                                 " has no label; training data must be fully labeled",
                             d.doc_id);
      }
    }
  }
}

std::string JoinIds(const std::vector<std::string> &ids) {
  std::string out;
  for (const auto &id : ids) out += (out.empty() ? "" : ", ") + id;
  return out;
}

// Ids present on one side only.
template <typename Doc>
void RequireSameIds(const std::vector<Doc> &gold, const std::vector<Doc> &pred) {
  std::set<std::string> g, p;
  for (const auto &d : gold) g.insert(d.doc_id);
  for (const auto &d : pred) p.insert(d.doc_id);
  std::vector<std::string> missing, extra;
  for (const auto &id : g) {
    if (!p.count(id)) missing.push_back(id);
  }
  for (const auto &id : p) {
    if (!g.count(id)) extra.push_back(id);
  }
  if (missing.empty() && extra.empty()) return;
  std::string msg = "gold and predictions cover different documents";
  if (!missing.empty()) msg += "; missing from predictions: " + JoinIds(missing);
  if (!extra.empty()) msg += "; not in gold: " + JoinIds(extra);
  throw IntegrityError(msg, missing.empty() ? extra.front() : missing.front());
}

std::vector<Document> Regularized(const std::vector<Document> &docs, const RegularizeConfig &cfg) {
  std::vector<Document> out;
  out.reserve(docs.size());
  for (const auto &d : docs) out.push_back(RegularizeDocument(d, cfg));
  return out;
}

}  // namespace

RunConfig RunConfig::FromConfig(const Config &config) {
  RunConfig r;
  r.resolved = config;
  r.task = ParseTask(config.GetString("run.task", "rr"));
  r.model = config.GetString("run.model", r.task == Task::kRr ? "hsln" : "ner");
  r.out_dir = config.GetString("run.out", r.out_dir.string());
  r.train_path = config.GetString("data.train", "");
  r.val_path = config.GetString("data.val", "");
  r.labels_path = config.GetString("data.labels", "");
  if (config.Has("eval.exclude")) r.exclude_class = config.GetString("eval.exclude");
  r.regularize = config.GetBool("prep.regularize", false);
  if (config.Has("prep.steps")) {
    r.regularize_config.enabled_steps = ParseSteps(config.GetString("prep.steps"));
  }
  r.regularize_config.Validate();
  r.augment = config.GetBool("prep.augment", false);

  r.synthetic_rr.documents = static_cast<int>(config.GetInt("data.synthetic.documents", 20));
  r.synthetic_rr.sentences = static_cast<int>(config.GetInt("data.synthetic.sentences", 8));
  r.synthetic_rr.classes = static_cast<int>(config.GetInt("data.synthetic.classes", 4));
  r.synthetic_ner.sentences = static_cast<int>(config.GetInt("data.synthetic.records", 50));
  r.synthetic_ner.types = static_cast<int>(config.GetInt("data.synthetic.types", 3));
  const long data_seed = config.GetInt("data.synthetic.seed", 42);
  if (data_seed < 0) throw ConfigError("data.synthetic.seed must be non-negative");
  r.synthetic_rr.seed = r.synthetic_ner.seed = static_cast<uint64_t>(data_seed);

  r.train = train::TrainConfig::FromConfig(config);
  if (r.task == Task::kRr) {
    if (r.model == "hsln") {
      r.hsln = hsln::HslnConfig::FromConfig(config);
    } else if (r.model == "independent") {
      r.independent = hsln::IndependentConfig::FromConfig(config);
    } else {
      throw ConfigError("run.model must be hsln or independent for rr, got '" + r.model + "'");
    }
  } else {
    if (r.model != "ner") throw ConfigError("run.model must be ner for the ner task");
    if (r.regularize || r.augment) {
      throw ConfigError("prep.regularize and prep.augment apply to the rr task only");
    }
    r.ner = ner::NerConfig::FromConfig(config);
  }
  const auto unread = config.UnreadKeys();
  if (!unread.empty()) throw ConfigError("unknown config keys: " + JoinIds(unread));
  return r;
}

void RunConfig::Validate() const {
  if (train_path.empty()) throw ConfigError("data.train is not set");
  if (!synthetic()) RequirePath("training corpus", train_path);
  if (!val_path.empty() && val_path != kSyntheticData) RequirePath("validation corpus", val_path);
  if (!labels_path.empty()) RequirePath("label file", labels_path);
}

LabelSet RunLabels(const RunConfig &run) {
  LabelSet labels = LoadLabels(run.task, run.labels_path);
  if (!run.synthetic()) return labels;
  const int n = run.task == Task::kRr ? run.synthetic_rr.classes : run.synthetic_ner.types;
  if (n < 1 || n > labels.size()) {
    throw ConfigError("synthetic data wants " + std::to_string(n) + " labels, the label set has " +
                      std::to_string(labels.size()));
  }
  std::vector<std::string> names(labels.names().begin(), labels.names().begin() + n);
  return LabelSet(std::move(names), labels.kind());
}

TrainResult CmdTrain(const RunConfig &run, const train::Logger &log) {
  run.Validate();
  const LabelSet labels = RunLabels(run);
  std::error_code ec;
  fs::create_directories(run.out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + run.out_dir.string());

  Config resolved = run.resolved;
  if (run.regularize) resolved.Set("prep.steps", StepsToString(run.regularize_config.enabled_steps));
  WriteTextFile(run.out_dir / "run.conf", resolved.ToString());
  std::string label_lines;
  for (const auto &n : labels.names()) label_lines += n + "\n";
  WriteTextFile(run.out_dir / "labels.txt", label_lines);
  const uint64_t init_seed = train::Seeds::From(run.train.seed).init;
  const auto say = [&](const std::string &s) {
    if (log) log(s);
  };

  TrainResult result;
  result.out_dir = run.out_dir;
  if (run.task == Task::kRr) {
    std::vector<Document> train_docs, val_docs;
    if (run.synthetic()) {
      train_docs = SyntheticRrDocuments(run.synthetic_rr, labels);
      WriteTextFile(run.out_dir / "train.json",
                    SerializeRrCorpus({CorpusFormat::kTaskNested, train_docs}, labels));
    } else {
      train_docs = LoadRrCorpus(run.train_path, labels).documents;
    }
    if (run.val_path.empty() || run.val_path == kSyntheticData) {
      val_docs = train_docs;
    } else {
      val_docs = LoadRrCorpus(run.val_path, labels).documents;
    }
    RequireLabeled(train_docs);
    if (run.regularize) {
      train_docs = Regularized(train_docs, run.regularize_config);
      val_docs = Regularized(val_docs, run.regularize_config);
    }
    if (run.augment) train_docs = AugmentSwap(train_docs, train::Seeds::From(run.train.seed).augmentation);
    std::optional<int> exclude;
    if (run.exclude_class) {
      exclude = labels.Find(*run.exclude_class);
      if (!exclude) throw ConfigError("eval.exclude names unknown label " + *run.exclude_class);
    }
    say("rr: " + std::to_string(train_docs.size()) + " training documents, " +
        std::to_string(val_docs.size()) + " validation documents");
    std::unique_ptr<hsln::RrModel> model;
    if (run.model == "hsln") {
      model = std::make_unique<hsln::HslnModel>(run.hsln, labels, init_seed);
    } else {
      model = std::make_unique<hsln::IndependentClassifier>(run.independent, labels, init_seed);
    }
    train::RrTrainTask task(*model, train_docs, std::move(val_docs), exclude);
    result.outcome = train::Train(task, run.train, run.out_dir, log);
  } else {
    std::vector<NerDocument> train_docs, val_docs;
    if (run.synthetic()) {
      train_docs = SyntheticNerDocuments(run.synthetic_ner, labels);
      WriteTextFile(run.out_dir / "train.json",
                    SerializeNerCorpus({CorpusFormat::kTaskNested, train_docs}, labels));
    } else {
      train_docs = LoadNerCorpus(run.train_path, labels).documents;
    }
    if (run.val_path.empty() || run.val_path == kSyntheticData) {
      val_docs = train_docs;
    } else {
      val_docs = LoadNerCorpus(run.val_path, labels).documents;
    }
    say("ner: " + std::to_string(train_docs.size()) + " training records, " +
        std::to_string(val_docs.size()) + " validation records");
    ner::NerModel model(run.ner, labels, init_seed);
    train::NerTrainTask task(model, train_docs, std::move(val_docs));
    result.outcome = train::Train(task, run.train, run.out_dir, log);
  }
  eval::ReportInputs report;
  report.history = result.outcome.history;
  report.metrics = {{"best_epoch", result.outcome.history.best_epoch},
                    {"best_val_metric", result.outcome.history.epochs.empty()
                                            ? 0.0
                                            : result.outcome.history.best_metric}};
  eval::EmitReport(report, run.out_dir);
  return result;
}

CorpusStats CmdStats(const fs::path &corpus, Task task, const fs::path &labels_path,
                     const fs::path &out_dir, int bucket_width) {
  RequirePath("corpus", corpus);
  if (bucket_width < 1) throw ConfigError("bucket width must be positive");
  const LabelSet labels = LoadLabels(task, labels_path);
  CorpusStats stats;
  if (task == Task::kRr) {
    stats = ComputeStats(LoadRrCorpus(corpus, labels).documents, labels, bucket_width);
  } else {
    stats = ComputeStats(LoadNerCorpus(corpus, labels).documents, labels, bucket_width);
  }
  eval::ReportInputs report;
  report.stats = stats;
  report.metrics = {{"documents", stats.doc_count},
                    {"sentences", stats.sentence_count},
                    {"labeled_sentences", stats.labeled_sentence_count},
                    {"short_sentences", stats.short_sentence_count}};
  eval::EmitReport(report, out_dir);
  return stats;
}

void CmdPreprocess(const fs::path &in, const fs::path &out, const PreprocessOptions &options,
                   const fs::path &labels_path) {
  RequirePath("corpus", in);
  options.regularize_config.Validate();
  const LabelSet labels = LoadLabels(Task::kRr, labels_path);
  RrCorpus corpus = LoadRrCorpus(in, labels);
  if (options.regularize) corpus.documents = Regularized(corpus.documents, options.regularize_config);
  if (options.augment) corpus.documents = AugmentSwap(corpus.documents, options.seed);
  WriteTextFile(out, SerializeRrCorpus(corpus, labels));
}

void CmdPredict(const fs::path &checkpoint, const fs::path &corpus, const fs::path &out,
                const fs::path &labels_path) {
  RequirePath("checkpoint", checkpoint);
  RequirePath("corpus", corpus);
  const nn::LoadedCheckpoint ckpt = nn::ReadCheckpoint(checkpoint);
  const bool is_ner = ckpt.meta.model_kind == "ner";
  std::optional<LabelSet> expected;
  if (!labels_path.empty()) expected = LoadLabels(is_ner ? Task::kNer : Task::kRr, labels_path);
  const LabelSet *exp = expected ? &*expected : nullptr;

  if (is_ner) {
    auto model = ner::NerModel::Load(checkpoint, exp);
    NerCorpus input = LoadNerCorpus(corpus, model->labels());
    input.documents = train::PredictNer(*model, input.documents);
    WriteTextFile(out, SerializeNerCorpus(input, model->labels()));
    return;
  }
  auto model = hsln::LoadRrModel(checkpoint, exp);
  RrCorpus input = LoadRrCorpus(corpus, model->labels());
  std::vector<Document> docs = input.documents;
  const fs::path run_conf = checkpoint.parent_path() / "run.conf";
  if (fs::exists(run_conf)) {
    const Config rc = Config::Load(run_conf);
    if (rc.GetBool("prep.regularize", false)) {
      RegularizeConfig cfg;
      if (rc.Has("prep.steps")) cfg.enabled_steps = ParseSteps(rc.GetString("prep.steps"));
      docs = Regularized(docs, cfg);
    }
  }
  const train::RrPredictions p = train::PredictRr(*model, docs);
  for (size_t d = 0; d < input.documents.size(); ++d) {
    auto &sentences = input.documents[d].sentences;
    for (size_t i = 0; i < sentences.size(); ++i) sentences[i].rr_label = p.per_document[d][i];
  }
  WriteTextFile(out, SerializeRrCorpus(input, model->labels()));
}

std::vector<std::pair<std::string, double>> CmdEvaluate(
    const fs::path &gold_path, const fs::path &pred_path, Task task, const fs::path &labels_path,
    const fs::path &out_dir, const std::optional<std::string> &exclude_class) {
  RequirePath("gold corpus", gold_path);
  RequirePath("prediction file", pred_path);
  const LabelSet labels = LoadLabels(task, labels_path);
  eval::ReportInputs report;
  if (task == Task::kRr) {
    const auto gold = LoadRrCorpus(gold_path, labels).documents;
    const auto pred = LoadRrCorpus(pred_path, labels).documents;
    RequireSameIds(gold, pred);
    std::map<std::string, const Document *> by_id;
    for (const auto &d : pred) by_id[d.doc_id] = &d;
    std::vector<int> g, p;
    for (const auto &gd : gold) {
      const Document &pd = *by_id.at(gd.doc_id);
      if (pd.sentences.size() != gd.sentences.size()) {
        throw IntegrityError("document " + gd.doc_id + ": " + std::to_string(gd.sentences.size()) +
                                 " gold sentences but " + std::to_string(pd.sentences.size()) +
                                 " predicted",
                             gd.doc_id);
      }
      for (size_t i = 0; i < gd.sentences.size(); ++i) {
        if (!gd.sentences[i].rr_label) continue;
        if (!pd.sentences[i].rr_label) {
          throw IntegrityError("document " + gd.doc_id + ": sentence " + std::to_string(i + 1) +
                                   " has no predicted label",
                               gd.doc_id);
        }
        g.push_back(*gd.sentences[i].rr_label);
        p.push_back(*pd.sentences[i].rr_label);
      }
    }
    std::optional<int> exclude;
    if (exclude_class) {
      exclude = labels.Find(*exclude_class);
      if (!exclude) throw ConfigError("unknown label to exclude: " + *exclude_class);
    }
    report.per_class = eval::PerClass(g, p, labels);
    report.metrics = {{"micro_f1", eval::MicroF1(g, p, exclude)},
                      {"macro_f1", eval::MacroF1(report.per_class)},
                      {"sentences", static_cast<double>(g.size())}};
    report.confusion = eval::Confusion(g, p, labels);
  } else {
    const auto gold = LoadNerCorpus(gold_path, labels).documents;
    const auto pred = LoadNerCorpus(pred_path, labels).documents;
    RequireSameIds(gold, pred);
    const auto gk = eval::SpanKeys(gold), pk = eval::SpanKeys(pred);
    const eval::SpanMatchReport r = eval::SpanF1(gk, pk);
    report.metrics = {{"precision", r.precision}, {"recall", r.recall}, {"f1", r.f1}};
    for (int l = 0; l < labels.size(); ++l) {
      std::vector<eval::SpanKey> gl, pl;
      for (const auto &k : gk) {
        if (k.label == l) gl.push_back(k);
      }
      for (const auto &k : pk) {
        if (k.label == l) pl.push_back(k);
      }
      const eval::SpanMatchReport rl = eval::SpanF1(gl, pl);
      eval::ClassScores cs;
      cs.label = labels.name(l);
      cs.support = static_cast<long>(gl.size());
      cs.counts = {rl.true_positives, rl.false_positives, rl.false_negatives};
      cs.precision = rl.precision;
      cs.recall = rl.recall;
      cs.f1 = gl.empty() && pl.empty() ? 0.0 : rl.f1;
      report.per_class.push_back(cs);
    }
  }
  eval::EmitReport(report, out_dir);
  return report.metrics;
}

}  // namespace legalseq::cli
