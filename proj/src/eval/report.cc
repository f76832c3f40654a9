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

#include "legalseq/eval/report.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "legalseq/base/config.h"
#include "legalseq/base/errors.h"
#include "legalseq/corpus/corpus_io.h"

namespace legalseq::eval {
namespace {

namespace fs = std::filesystem;

std::string Num(double v) { return FormatDouble(v); }

std::string Escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

// Minimal SVG canvas.
class Svg {
 public:
  Svg(int width, int height) : width_(width), height_(height) {}
  void Rect(double x, double y, double w, double h, const std::string &fill) {
    body_ += "<rect x=\"" + Fixed(x) + "\" y=\"" + Fixed(y) + "\" width=\"" + Fixed(w) +
             "\" height=\"" + Fixed(h) + "\" fill=\"" + fill + "\"/>\n";
  }
  void Text(double x, double y, const std::string &s, const std::string &anchor = "middle",
            int size = 11, double rotate = 0.0) {
    body_ += "<text x=\"" + Fixed(x) + "\" y=\"" + Fixed(y) + "\" font-size=\"" +
             std::to_string(size) + "\" text-anchor=\"" + anchor + "\"";
    if (rotate != 0.0) {
      body_ += " transform=\"rotate(" + Fixed(rotate) + " " + Fixed(x) + " " + Fixed(y) + ")\"";
    }
    body_ += ">" + Escape(s) + "</text>\n";
  }
  void Line(double x1, double y1, double x2, double y2, const std::string &stroke = "#000") {
    body_ += "<line x1=\"" + Fixed(x1) + "\" y1=\"" + Fixed(y1) + "\" x2=\"" + Fixed(x2) +
             "\" y2=\"" + Fixed(y2) + "\" stroke=\"" + stroke + "\"/>\n";
  }
  void Polyline(const std::vector<std::pair<double, double>> &pts, const std::string &stroke) {
    body_ += "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"2\" points=\"";
    for (const auto &[x, y] : pts) body_ += Fixed(x) + "," + Fixed(y) + " ";
    body_ += "\"/>\n";
    for (const auto &[x, y] : pts) {
      body_ += "<circle cx=\"" + Fixed(x) + "\" cy=\"" + Fixed(y) + "\" r=\"3\" fill=\"" + stroke + "\"/>\n";
    }
  }
  std::string str() const {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width_) +
           "\" height=\"" + std::to_string(height_) + "\" font-family=\"sans-serif\">\n" +
           "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n" + body_ + "</svg>\n";
  }

 private:
  int width_, height_;
  std::string body_;
};

std::string Shade(double v) {
  const int c = static_cast<int>(std::lround(255.0 * (1.0 - std::clamp(v, 0.0, 1.0))));
  char buf[16];
  std::snprintf(buf, sizeof(buf), "#%02x%02xff", c, c);
  return buf;
}

std::string BarChart(const std::string &title, const std::vector<std::string> &names,
                     const std::vector<double> &values, const std::string &ylabel) {
  const int n = static_cast<int>(names.size());
  const int w = std::max(320, 60 + 34 * n), h = 360;
  const double left = 50, bottom = h - 110.0, top = 40, slot = (w - left - 20.0) / std::max(1, n);
  const double mx = values.empty() ? 1.0 : std::max(1e-12, *std::max_element(values.begin(), values.end()));
  Svg svg(w, h);
  svg.Text(w / 2.0, 20, title, "middle", 14);
  svg.Line(left, top, left, bottom);
  svg.Line(left, bottom, w - 20.0, bottom);
  svg.Text(14, (top + bottom) / 2, ylabel, "middle", 11, -90);
  svg.Text(left - 4, top + 4, Num(mx), "end", 9);
  for (int i = 0; i < n; ++i) {
    const double bh = (bottom - top) * values[static_cast<size_t>(i)] / mx;
    const double x = left + slot * i + slot * 0.15;
    svg.Rect(x, bottom - bh, slot * 0.7, bh, "#4c72b0");
    svg.Text(x + slot * 0.35, bottom + 10, names[static_cast<size_t>(i)], "end", 9, -60);
  }
  return svg.str();
}

void Write(const fs::path &path, const std::string &text, std::vector<fs::path> &written) {
  WriteTextFile(path, text);
  written.push_back(path);
}

}  // namespace

std::string CsvField(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string MetricsCsv(const std::vector<std::pair<std::string, double>> &metrics,
                       const std::vector<ClassScores> &per_class) {
  std::string out = "metric,value\n";
  for (const auto &[k, v] : metrics) out += CsvField(k) + "," + Num(v) + "\n";
  for (const auto &c : per_class) {
    out += CsvField("precision/" + c.label) + "," + Num(c.precision) + "\n";
    out += CsvField("recall/" + c.label) + "," + Num(c.recall) + "\n";
    out += CsvField("f1/" + c.label) + "," + Num(c.f1) + "\n";
    out += CsvField("support/" + c.label) + "," + std::to_string(c.support) + "\n";
  }
  return out;
}

std::string ConfusionCsv(const ConfusionMatrix &m) {
  std::string out = "gold\\predicted";
  for (const auto &l : m.labels) out += "," + CsvField(l);
  out += "\n";
  for (size_t i = 0; i < m.counts.size(); ++i) {
    out += CsvField(m.labels[i]);
    for (long v : m.counts[i]) out += "," + std::to_string(v);
    out += "\n";
  }
  return out;
}

std::string NormalizedConfusionCsv(const ConfusionMatrix &m) {
  const auto norm = m.RowNormalized();
  std::string out = "gold\\predicted";
  for (const auto &l : m.labels) out += "," + CsvField(l);
  out += "\n";
  for (size_t i = 0; i < norm.size(); ++i) {
    out += CsvField(m.labels[i]);
    for (double v : norm[i]) out += "," + Num(v);
    out += "\n";
  }
  return out;
}

std::string ClassDistributionCsv(const CorpusStats &stats) {
  std::string out = "label,count\n";
  for (const auto &[name, count] : stats.class_counts) {
    out += CsvField(name) + "," + std::to_string(count) + "\n";
  }
  return out;
}

std::string SentenceLengthCsv(const CorpusStats &stats) {
  std::string out = "length_from,length_to,count\n";
  for (const auto &[lo, count] : stats.sentence_length_histogram) {
    out += std::to_string(lo) + "," + std::to_string(lo + stats.bucket_width - 1) + "," +
           std::to_string(count) + "\n";
  }
  return out;
}

std::string MetricCurveCsv(const train::TrainHistory &history) {
  std::string out = "epoch,val_metric,best_so_far\n";
  double best = -std::numeric_limits<double>::infinity();
  for (const auto &e : history.epochs) {
    best = std::max(best, e.metric);
    out += std::to_string(e.epoch) + "," + Num(e.metric) + "," + Num(best) + "\n";
  }
  return out;
}

std::string GridCsv(const std::vector<GridCell> &grid) {
  std::string out = "lr,batch_size,metric\n";
  for (const auto &c : grid) {
    out += Num(c.lr) + "," + std::to_string(c.batch_size) + "," + Num(c.metric) + "\n";
  }
  return out;
}

std::vector<fs::path> EmitReport(const ReportInputs &in, const fs::path &out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir / "figures", ec);
  if (ec) throw IoError("cannot create report directory " + out_dir.string() + ": " + ec.message());
  std::vector<fs::path> written;
  const fs::path fig = out_dir / "figures";

  if (!in.metrics.empty() || !in.per_class.empty()) {
    Write(out_dir / "metrics.csv", MetricsCsv(in.metrics, in.per_class), written);
  }
  if (in.confusion) {
    const ConfusionMatrix &m = *in.confusion;
    Write(out_dir / "confusion.csv", ConfusionCsv(m), written);
    Write(fig / "confusion_normalized.csv", NormalizedConfusionCsv(m), written);
    const auto norm = m.RowNormalized();
    const int k = static_cast<int>(m.labels.size());
    const int cell = 34, left = 150, top = 40;
    Svg svg(left + cell * k + 20, top + cell * k + 150);
    svg.Text(left + cell * k / 2.0, 20, "Confusion matrix (row-normalized)", "middle", 14);
    for (int i = 0; i < k; ++i) {
      svg.Text(left - 6, top + cell * i + cell * 0.6, m.labels[static_cast<size_t>(i)], "end", 9);
      svg.Text(left + cell * i + cell * 0.5, top + cell * k + 8, m.labels[static_cast<size_t>(i)],
               "end", 9, -60);
      for (int j = 0; j < k; ++j) {
        const double v = norm[static_cast<size_t>(i)][static_cast<size_t>(j)];
        svg.Rect(left + cell * j, top + cell * i, cell - 1, cell - 1, Shade(v));
        svg.Text(left + cell * j + cell * 0.5, top + cell * i + cell * 0.6, Fixed(v), "middle", 8);
      }
    }
    Write(fig / "confusion_normalized.svg", svg.str(), written);
  }
  if (in.history) {
    Write(out_dir / "history.csv", in.history->ToCsv(), written);
    Write(fig / "metric_curve.csv", MetricCurveCsv(*in.history), written);
    const auto &eps = in.history->epochs;
    const int w = 480, h = 320;
    const double left = 50, right = w - 20.0, top = 40, bottom = h - 50.0;
    Svg svg(w, h);
    svg.Text(w / 2.0, 20, "Validation metric per epoch", "middle", 14);
    svg.Line(left, top, left, bottom);
    svg.Line(left, bottom, right, bottom);
    svg.Text((left + right) / 2, h - 15, "epoch");
    svg.Text(left - 6, top + 4, "1", "end", 9);
    svg.Text(left - 6, bottom, "0", "end", 9);
    std::vector<std::pair<double, double>> pts;
    const double n = std::max<double>(1.0, static_cast<double>(eps.size()) - 1.0);
    for (size_t i = 0; i < eps.size(); ++i) {
      const double x = eps.size() == 1 ? (left + right) / 2 : left + (right - left) * i / n;
      const double y = bottom - (bottom - top) * std::clamp(eps[i].metric, 0.0, 1.0);
      pts.emplace_back(x, y);
      svg.Text(x, bottom + 14, std::to_string(eps[i].epoch), "middle", 9);
    }
    if (!pts.empty()) svg.Polyline(pts, "#c44e52");
    Write(fig / "metric_curve.svg", svg.str(), written);
  }
  if (in.stats) {
    Write(fig / "class_distribution.csv", ClassDistributionCsv(*in.stats), written);
    std::vector<std::string> names;
    std::vector<double> values;
    for (const auto &[name, count] : in.stats->class_counts) {
      names.push_back(name);
      values.push_back(count);
    }
    Write(fig / "class_distribution.svg", BarChart("Class distribution", names, values, "count"),
          written);
    Write(fig / "sentence_lengths.csv", SentenceLengthCsv(*in.stats), written);
    names.clear();
    values.clear();
    for (const auto &[lo, count] : in.stats->sentence_length_histogram) {
      names.push_back(std::to_string(lo));
      values.push_back(count);
    }
    Write(fig / "sentence_lengths.svg",
          BarChart("Sentence length (tokens)", names, values, "sentences"), written);
  }
  if (!in.grid.empty()) {
    Write(fig / "grid.csv", GridCsv(in.grid), written);
    std::set<double> lrs;
    std::set<int> batches;
    std::map<std::pair<double, int>, double> value;
    for (const auto &c : in.grid) {
      lrs.insert(c.lr);
      batches.insert(c.batch_size);
      value[{c.lr, c.batch_size}] = c.metric;
    }
    const int cell = 70, left = 90, top = 50;
    Svg svg(left + cell * static_cast<int>(batches.size()) + 20,
            top + cell * static_cast<int>(lrs.size()) + 40);
    svg.Text(left + cell * batches.size() / 2.0, 20, "Metric by learning rate and batch size",
             "middle", 13);
    int col = 0;
    for (int b : batches) svg.Text(left + cell * col++ + cell / 2.0, top - 8, "batch " + std::to_string(b));
    int row = 0;
    for (double lr : lrs) {
      svg.Text(left - 6, top + cell * row + cell / 2.0, Num(lr), "end", 10);
      col = 0;
      for (int b : batches) {
        auto it = value.find({lr, b});
        if (it != value.end()) {
          svg.Rect(left + cell * col, top + cell * row, cell - 2, cell - 2, Shade(it->second));
          svg.Text(left + cell * col + cell / 2.0, top + cell * row + cell / 2.0, Fixed(it->second, 3));
        }
        ++col;
      }
      ++row;
    }
    Write(fig / "grid.svg", svg.str(), written);
  }
  return written;
}

}  // namespace legalseq::eval
