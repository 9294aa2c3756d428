// Copyright 2026 The cogload Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cogload/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "cogload/error.hpp"

namespace cogload {

EvalReport report_from_confusion(const std::vector<std::string>& classes, const std::vector<std::vector<long>>& confusion) {
  const std::size_t k = classes.size();
  if (confusion.size() != k) fail(ErrorKind::Length, "confusion matrix does not match class list");
  EvalReport r;
  r.classes = classes;
  r.confusion = confusion;
  r.precision.assign(k, 0.0);
  r.recall.assign(k, 0.0);
  r.f1.assign(k, 0.0);
  r.support.assign(k, 0);
  std::vector<long> predicted(k, 0);
  long total = 0;
  long trace = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (confusion[i].size() != k) fail(ErrorKind::Length, "confusion matrix is not square");
    for (std::size_t j = 0; j < k; ++j) {
      r.support[i] += confusion[i][j];
      predicted[j] += confusion[i][j];
      total += confusion[i][j];
    }
    trace += confusion[i][i];
  }
  r.n = static_cast<std::size_t>(total);
  if (total == 0) return r;
  r.accuracy = static_cast<double>(trace) / static_cast<double>(total);
  for (std::size_t c = 0; c < k; ++c) {
    const double tp = static_cast<double>(confusion[c][c]);
    if (predicted[c] > 0) r.precision[c] = tp / static_cast<double>(predicted[c]);
    if (r.support[c] > 0) r.recall[c] = tp / static_cast<double>(r.support[c]);
    const double denom = static_cast<double>(predicted[c] + r.support[c]);
    if (denom > 0.0) r.f1[c] = 2.0 * tp / denom;
    r.macro_f1 += r.f1[c];
    r.weighted_f1 += static_cast<double>(r.support[c]) / static_cast<double>(total) * r.f1[c];
  }
  if (k > 0) r.macro_f1 /= static_cast<double>(k);
  return r;
}

EvalReport compute_report(const std::vector<std::string>& classes, std::span<const int> y_true,
                          std::span<const int> y_pred) {
  if (y_true.size() != y_pred.size()) fail(ErrorKind::Length, "label vectors differ in length");
  const std::size_t k = classes.size();
  std::vector<std::vector<long>> cm(k, std::vector<long>(k, 0));
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    if (y_true[i] < 0 || y_pred[i] < 0 || static_cast<std::size_t>(y_true[i]) >= k ||
        static_cast<std::size_t>(y_pred[i]) >= k) {
      fail(ErrorKind::InvalidArgument, "class id out of range");
    }
    ++cm[static_cast<std::size_t>(y_true[i])][static_cast<std::size_t>(y_pred[i])];
  }
  return report_from_confusion(classes, cm);
}

double roc_auc(std::span<const int> y_true, std::span<const double> score) {
  if (y_true.size() != score.size()) fail(ErrorKind::Length, "label and score vectors differ in length");
  std::vector<std::size_t> order(score.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });
  double rank_sum = 0.0;
  double n_pos = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && score[order[j]] == score[order[i]]) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) {
      if (y_true[order[t]] == 1) {
        rank_sum += avg_rank;
        n_pos += 1.0;
      }
    }
    i = j;
  }
  const double n_neg = static_cast<double>(score.size()) - n_pos;
  if (n_pos == 0.0 || n_neg == 0.0) fail(ErrorKind::InvalidArgument, "ROC-AUC needs both classes present");
  return (rank_sum - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
}

nlohmann::ordered_json report_to_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["classes"] = r.classes;
  j["n"] = r.n;
  j["accuracy"] = r.accuracy;
  j["macro_f1"] = r.macro_f1;
  j["weighted_f1"] = r.weighted_f1;
  j["roc_auc"] = r.roc_auc ? nlohmann::ordered_json(*r.roc_auc) : nlohmann::ordered_json(nullptr);
  j["confusion_matrix"] = r.confusion;
  nlohmann::ordered_json per_class = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < r.classes.size(); ++c) {
    per_class.push_back({{"class", r.classes[c]},
                         {"precision", r.precision[c]},
                         {"recall", r.recall[c]},
                         {"f1", r.f1[c]},
                         {"support", r.support[c]}});
  }
  j["per_class"] = per_class;
  nlohmann::ordered_json protocol = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.protocol) protocol[k] = v;
  j["protocol"] = protocol;
  return j;
}

std::string confusion_to_csv(const EvalReport& r) {
  std::string out = "true\\predicted";
  for (const auto& c : r.classes) out += "," + c;
  out += '\n';
  for (std::size_t i = 0; i < r.classes.size(); ++i) {
    out += r.classes[i];
    for (long v : r.confusion[i]) out += "," + std::to_string(v);
    out += '\n';
  }
  return out;
}

}  // namespace cogload
