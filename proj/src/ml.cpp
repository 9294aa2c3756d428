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

#include "cogload/ml.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <set>

#include "cogload/error.hpp"
#include "cogload/rng.hpp"
#include "json.hpp"

namespace cogload {

namespace {

constexpr int kModelVersion = 1;

std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void check_trainable(const TaskData& train) {
  if (train.rows() == 0) fail(ErrorKind::DegenerateFit, "empty training set");
  std::set<int> present(train.y.begin(), train.y.end());
  if (present.size() < 2) fail(ErrorKind::DegenerateFit, "training data has a single class");
  for (int y : train.y) {
    if (y < 0 || static_cast<std::size_t>(y) >= train.classes.size()) {
      fail(ErrorKind::InvalidArgument, "label out of range of the class list");
    }
  }
}

std::vector<double> normalized(std::vector<double> v) {
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  if (total > 0.0) {
    for (double& x : v) x /= total;
  } else {
    std::fill(v.begin(), v.end(), 0.0);
  }
  return v;
}

std::vector<double> softmax(std::vector<double> s) {
  const double m = *std::max_element(s.begin(), s.end());
  double sum = 0.0;
  for (double& v : s) {
    v = std::exp(v - m);
    sum += v;
  }
  for (double& v : s) v /= sum;
  return s;
}

}  // namespace

std::string to_string(SplitMode m) { return m == SplitMode::TrialStratified ? "trial_stratified" : "subject_grouped"; }

SplitMode parse_split_mode(const std::string& s) {
  if (s == "trial_stratified") return SplitMode::TrialStratified;
  if (s == "subject_grouped") return SplitMode::SubjectGrouped;
  fail(ErrorKind::InvalidArgument, "unknown split mode '" + s + "'");
}

std::string to_string(ModelKind k) { return k == ModelKind::RandomForest ? "random_forest" : "gradient_boosting"; }

ModelKind parse_model_kind(const std::string& s) {
  if (s == "rf" || s == "random_forest") return ModelKind::RandomForest;
  if (s == "gb" || s == "gradient_boosting") return ModelKind::GradientBoosting;
  fail(ErrorKind::InvalidArgument, "unknown model '" + s + "'");
}

SplitIndices split_indices(const TaskData& data, SplitMode mode, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) fail(ErrorKind::InvalidArgument, "test_fraction must be in (0, 1)");
  const std::size_t k = data.classes.size();
  std::vector<std::vector<std::size_t>> by_class(k);
  for (std::size_t i = 0; i < data.rows(); ++i) by_class[static_cast<std::size_t>(data.y[i])].push_back(i);
  std::size_t present = 0;
  for (const auto& c : by_class) present += c.empty() ? 0 : 1;
  if (present < 2) fail(ErrorKind::Split, "need at least two classes to split");

  SplitIndices out;
  if (mode == SplitMode::TrialStratified) {
    for (std::size_t c = 0; c < k; ++c) {
      auto idx = by_class[c];
      if (idx.empty()) continue;
      if (idx.size() < 2) fail(ErrorKind::Split, "class '" + data.classes[c] + "' has fewer than 2 instances");
      Rng rng(derive_seed(seed, {0x5354, c}));
      rng.shuffle(idx);
      auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(idx.size())));
      n_test = std::clamp<std::size_t>(n_test, 1, idx.size() - 1);
      out.test.insert(out.test.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_test));
      out.train.insert(out.train.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_test), idx.end());
    }
  } else {
    for (std::size_t c = 0; c < k; ++c) {
      if (by_class[c].empty()) continue;
      std::set<std::string> subjects;
      for (std::size_t i : by_class[c]) subjects.insert(data.groups[i]);
      if (subjects.size() < 2) fail(ErrorKind::Split, "class '" + data.classes[c] + "' appears in fewer than 2 subjects");
    }
    std::set<std::string> unique(data.groups.begin(), data.groups.end());
    std::vector<std::string> subjects(unique.begin(), unique.end());
    Rng rng(derive_seed(seed, {0x5347}));
    rng.shuffle(subjects);
    auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(subjects.size())));
    n_test = std::clamp<std::size_t>(n_test, 1, subjects.size() - 1);
    std::set<std::string> test_subjects(subjects.begin(), subjects.begin() + static_cast<std::ptrdiff_t>(n_test));
    for (std::size_t i = 0; i < data.rows(); ++i) {
      (test_subjects.count(data.groups[i]) ? out.test : out.train).push_back(i);
    }
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

std::pair<TaskData, TaskData> split(const TaskData& data, SplitMode mode, double test_fraction, std::uint64_t seed) {
  const SplitIndices s = split_indices(data, mode, test_fraction, seed);
  return {data.subset(s.train), data.subset(s.test)};
}

MedianImputer MedianImputer::fit(const Matrix& x) {
  MedianImputer imp;
  const std::size_t d = x.empty() ? 0 : x.front().size();
  imp.medians.assign(d, 0.0);
  std::vector<double> col;
  for (std::size_t f = 0; f < d; ++f) {
    col.clear();
    for (const auto& row : x) {
      if (std::isfinite(row[f])) col.push_back(row[f]);
    }
    if (col.empty()) continue;
    std::sort(col.begin(), col.end());
    const std::size_t m = col.size() / 2;
    imp.medians[f] = col.size() % 2 ? col[m] : 0.5 * (col[m - 1] + col[m]);
  }
  return imp;
}

void MedianImputer::transform_row(std::vector<double>& row) const {
  for (std::size_t f = 0; f < row.size() && f < medians.size(); ++f) {
    if (!std::isfinite(row[f])) row[f] = medians[f];
  }
}

Matrix MedianImputer::transform(const Matrix& x) const {
  Matrix out = x;
  for (auto& row : out) transform_row(row);
  return out;
}

std::vector<double> TrainedEnsemble::predict_proba(std::span<const double> row) const {
  std::vector<double> r(row.begin(), row.end());
  imputer.transform_row(r);
  const std::size_t k = classes.size();
  std::vector<double> acc(k, 0.0);
  if (kind == ModelKind::RandomForest) {
    for (const auto& t : trees) {
      const auto& v = t.leaf(r);
      for (std::size_t c = 0; c < k; ++c) acc[c] += v[c];
    }
    for (double& v : acc) v /= static_cast<double>(trees.size());
    return acc;
  }
  for (std::size_t i = 0; i < trees.size(); ++i) acc[i % k] += trees[i].leaf(r)[0];
  return softmax(acc);
}

int TrainedEnsemble::predict(std::span<const double> row) const {
  const auto p = predict_proba(row);
  return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
}

Matrix TrainedEnsemble::align(const TaskData& data) const {
  if (data.columns == columns) return data.x;
  std::vector<std::string> missing, extra;
  std::vector<std::size_t> pos(columns.size());
  for (std::size_t i = 0; i < columns.size(); ++i) {
    auto it = std::find(data.columns.begin(), data.columns.end(), columns[i]);
    if (it == data.columns.end()) {
      missing.push_back(columns[i]);
    } else {
      pos[i] = static_cast<std::size_t>(it - data.columns.begin());
    }
  }
  for (const auto& c : data.columns) {
    if (std::find(columns.begin(), columns.end(), c) == columns.end()) extra.push_back(c);
  }
  if (!missing.empty() || !extra.empty()) {
    std::string msg = "feature schema mismatch;";
    if (!missing.empty()) {
      msg += " missing:";
      for (const auto& m : missing) msg += " " + m;
      if (!extra.empty()) msg += ";";
    }
    if (!extra.empty()) {
      msg += " extra:";
      for (const auto& e : extra) msg += " " + e;
    }
    fail(ErrorKind::FeatureAlignment, msg);
  }
  Matrix out(data.rows(), std::vector<double>(columns.size()));
  for (std::size_t r = 0; r < data.rows(); ++r) {
    for (std::size_t i = 0; i < columns.size(); ++i) out[r][i] = data.x[r][pos[i]];
  }
  return out;
}

std::vector<int> TrainedEnsemble::predict(const TaskData& data) const {
  const Matrix x = align(data);
  std::vector<int> out;
  out.reserve(x.size());
  for (const auto& row : x) out.push_back(predict(row));
  return out;
}

std::string TrainedEnsemble::to_json() const {
  nlohmann::ordered_json j;
  j["version"] = kModelVersion;
  j["kind"] = cogload::to_string(kind);
  j["classes"] = classes;
  j["columns"] = columns;
  j["params"] = params;
  j["imputer_medians"] = imputer.medians;
  j["importances"] = importances;
  nlohmann::ordered_json jt = nlohmann::ordered_json::array();
  for (const auto& t : trees) {
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (const auto& n : t.nodes) {
      if (n.feature < 0) {
        nodes.push_back({{"value", n.value}});
      } else {
        nodes.push_back({{"feature", n.feature}, {"threshold", n.threshold}, {"left", n.left}, {"right", n.right}});
      }
    }
    jt.push_back(nodes);
  }
  j["trees"] = jt;
  return j.dump() + "\n";
}

TrainedEnsemble TrainedEnsemble::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::Parse, std::string("model: ") + e.what());
  }
  try {
    if (j.at("version").get<int>() != kModelVersion) {
      fail(ErrorKind::Format, "unsupported model version " + j.at("version").dump());
    }
    TrainedEnsemble m;
    m.kind = parse_model_kind(j.at("kind").get<std::string>());
    m.classes = j.at("classes").get<std::vector<std::string>>();
    m.columns = j.at("columns").get<std::vector<std::string>>();
    m.params = j.at("params").get<std::map<std::string, std::string>>();
    m.imputer.medians = j.at("imputer_medians").get<std::vector<double>>();
    m.importances = j.at("importances").get<std::vector<double>>();
    for (const auto& jt : j.at("trees")) {
      Tree t;
      for (const auto& jn : jt) {
        TreeNode n;
        if (jn.contains("value")) {
          n.value = jn.at("value").get<std::vector<double>>();
        } else {
          n.feature = jn.at("feature").get<int>();
          n.threshold = jn.at("threshold").get<double>();
          n.left = jn.at("left").get<int>();
          n.right = jn.at("right").get<int>();
        }
        t.nodes.push_back(std::move(n));
      }
      m.trees.push_back(std::move(t));
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Format, std::string("model: ") + e.what());
  }
}

TrainedEnsemble train_random_forest(const TaskData& train, const RandomForestParams& params) {
  check_trainable(train);
  if (params.n_trees == 0 || params.min_leaf <= 0.0 || params.max_depth < 0) {
    fail(ErrorKind::InvalidArgument, "random forest parameters must be positive");
  }
  const std::size_t n = train.rows();
  const std::size_t d = train.columns.size();
  TrainedEnsemble m;
  m.kind = ModelKind::RandomForest;
  m.columns = train.columns;
  m.classes = train.classes;
  m.imputer = MedianImputer::fit(train.x);
  const Matrix x = m.imputer.transform(train.x);
  ClassificationTreeParams tp;
  tp.max_depth = params.max_depth;
  tp.min_leaf = params.min_leaf;
  tp.features_per_split = params.features_per_split > 0
                              ? params.features_per_split
                              : static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(d))));
  std::vector<double> importance(d, 0.0);
  std::vector<double> weights(n);
  for (std::size_t t = 0; t < params.n_trees; ++t) {
    Rng rng(derive_seed(params.seed, {0x5246, t}));
    std::fill(weights.begin(), weights.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) weights[rng.index(n)] += 1.0;
    m.trees.push_back(fit_classification_tree(x, train.y, static_cast<int>(m.classes.size()), weights, tp, rng, importance));
  }
  m.importances = normalized(importance);
  m.params = {{"n_trees", std::to_string(params.n_trees)},
              {"max_depth", params.max_depth == 0 ? "unlimited" : std::to_string(params.max_depth)},
              {"min_leaf", num(params.min_leaf)},
              {"features_per_split", std::to_string(tp.features_per_split)},
              {"seed", std::to_string(params.seed)}};
  return m;
}

TrainedEnsemble train_gradient_boosting(const TaskData& train, const GradientBoostingParams& params,
                                        std::vector<double>* loss_trace) {
  check_trainable(train);
  if (params.n_rounds == 0 || !(params.learning_rate > 0.0) || params.max_depth < 1 || params.lambda_l2 < 0.0 ||
      params.gamma < 0.0) {
    fail(ErrorKind::InvalidArgument, "gradient boosting parameters must be positive");
  }
  const std::size_t n = train.rows();
  const std::size_t d = train.columns.size();
  const std::size_t k = train.classes.size();
  TrainedEnsemble m;
  m.kind = ModelKind::GradientBoosting;
  m.columns = train.columns;
  m.classes = train.classes;
  m.imputer = MedianImputer::fit(train.x);
  const Matrix x = m.imputer.transform(train.x);
  GradientTreeParams tp;
  tp.max_depth = params.max_depth;
  tp.lambda_l2 = params.lambda_l2;
  tp.gamma = params.gamma;
  tp.min_child_weight = params.min_child_weight;
  tp.learning_rate = params.learning_rate;

  std::vector<std::vector<double>> score(n, std::vector<double>(k, 0.0));
  std::vector<std::vector<double>> prob(n);
  std::vector<double> grad(n), hess(n);
  std::vector<double> importance(d, 0.0);
  for (std::size_t round = 0; round < params.n_rounds; ++round) {
    for (std::size_t i = 0; i < n; ++i) prob[i] = softmax(score[i]);
    for (std::size_t c = 0; c < k; ++c) {
      for (std::size_t i = 0; i < n; ++i) {
        const double p = prob[i][c];
        grad[i] = p - (static_cast<std::size_t>(train.y[i]) == c ? 1.0 : 0.0);
        hess[i] = std::max(p * (1.0 - p), 1e-16);
        if (!std::isfinite(grad[i]) || !std::isfinite(hess[i])) {
          fail(ErrorKind::Numeric, "non-finite gradient in boosting round " + std::to_string(round));
        }
      }
      Tree t = fit_gradient_tree(x, grad, hess, tp, importance);
      for (std::size_t i = 0; i < n; ++i) score[i][c] += t.leaf(x[i])[0];
      m.trees.push_back(std::move(t));
    }
    if (loss_trace != nullptr) {
      double loss = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto p = softmax(score[i]);
        loss -= std::log(std::max(p[static_cast<std::size_t>(train.y[i])], 1e-300));
      }
      loss_trace->push_back(loss / static_cast<double>(n));
    }
  }
  m.importances = normalized(importance);
  m.params = {{"n_rounds", std::to_string(params.n_rounds)},
              {"learning_rate", num(params.learning_rate)},
              {"max_depth", std::to_string(params.max_depth)},
              {"lambda_l2", num(params.lambda_l2)},
              {"gamma", num(params.gamma)},
              {"min_child_weight", num(params.min_child_weight)},
              {"seed", std::to_string(params.seed)}};
  return m;
}

std::vector<std::pair<std::string, double>> feature_importance(const TrainedEnsemble& model) {
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < model.columns.size(); ++i) {
    out.emplace_back(model.columns[i], i < model.importances.size() ? model.importances[i] : 0.0);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

EvalReport evaluate(const TrainedEnsemble& model, const TaskData& test) {
  if (test.rows() == 0) fail(ErrorKind::InvalidArgument, "empty test set");
  if (test.classes != model.classes) fail(ErrorKind::Task, "test class list differs from the model's");
  const Matrix x = model.align(test);
  std::vector<int> pred;
  std::vector<double> pos;
  for (const auto& row : x) {
    const auto p = model.predict_proba(row);
    pred.push_back(static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin()));
    if (p.size() == 2) pos.push_back(p[1]);
  }
  EvalReport r = compute_report(model.classes, test.y, pred);
  if (model.classes.size() == 2) {
    const bool both = std::find(test.y.begin(), test.y.end(), 0) != test.y.end() &&
                      std::find(test.y.begin(), test.y.end(), 1) != test.y.end();
    if (both) r.roc_auc = roc_auc(test.y, pos);
  }
  r.protocol["model"] = cogload::to_string(model.kind);
  for (const auto& [k, v] : model.params) r.protocol["model." + k] = v;
  return r;
}

}  // namespace cogload
