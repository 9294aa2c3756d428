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

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cogload/feature_table.hpp"
#include "cogload/metrics.hpp"
#include "cogload/tree.hpp"

namespace cogload {

enum class SplitMode { TrialStratified, SubjectGrouped };

std::string to_string(SplitMode m);
SplitMode parse_split_mode(const std::string& s);

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

SplitIndices split_indices(const TaskData& data, SplitMode mode, double test_fraction, std::uint64_t seed);
std::pair<TaskData, TaskData> split(const TaskData& data, SplitMode mode, double test_fraction, std::uint64_t seed);

// Per-column median of the finite training values; a column with none gets 0.
struct MedianImputer {
  std::vector<double> medians;

  static MedianImputer fit(const Matrix& x);
  Matrix transform(const Matrix& x) const;
  void transform_row(std::vector<double>& row) const;
};

enum class ModelKind { RandomForest, GradientBoosting };

std::string to_string(ModelKind k);
ModelKind parse_model_kind(const std::string& s);

struct RandomForestParams {
  std::size_t n_trees = 300;
  int max_depth = 0;  // unlimited
  double min_leaf = 1.0;
  std::size_t features_per_split = 0;  // 0 means ceil(sqrt(d))
  std::uint64_t seed = 0;
};

struct GradientBoostingParams {
  std::size_t n_rounds = 200;
  double learning_rate = 0.1;
  int max_depth = 6;
  double lambda_l2 = 1.0;
  double gamma = 0.0;
  double min_child_weight = 1.0;
  std::uint64_t seed = 0;
};

class TrainedEnsemble {
 public:
  ModelKind kind = ModelKind::RandomForest;
  std::vector<std::string> columns;
  std::vector<std::string> classes;
  MedianImputer imputer;
  // Random forest: one tree per entry. Boosting: round-major, one tree per class.
  std::vector<Tree> trees;
  std::vector<double> importances;  // sums to 1, or all zero
  std::map<std::string, std::string> params;

  std::size_t n_classes() const { return classes.size(); }
  // Row must already be in this model's column order; missing values allowed.
  std::vector<double> predict_proba(std::span<const double> row) const;
  int predict(std::span<const double> row) const;
  // Reorders columns by name; missing or extra names raise a feature-alignment error.
  Matrix align(const TaskData& data) const;
  std::vector<int> predict(const TaskData& data) const;

  std::string to_json() const;
  static TrainedEnsemble from_json(const std::string& text);
};

TrainedEnsemble train_random_forest(const TaskData& train, const RandomForestParams& params = {});
// loss_trace, when given, receives the mean training log-loss after each round.
TrainedEnsemble train_gradient_boosting(const TaskData& train, const GradientBoostingParams& params = {},
                                        std::vector<double>* loss_trace = nullptr);

// Descending weight, ties by name.
std::vector<std::pair<std::string, double>> feature_importance(const TrainedEnsemble& model);

EvalReport evaluate(const TrainedEnsemble& model, const TaskData& test);

}  // namespace cogload
