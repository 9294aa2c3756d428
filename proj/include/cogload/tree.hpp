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
#include <span>
#include <vector>

#include "cogload/rng.hpp"

namespace cogload {

using Matrix = std::vector<std::vector<double>>;  // row-major, rows are instances

struct TreeNode {
  int feature = -1;  // -1 for leaves
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  std::vector<double> value;  // class distribution or a single leaf score
};

struct Tree {
  std::vector<TreeNode> nodes;

  // Rows with x[feature] <= threshold go left.
  const std::vector<double>& leaf(std::span<const double> row) const;
  std::size_t depth() const;
  std::size_t n_leaves() const;
};

struct ClassificationTreeParams {
  int max_depth = 0;  // 0 means unlimited
  double min_leaf = 1.0;
  std::size_t features_per_split = 0;  // 0 means all features
};

// Gini tree on weighted rows (weight 0 rows are ignored). Each split's weighted
// impurity decrease is added to importance[feature]. Thresholds are the lower
// of the two training values they separate.
Tree fit_classification_tree(const Matrix& x, std::span<const int> y, int n_classes, std::span<const double> weights,
                             const ClassificationTreeParams& params, Rng& rng, std::vector<double>& importance);

struct GradientTreeParams {
  int max_depth = 6;
  double lambda_l2 = 1.0;
  double gamma = 0.0;
  double min_child_weight = 1.0;
  double learning_rate = 0.1;
};

// Second-order regression tree on per-row gradients and hessians. Leaves hold
// -G / (H + lambda) times the learning rate; split gain goes to importance.
Tree fit_gradient_tree(const Matrix& x, std::span<const double> grad, std::span<const double> hess,
                       const GradientTreeParams& params, std::vector<double>& importance);

}  // namespace cogload
