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

#include "cogload/tree.hpp"

#include <algorithm>
#include <numeric>

#include "cogload/error.hpp"

namespace cogload {

namespace {

using RowLists = std::vector<std::vector<int>>;

struct GiniCriterion {
  using Stats = std::vector<double>;
  std::span<const int> y;
  std::span<const double> w;
  int n_classes;
  double min_leaf;

  Stats empty() const { return Stats(static_cast<std::size_t>(n_classes), 0.0); }
  void add(Stats& s, int row) const { s[static_cast<std::size_t>(y[row])] += w[row]; }
  void sub(Stats& s, int row) const { s[static_cast<std::size_t>(y[row])] -= w[row]; }
  static double weight(const Stats& s) { return std::accumulate(s.begin(), s.end(), 0.0); }
  // Negative weighted Gini impurity, so that gain = score(L) + score(R) - score(parent).
  double score(const Stats& s) const {
    const double n = weight(s);
    if (n <= 0.0) return 0.0;
    double sq = 0.0;
    for (double c : s) sq += c * c;
    return sq / n - n;
  }
  double gain(const Stats& l, const Stats& r, const Stats& p) const { return score(l) + score(r) - score(p); }
  bool leaf_ok(const Stats& s) const { return weight(s) >= min_leaf; }
  bool pure(const Stats& s) const {
    int nonzero = 0;
    for (double c : s) nonzero += c > 0.0 ? 1 : 0;
    return nonzero <= 1;
  }
  std::vector<double> value(const Stats& s) const {
    std::vector<double> v = s;
    const double n = weight(s);
    if (n > 0.0) {
      for (double& c : v) c /= n;
    }
    return v;
  }
  double min_gain(const Stats& p) const { return 1e-12 * weight(p); }
};

struct GradientCriterion {
  struct Stats {
    double g = 0.0;
    double h = 0.0;
  };
  std::span<const double> grad;
  std::span<const double> hess;
  GradientTreeParams params;

  Stats empty() const { return {}; }
  void add(Stats& s, int row) const {
    s.g += grad[row];
    s.h += hess[row];
  }
  void sub(Stats& s, int row) const {
    s.g -= grad[row];
    s.h -= hess[row];
  }
  double score(const Stats& s) const { return s.g * s.g / (s.h + params.lambda_l2); }
  double gain(const Stats& l, const Stats& r, const Stats& p) const {
    return 0.5 * (score(l) + score(r) - score(p)) - params.gamma;
  }
  bool leaf_ok(const Stats& s) const { return s.h >= params.min_child_weight; }
  bool pure(const Stats&) const { return false; }
  std::vector<double> value(const Stats& s) const {
    return {-s.g / (s.h + params.lambda_l2) * params.learning_rate};
  }
  double min_gain(const Stats&) const { return 0.0; }
};

template <typename Criterion>
class Builder {
 public:
  Builder(const Matrix& x, const Criterion& crit, int max_depth, std::size_t features_per_split, Rng* rng,
          std::vector<double>& importance)
      : x_(x), crit_(crit), max_depth_(max_depth), k_(features_per_split), rng_(rng), importance_(importance) {
    d_ = x.empty() ? 0 : x.front().size();
    if (importance_.size() != d_) importance_.assign(d_, 0.0);
    features_.resize(d_);
    std::iota(features_.begin(), features_.end(), 0);
  }

  Tree run(const std::vector<int>& rows) {
    RowLists sorted(d_);
    for (std::size_t f = 0; f < d_; ++f) {
      sorted[f] = rows;
      std::stable_sort(sorted[f].begin(), sorted[f].end(),
                       [&](int a, int b) { return x_[static_cast<std::size_t>(a)][f] < x_[static_cast<std::size_t>(b)][f]; });
    }
    auto stats = crit_.empty();
    for (int r : rows) crit_.add(stats, r);
    grow(std::move(sorted), rows, stats, 0);
    return std::move(tree_);
  }

 private:
  int grow(RowLists sorted, const std::vector<int>& rows, const typename Criterion::Stats& stats, int depth) {
    const int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.push_back({});
    tree_.nodes[static_cast<std::size_t>(id)].value = crit_.value(stats);
    if ((max_depth_ > 0 && depth >= max_depth_) || rows.size() < 2 || crit_.pure(stats)) return id;

    // Visiting candidates in random order makes exact gain ties, such as
    // duplicated columns, go to a random feature rather than the first one.
    std::size_t n_candidates = d_;
    if (rng_ != nullptr) {
      if (k_ > 0 && k_ < d_) n_candidates = k_;
      for (std::size_t i = 0; i < n_candidates && i + 1 < d_; ++i) {
        const std::size_t j = i + rng_->index(d_ - i);
        std::swap(features_[i], features_[j]);
      }
    }
    const std::vector<std::size_t> candidates(features_.begin(),
                                              features_.begin() + static_cast<std::ptrdiff_t>(n_candidates));

    double best_gain = crit_.min_gain(stats);
    int best_feature = -1;
    double best_threshold = 0.0;
    for (std::size_t f : candidates) {
      const auto& order = sorted[f];
      auto left = crit_.empty();
      auto right = stats;
      for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const int r = order[i];
        crit_.add(left, r);
        crit_.sub(right, r);
        const double v = x_[static_cast<std::size_t>(r)][f];
        const double next = x_[static_cast<std::size_t>(order[i + 1])][f];
        if (!(next > v)) continue;
        if (!crit_.leaf_ok(left) || !crit_.leaf_ok(right)) continue;
        const double g = crit_.gain(left, right, stats);
        if (g > best_gain) {
          best_gain = g;
          best_feature = static_cast<int>(f);
          best_threshold = v;
        }
      }
    }
    if (best_feature < 0) return id;

    const auto bf = static_cast<std::size_t>(best_feature);
    importance_[bf] += best_gain;
    auto goes_left = [&](int r) { return x_[static_cast<std::size_t>(r)][bf] <= best_threshold; };
    RowLists ls(d_), rs(d_);
    for (std::size_t f = 0; f < d_; ++f) {
      for (int r : sorted[f]) (goes_left(r) ? ls[f] : rs[f]).push_back(r);
      std::vector<int>().swap(sorted[f]);
    }
    std::vector<int> lrows, rrows;
    auto lstats = crit_.empty();
    auto rstats = crit_.empty();
    for (int r : rows) {
      if (goes_left(r)) {
        lrows.push_back(r);
        crit_.add(lstats, r);
      } else {
        rrows.push_back(r);
        crit_.add(rstats, r);
      }
    }
    const int l = grow(std::move(ls), lrows, lstats, depth + 1);
    const int rr = grow(std::move(rs), rrows, rstats, depth + 1);
    TreeNode& node = tree_.nodes[static_cast<std::size_t>(id)];
    node.feature = best_feature;
    node.threshold = best_threshold;
    node.left = l;
    node.right = rr;
    return id;
  }

  const Matrix& x_;
  Criterion crit_;
  int max_depth_;
  std::size_t k_;
  Rng* rng_;
  std::vector<double>& importance_;
  std::size_t d_ = 0;
  std::vector<std::size_t> features_;
  Tree tree_;
};

std::size_t subtree_depth(const Tree& t, int id) {
  const TreeNode& n = t.nodes[static_cast<std::size_t>(id)];
  if (n.feature < 0) return 0;
  return 1 + std::max(subtree_depth(t, n.left), subtree_depth(t, n.right));
}

}  // namespace

const std::vector<double>& Tree::leaf(std::span<const double> row) const {
  std::size_t i = 0;
  while (nodes[i].feature >= 0) {
    const TreeNode& n = nodes[i];
    i = static_cast<std::size_t>(row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right);
  }
  return nodes[i].value;
}

std::size_t Tree::depth() const { return nodes.empty() ? 0 : subtree_depth(*this, 0); }

std::size_t Tree::n_leaves() const {
  return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.feature < 0; }));
}

Tree fit_classification_tree(const Matrix& x, std::span<const int> y, int n_classes, std::span<const double> weights,
                             const ClassificationTreeParams& params, Rng& rng, std::vector<double>& importance) {
  if (y.size() != x.size() || weights.size() != x.size()) fail(ErrorKind::Length, "tree inputs differ in length");
  std::vector<int> rows;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (weights[i] > 0.0) rows.push_back(static_cast<int>(i));
  }
  if (rows.empty()) fail(ErrorKind::DegenerateFit, "no rows with positive weight");
  GiniCriterion crit{y, weights, n_classes, params.min_leaf};
  Builder<GiniCriterion> b(x, crit, params.max_depth, params.features_per_split, &rng, importance);
  return b.run(rows);
}

Tree fit_gradient_tree(const Matrix& x, std::span<const double> grad, std::span<const double> hess,
                       const GradientTreeParams& params, std::vector<double>& importance) {
  if (grad.size() != x.size() || hess.size() != x.size()) fail(ErrorKind::Length, "tree inputs differ in length");
  std::vector<int> rows(x.size());
  std::iota(rows.begin(), rows.end(), 0);
  GradientCriterion crit{grad, hess, params};
  Builder<GradientCriterion> b(x, crit, params.max_depth, 0, nullptr, importance);
  return b.run(rows);
}

}  // namespace cogload
