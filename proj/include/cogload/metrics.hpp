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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace cogload {

struct EvalReport {
  std::vector<std::string> classes;
  std::vector<std::vector<long>> confusion;  // rows true, columns predicted
  std::size_t n = 0;
  double accuracy = 0.0;
  double macro_f1 = 0.0;
  double weighted_f1 = 0.0;
  std::optional<double> roc_auc;  // two-class tasks only
  std::vector<double> precision;
  std::vector<double> recall;
  std::vector<double> f1;
  std::vector<long> support;
  // Everything needed to regenerate the numbers: task, split, model, seed ...
  std::map<std::string, std::string> protocol;
};

// Precision, recall and F1 use 0 when their denominator is 0.
EvalReport report_from_confusion(const std::vector<std::string>& classes, const std::vector<std::vector<long>>& confusion);
EvalReport compute_report(const std::vector<std::string>& classes, std::span<const int> y_true,
                          std::span<const int> y_pred);

// Mann-Whitney AUC with tied scores counted as one half.
double roc_auc(std::span<const int> y_true, std::span<const double> score_positive);

nlohmann::ordered_json report_to_json(const EvalReport& report);
std::string confusion_to_csv(const EvalReport& report);

}  // namespace cogload
