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
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "cogload/dataset.hpp"

namespace cogload {

enum class FeatureSet { Hrv, Catch22, Both };

std::string to_string(FeatureSet s);
FeatureSet parse_feature_set(const std::string& s);

struct RowMeta {
  std::string subject;
  ConditionLabel label;
  int trial_index = 0;
};

// Rows are trials. NaN marks a missing value.
struct FeatureTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> x;
  std::vector<RowMeta> meta;
  // Companion reliability columns, written as "flag.<name>".
  std::vector<std::string> flag_columns;
  std::vector<std::vector<double>> flags;
  // Free-form header lines such as the config echo; written as "# " comments.
  std::vector<std::string> notes;
  // One line per trial that failed a stage, written as "# log: " comments.
  std::vector<std::string> log;

  std::size_t rows() const { return x.size(); }
  std::size_t cols() const { return columns.size(); }
  std::size_t column_index(const std::string& name) const;  // npos if absent
  void add_row(RowMeta meta, std::vector<double> values, std::vector<double> flag_values = {});
  void validate() const;
};

// Rows of a table restricted to one task, with integer labels and groups.
struct TaskData {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  std::vector<std::string> groups;
  std::vector<std::string> classes;
  std::vector<RowMeta> meta;

  std::size_t rows() const { return x.size(); }
  TaskData subset(const std::vector<std::size_t>& idx) const;
};

TaskData for_task(const FeatureTable& table, Task task);

std::string feature_table_to_csv(const FeatureTable& table);
FeatureTable feature_table_from_csv(const std::string& text, const std::string& origin = "<memory>");
void save_feature_table(const FeatureTable& table, const std::filesystem::path& path);
FeatureTable load_feature_table(const std::filesystem::path& path);

struct EcgFeatureOptions {
  FeatureSet set = FeatureSet::Both;
  bool include_pnn40 = false;
  double low_hz = 0.5;
  double high_hz = 40.0;
  int order = 2;
  double mad_multiplier = 3.5;
};

std::vector<std::string> ecg_feature_columns(const EcgFeatureOptions& options = {});

// Per-epoch ECG features: band-pass, R-peaks, RR, MAD cleaning, HRV and
// catch22 of the filtered epoch. A failed HRV stage leaves NaN and a flag.
FeatureTable build_ecg_feature_table(const TrialTensor& ecg, const EcgFeatureOptions& options = {});

}  // namespace cogload
