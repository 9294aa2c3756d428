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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cogload/dataset.hpp"
#include "cogload/feature_table.hpp"
#include "cogload/metrics.hpp"
#include "cogload/ml.hpp"

namespace cogload {

enum class Direction { EcgToEeg, EegToEcg };
enum class Alignment { ChannelMean, PerChannelInstances };
// How features are put on a common scale before training and testing.
// PerDomain fits median/IQR on each modality's own rows (labels unused);
// PerDomainRank maps each value to its mid-rank quantile within its own domain.
// SourceOnly fits on the source and applies the same numbers to the target.
enum class Standardization { PerDomain, PerDomainRank, SourceOnly, None };

std::string to_string(Direction d);
std::string to_string(Alignment a);
std::string to_string(Standardization s);
Direction parse_direction(const std::string& s);
Alignment parse_alignment(const std::string& s);
Standardization parse_standardization(const std::string& s);

struct TransferSpec {
  Direction direction = Direction::EcgToEeg;
  Alignment alignment = Alignment::ChannelMean;
  Standardization standardization = Standardization::PerDomain;
  Task task = Task::MC;
  ModelKind model = ModelKind::RandomForest;
  RandomForestParams rf;
  GradientBoostingParams gb;
};

// Columns "<channel>.f<k>" for k = 1..22 in channel order.
std::vector<std::string> eeg_feature_columns(const std::vector<std::string>& channels = eeg_channel_subset());

// One row per trial, catch22 per channel concatenated. Trials with a channel
// whose features are all invalid are left out and logged.
FeatureTable build_eeg_feature_table(const TrialTensor& eeg);

// Reduces the EEG table to the 22 catch22 columns under their canonical names.
FeatureTable align_eeg_table(const FeatureTable& eeg, Alignment alignment);
// ECG restricted to its catch22 columns, EEG reduced by the alignment.
std::pair<FeatureTable, FeatureTable> align_feature_spaces(const FeatureTable& ecg, const FeatureTable& eeg,
                                                           Alignment alignment);

struct RobustScaler {
  std::vector<double> center;
  std::vector<double> scale;

  static RobustScaler fit(const Matrix& x);
  void apply(Matrix& x) const;
};

// Replaces every finite value by its mid-rank quantile in (0, 1) within its column.
void rank_transform(Matrix& x);

// Source and target task data after alignment and scaling.
std::pair<TaskData, TaskData> prepare_transfer(const TransferSpec& spec, const FeatureTable& ecg, const FeatureTable& eeg);
TrainedEnsemble train_model(ModelKind kind, const TaskData& train, const RandomForestParams& rf,
                            const GradientBoostingParams& gb);
EvalReport run_transfer(const TransferSpec& spec, const FeatureTable& ecg, const FeatureTable& eeg);

struct TransferPair {
  EvalReport ecg_to_eeg;
  EvalReport eeg_to_ecg;
};

// Both directions from one spec; spec.direction is ignored.
TransferPair run_transfer_both(const TransferSpec& spec, const FeatureTable& ecg, const FeatureTable& eeg);
std::string transfer_comparison_csv(const TransferPair& pair);

}  // namespace cogload
