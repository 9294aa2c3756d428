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

#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "cogload/catch22.hpp"
#include "cogload/crossmodal.hpp"
#include "cogload/synth.hpp"
#include "test_util.hpp"

namespace cogload {
namespace {

using testing::TempDir;
using testing::white_noise;

ConditionLabel label_of(int c) { return coupled_classes()[static_cast<std::size_t>(c)]; }

TEST(EegFeatures, OneTrialFiveChannels) {
  TrialTensor t(Modality::EEG, 128.0, eeg_channel_subset(), 384);
  std::vector<std::vector<double>> chans;
  for (int c = 0; c < 5; ++c) chans.push_back(white_noise(384, 40 + c));
  t.add({"S01", label_of(1)}, {0, chans});
  const FeatureTable ft = build_eeg_feature_table(t);
  EXPECT_EQ(ft.rows(), 1u);
  EXPECT_EQ(ft.cols(), 110u);
  EXPECT_EQ(ft.columns.front(), "Fz.f1");
  EXPECT_EQ(ft.columns.back(), "P4.f22");
}

TEST(EegFeatures, IdenticalChannelsGiveIdenticalBlocks) {
  TrialTensor t(Modality::EEG, 128.0, eeg_channel_subset(), 384);
  const auto x = white_noise(384, 3);
  t.add({"S01", label_of(0)}, {0, {x, x, x, x, x}});
  const FeatureTable ft = build_eeg_feature_table(t);
  for (std::size_t b = 1; b < 5; ++b) {
    for (std::size_t k = 0; k < kCatch22Count; ++k) EXPECT_EQ(ft.x[0][b * 22 + k], ft.x[0][k]);
  }
  const FeatureTable aligned = align_eeg_table(ft, Alignment::ChannelMean);
  ASSERT_EQ(aligned.cols(), 22u);
  EXPECT_EQ(aligned.columns[0], std::string(catch22_names()[0]));
  for (std::size_t k = 0; k < kCatch22Count; ++k) {
    if (std::isfinite(ft.x[0][k])) {
      EXPECT_DOUBLE_EQ(aligned.x[0][k], ft.x[0][k]);
    }
  }
}

TEST(EegFeatures, FlatChannelExcludesTrial) {
  TrialTensor t(Modality::EEG, 128.0, eeg_channel_subset(), 384);
  auto x = white_noise(384, 3);
  t.add({"S01", label_of(0)}, {0, {x, x, std::vector<double>(384, 0.0), x, x}});
  t.add({"S01", label_of(0)}, {1, {x, x, x, x, x}});
  const FeatureTable ft = build_eeg_feature_table(t);
  EXPECT_EQ(ft.rows(), 1u);
  ASSERT_EQ(ft.log.size(), 1u);
  EXPECT_NE(ft.log[0].find("Cz"), std::string::npos);
}

FeatureTable synthetic_eeg_table(std::size_t trials) {
  FeatureTable t;
  t.columns = eeg_feature_columns();
  for (std::size_t i = 0; i < trials; ++i) {
    std::vector<double> row;
    for (int b = 0; b < 5; ++b) {
      for (int k = 0; k < 22; ++k) row.push_back(k == 0 ? b + 1.0 : static_cast<double>(i));
    }
    t.add_row({"S01", label_of(static_cast<int>(i % 4)), static_cast<int>(i)}, row);
  }
  return t;
}

TEST(Alignment, ChannelMeanArithmetic) {
  const FeatureTable a = align_eeg_table(synthetic_eeg_table(1), Alignment::ChannelMean);
  EXPECT_EQ(a.x[0][0], 3.0);
}

TEST(Alignment, PerChannelInstances) {
  const FeatureTable a = align_eeg_table(synthetic_eeg_table(10), Alignment::PerChannelInstances);
  EXPECT_EQ(a.rows(), 50u);
  EXPECT_EQ(a.meta[7].trial_index, 1);
  EXPECT_EQ(a.x[7][0], 3.0);
}

TEST(Alignment, UnknownNameRejected) {
  EXPECT_COGLOAD_ERROR(parse_alignment("diagonal"), ErrorKind::InvalidArgument);
  EXPECT_EQ(parse_alignment("per_channel_instances"), Alignment::PerChannelInstances);
  EXPECT_EQ(to_string(Direction::EcgToEeg), "ECG->EEG");
}

TEST(Alignment, EcgNeedsCatch22Columns) {
  FeatureTable ecg;
  ecg.columns = {"mean_nn"};
  ecg.add_row({"S01", label_of(1), 0}, {800.0});
  EXPECT_COGLOAD_ERROR(align_feature_spaces(ecg, synthetic_eeg_table(4), Alignment::ChannelMean),
                       ErrorKind::FeatureAlignment);
}

TEST(Scaling, RobustScalerAndRanks) {
  Matrix x = {{1.0, 5.0}, {2.0, 5.0}, {3.0, 5.0}, {4.0, 5.0}, {5.0, 5.0}};
  const auto s = RobustScaler::fit(x);
  EXPECT_EQ(s.center[0], 3.0);
  EXPECT_EQ(s.scale[0], 2.0);
  EXPECT_EQ(s.scale[1], 1.0);
  s.apply(x);
  EXPECT_EQ(x[4][0], 1.0);
  EXPECT_EQ(x[0][1], 0.0);
  Matrix r = {{10.0}, {30.0}, {20.0}, {20.0}};
  rank_transform(r);
  EXPECT_DOUBLE_EQ(r[0][0], 0.125);
  EXPECT_DOUBLE_EQ(r[1][0], 0.875);
  EXPECT_DOUBLE_EQ(r[2][0], 0.5);
  EXPECT_DOUBLE_EQ(r[3][0], 0.5);
}

// A table whose catch22 block is the same in both modalities turns transfer
// into plain held-in evaluation.
TEST(Transfer, SelfTransferEqualsHeldIn) {
  Rng rng(3);
  FeatureTable ecg, eeg;
  for (auto n : catch22_names()) ecg.columns.emplace_back(n);
  eeg.columns = eeg_feature_columns();
  for (int i = 0; i < 80; ++i) {
    const int c = i % 4;
    std::vector<double> v;
    for (int k = 0; k < 22; ++k) v.push_back(rng.normal(k < 3 ? c * 0.8 : 0.0, 1.0));
    std::vector<double> wide;
    for (int b = 0; b < 5; ++b) wide.insert(wide.end(), v.begin(), v.end());
    ecg.add_row({"S01", label_of(c), i}, v);
    eeg.add_row({"S01", label_of(c), i}, wide);
  }
  TransferSpec spec;
  spec.standardization = Standardization::None;
  spec.rf.n_trees = 20;
  spec.task = Task::FC;
  const EvalReport r = run_transfer(spec, ecg, eeg);
  const TaskData d = for_task(ecg, Task::FC);
  const EvalReport held_in = evaluate(train_model(spec.model, d, spec.rf, spec.gb), d);
  EXPECT_EQ(r.confusion, held_in.confusion);
  EXPECT_EQ(r.protocol.at("direction"), "ECG->EEG");
}

TEST(Transfer, LabelSetMismatch) {
  FeatureTable ecg, eeg = synthetic_eeg_table(8);
  for (auto n : catch22_names()) ecg.columns.emplace_back(n);
  for (int i = 0; i < 8; ++i) ecg.add_row({"S01", label_of(1 + i % 2), i}, std::vector<double>(22, i));
  TransferSpec spec;
  spec.task = Task::FC;
  EXPECT_COGLOAD_ERROR(prepare_transfer(spec, ecg, eeg), ErrorKind::Task);
}

class CoupledTransfer : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = std::make_unique<TempDir>("coupled");
    CoupledLoadSpec spec;
    spec.subjects = 2;
    spec.trials_per_class = 25;
    spec.seed = 11;
    spec.offset_scale = 2.0;
    const Manifest m = gen_coupled_dataset(spec, dir_->path());
    ecg_ = build_ecg_feature_table(epoch_trials(m, Modality::ECG));
    eeg_ = build_eeg_feature_table(epoch_trials(m, Modality::EEG));
  }
  static void TearDownTestSuite() { dir_.reset(); }

  static std::unique_ptr<TempDir> dir_;
  static FeatureTable ecg_, eeg_;
};

std::unique_ptr<TempDir> CoupledTransfer::dir_;
FeatureTable CoupledTransfer::ecg_;
FeatureTable CoupledTransfer::eeg_;

TEST_F(CoupledTransfer, BothDirectionsAboveNinety) {
  TransferSpec spec;
  spec.rf.n_trees = 200;
  const TransferPair p = run_transfer_both(spec, ecg_, eeg_);
  EXPECT_GE(p.ecg_to_eeg.accuracy, 0.9);
  EXPECT_GE(p.eeg_to_ecg.accuracy, 0.9);
  const std::string csv = transfer_comparison_csv(p);
  EXPECT_NE(csv.find("ECG->EEG"), std::string::npos);
  EXPECT_NE(csv.find("EEG->ECG"), std::string::npos);
}

TEST_F(CoupledTransfer, PermutedTargetLabelsAtChance) {
  FeatureTable eeg = eeg_;
  std::vector<ConditionLabel> labels;
  for (const auto& m : eeg.meta) labels.push_back(m.label);
  Rng rng(99);
  rng.shuffle(labels);
  for (std::size_t i = 0; i < labels.size(); ++i) eeg.meta[i].label = labels[i];
  TransferSpec spec;
  spec.rf.n_trees = 100;
  const EvalReport r = run_transfer(spec, ecg_, eeg);
  EXPECT_NEAR(r.accuracy, 1.0 / 3.0, 0.1);
}

TEST_F(CoupledTransfer, PerChannelInstancesRuns) {
  TransferSpec spec;
  spec.rf.n_trees = 50;
  spec.alignment = Alignment::PerChannelInstances;
  spec.direction = Direction::EegToEcg;
  const EvalReport r = run_transfer(spec, ecg_, eeg_);
  EXPECT_EQ(r.protocol.at("source_rows"), std::to_string(eeg_.rows() * 5 * 3 / 4));
  EXPECT_GT(r.accuracy, 0.5);
}

}  // namespace
}  // namespace cogload
