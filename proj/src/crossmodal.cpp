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

#include "cogload/crossmodal.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>

#include "cogload/catch22.hpp"
#include "cogload/error.hpp"

namespace cogload {

namespace {

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void check_labels(const TaskData& source, const TaskData& target) {
  const std::set<int> s(source.y.begin(), source.y.end());
  const std::set<int> t(target.y.begin(), target.y.end());
  if (source.rows() == 0 || target.rows() == 0) fail(ErrorKind::Task, "no rows for this task in one modality");
  if (s != t) fail(ErrorKind::Task, "source and target carry different label sets");
}

}  // namespace

std::string to_string(Direction d) { return d == Direction::EcgToEeg ? "ECG->EEG" : "EEG->ECG"; }

std::string to_string(Alignment a) { return a == Alignment::ChannelMean ? "channel_mean" : "per_channel_instances"; }

std::string to_string(Standardization s) {
  switch (s) {
    case Standardization::PerDomain: return "per_domain";
    case Standardization::PerDomainRank: return "per_domain_rank";
    case Standardization::SourceOnly: return "source_only";
    case Standardization::None: return "none";
  }
  return "none";
}

Direction parse_direction(const std::string& s) {
  if (s == "ECG->EEG" || s == "ecg2eeg") return Direction::EcgToEeg;
  if (s == "EEG->ECG" || s == "eeg2ecg") return Direction::EegToEcg;
  fail(ErrorKind::InvalidArgument, "unknown direction '" + s + "'");
}

Alignment parse_alignment(const std::string& s) {
  if (s == "channel_mean") return Alignment::ChannelMean;
  if (s == "per_channel_instances") return Alignment::PerChannelInstances;
  fail(ErrorKind::InvalidArgument, "unknown alignment '" + s + "'");
}

Standardization parse_standardization(const std::string& s) {
  if (s == "per_domain") return Standardization::PerDomain;
  if (s == "per_domain_rank") return Standardization::PerDomainRank;
  if (s == "source_only") return Standardization::SourceOnly;
  if (s == "none") return Standardization::None;
  fail(ErrorKind::InvalidArgument, "unknown standardization '" + s + "'");
}

std::vector<std::string> eeg_feature_columns(const std::vector<std::string>& channels) {
  std::vector<std::string> cols;
  for (const auto& ch : channels) {
    for (std::size_t k = 1; k <= kCatch22Count; ++k) cols.push_back(ch + ".f" + std::to_string(k));
  }
  return cols;
}

FeatureTable build_eeg_feature_table(const TrialTensor& eeg) {
  if (eeg.modality() != Modality::EEG) fail(ErrorKind::InvalidArgument, "expected an EEG tensor");
  FeatureTable t;
  t.columns = eeg_feature_columns(eeg.channels());
  t.flag_columns = {"c22_invalid"};
  for (const auto& [key, trials] : eeg.cells()) {
    for (const auto& epoch : trials) {
      std::vector<double> values;
      double invalid = 0.0;
      std::string bad;
      for (std::size_t c = 0; c < epoch.samples.size(); ++c) {
        const Catch22Vector v = compute_catch22(epoch.samples[c]);
        if (v.all_invalid() && bad.empty()) bad = eeg.channels()[c];
        for (std::size_t k = 0; k < kCatch22Count; ++k) {
          values.push_back(v.values[k]);
          invalid += v.invalid[k] ? 1.0 : 0.0;
        }
      }
      if (!bad.empty()) {
        t.log.push_back(key.subject + "/" + key.label.class_name() + "/" + std::to_string(epoch.trial_index) +
                        " excluded: channel " + bad + " yields no valid catch22 features");
        continue;
      }
      t.add_row({key.subject, key.label, epoch.trial_index}, std::move(values), {invalid});
    }
  }
  return t;
}

FeatureTable align_eeg_table(const FeatureTable& eeg, Alignment alignment) {
  if (eeg.cols() == 0 || eeg.cols() % kCatch22Count != 0) {
    fail(ErrorKind::FeatureAlignment, "EEG table width is not a multiple of 22");
  }
  const std::size_t n_blocks = eeg.cols() / kCatch22Count;
  FeatureTable out;
  for (auto n : catch22_names()) out.columns.emplace_back(n);
  out.notes = eeg.notes;
  out.log = eeg.log;
  for (std::size_t r = 0; r < eeg.rows(); ++r) {
    const auto& row = eeg.x[r];
    if (alignment == Alignment::ChannelMean) {
      std::vector<double> mean(kCatch22Count);
      for (std::size_t k = 0; k < kCatch22Count; ++k) {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t b = 0; b < n_blocks; ++b) {
          const double v = row[b * kCatch22Count + k];
          if (std::isfinite(v)) {
            sum += v;
            ++count;
          }
        }
        mean[k] = count ? sum / static_cast<double>(count) : std::numeric_limits<double>::quiet_NaN();
      }
      out.add_row(eeg.meta[r], std::move(mean));
    } else {
      for (std::size_t b = 0; b < n_blocks; ++b) {
        std::vector<double> block(row.begin() + static_cast<std::ptrdiff_t>(b * kCatch22Count),
                                  row.begin() + static_cast<std::ptrdiff_t>((b + 1) * kCatch22Count));
        out.add_row(eeg.meta[r], std::move(block));
      }
    }
  }
  return out;
}

std::pair<FeatureTable, FeatureTable> align_feature_spaces(const FeatureTable& ecg, const FeatureTable& eeg,
                                                           Alignment alignment) {
  if (ecg.rows() == 0 || eeg.rows() == 0) fail(ErrorKind::InvalidArgument, "both feature tables must be nonempty");
  FeatureTable e;
  std::vector<std::size_t> pos;
  std::vector<std::string> missing;
  for (auto n : catch22_names()) {
    const std::size_t i = ecg.column_index(std::string(n));
    if (i == static_cast<std::size_t>(-1)) missing.emplace_back(n);
    pos.push_back(i);
    e.columns.emplace_back(n);
  }
  if (!missing.empty()) {
    std::string msg = "ECG table lacks catch22 columns:";
    for (const auto& m : missing) msg += " " + m;
    fail(ErrorKind::FeatureAlignment, msg);
  }
  e.notes = ecg.notes;
  e.log = ecg.log;
  for (std::size_t r = 0; r < ecg.rows(); ++r) {
    std::vector<double> v;
    for (std::size_t i : pos) v.push_back(ecg.x[r][i]);
    e.add_row(ecg.meta[r], std::move(v));
  }
  return {std::move(e), align_eeg_table(eeg, alignment)};
}

RobustScaler RobustScaler::fit(const Matrix& x) {
  RobustScaler s;
  const std::size_t d = x.empty() ? 0 : x.front().size();
  s.center.assign(d, 0.0);
  s.scale.assign(d, 1.0);
  for (std::size_t f = 0; f < d; ++f) {
    std::vector<double> col;
    for (const auto& row : x) {
      if (std::isfinite(row[f])) col.push_back(row[f]);
    }
    if (col.empty()) continue;
    s.center[f] = quantile(col, 0.5);
    const double iqr = quantile(col, 0.75) - quantile(col, 0.25);
    if (iqr > 0.0) s.scale[f] = iqr;
  }
  return s;
}

void RobustScaler::apply(Matrix& x) const {
  for (auto& row : x) {
    for (std::size_t f = 0; f < row.size(); ++f) row[f] = (row[f] - center[f]) / scale[f];
  }
}

void rank_transform(Matrix& x) {
  const std::size_t d = x.empty() ? 0 : x.front().size();
  std::vector<std::size_t> idx;
  for (std::size_t f = 0; f < d; ++f) {
    idx.clear();
    for (std::size_t r = 0; r < x.size(); ++r) {
      if (std::isfinite(x[r][f])) idx.push_back(r);
    }
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a][f] < x[b][f]; });
    const double n = static_cast<double>(idx.size());
    std::vector<double> q(idx.size());
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      while (j < idx.size() && x[idx[j]][f] == x[idx[i]][f]) ++j;
      const double mid = 0.5 * static_cast<double>(i + j) / n;
      for (std::size_t t = i; t < j; ++t) q[t] = mid;
      i = j;
    }
    for (std::size_t i = 0; i < idx.size(); ++i) x[idx[i]][f] = q[i];
  }
}

std::pair<TaskData, TaskData> prepare_transfer(const TransferSpec& spec, const FeatureTable& ecg,
                                               const FeatureTable& eeg) {
  auto [e, g] = align_feature_spaces(ecg, eeg, spec.alignment);
  TaskData ecg_task = for_task(e, spec.task);
  TaskData eeg_task = for_task(g, spec.task);
  TaskData& source = spec.direction == Direction::EcgToEeg ? ecg_task : eeg_task;
  TaskData& target = spec.direction == Direction::EcgToEeg ? eeg_task : ecg_task;
  check_labels(source, target);
  if (spec.standardization == Standardization::PerDomain) {
    RobustScaler::fit(source.x).apply(source.x);
    RobustScaler::fit(target.x).apply(target.x);
  } else if (spec.standardization == Standardization::PerDomainRank) {
    rank_transform(source.x);
    rank_transform(target.x);
  } else if (spec.standardization == Standardization::SourceOnly) {
    const RobustScaler s = RobustScaler::fit(source.x);
    s.apply(source.x);
    s.apply(target.x);
  }
  return {std::move(source), std::move(target)};
}

TrainedEnsemble train_model(ModelKind kind, const TaskData& train, const RandomForestParams& rf,
                            const GradientBoostingParams& gb) {
  return kind == ModelKind::RandomForest ? train_random_forest(train, rf) : train_gradient_boosting(train, gb);
}

EvalReport run_transfer(const TransferSpec& spec, const FeatureTable& ecg, const FeatureTable& eeg) {
  const auto [source, target] = prepare_transfer(spec, ecg, eeg);
  const TrainedEnsemble model = train_model(spec.model, source, spec.rf, spec.gb);
  EvalReport r = evaluate(model, target);
  r.protocol["task"] = to_string(spec.task);
  r.protocol["direction"] = to_string(spec.direction);
  r.protocol["alignment"] = to_string(spec.alignment);
  r.protocol["standardization"] = to_string(spec.standardization);
  r.protocol["source_rows"] = std::to_string(source.rows());
  r.protocol["target_rows"] = std::to_string(target.rows());
  return r;
}

TransferPair run_transfer_both(const TransferSpec& spec, const FeatureTable& ecg, const FeatureTable& eeg) {
  TransferSpec s = spec;
  TransferPair p;
  s.direction = Direction::EcgToEeg;
  p.ecg_to_eeg = run_transfer(s, ecg, eeg);
  s.direction = Direction::EegToEcg;
  p.eeg_to_ecg = run_transfer(s, ecg, eeg);
  return p;
}

std::string transfer_comparison_csv(const TransferPair& pair) {
  std::string out = "direction,alignment,standardization,task,accuracy,macro_f1,weighted_f1,n\n";
  for (const EvalReport* r : {&pair.ecg_to_eeg, &pair.eeg_to_ecg}) {
    out += r->protocol.at("direction") + "," + r->protocol.at("alignment") + "," + r->protocol.at("standardization") +
           "," + r->protocol.at("task") + "," + num(r->accuracy) + "," + num(r->macro_f1) + "," + num(r->weighted_f1) +
           "," + std::to_string(r->n) + "\n";
  }
  return out;
}

}  // namespace cogload
