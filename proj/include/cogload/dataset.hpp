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

#include <compare>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cogload/signal.hpp"

namespace cogload {

enum class Modality { ECG, EEG };
enum class Condition { JustListen, Memory };
enum class Subcondition { None, Five, Nine, Thirteen };
enum class SignalFormat { Csv, Bsig };
// MC: memory load 5/9/13. BC: baseline vs any memory. FC: all four.
enum class Task { MC, BC, FC };

std::string to_string(Modality m);
std::string to_string(Condition c);
std::string to_string(Subcondition s);
std::string to_string(SignalFormat f);
std::string to_string(Task t);
Modality parse_modality(const std::string& s);
Condition parse_condition(const std::string& s);
Subcondition parse_subcondition(const std::string& s);
SignalFormat parse_format(const std::string& s);
Task parse_task(const std::string& s);

struct ConditionLabel {
  Condition condition = Condition::JustListen;
  Subcondition subcondition = Subcondition::None;

  bool valid() const;
  // JustListen, Five, Nine or Thirteen.
  std::string class_name() const;
  static ConditionLabel from_class_name(const std::string& name);
  auto operator<=>(const ConditionLabel&) const = default;
};

std::vector<std::string> task_classes(Task task);
// Class index of `label` under `task`, or nullopt when the task excludes it.
std::optional<int> task_class(Task task, const ConditionLabel& label);

struct RecordingInfo {
  std::string id;
  Modality modality = Modality::ECG;
  std::string signal_path;  // relative to the manifest directory
  SignalFormat format = SignalFormat::Bsig;
  double fs = 0.0;
  std::vector<std::string> channel_names;
  std::size_t n_samples = 0;  // filled in by validation
};

struct SubjectInfo {
  std::string id;
  std::vector<RecordingInfo> recordings;
};

struct EventOnset {
  std::string recording;
  std::size_t onset_sample = 0;
};

struct Event {
  std::string subject;
  ConditionLabel label;
  int trial_index = 0;
  std::vector<EventOnset> onsets;

  std::string describe() const;
};

struct Manifest {
  std::filesystem::path base_dir;
  double epoch_seconds = 3.0;
  std::vector<SubjectInfo> subjects;
  std::vector<Event> events;

  const SubjectInfo* find_subject(const std::string& id) const;
  const RecordingInfo* find_recording(const std::string& subject, const std::string& id) const;
  std::filesystem::path resolve(const RecordingInfo& rec) const { return base_dir / rec.signal_path; }
};

// Parse errors carry line and column. Structural problems raise Validation
// with every offender listed.
Manifest parse_manifest(const std::string& text, const std::filesystem::path& base_dir);
Manifest load_manifest(const std::filesystem::path& path);
// Checks references, label rules, trial uniqueness and, when probe is set,
// reads signal headers to bound-check every onset.
void validate_manifest(Manifest& manifest, bool probe_signals = true);
std::string manifest_to_json(const Manifest& manifest);
void save_manifest(const Manifest& manifest, const std::filesystem::path& path);

// CSV: one header row of channel names, then one row per sample.
SignalRecord read_signal(const std::filesystem::path& path, SignalFormat format, double fs = 0.0);
void write_signal(const std::filesystem::path& path, const SignalRecord& rec, SignalFormat format);

struct CellKey {
  std::string subject;
  ConditionLabel label;
  auto operator<=>(const CellKey&) const = default;
};

struct Epoch {
  int trial_index = 0;
  std::vector<std::vector<double>> samples;  // channel x time, f32-representable
};

// subject x condition x subcondition x trial x time, ragged in the trial axis.
class TrialTensor {
 public:
  TrialTensor() = default;
  TrialTensor(Modality modality, double fs, std::vector<std::string> channels, std::size_t epoch_length);

  Modality modality() const { return modality_; }
  double fs() const { return fs_; }
  const std::vector<std::string>& channels() const { return channels_; }
  std::size_t epoch_length() const { return epoch_length_; }

  // Payload is rounded to f32 so that disk round trips are exact.
  void add(const CellKey& key, Epoch epoch);
  const std::vector<Epoch>* cell(const CellKey& key) const;
  const Epoch* find(const CellKey& key, int trial_index) const;
  const std::map<CellKey, std::vector<Epoch>>& cells() const { return cells_; }
  std::size_t total_epochs() const;
  std::vector<std::string> subjects() const;

  void save(const std::filesystem::path& dir) const;
  static TrialTensor load(const std::filesystem::path& dir);

  bool operator==(const TrialTensor& other) const;

 private:
  Modality modality_ = Modality::ECG;
  double fs_ = 0.0;
  std::vector<std::string> channels_;
  std::size_t epoch_length_ = 0;
  std::map<CellKey, std::vector<Epoch>> cells_;
};

inline const std::vector<std::string>& eeg_channel_subset() {
  static const std::vector<std::string> kChannels = {"Fz", "Pz", "Cz", "P3", "P4"};
  return kChannels;
}

struct EpochOptions {
  std::vector<std::string> eeg_channels = eeg_channel_subset();
  double eeg_target_fs = 128.0;
  double eeg_low_hz = 1.0;
  double eeg_high_hz = 45.0;
  int eeg_order = 2;
  double notch_hz = 50.0;
  double notch_q = 30.0;
  // Runs on the channel-selected, filtered EEG recording before slicing.
  // This is where an artifact-removal stage would go.
  std::function<SignalRecord(const SignalRecord&)> eeg_artifact_hook;
};

// One epoch per event for recordings of the given modality. ECG epochs are raw
// slices at native rate; EEG epochs are channel-selected, band-passed,
// notched, resampled and baseline-corrected over the whole epoch.
TrialTensor epoch_trials(const Manifest& manifest, Modality modality, const EpochOptions& options = {});

}  // namespace cogload
