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

#include <array>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <vector>

#include "cogload/dataset.hpp"
#include "cogload/ecg.hpp"
#include "cogload/signal.hpp"

namespace cogload {

struct EcgSynthSpec {
  double fs = 250.0;
  double duration = 10.0;  // seconds
  double mean_hr = 60.0;   // bpm
  double hrv_sd = 0.0;     // stationary SD of the AR(1) RR jitter, ms
  double ar_coeff = 0.5;
  double lf_mod = 0.0;  // ms amplitude of a 0.1 Hz RR oscillation
  double hf_mod = 0.0;  // ms amplitude of a 0.25 Hz RR oscillation
  double noise_snr_db = std::numeric_limits<double>::infinity();
  double phase = 0.4;          // first R apex at 0.1 s + phase * mean RR
  double t_wave_amp = 0.3;     // mV, R wave is 1 mV
  double qrs_width_ms = 10.0;  // Gaussian width of the Q, R and S bumps
  std::uint64_t seed = 0;

  void validate() const;
};

struct EcgSynthResult {
  SignalRecord signal;  // one channel "ECG", mV
  SignalRecord clean;   // same waveform before noise
  RPeakList peaks;      // exact R apex samples
  std::vector<double> rr_ms;
};

EcgSynthResult gen_ecg(const EcgSynthSpec& spec);

struct EegSynthSpec {
  double fs = 256.0;
  double duration = 10.0;
  double theta_power = 1.0;  // 4-8 Hz
  double alpha_power = 1.0;  // 8-13 Hz
  double beta_power = 0.5;   // 13-30 Hz
  double background_power = 1.0;
  double one_over_f_slope = 1.0;
  std::size_t n_channels = 5;
  std::vector<std::string> channel_names;  // defaults to the standard subset, then ch<k>
  std::uint64_t seed = 0;

  void validate() const;
};

SignalRecord gen_eeg(const EegSynthSpec& spec);

// Additive per-class shifts, in class order JustListen, Five, Nine, Thirteen.
// Defaults: load raises heart rate, narrows RR jitter, shifts EEG power from
// theta toward alpha and flattens the T wave.
struct ClassOffsets {
  double hr_bpm = 0.0;
  double hrv_sd_ms = 0.0;
  double log2_theta_alpha = 0.0;
  double t_wave_mv = 0.0;
};

struct CoupledLoadSpec {
  std::size_t subjects = 4;
  std::size_t trials_per_class = 50;
  std::uint64_t seed = 0;
  double epoch_seconds = 3.0;
  double ecg_fs = 250.0;
  double eeg_fs = 256.0;
  SignalFormat format = SignalFormat::Bsig;

  EcgSynthSpec ecg_base{};
  EegSynthSpec eeg_base{};
  std::array<ClassOffsets, 4> offsets{};
  // Multiplies every class offset; 0 gives a null dataset.
  double offset_scale = 1.0;

  // Variance of the trial's clean ECG added to every EEG channel, relative to
  // the EEG's own variance. Models a volume-conducted cardiac field.
  double cardiac_field = 5.0;

  double trial_hr_sd = 1.5;
  bool subject_noise = false;
  double subject_hr_sd = 5.0;
  double subject_hrv_sd = 5.0;
  double subject_log2_ratio_sd = 0.4;
  double subject_t_wave_sd = 0.05;

  CoupledLoadSpec();
  void validate() const;
};

std::array<ConditionLabel, 4> coupled_classes();

// Writes manifest.json plus one ECG and one EEG file per trial under root.
Manifest gen_coupled_dataset(const CoupledLoadSpec& spec, const std::filesystem::path& root);

}  // namespace cogload
