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

#include "cogload/signal.hpp"

namespace cogload {

struct RPeakList {
  std::vector<std::size_t> indices;
  double fs = 0.0;
  std::vector<double> confidence;  // in [0, 1]
};

struct RRSeries {
  std::vector<double> intervals_ms;
  std::vector<std::size_t> source_peak_index;  // peak that opens each interval
  std::vector<bool> corrected_mask;

  std::size_t size() const { return intervals_ms.size(); }
};

struct DetectorParams {
  double qrs_low_hz = 5.0;
  double qrs_high_hz = 20.0;
  double smooth_ms = 150.0;
  double mad_k = 3.0;
  // Threshold never drops below this fraction of the local energy maximum.
  double floor_fraction = 0.2;
  double refractory_ms = 200.0;
  double refine_ms = 50.0;
  double window_s = 2.5;
  double step_s = 0.25;
};

// Expects one channel of band-passed ECG with upright R waves.
RPeakList detect_r_peaks(std::span<const double> ecg, double fs, const DetectorParams& params = {});
RPeakList detect_r_peaks(const SignalRecord& ecg, const DetectorParams& params = {});

RRSeries compute_rr(const RPeakList& peaks);

enum class ArtifactMode { Interpolate, Remove };

inline constexpr double kMadConsistency = 1.4826;
inline constexpr double kMinPhysiologicalRR = 250.0;
inline constexpr double kMaxPhysiologicalRR = 3000.0;

// Repeats detection and replacement until nothing new is flagged, so a second
// call is a no-op.
RRSeries mad_correct(const RRSeries& rr, double threshold_multiplier = 3.5,
                     ArtifactMode mode = ArtifactMode::Interpolate);

}  // namespace cogload
