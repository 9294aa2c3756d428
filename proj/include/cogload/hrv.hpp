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

#include <span>
#include <string>
#include <vector>

#include "cogload/ecg.hpp"
#include "cogload/signal.hpp"

namespace cogload {

struct TimeDomain {
  double mean_nn = 0.0;
  double sdnn = 0.0;
  double rmssd = 0.0;
  double pnn40 = 0.0;
};

struct Poincare {
  double sd1 = 0.0;
  double sd2 = 0.0;
  bool clamped = false;
};

struct FrequencyParams {
  double tachogram_hz = 4.0;
  double lf_lo = 0.04, lf_hi = 0.15;
  double hf_lo = 0.15, hf_hi = 0.40;
  Window window = Window::Hann;
};

struct FrequencyDomain {
  double lf = 0.0;
  double hf = 0.0;
  double lf_hf = 0.0;
  bool short_window = false;       // under 60 s of RR data
  bool unreliable_window = false;  // under 10 s
  bool hf_zero = false;            // lf_hf reported as +inf
};

struct HrvFeatures {
  double mean_nn = 0.0, sdnn = 0.0, rmssd = 0.0, sd1 = 0.0, sd2 = 0.0, pnn40 = 0.0;
  double lf = 0.0, hf = 0.0, lf_hf = 0.0;
  bool sd2_clamped = false;
  bool short_window = false;
  bool unreliable_window = false;
  bool hf_zero = false;
};

TimeDomain time_domain(std::span<const double> rr_ms);
TimeDomain time_domain(const RRSeries& rr);

Poincare poincare(double sdnn, double rmssd);

FrequencyDomain frequency_domain(std::span<const double> rr_ms, const FrequencyParams& params = {});
FrequencyDomain frequency_domain(const RRSeries& rr, const FrequencyParams& params = {});

HrvFeatures compute_hrv(const RRSeries& rr, const FrequencyParams& params = {});

// Names of the HRV columns used by feature tables, optionally with pnn40.
std::vector<std::string> hrv_feature_names(bool include_pnn40);
std::vector<double> hrv_feature_values(const HrvFeatures& f, bool include_pnn40);

}  // namespace cogload
