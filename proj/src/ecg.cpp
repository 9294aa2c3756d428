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

#include "cogload/ecg.hpp"

#include <algorithm>
#include <cmath>

#include "cogload/error.hpp"

namespace cogload {

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<double> moving_average(const std::vector<double>& x, std::size_t width) {
  const std::size_t n = x.size();
  const std::size_t half = width / 2;
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + x[i];
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(n, i + half + 1);
    out[i] = (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
  }
  return out;
}

// Threshold evaluated on a coarse grid and linearly interpolated.
std::vector<double> adaptive_threshold(const std::vector<double>& e, double fs, const DetectorParams& p) {
  const std::size_t n = e.size();
  const auto half = static_cast<std::size_t>(std::max(1.0, std::round(p.window_s * fs / 2.0)));
  const auto step = static_cast<std::size_t>(std::max(1.0, std::round(p.step_s * fs)));
  std::vector<std::size_t> centres;
  for (std::size_t c = 0; c < n; c += step) centres.push_back(c);
  if (centres.back() != n - 1) centres.push_back(n - 1);

  std::vector<double> grid(centres.size());
  std::vector<double> win;
  for (std::size_t g = 0; g < centres.size(); ++g) {
    const std::size_t c = centres[g];
    const std::size_t lo = c >= half ? c - half : 0;
    const std::size_t hi = std::min(n, c + half + 1);
    win.assign(e.begin() + static_cast<std::ptrdiff_t>(lo), e.begin() + static_cast<std::ptrdiff_t>(hi));
    const double top = *std::max_element(win.begin(), win.end());
    const double med = median_of(win);
    for (double& v : win) v = std::fabs(v - med);
    const double mad = median_of(win);
    grid[g] = std::max(med + p.mad_k * mad, p.floor_fraction * top);
  }

  std::vector<double> thr(n);
  for (std::size_t g = 0; g + 1 < centres.size(); ++g) {
    const std::size_t a = centres[g], b = centres[g + 1];
    for (std::size_t i = a; i <= b; ++i) {
      const double t = static_cast<double>(i - a) / static_cast<double>(b - a);
      thr[i] = grid[g] + t * (grid[g + 1] - grid[g]);
    }
  }
  if (centres.size() == 1) thr.assign(n, grid[0]);
  return thr;
}

}  // namespace

RPeakList detect_r_peaks(std::span<const double> ecg, double fs, const DetectorParams& p) {
  if (!(fs > 0.0)) fail(ErrorKind::InvalidArgument, "sampling rate must be positive");
  const std::size_t n = ecg.size();
  if (static_cast<double>(n) < 2.0 * fs) {
    fail(ErrorKind::TooShort, "ECG must span at least 2 s, got " + std::to_string(static_cast<double>(n) / fs) + " s");
  }
  const auto [lo_it, hi_it] = std::minmax_element(ecg.begin(), ecg.end());
  if (!(*hi_it > *lo_it)) fail(ErrorKind::NoPeaks, "ECG has zero variance");

  const double high = std::min(p.qrs_high_hz, 0.45 * fs);
  const double low = std::min(p.qrs_low_hz, 0.5 * high);
  const FilterCoefficients bp = design_filter(FilterSpec::bandpass(low, high, 2), fs);
  const std::vector<double> band = filtfilt(bp, ecg);

  std::vector<double> energy(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double d = 0.5 * (band[i + 1] - band[i - 1]);
    energy[i] = d * d;
  }
  auto width = static_cast<std::size_t>(std::round(p.smooth_ms * fs / 1000.0));
  if (width % 2 == 0) ++width;
  const std::vector<double> smooth = moving_average(energy, std::max<std::size_t>(width, 1));
  const std::vector<double> thr = adaptive_threshold(smooth, fs, p);

  const auto refractory = static_cast<std::size_t>(std::round(p.refractory_ms * fs / 1000.0));
  const auto refine = static_cast<std::size_t>(std::round(p.refine_ms * fs / 1000.0));

  struct Candidate {
    std::size_t at;
    double strength;
    double conf;
  };
  std::vector<Candidate> picked;
  auto accept = [&](Candidate c) {
    if (!picked.empty() && c.at - picked.back().at < refractory) {
      if (c.strength > picked.back().strength) picked.back() = c;
      return;
    }
    picked.push_back(c);
  };
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double v = smooth[i];
    if (v <= thr[i] || v < smooth[i - 1] || v <= smooth[i + 1]) continue;
    accept({i, v, std::clamp(1.0 - thr[i] / v, 0.0, 1.0)});
  }
  if (picked.empty()) fail(ErrorKind::NoPeaks, "no energy peak crossed the adaptive threshold");

  std::vector<Candidate> refined;
  for (const Candidate& c : picked) {
    const std::size_t a = c.at >= refine ? c.at - refine : 0;
    const std::size_t b = std::min(n - 1, c.at + refine);
    std::size_t best = a;
    for (std::size_t i = a; i <= b; ++i) {
      if (ecg[i] > ecg[best]) best = i;
    }
    Candidate r{best, c.strength, c.conf};
    if (!refined.empty() && r.at - refined.back().at < refractory) {
      if (r.strength > refined.back().strength) refined.back() = r;
      continue;
    }
    if (!refined.empty() && r.at <= refined.back().at) continue;
    refined.push_back(r);
  }

  RPeakList out;
  out.fs = fs;
  for (const Candidate& c : refined) {
    out.indices.push_back(c.at);
    out.confidence.push_back(c.conf);
  }
  return out;
}

RPeakList detect_r_peaks(const SignalRecord& ecg, const DetectorParams& params) {
  ecg.validate();
  if (ecg.n_channels() != 1) fail(ErrorKind::InvalidArgument, "R-peak detection expects a single ECG channel");
  return detect_r_peaks(ecg.samples.front(), ecg.fs, params);
}

RRSeries compute_rr(const RPeakList& peaks) {
  if (peaks.indices.size() < 2) {
    fail(ErrorKind::InsufficientPeaks, "need at least 2 peaks, got " + std::to_string(peaks.indices.size()));
  }
  if (!(peaks.fs > 0.0)) fail(ErrorKind::InvalidArgument, "sampling rate must be positive");
  RRSeries rr;
  for (std::size_t i = 0; i + 1 < peaks.indices.size(); ++i) {
    if (peaks.indices[i + 1] <= peaks.indices[i]) fail(ErrorKind::InvalidArgument, "peak indices must ascend");
    const auto d = static_cast<double>(peaks.indices[i + 1] - peaks.indices[i]);
    rr.intervals_ms.push_back(d * 1000.0 / peaks.fs);
    rr.source_peak_index.push_back(i);
  }
  rr.corrected_mask.assign(rr.intervals_ms.size(), false);
  return rr;
}

RRSeries mad_correct(const RRSeries& rr, double threshold_multiplier, ArtifactMode mode) {
  const std::size_t n = rr.intervals_ms.size();
  if (n < 4) fail(ErrorKind::InsufficientData, "MAD correction needs at least 4 intervals, got " + std::to_string(n));
  if (!(threshold_multiplier > 0.0)) fail(ErrorKind::InvalidArgument, "threshold multiplier must be positive");

  const std::vector<double>& orig = rr.intervals_ms;
  std::vector<bool> flagged(n, false);
  if (rr.corrected_mask.size() == n) flagged = rr.corrected_mask;
  std::vector<double> cur = orig;

  auto rebuild = [&] {
    std::vector<std::size_t> good;
    for (std::size_t i = 0; i < n; ++i) {
      if (!flagged[i]) good.push_back(i);
    }
    if (good.empty()) fail(ErrorKind::AllArtifact, "every RR interval was flagged as artifact");
    std::size_t g = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!flagged[i]) {
        cur[i] = orig[i];
        continue;
      }
      while (g + 1 < good.size() && good[g + 1] < i) ++g;
      const std::size_t left = good[g];
      if (left > i) {
        cur[i] = orig[left];
      } else if (g + 1 < good.size()) {
        const std::size_t right = good[g + 1];
        const double t = static_cast<double>(i - left) / static_cast<double>(right - left);
        cur[i] = orig[left] + t * (orig[right] - orig[left]);
      } else {
        cur[i] = orig[left];
      }
    }
  };

  for (std::size_t iter = 0; iter <= n; ++iter) {
    const double med = median_of(cur);
    std::vector<double> dev(n);
    for (std::size_t i = 0; i < n; ++i) dev[i] = std::fabs(cur[i] - med);
    const double mad = std::max(median_of(dev), 1e-9);
    const double bound = threshold_multiplier * kMadConsistency * mad;
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (flagged[i]) continue;
      const bool out_of_range = cur[i] < kMinPhysiologicalRR || cur[i] > kMaxPhysiologicalRR;
      if (dev[i] > bound || out_of_range) {
        flagged[i] = true;
        changed = true;
      }
    }
    if (!changed) break;
    rebuild();
  }

  RRSeries out;
  if (mode == ArtifactMode::Interpolate) {
    out.intervals_ms = cur;
    out.source_peak_index = rr.source_peak_index;
    out.corrected_mask = flagged;
    if (out.source_peak_index.size() != n) {
      out.source_peak_index.resize(n);
      for (std::size_t i = 0; i < n; ++i) out.source_peak_index[i] = i;
    }
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (flagged[i]) continue;
    out.intervals_ms.push_back(orig[i]);
    out.source_peak_index.push_back(i < rr.source_peak_index.size() ? rr.source_peak_index[i] : i);
    out.corrected_mask.push_back(false);
  }
  return out;
}

}  // namespace cogload
