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

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace cogload {

struct SignalRecord {
  std::vector<std::vector<double>> samples;  // channel-major
  double fs = 0.0;
  std::vector<std::string> channel_names;
  double start_time = 0.0;

  std::size_t n_channels() const { return samples.size(); }
  std::size_t n_samples() const { return samples.empty() ? 0 : samples.front().size(); }
  // Throws InvalidArgument when the shape, rate or labels are inconsistent.
  void validate() const;
  std::size_t channel_index(const std::string& name) const;  // npos if absent
};

enum class FilterKind { Bandpass, Notch };

struct FilterSpec {
  FilterKind kind = FilterKind::Bandpass;
  double low_hz = 0.0;
  double high_hz = 0.0;
  double center_hz = 0.0;
  double quality = 30.0;
  int order = 2;
  bool zero_phase = true;

  static FilterSpec bandpass(double low_hz, double high_hz, int order = 2, bool zero_phase = true);
  static FilterSpec notch(double center_hz, double quality = 30.0, bool zero_phase = true);
};

// Normalized so that a0 == 1.
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
};

struct FilterCoefficients {
  std::vector<Biquad> sections;

  int order() const { return static_cast<int>(2 * sections.size()); }
  std::complex<double> response(double freq_hz, double fs) const;
  double gain(double freq_hz, double fs) const { return std::abs(response(freq_hz, fs)); }
};

// Butterworth band-pass built from `order` biquads, or a single-biquad notch.
FilterCoefficients design_filter(const FilterSpec& spec, double fs);

std::vector<double> sosfilt(const FilterCoefficients& coeffs, std::span<const double> x);
// Forward-backward with odd reflection padding and steady-state initial
// conditions. Requires at least 3 * order samples.
std::vector<double> filtfilt(const FilterCoefficients& coeffs, std::span<const double> x);

SignalRecord apply_filter(const SignalRecord& rec, const FilterCoefficients& coeffs, bool zero_phase);

std::vector<double> resample(std::span<const double> x, double fs, double target_fs);
SignalRecord resample(const SignalRecord& rec, double target_fs);

// Subtracts each channel's mean over [t0, t1) seconds, measured from the
// first sample of the epoch.
SignalRecord baseline_correct(const SignalRecord& epoch, double t0, double t1);

enum class Window { Rectangular, Hann };

struct PowerSpectrum {
  std::vector<double> freqs_hz;
  std::vector<double> power;
  std::size_t segment_len = 0;
  std::size_t overlap = 0;
  Window window = Window::Rectangular;

  double df() const { return freqs_hz.size() > 1 ? freqs_hz[1] - freqs_hz[0] : 0.0; }
  double total_power() const;
  // Rectangle-rule integral over bins with lo <= f < hi.
  double band_power(double lo_hz, double hi_hz) const;
};

inline constexpr std::size_t kAutoSegment = 0;
inline constexpr std::size_t kHalfOverlap = static_cast<std::size_t>(-1);

PowerSpectrum welch_psd(std::span<const double> series, double fs, std::size_t segment_len = kAutoSegment,
                        std::size_t overlap = kHalfOverlap, Window window = Window::Rectangular);

}  // namespace cogload
