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

#include <algorithm>
#include <cmath>

#include "cogload/fft.hpp"
#include "cogload/signal.hpp"
#include "test_util.hpp"

namespace cogload {
namespace {

using testing::rms;
using testing::sine;
using testing::white_noise;

double amplitude(const std::vector<double>& v, std::size_t skip) {
  return rms(v, skip, skip) * std::sqrt(2.0);
}

int xcorr_peak_lag(const std::vector<double>& a, const std::vector<double>& b, int max_lag) {
  int best = 0;
  double best_v = -1e300;
  for (int lag = -max_lag; lag <= max_lag; ++lag) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const long j = static_cast<long>(i) + lag;
      if (j >= 0 && j < static_cast<long>(b.size())) s += a[i] * b[static_cast<std::size_t>(j)];
    }
    if (s > best_v) {
      best_v = s;
      best = lag;
    }
  }
  return best;
}

TEST(FilterDesign, BandpassPassbandGain) {
  const auto c = design_filter(FilterSpec::bandpass(0.5, 40.0, 2), 250.0);
  EXPECT_EQ(c.order(), 4);
  EXPECT_NEAR(c.gain(10.0, 250.0), 1.0, 0.05);
  EXPECT_LT(c.gain(0.0, 250.0), 1e-9);
  EXPECT_NEAR(c.gain(0.5, 250.0), std::sqrt(0.5), 0.02);
  EXPECT_NEAR(c.gain(40.0, 250.0), std::sqrt(0.5), 0.02);
}

TEST(FilterDesign, NotchDepthAndShoulder) {
  const auto c = design_filter(FilterSpec::notch(50.0), 250.0);
  EXPECT_LE(20.0 * std::log10(c.gain(50.0, 250.0) + 1e-300), -20.0);
  EXPECT_GE(20.0 * std::log10(c.gain(40.0, 250.0)), -3.0);
}

TEST(FilterDesign, RejectsBadCorners) {
  EXPECT_COGLOAD_ERROR(design_filter(FilterSpec::bandpass(0.0, 40.0), 250.0), ErrorKind::InvalidSpec);
  EXPECT_COGLOAD_ERROR(design_filter(FilterSpec::bandpass(0.5, 125.0), 250.0), ErrorKind::InvalidSpec);
  EXPECT_COGLOAD_ERROR(design_filter(FilterSpec::bandpass(30.0, 20.0), 250.0), ErrorKind::InvalidSpec);
  EXPECT_COGLOAD_ERROR(design_filter(FilterSpec::notch(125.0), 250.0), ErrorKind::InvalidSpec);
}

TEST(Filtfilt, DcIsRemoved) {
  const auto c = design_filter(FilterSpec::bandpass(0.5, 40.0, 2), 250.0);
  std::vector<double> x(2500, 1.0);
  const auto y = filtfilt(c, x);
  EXPECT_LE(rms(y, 500, 500), 0.01);
}

TEST(Filtfilt, ZeroInZeroOut) {
  const auto c = design_filter(FilterSpec::bandpass(0.5, 40.0, 2), 250.0);
  std::vector<double> x(1000, 0.0);
  for (double v : filtfilt(c, x)) EXPECT_EQ(v, 0.0);
}

TEST(Filtfilt, TenHertzSineKeepsAmplitudeAndPhase) {
  const auto c = design_filter(FilterSpec::bandpass(0.5, 40.0, 2), 250.0);
  const auto x = sine(2500, 10.0, 250.0);
  const auto y = filtfilt(c, x);
  const double a = amplitude(y, 250);
  EXPECT_GE(a, 0.95);
  EXPECT_LE(a, 1.05);
  EXPECT_EQ(xcorr_peak_lag(x, y, 12), 0);
}

TEST(Filtfilt, CausalFilterLags) {
  const auto c = design_filter(FilterSpec::bandpass(0.5, 40.0, 2), 250.0);
  const auto x = white_noise(2500, 3);
  const auto y = sosfilt(c, x);
  EXPECT_GT(xcorr_peak_lag(x, y, 20), 0);
}

TEST(Filtfilt, TooShort) {
  const auto c = design_filter(FilterSpec::bandpass(0.5, 40.0, 2), 250.0);
  std::vector<double> x(11, 1.0);
  EXPECT_COGLOAD_ERROR(filtfilt(c, x), ErrorKind::TooShort);
}

TEST(Filtfilt, Linear) {
  const auto c = design_filter(FilterSpec::bandpass(1.0, 30.0, 2), 128.0);
  const auto a = white_noise(600, 1), b = white_noise(600, 2);
  std::vector<double> s(600);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = 2.0 * a[i] - 0.5 * b[i];
  const auto fa = filtfilt(c, a), fb = filtfilt(c, b), fs = filtfilt(c, s);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(fs[i], 2.0 * fa[i] - 0.5 * fb[i], 1e-9);
}

TEST(Resample, HalvesLength) {
  const auto x = white_noise(1000, 4);
  EXPECT_EQ(resample(x, 256.0, 128.0).size(), 500u);
}

TEST(Resample, PreservesToneAmplitude) {
  const auto x = sine(2500, 5.0, 250.0);
  const auto y = resample(x, 250.0, 128.0);
  EXPECT_EQ(y.size(), 1280u);
  EXPECT_NEAR(amplitude(y, 128), 1.0, 0.02);
}

TEST(Resample, IdentityAtSameRate) {
  const auto x = white_noise(333, 5);
  EXPECT_EQ(resample(x, 200.0, 200.0), x);
}

TEST(Resample, RejectsNonPositiveTarget) {
  const auto x = white_noise(100, 5);
  EXPECT_COGLOAD_ERROR(resample(x, 200.0, 0.0), ErrorKind::InvalidArgument);
  EXPECT_COGLOAD_ERROR(resample(x, 200.0, -5.0), ErrorKind::InvalidArgument);
}

TEST(Resample, RecordKeepsNamesAndRate) {
  SignalRecord r;
  r.fs = 256.0;
  r.samples = {white_noise(512, 1), white_noise(512, 2)};
  r.channel_names = {"a", "b"};
  const auto out = resample(r, 128.0);
  EXPECT_EQ(out.fs, 128.0);
  EXPECT_EQ(out.channel_names, r.channel_names);
  EXPECT_EQ(out.n_samples(), 256u);
}

SignalRecord one_channel(std::vector<double> v, double fs) {
  SignalRecord r;
  r.fs = fs;
  r.samples = {std::move(v)};
  r.channel_names = {"x"};
  return r;
}

TEST(Baseline, ConstantBecomesZero) {
  const auto out = baseline_correct(one_channel(std::vector<double>(300, 5.0), 100.0), 0.5, 1.7);
  for (double v : out.samples[0]) EXPECT_EQ(v, 0.0);
}

TEST(Baseline, RemovesOffsetOverWholePeriods) {
  auto x = sine(400, 2.0, 100.0);
  for (auto& v : x) v += 2.0;
  const auto out = baseline_correct(one_channel(x, 100.0), 0.0, 2.0);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(out.samples[0][i], x[i] - 2.0, 1e-9);
}

TEST(Baseline, ChannelsIndependent) {
  SignalRecord r;
  r.fs = 50.0;
  r.samples = {std::vector<double>(100, 1.0), std::vector<double>(100, -3.0)};
  r.samples[0][10] = 3.0;
  r.channel_names = {"a", "b"};
  const auto out = baseline_correct(r, 0.0, 2.0);
  for (const auto& ch : out.samples) {
    double m = 0.0;
    for (double v : ch) m += v;
    EXPECT_NEAR(m / 100.0, 0.0, 1e-12);
  }
}

TEST(Baseline, EmptyWindow) {
  EXPECT_COGLOAD_ERROR(baseline_correct(one_channel(std::vector<double>(100, 1.0), 100.0), 0.5, 0.5),
                       ErrorKind::InvalidArgument);
}

TEST(Welch, WhiteNoiseIntegratesToVariance) {
  const auto x = white_noise(20000, 9);
  const auto ps = welch_psd(x, 100.0, 256);
  const double total = ps.total_power();
  EXPECT_GE(total, 0.9);
  EXPECT_LE(total, 1.1);
  double lo = 1e300, hi = 0.0;
  for (std::size_t i = 1; i + 1 < ps.power.size(); ++i) {
    lo = std::min(lo, ps.power[i]);
    hi = std::max(hi, ps.power[i]);
  }
  EXPECT_LT(hi / lo, 3.0);
}

TEST(Welch, QuarterRateTone) {
  const auto x = sine(1024, 25.0, 100.0);
  const auto ps = welch_psd(x, 100.0, 256);
  const auto it = std::max_element(ps.power.begin(), ps.power.end());
  EXPECT_DOUBLE_EQ(ps.freqs_hz[static_cast<std::size_t>(it - ps.power.begin())], 25.0);
}

TEST(Welch, ZeroSignal) {
  std::vector<double> x(512, 0.0);
  for (double p : welch_psd(x, 64.0).power) EXPECT_EQ(p, 0.0);
}

TEST(Welch, ShorterThanSegment) {
  const auto x = white_noise(100, 1);
  EXPECT_COGLOAD_ERROR(welch_psd(x, 64.0, 256), ErrorKind::TooShort);
}

TEST(Welch, HannParseval) {
  const auto x = white_noise(8192, 11);
  const auto ps = welch_psd(x, 10.0, 512, kHalfOverlap, Window::Hann);
  EXPECT_NEAR(ps.total_power(), 1.0, 0.1);
}

TEST(Fft, RoundTripOddLength) {
  const auto x = white_noise(37, 12);
  std::vector<cplx> d(x.begin(), x.end());
  fft_inplace(d);
  fft_inplace(d, true);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(d[i].real() / 37.0, x[i], 1e-12);
}

TEST(Fft, MatchesDirectDft) {
  const auto x = white_noise(12, 13);
  std::vector<cplx> d(x.begin(), x.end());
  fft_inplace(d);
  for (std::size_t k = 0; k < x.size(); ++k) {
    cplx s = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) s += x[n] * std::polar(1.0, -2.0 * M_PI * double(k * n) / 12.0);
    EXPECT_NEAR(std::abs(d[k] - s), 0.0, 1e-10);
  }
}

TEST(SignalRecord, ValidateCatchesShapeErrors) {
  SignalRecord r;
  r.fs = 100.0;
  r.samples = {{1.0, 2.0}, {1.0}};
  r.channel_names = {"a", "b"};
  EXPECT_COGLOAD_ERROR(r.validate(), ErrorKind::InvalidArgument);
  r.samples[1].push_back(2.0);
  EXPECT_NO_THROW(r.validate());
  r.channel_names = {"a", "a"};
  EXPECT_COGLOAD_ERROR(r.validate(), ErrorKind::InvalidArgument);
}

}  // namespace
}  // namespace cogload
