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

#include "cogload/hrv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cogload/error.hpp"

namespace cogload {

namespace {

// Natural cubic spline through (x, y), evaluated on `at`.
std::vector<double> natural_spline(const std::vector<double>& x, const std::vector<double>& y,
                                   const std::vector<double>& at) {
  const std::size_t n = x.size();
  std::vector<double> m(n, 0.0);
  if (n >= 3) {
    std::vector<double> a(n, 0.0), b(n, 1.0), c(n, 0.0), r(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = x[i] - x[i - 1], h1 = x[i + 1] - x[i];
      a[i] = h0 / 6.0;
      b[i] = (h0 + h1) / 3.0;
      c[i] = h1 / 6.0;
      r[i] = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
    }
    for (std::size_t i = 1; i < n; ++i) {
      const double w = a[i] / b[i - 1];
      b[i] -= w * c[i - 1];
      r[i] -= w * r[i - 1];
    }
    m[n - 1] = r[n - 1] / b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) m[i] = (r[i] - c[i] * m[i + 1]) / b[i];
  }
  std::vector<double> out(at.size());
  std::size_t k = 0;
  for (std::size_t j = 0; j < at.size(); ++j) {
    const double t = at[j];
    while (k + 2 < n && t > x[k + 1]) ++k;
    const double h = x[k + 1] - x[k];
    const double u = (x[k + 1] - t) / h, v = (t - x[k]) / h;
    out[j] = u * y[k] + v * y[k + 1] + ((u * u * u - u) * m[k] + (v * v * v - v) * m[k + 1]) * h * h / 6.0;
  }
  return out;
}

}  // namespace

TimeDomain time_domain(std::span<const double> rr) {
  const std::size_t n = rr.size();
  if (n < 2) fail(ErrorKind::InsufficientData, "time-domain HRV needs at least 2 intervals, got " + std::to_string(n));
  TimeDomain t;
  double sum = 0.0;
  for (double v : rr) sum += v;
  t.mean_nn = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double v : rr) ss += (v - t.mean_nn) * (v - t.mean_nn);
  t.sdnn = std::sqrt(ss / static_cast<double>(n - 1));
  double sd = 0.0;
  std::size_t over = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d = rr[i + 1] - rr[i];
    sd += d * d;
    if (std::fabs(d) > 40.0) ++over;
  }
  t.rmssd = std::sqrt(sd / static_cast<double>(n - 1));
  t.pnn40 = static_cast<double>(over) / static_cast<double>(n - 1);
  return t;
}

TimeDomain time_domain(const RRSeries& rr) { return time_domain(rr.intervals_ms); }

Poincare poincare(double sdnn, double rmssd) {
  if (sdnn < 0.0 || rmssd < 0.0) fail(ErrorKind::InvalidArgument, "sdnn and rmssd must be non-negative");
  Poincare p;
  p.sd1 = std::sqrt(0.5) * rmssd;
  const double radicand = 2.0 * sdnn * sdnn - 0.5 * rmssd * rmssd;
  if (radicand < 0.0) {
    p.sd2 = 0.0;
    p.clamped = true;
  } else {
    p.sd2 = std::sqrt(radicand);
  }
  return p;
}

FrequencyDomain frequency_domain(std::span<const double> rr, const FrequencyParams& params) {
  if (rr.size() < 2) fail(ErrorKind::InsufficientData, "frequency-domain HRV needs at least 2 intervals");
  FrequencyDomain f;
  std::vector<double> t(rr.size()), y(rr.begin(), rr.end());
  double acc = 0.0;
  for (std::size_t i = 0; i < rr.size(); ++i) {
    if (!(rr[i] > 0.0)) fail(ErrorKind::InvalidArgument, "RR intervals must be positive");
    acc += rr[i] / 1000.0;
    t[i] = acc;
  }
  const double duration = acc;
  f.short_window = duration < 60.0;
  f.unreliable_window = duration < 10.0;

  const double step = 1.0 / params.tachogram_hz;
  std::vector<double> grid;
  for (double g = t.front(); g <= t.back() + 1e-12; g += step) grid.push_back(g);
  const std::vector<double> tach = natural_spline(t, y, grid);
  if (tach.size() < 8) {
    f.lf = f.hf = f.lf_hf = std::numeric_limits<double>::quiet_NaN();
    f.unreliable_window = true;
    return f;
  }
  const PowerSpectrum ps = welch_psd(tach, params.tachogram_hz, kAutoSegment, kHalfOverlap, params.window);
  f.lf = ps.band_power(params.lf_lo, params.lf_hi);
  f.hf = ps.band_power(params.hf_lo, params.hf_hi);
  // Roundoff in the spectrum of a flat tachogram is not real power.
  const double scale = std::max(1.0, y.front() * y.front());
  if (f.lf < 1e-20 * scale) f.lf = 0.0;
  if (f.hf < 1e-20 * scale) f.hf = 0.0;
  if (f.hf == 0.0) {
    f.hf_zero = true;
    f.lf_hf = std::numeric_limits<double>::infinity();
  } else {
    f.lf_hf = f.lf / f.hf;
  }
  return f;
}

FrequencyDomain frequency_domain(const RRSeries& rr, const FrequencyParams& params) {
  return frequency_domain(rr.intervals_ms, params);
}

HrvFeatures compute_hrv(const RRSeries& rr, const FrequencyParams& params) {
  const TimeDomain td = time_domain(rr);
  const Poincare pc = poincare(td.sdnn, td.rmssd);
  const FrequencyDomain fd = frequency_domain(rr, params);
  HrvFeatures h;
  h.mean_nn = td.mean_nn;
  h.sdnn = td.sdnn;
  h.rmssd = td.rmssd;
  h.pnn40 = td.pnn40;
  h.sd1 = pc.sd1;
  h.sd2 = pc.sd2;
  h.sd2_clamped = pc.clamped;
  h.lf = fd.lf;
  h.hf = fd.hf;
  h.lf_hf = fd.lf_hf;
  h.short_window = fd.short_window;
  h.unreliable_window = fd.unreliable_window;
  h.hf_zero = fd.hf_zero;
  return h;
}

std::vector<std::string> hrv_feature_names(bool include_pnn40) {
  std::vector<std::string> names = {"mean_nn", "sdnn", "rmssd", "sd1", "sd2"};
  if (include_pnn40) names.push_back("pnn40");
  return names;
}

std::vector<double> hrv_feature_values(const HrvFeatures& f, bool include_pnn40) {
  std::vector<double> v = {f.mean_nn, f.sdnn, f.rmssd, f.sd1, f.sd2};
  if (include_pnn40) v.push_back(f.pnn40);
  return v;
}

}  // namespace cogload
