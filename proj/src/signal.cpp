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

#include "cogload/signal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "cogload/error.hpp"
#include "cogload/fft.hpp"

namespace cogload {

namespace {

constexpr double kPi = std::numbers::pi;

using State = std::array<double, 2>;

void run_sections(const FilterCoefficients& c, std::vector<double>& x, const std::vector<State>* zi, double scale) {
  for (std::size_t s = 0; s < c.sections.size(); ++s) {
    const Biquad& q = c.sections[s];
    double z1 = 0.0, z2 = 0.0;
    if (zi != nullptr) {
      z1 = (*zi)[s][0] * scale;
      z2 = (*zi)[s][1] * scale;
    }
    for (double& v : x) {
      const double in = v;
      const double y = q.b0 * in + z1;
      z1 = q.b1 * in - q.a1 * y + z2;
      z2 = q.b2 * in - q.a2 * y;
      v = y;
    }
  }
}

// Per-section state that a unit step would have reached at steady state.
std::vector<State> steady_state(const FilterCoefficients& c) {
  std::vector<State> zi(c.sections.size());
  double scale = 1.0;
  for (std::size_t s = 0; s < c.sections.size(); ++s) {
    const Biquad& q = c.sections[s];
    const double den = 1.0 + q.a1 + q.a2;
    const double g = den != 0.0 ? (q.b0 + q.b1 + q.b2) / den : 0.0;
    const double z2 = q.b2 - q.a2 * g;
    const double z1 = q.b1 - q.a1 * g + z2;
    zi[s] = {scale * z1, scale * z2};
    scale *= g;
  }
  return zi;
}

FilterCoefficients design_bandpass(double lo, double hi, int order, double fs) {
  const double w1 = 2.0 * fs * std::tan(kPi * lo / fs);
  const double w2 = 2.0 * fs * std::tan(kPi * hi / fs);
  const double bw = w2 - w1;
  const double w0sq = w1 * w2;

  std::vector<cplx> poles;
  for (int k = 0; k < order; ++k) {
    const cplx p = std::polar(1.0, kPi * (2.0 * k + order + 1.0) / (2.0 * order));
    const cplx pb = p * (bw / 2.0);
    const cplx disc = std::sqrt(pb * pb - w0sq);
    for (const cplx s : {pb + disc, pb - disc}) poles.push_back((2.0 * fs + s) / (2.0 * fs - s));
  }

  FilterCoefficients out;
  std::vector<double> reals;
  for (const cplx& z : poles) {
    const double tol = 1e-12 * std::max(1.0, std::abs(z));
    if (std::abs(z.imag()) <= tol) {
      reals.push_back(z.real());
    } else if (z.imag() > 0.0) {
      out.sections.push_back({1.0, 0.0, -1.0, -2.0 * z.real(), std::norm(z)});
    }
  }
  std::sort(reals.begin(), reals.end());
  for (std::size_t i = 0; i + 1 < reals.size(); i += 2) {
    out.sections.push_back({1.0, 0.0, -1.0, -(reals[i] + reals[i + 1]), reals[i] * reals[i + 1]});
  }
  if (out.sections.size() != static_cast<std::size_t>(order)) {
    fail(ErrorKind::InvalidSpec, "band-pass pole pairing failed");
  }

  const double fc = fs / kPi * std::atan(std::sqrt(w0sq) / (2.0 * fs));
  const double g = out.gain(fc, fs);
  const double k = std::pow(1.0 / g, 1.0 / order);
  for (Biquad& q : out.sections) {
    q.b0 *= k;
    q.b2 *= k;
  }
  return out;
}

FilterCoefficients design_notch(double f0, double q, double fs) {
  const double w0 = 2.0 * kPi * f0 / fs;
  const double beta = std::tan(w0 / q / 2.0);
  const double g = 1.0 / (1.0 + beta);
  const double c = std::cos(w0);
  FilterCoefficients out;
  out.sections.push_back({g, -2.0 * g * c, g, -2.0 * g * c, 2.0 * g - 1.0});
  return out;
}

std::size_t reflect_index(long long i, long long n) {
  if (n == 1) return 0;
  const long long period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  if (i >= n) i = period - i;
  return static_cast<std::size_t>(i);
}

std::pair<long long, long long> rate_ratio(double fs, double target) {
  long long a = std::llround(fs * 1000.0);
  long long b = std::llround(target * 1000.0);
  const long long g = std::gcd(a, b);
  return {b / g, a / g};
}

}  // namespace

void SignalRecord::validate() const {
  if (!(fs > 0.0) || !std::isfinite(fs)) fail(ErrorKind::InvalidArgument, "sampling rate must be positive");
  if (channel_names.size() != samples.size()) {
    fail(ErrorKind::InvalidArgument, "channel name count does not match channel count");
  }
  std::set<std::string> seen;
  for (const auto& name : channel_names) {
    if (!seen.insert(name).second) fail(ErrorKind::InvalidArgument, "duplicate channel name " + name);
  }
  for (const auto& ch : samples) {
    if (ch.size() != n_samples()) fail(ErrorKind::InvalidArgument, "channels have unequal sample counts");
  }
}

std::size_t SignalRecord::channel_index(const std::string& name) const {
  auto it = std::find(channel_names.begin(), channel_names.end(), name);
  return it == channel_names.end() ? static_cast<std::size_t>(-1)
                                   : static_cast<std::size_t>(it - channel_names.begin());
}

FilterSpec FilterSpec::bandpass(double low_hz, double high_hz, int order, bool zero_phase) {
  FilterSpec s;
  s.kind = FilterKind::Bandpass;
  s.low_hz = low_hz;
  s.high_hz = high_hz;
  s.order = order;
  s.zero_phase = zero_phase;
  return s;
}

FilterSpec FilterSpec::notch(double center_hz, double quality, bool zero_phase) {
  FilterSpec s;
  s.kind = FilterKind::Notch;
  s.center_hz = center_hz;
  s.quality = quality;
  s.order = 2;
  s.zero_phase = zero_phase;
  return s;
}

std::complex<double> FilterCoefficients::response(double freq_hz, double fs) const {
  const cplx zinv = std::polar(1.0, -2.0 * kPi * freq_hz / fs);
  const cplx zinv2 = zinv * zinv;
  cplx h(1.0, 0.0);
  for (const Biquad& q : sections) {
    h *= (q.b0 + q.b1 * zinv + q.b2 * zinv2) / (1.0 + q.a1 * zinv + q.a2 * zinv2);
  }
  return h;
}

FilterCoefficients design_filter(const FilterSpec& spec, double fs) {
  if (!(fs > 0.0)) fail(ErrorKind::InvalidSpec, "sampling rate must be positive");
  if (spec.order < 1) fail(ErrorKind::InvalidSpec, "filter order must be positive");
  const double nyq = fs / 2.0;
  if (spec.kind == FilterKind::Bandpass) {
    if (!(spec.low_hz > 0.0)) fail(ErrorKind::InvalidSpec, "low corner must be above 0 Hz");
    if (!(spec.high_hz < nyq)) fail(ErrorKind::InvalidSpec, "high corner must be below Nyquist");
    if (!(spec.low_hz < spec.high_hz)) fail(ErrorKind::InvalidSpec, "low corner must be below high corner");
    return design_bandpass(spec.low_hz, spec.high_hz, spec.order, fs);
  }
  if (!(spec.center_hz > 0.0) || !(spec.center_hz < nyq)) {
    fail(ErrorKind::InvalidSpec, "notch centre must lie strictly between 0 Hz and Nyquist");
  }
  if (!(spec.quality > 0.0)) fail(ErrorKind::InvalidSpec, "notch quality factor must be positive");
  return design_notch(spec.center_hz, spec.quality, fs);
}

std::vector<double> sosfilt(const FilterCoefficients& coeffs, std::span<const double> x) {
  std::vector<double> y(x.begin(), x.end());
  run_sections(coeffs, y, nullptr, 0.0);
  return y;
}

std::vector<double> filtfilt(const FilterCoefficients& coeffs, std::span<const double> x) {
  const std::size_t n = x.size();
  const std::size_t order = static_cast<std::size_t>(coeffs.order());
  if (order == 0) return {x.begin(), x.end()};
  if (n < 3 * order || n < 2) {
    fail(ErrorKind::TooShort, "need at least " + std::to_string(3 * order) + " samples, got " + std::to_string(n));
  }
  const std::size_t pad = std::min(3 * order, n - 1);
  std::vector<double> ext;
  ext.reserve(n + 2 * pad);
  for (std::size_t i = pad; i >= 1; --i) ext.push_back(2.0 * x[0] - x[i]);
  ext.insert(ext.end(), x.begin(), x.end());
  for (std::size_t i = 1; i <= pad; ++i) ext.push_back(2.0 * x[n - 1] - x[n - 1 - i]);

  const std::vector<State> zi = steady_state(coeffs);
  run_sections(coeffs, ext, &zi, ext.front());
  std::reverse(ext.begin(), ext.end());
  run_sections(coeffs, ext, &zi, ext.front());
  std::reverse(ext.begin(), ext.end());
  return {ext.begin() + static_cast<std::ptrdiff_t>(pad), ext.begin() + static_cast<std::ptrdiff_t>(pad + n)};
}

SignalRecord apply_filter(const SignalRecord& rec, const FilterCoefficients& coeffs, bool zero_phase) {
  rec.validate();
  if (rec.n_samples() == 0) fail(ErrorKind::InvalidArgument, "empty record");
  const std::size_t need = 3 * static_cast<std::size_t>(coeffs.order());
  if (rec.n_samples() < need) {
    fail(ErrorKind::TooShort,
         "need at least " + std::to_string(need) + " samples, got " + std::to_string(rec.n_samples()));
  }
  SignalRecord out = rec;
  for (auto& ch : out.samples) ch = zero_phase ? filtfilt(coeffs, ch) : sosfilt(coeffs, ch);
  return out;
}

std::vector<double> resample(std::span<const double> x, double fs, double target_fs) {
  if (!(target_fs > 0.0)) fail(ErrorKind::InvalidArgument, "target rate must be positive");
  if (!(fs > 0.0)) fail(ErrorKind::InvalidArgument, "source rate must be positive");
  const auto [up, down] = rate_ratio(fs, target_fs);
  if (up == down || x.empty()) return {x.begin(), x.end()};

  const long long n = static_cast<long long>(x.size());
  const long long n_out = std::llround(static_cast<double>(n) * static_cast<double>(up) / static_cast<double>(down));
  const long long m = std::max(up, down);
  const long long half = 10 * m;
  const double fc = 1.0 / static_cast<double>(m);
  const double beta = 8.0;
  const double i0b = std::cyl_bessel_i(0.0, beta);
  std::vector<double> h(static_cast<std::size_t>(2 * half + 1));
  double hsum = 0.0;
  for (long long j = 0; j <= 2 * half; ++j) {
    const double t = static_cast<double>(j - half);
    const double arg = fc * t;
    const double sinc = arg == 0.0 ? 1.0 : std::sin(kPi * arg) / (kPi * arg);
    const double r = t / static_cast<double>(half);
    const double win = std::cyl_bessel_i(0.0, beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / i0b;
    h[static_cast<std::size_t>(j)] = fc * sinc * win;
    hsum += h[static_cast<std::size_t>(j)];
  }
  const double gain = static_cast<double>(up) / hsum;
  for (double& v : h) v *= gain;

  std::vector<double> y(static_cast<std::size_t>(n_out));
  for (long long k = 0; k < n_out; ++k) {
    const long long t = k * down;
    long long first = t - half;
    first = first >= 0 ? (first + up - 1) / up : -((-first) / up);
    const long long last = (t + half) >= 0 ? (t + half) / up : -((-(t + half) + up - 1) / up);
    double acc = 0.0;
    for (long long i = first; i <= last; ++i) {
      acc += x[reflect_index(i, n)] * h[static_cast<std::size_t>(t - i * up + half)];
    }
    y[static_cast<std::size_t>(k)] = acc;
  }
  return y;
}

SignalRecord resample(const SignalRecord& rec, double target_fs) {
  rec.validate();
  if (!(target_fs > 0.0)) fail(ErrorKind::InvalidArgument, "target rate must be positive");
  SignalRecord out = rec;
  for (auto& ch : out.samples) ch = resample(ch, rec.fs, target_fs);
  out.fs = target_fs;
  return out;
}

SignalRecord baseline_correct(const SignalRecord& epoch, double t0, double t1) {
  epoch.validate();
  const double duration = static_cast<double>(epoch.n_samples()) / epoch.fs;
  if (t0 < 0.0 || t1 > duration + 0.5 / epoch.fs) {
    fail(ErrorKind::InvalidArgument, "baseline window lies outside the epoch");
  }
  const auto i0 = static_cast<std::size_t>(std::max(0LL, std::llround(t0 * epoch.fs)));
  const auto i1 = std::min(epoch.n_samples(), static_cast<std::size_t>(std::max(0LL, std::llround(t1 * epoch.fs))));
  if (i1 <= i0) fail(ErrorKind::InvalidArgument, "empty baseline window");
  SignalRecord out = epoch;
  for (auto& ch : out.samples) {
    double mean = 0.0;
    for (std::size_t i = i0; i < i1; ++i) mean += ch[i];
    mean /= static_cast<double>(i1 - i0);
    for (double& v : ch) v -= mean;
  }
  return out;
}

double PowerSpectrum::total_power() const {
  double s = 0.0;
  for (double p : power) s += p;
  return s * df();
}

double PowerSpectrum::band_power(double lo_hz, double hi_hz) const {
  double s = 0.0;
  for (std::size_t i = 0; i < freqs_hz.size(); ++i) {
    if (freqs_hz[i] >= lo_hz && freqs_hz[i] < hi_hz) s += power[i];
  }
  return s * df();
}

PowerSpectrum welch_psd(std::span<const double> series, double fs, std::size_t segment_len, std::size_t overlap,
                        Window window) {
  if (!(fs > 0.0)) fail(ErrorKind::InvalidArgument, "sampling rate must be positive");
  const std::size_t n = series.size();
  std::size_t seg = segment_len == kAutoSegment ? std::max<std::size_t>(8, std::min<std::size_t>(256, n / 2))
                                                : segment_len;
  if (seg < 8) fail(ErrorKind::InvalidArgument, "segment length must be at least 8");
  if (n < seg) {
    fail(ErrorKind::TooShort, "series of " + std::to_string(n) + " samples is shorter than segment " +
                                  std::to_string(seg));
  }
  const std::size_t ov = overlap == kHalfOverlap ? seg / 2 : overlap;
  if (ov >= seg) fail(ErrorKind::InvalidArgument, "overlap must be smaller than the segment");
  const std::size_t step = seg - ov;
  const std::size_t nseg = (n - seg) / step + 1;

  std::vector<double> w(seg, 1.0);
  if (window == Window::Hann) {
    for (std::size_t i = 0; i < seg; ++i) {
      w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(seg));
    }
  }
  double u = 0.0;
  for (double v : w) u += v * v;

  const std::size_t nbins = seg / 2 + 1;
  std::vector<double> acc(nbins, 0.0);
  std::vector<double> buf(seg);
  for (std::size_t s = 0; s < nseg; ++s) {
    const std::size_t off = s * step;
    double mean = 0.0;
    for (std::size_t i = 0; i < seg; ++i) mean += series[off + i];
    mean /= static_cast<double>(seg);
    for (std::size_t i = 0; i < seg; ++i) buf[i] = (series[off + i] - mean) * w[i];
    const auto spec = rfft(buf, seg);
    for (std::size_t k = 0; k < nbins; ++k) acc[k] += std::norm(spec[k]);
  }

  PowerSpectrum ps;
  ps.segment_len = seg;
  ps.overlap = ov;
  ps.window = window;
  ps.freqs_hz.resize(nbins);
  ps.power.resize(nbins);
  const double scale = 1.0 / (static_cast<double>(nseg) * fs * u);
  for (std::size_t k = 0; k < nbins; ++k) {
    ps.freqs_hz[k] = static_cast<double>(k) * fs / static_cast<double>(seg);
    double p = acc[k] * scale;
    const bool edge = k == 0 || (seg % 2 == 0 && k == nbins - 1);
    if (!edge) p *= 2.0;
    ps.power[k] = p;
  }
  return ps;
}

}  // namespace cogload
