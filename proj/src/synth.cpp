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

#include "cogload/synth.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "cogload/error.hpp"
#include "cogload/fft.hpp"
#include "cogload/rng.hpp"

namespace cogload {

namespace {

struct Bump {
  double offset_s;
  double amp;
  double width_s;
};

void add_bump(std::vector<double>& x, double fs, double center_s, const Bump& b) {
  const double c = center_s + b.offset_s;
  const auto lo = static_cast<long long>(std::floor((c - 5.0 * b.width_s) * fs));
  const auto hi = static_cast<long long>(std::ceil((c + 5.0 * b.width_s) * fs));
  for (long long i = std::max(0LL, lo); i <= hi && i < static_cast<long long>(x.size()); ++i) {
    const double d = (static_cast<double>(i) / fs - c) / b.width_s;
    x[static_cast<std::size_t>(i)] += b.amp * std::exp(-0.5 * d * d);
  }
}

double variance(const std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m += v;
  m /= static_cast<double>(x.size());
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size());
}

void scale_to_power(std::vector<double>& x, double power) {
  const double v = variance(x);
  const double g = v > 0.0 ? std::sqrt(power / v) : 0.0;
  double m = 0.0;
  for (double s : x) m += s;
  m /= static_cast<double>(x.size());
  for (double& s : x) s = (s - m) * g;
}

std::vector<double> band_noise(Rng& rng, std::size_t n, double fs, double lo, double hi) {
  const std::size_t pad = static_cast<std::size_t>(fs);
  std::vector<double> w(n + 2 * pad);
  for (double& v : w) v = rng.normal();
  const auto coeffs = design_filter(FilterSpec::bandpass(lo, hi, 2), fs);
  const std::vector<double> f = filtfilt(coeffs, w);
  return {f.begin() + static_cast<std::ptrdiff_t>(pad), f.begin() + static_cast<std::ptrdiff_t>(pad + n)};
}

std::vector<double> power_law_noise(Rng& rng, std::size_t n, double fs, double slope) {
  const std::size_t nfft = next_pow2(n);
  std::vector<cplx> spec(nfft);
  for (auto& c : spec) c = cplx(rng.normal(), 0.0);
  fft_inplace(spec, false);
  spec[0] = 0.0;
  for (std::size_t k = 1; k < nfft; ++k) {
    const std::size_t kk = k <= nfft / 2 ? k : nfft - k;
    const double f = static_cast<double>(kk) * fs / static_cast<double>(nfft);
    spec[k] *= std::pow(f, -0.5 * slope);
  }
  fft_inplace(spec, true);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = spec[i].real();
  return out;
}

}  // namespace

void EcgSynthSpec::validate() const {
  if (!(fs > 0.0)) fail(ErrorKind::InvalidArgument, "ECG fs must be positive");
  if (!(mean_hr >= 30.0 && mean_hr <= 220.0)) fail(ErrorKind::InvalidArgument, "mean_hr must lie in [30, 220] bpm");
  if (!(duration > 0.0) || duration * mean_hr / 60.0 < 2.0) {
    fail(ErrorKind::InvalidArgument, "duration must hold at least 2 beats");
  }
  if (hrv_sd < 0.0 || lf_mod < 0.0 || hf_mod < 0.0) fail(ErrorKind::InvalidArgument, "RR variability must be >= 0");
  if (!(ar_coeff > -1.0 && ar_coeff < 1.0)) fail(ErrorKind::InvalidArgument, "ar_coeff must lie in (-1, 1)");
  if (!(phase >= 0.0 && phase < 1.0)) fail(ErrorKind::InvalidArgument, "phase must lie in [0, 1)");
  if (!(qrs_width_ms > 0.0)) fail(ErrorKind::InvalidArgument, "qrs_width_ms must be positive");
}

EcgSynthResult gen_ecg(const EcgSynthSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const double mean_rr = 60000.0 / spec.mean_hr;
  const auto n = static_cast<std::size_t>(std::llround(spec.duration * spec.fs));
  const double lf_phase = 2.0 * std::numbers::pi * rng.uniform();
  const double hf_phase = 2.0 * std::numbers::pi * rng.uniform();
  const double innov = spec.hrv_sd * std::sqrt(1.0 - spec.ar_coeff * spec.ar_coeff);
  double e = spec.hrv_sd * rng.normal();

  std::vector<std::size_t> apex;
  double t = 0.1 + spec.phase * mean_rr / 1000.0;
  const double last = spec.duration - 0.1;
  while (t <= last) {
    const auto idx = static_cast<std::size_t>(std::llround(t * spec.fs));
    if (idx >= n) break;
    if (apex.empty() || idx > apex.back()) apex.push_back(idx);
    e = spec.ar_coeff * e + innov * rng.normal();
    double rr = mean_rr + e + spec.lf_mod * std::sin(2.0 * std::numbers::pi * 0.1 * t + lf_phase) +
                spec.hf_mod * std::sin(2.0 * std::numbers::pi * 0.25 * t + hf_phase);
    rr = std::max(rr, 200.0);
    t += rr / 1000.0;
  }

  EcgSynthResult out;
  std::vector<double> x(n, 0.0);
  const double w = spec.qrs_width_ms / 1000.0;
  for (std::size_t k = 0; k < apex.size(); ++k) {
    const double c = static_cast<double>(apex[k]) / spec.fs;
    const double rr_s = k + 1 < apex.size() ? static_cast<double>(apex[k + 1] - apex[k]) / spec.fs : mean_rr / 1000.0;
    const double qt = 0.25 * std::sqrt(rr_s);
    const Bump bumps[] = {{-0.2, 0.12, 0.025}, {-2.5 * w, -0.15, w}, {0.0, 1.0, w}, {2.5 * w, -0.25, w},
                          {qt, spec.t_wave_amp, 0.04}};
    for (const auto& b : bumps) add_bump(x, spec.fs, c, b);
  }
  out.clean = {{x}, spec.fs, {"ECG"}, 0.0};
  if (std::isfinite(spec.noise_snr_db)) {
    const double sd = std::sqrt(variance(x) / std::pow(10.0, spec.noise_snr_db / 10.0));
    for (double& v : x) v += sd * rng.normal();
  }
  out.signal = {{x}, spec.fs, {"ECG"}, 0.0};
  out.peaks.indices = apex;
  out.peaks.fs = spec.fs;
  out.peaks.confidence.assign(apex.size(), 1.0);
  for (std::size_t k = 1; k < apex.size(); ++k) {
    out.rr_ms.push_back(static_cast<double>(apex[k] - apex[k - 1]) * 1000.0 / spec.fs);
  }
  return out;
}

void EegSynthSpec::validate() const {
  if (!(fs > 60.0)) fail(ErrorKind::InvalidArgument, "EEG fs must exceed 60 Hz");
  if (!(duration > 0.0)) fail(ErrorKind::InvalidArgument, "EEG duration must be positive");
  if (theta_power < 0.0 || alpha_power < 0.0 || beta_power < 0.0 || background_power < 0.0) {
    fail(ErrorKind::InvalidArgument, "band powers must be >= 0");
  }
  if (n_channels == 0) fail(ErrorKind::InvalidArgument, "n_channels must be positive");
  if (!channel_names.empty() && channel_names.size() != n_channels) {
    fail(ErrorKind::InvalidArgument, "channel_names does not match n_channels");
  }
}

SignalRecord gen_eeg(const EegSynthSpec& spec) {
  spec.validate();
  const auto n = static_cast<std::size_t>(std::llround(spec.duration * spec.fs));
  SignalRecord rec;
  rec.fs = spec.fs;
  for (std::size_t c = 0; c < spec.n_channels; ++c) {
    if (!spec.channel_names.empty()) {
      rec.channel_names.push_back(spec.channel_names[c]);
    } else if (c < eeg_channel_subset().size()) {
      rec.channel_names.push_back(eeg_channel_subset()[c]);
    } else {
      rec.channel_names.push_back("ch" + std::to_string(c));
    }
    Rng rng(derive_seed(spec.seed, {c}));
    std::vector<double> x(n, 0.0);
    const struct {
      double lo, hi, power;
    } bands[] = {{4.0, 8.0, spec.theta_power}, {8.0, 13.0, spec.alpha_power}, {13.0, 30.0, spec.beta_power}};
    for (const auto& b : bands) {
      std::vector<double> comp = band_noise(rng, n, spec.fs, b.lo, b.hi);
      scale_to_power(comp, b.power);
      for (std::size_t i = 0; i < n; ++i) x[i] += comp[i];
    }
    std::vector<double> bg = power_law_noise(rng, n, spec.fs, spec.one_over_f_slope);
    scale_to_power(bg, spec.background_power);
    for (std::size_t i = 0; i < n; ++i) x[i] += bg[i];
    rec.samples.push_back(std::move(x));
  }
  return rec;
}

CoupledLoadSpec::CoupledLoadSpec() {
  ecg_base.fs = 250.0;
  ecg_base.mean_hr = 70.0;
  ecg_base.hrv_sd = 30.0;
  ecg_base.lf_mod = 10.0;
  ecg_base.hf_mod = 10.0;
  ecg_base.noise_snr_db = 20.0;
  ecg_base.t_wave_amp = 0.5;
  for (std::size_t c = 0; c < offsets.size(); ++c) {
    const double level = static_cast<double>(c);
    offsets[c] = ClassOffsets{3.0 * level, -3.0 * level, -1.0 * level, -0.08 * level};
  }
}

void CoupledLoadSpec::validate() const {
  if (subjects == 0 || trials_per_class == 0) fail(ErrorKind::InvalidArgument, "subjects and trials must be positive");
  if (!(epoch_seconds > 0.0)) fail(ErrorKind::InvalidArgument, "epoch_seconds must be positive");
  auto monotone = [&](auto field) {
    const double a = field(offsets[1]), b = field(offsets[2]), c = field(offsets[3]);
    return (a <= b && b <= c) || (a >= b && b >= c);
  };
  if (!monotone([](const ClassOffsets& o) { return o.hr_bpm; }) ||
      !monotone([](const ClassOffsets& o) { return o.hrv_sd_ms; }) ||
      !monotone([](const ClassOffsets& o) { return o.log2_theta_alpha; }) ||
      !monotone([](const ClassOffsets& o) { return o.t_wave_mv; })) {
    fail(ErrorKind::InvalidArgument, "class offsets must progress monotonically from Five to Thirteen");
  }
  EcgSynthSpec e = ecg_base;
  e.fs = ecg_fs;
  e.duration = epoch_seconds;
  e.validate();
  EegSynthSpec g = eeg_base;
  g.fs = eeg_fs;
  g.duration = epoch_seconds;
  g.validate();
}

std::array<ConditionLabel, 4> coupled_classes() {
  return {ConditionLabel{Condition::JustListen, Subcondition::None}, ConditionLabel{Condition::Memory, Subcondition::Five},
          ConditionLabel{Condition::Memory, Subcondition::Nine},
          ConditionLabel{Condition::Memory, Subcondition::Thirteen}};
}

Manifest gen_coupled_dataset(const CoupledLoadSpec& spec, const std::filesystem::path& root) {
  spec.validate();
  std::error_code ec;
  std::filesystem::create_directories(root, ec);
  if (ec) fail(ErrorKind::Io, "cannot create " + root.string() + ": " + ec.message());
  Manifest m;
  m.base_dir = root;
  m.epoch_seconds = spec.epoch_seconds;
  const auto classes = coupled_classes();
  const std::string ext = spec.format == SignalFormat::Bsig ? ".bsig" : ".csv";
  const std::vector<std::string> eeg_names = eeg_channel_subset();

  for (std::size_t s = 0; s < spec.subjects; ++s) {
    char sid[16];
    std::snprintf(sid, sizeof(sid), "S%02zu", s + 1);
    SubjectInfo subject{sid, {}};
    std::filesystem::create_directories(root / sid, ec);
    if (ec) fail(ErrorKind::Io, "cannot create " + (root / sid).string() + ": " + ec.message());

    Rng srng(derive_seed(spec.seed, {0x5355424aULL, s}));
    double subj_hr = 0.0, subj_hrv = 0.0, subj_ratio = 0.0, subj_t = 0.0;
    if (spec.subject_noise) {
      subj_hr = spec.subject_hr_sd * srng.normal();
      subj_hrv = spec.subject_hrv_sd * srng.normal();
      subj_ratio = spec.subject_log2_ratio_sd * srng.normal();
      subj_t = spec.subject_t_wave_sd * srng.normal();
    }
    for (std::size_t c = 0; c < classes.size(); ++c) {
      const ClassOffsets& off = spec.offsets[c];
      for (std::size_t t = 0; t < spec.trials_per_class; ++t) {
        const std::uint64_t trial_seed = derive_seed(spec.seed, {s, c, t});
        Rng trng(derive_seed(trial_seed, {0}));

        EcgSynthSpec e = spec.ecg_base;
        e.fs = spec.ecg_fs;
        e.duration = spec.epoch_seconds;
        e.mean_hr = std::clamp(e.mean_hr + subj_hr + spec.offset_scale * off.hr_bpm + spec.trial_hr_sd * trng.normal(),
                               30.0, 220.0);
        e.hrv_sd = std::max(0.0, e.hrv_sd + subj_hrv + spec.offset_scale * off.hrv_sd_ms);
        e.t_wave_amp = std::max(0.0, e.t_wave_amp + subj_t + spec.offset_scale * off.t_wave_mv);
        e.phase = trng.uniform();
        e.seed = derive_seed(trial_seed, {1});
        const EcgSynthResult ecg = gen_ecg(e);

        EegSynthSpec g = spec.eeg_base;
        g.fs = spec.eeg_fs;
        g.duration = spec.epoch_seconds;
        g.n_channels = eeg_names.size();
        g.channel_names = eeg_names;
        const double r = subj_ratio + spec.offset_scale * off.log2_theta_alpha;
        g.theta_power = spec.eeg_base.theta_power * std::exp2(0.5 * r);
        g.alpha_power = spec.eeg_base.alpha_power * std::exp2(-0.5 * r);
        g.seed = derive_seed(trial_seed, {2});
        SignalRecord eeg = gen_eeg(g);
        if (spec.cardiac_field > 0.0) {
          std::vector<double> field = resample(ecg.clean.samples.front(), spec.ecg_fs, spec.eeg_fs);
          field.resize(eeg.n_samples(), field.empty() ? 0.0 : field.back());
          for (auto& ch : eeg.samples) {
            std::vector<double> f = field;
            scale_to_power(f, spec.cardiac_field * variance(ch));
            for (std::size_t i = 0; i < ch.size(); ++i) ch[i] += f[i];
          }
        }

        char stem[64];
        std::snprintf(stem, sizeof(stem), "%s_%03zu", classes[c].class_name().c_str(), t);
        const std::string ecg_rel = std::string(sid) + "/ecg_" + stem + ext;
        const std::string eeg_rel = std::string(sid) + "/eeg_" + stem + ext;
        write_signal(root / ecg_rel, ecg.signal, spec.format);
        write_signal(root / eeg_rel, eeg, spec.format);

        RecordingInfo ri{std::string("ecg_") + stem, Modality::ECG, ecg_rel, spec.format, spec.ecg_fs, {"ECG"},
                         ecg.signal.n_samples()};
        RecordingInfo gi{std::string("eeg_") + stem, Modality::EEG, eeg_rel, spec.format, spec.eeg_fs, eeg_names,
                         eeg.n_samples()};
        subject.recordings.push_back(ri);
        subject.recordings.push_back(gi);
        Event ev;
        ev.subject = sid;
        ev.label = classes[c];
        ev.trial_index = static_cast<int>(t);
        ev.onsets = {{ri.id, 0}, {gi.id, 0}};
        m.events.push_back(std::move(ev));
      }
    }
    m.subjects.push_back(std::move(subject));
  }
  save_manifest(m, root / "manifest.json");
  return m;
}

}  // namespace cogload
