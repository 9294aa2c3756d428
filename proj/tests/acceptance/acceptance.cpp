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

// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "cogload/catch22.hpp"
#include "cogload/crossmodal.hpp"
#include "cogload/ecg.hpp"
#include "cogload/feature_table.hpp"
#include "cogload/hrv.hpp"
#include "cogload/metrics.hpp"
#include "cogload/ml.hpp"
#include "cogload/signal.hpp"
#include "cogload/synth.hpp"

namespace fs = std::filesystem;
using namespace cogload;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << v;
  return s.str();
}

std::string sci(double v) {
  std::ostringstream s;
  s.precision(2);
  s << std::scientific << v;
  return s.str();
}

fs::path scratch_root() {
  const fs::path p = fs::temp_directory_path() / ("cogload_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

double rel_err(long double got, long double want) {
  const long double d = std::fabs(got - want);
  if (want == 0.0L) return static_cast<double>(d);
  return static_cast<double>(d / std::fabs(want));
}

// Criterion 1 ---------------------------------------------------------------

Outcome hrv_oracle() {
  const auto t0 = Clock::now();
  Rng rng(101);
  double worst = 0.0, worst_identity = 0.0;
  std::size_t clamped = 0;
  for (int s = 0; s < 1000; ++s) {
    const std::size_t n = 2 + rng.index(299);
    const double base = rng.uniform(500.0, 1300.0), sd = rng.uniform(0.0, 120.0);
    const double phi = s % 2 ? rng.uniform(0.0, 0.95) : 0.0;
    std::vector<double> rr(n);
    double e = 0.0;
    for (auto& v : rr) {
      e = phi * e + rng.normal(0.0, sd);
      v = std::round((base + e) * 8.0) / 8.0;
    }
    long double mean = 0.0L;
    for (double v : rr) mean += v;
    mean /= static_cast<long double>(n);
    long double ss = 0.0L, ds = 0.0L;
    std::size_t over = 0;
    for (double v : rr) ss += (v - mean) * (v - mean);
    for (std::size_t i = 1; i < n; ++i) {
      const long double d = static_cast<long double>(rr[i]) - rr[i - 1];
      ds += d * d;
      over += std::fabs(d) > 40.0L;
    }
    const long double sdnn = std::sqrt(ss / static_cast<long double>(n - 1));
    const long double rmssd = std::sqrt(ds / static_cast<long double>(n - 1));
    const long double sd1 = std::sqrt(rmssd * rmssd / 2.0L);
    const long double rad = 2.0L * sdnn * sdnn - rmssd * rmssd / 2.0L;

    const TimeDomain td = time_domain(rr);
    const Poincare pc = poincare(td.sdnn, td.rmssd);
    worst = std::max({worst, rel_err(td.mean_nn, mean), rel_err(td.sdnn, sdnn), rel_err(td.rmssd, rmssd),
                      rel_err(td.pnn40, static_cast<long double>(over) / static_cast<long double>(n - 1)),
                      rel_err(pc.sd1, sd1)});
    if (rad < 0.0L) {
      ++clamped;
      if (!pc.clamped || pc.sd2 != 0.0) worst = 1.0;
      continue;
    }
    worst = std::max(worst, rel_err(pc.sd2, std::sqrt(rad)));
    if (td.sdnn > 0.0) {
      const double id = std::fabs(pc.sd1 * pc.sd1 + pc.sd2 * pc.sd2 - 2.0 * td.sdnn * td.sdnn) / (2.0 * td.sdnn * td.sdnn);
      worst_identity = std::max(worst_identity, id);
    }
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = worst <= 1e-12 && worst_identity <= 1e-12 && secs < 1.0;
  o.detail = "max rel err " + sci(worst) + ", identity err " + sci(worst_identity) + ", clamped " +
             std::to_string(clamped) + "/1000, " + num(secs, 3) + " s";
  return o;
}

// Criterion 2 ---------------------------------------------------------------

Outcome rpeak_recovery() {
  const auto t0 = Clock::now();
  std::size_t tp = 0, n_true = 0, n_found = 0;
  double min_f1 = 1.0, worst_rr = 0.0;
  for (int i = 0; i < 100; ++i) {
    EcgSynthSpec s;
    s.duration = 20.0;
    s.mean_hr = 50.0 + 90.0 * i / 99.0;
    s.noise_snr_db = 10.0 + (i % 5) * 5.0;
    s.hrv_sd = 10.0 * (i % 4);
    s.phase = 0.1 * (i % 10);
    s.seed = 1000 + static_cast<std::uint64_t>(i);
    const EcgSynthResult g = gen_ecg(s);
    const auto bp = filtfilt(design_filter(FilterSpec::bandpass(0.5, 40.0, 2), s.fs), g.signal.samples[0]);
    const RPeakList p = detect_r_peaks(bp, s.fs);
    const auto& truth = g.peaks.indices;
    std::size_t a = 0, b = 0, hit = 0;
    while (a < truth.size() && b < p.indices.size()) {
      const long d = static_cast<long>(p.indices[b]) - static_cast<long>(truth[a]);
      if (std::labs(d) <= 2) {
        ++hit, ++a, ++b;
      } else if (d < 0) {
        ++b;
      } else {
        ++a;
      }
    }
    tp += hit;
    n_true += truth.size();
    n_found += p.indices.size();
    min_f1 = std::min(min_f1, 2.0 * hit / static_cast<double>(truth.size() + p.indices.size()));
    if (p.indices.size() >= 2) {
      const double got = 1000.0 * static_cast<double>(p.indices.back() - p.indices.front()) /
                         (static_cast<double>(p.indices.size() - 1) * s.fs);
      const double want = 1000.0 * static_cast<double>(truth.back() - truth.front()) /
                          (static_cast<double>(truth.size() - 1) * s.fs);
      worst_rr = std::max(worst_rr, std::fabs(got - want) / want);
    } else {
      worst_rr = 1.0;
    }
  }
  const double f1 = 2.0 * tp / static_cast<double>(n_true + n_found);
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = min_f1 >= 0.99 && worst_rr <= 0.01 && secs < 30.0;
  o.detail = "pooled F1 " + num(f1) + ", worst record F1 " + num(min_f1) + ", worst mean-RR error " +
             num(100.0 * worst_rr, 3) + "%, " + num(secs, 2) + " s";
  return o;
}

// Criterion 3 ---------------------------------------------------------------

Outcome filter_conformance() {
  const auto t0 = Clock::now();
  const double rate = 250.0;
  const auto bp = design_filter(FilterSpec::bandpass(0.5, 40.0, 2), rate);
  std::vector<double> tone(5000), dc(5000, 1.0);
  for (std::size_t i = 0; i < tone.size(); ++i) tone[i] = std::sin(2.0 * M_PI * 10.0 * i / rate);
  const auto y = filtfilt(bp, tone);
  const auto ydc = filtfilt(bp, dc);
  const std::size_t edge = 500;
  double p_in = 0.0, p_out = 0.0, p_dc = 0.0;
  for (std::size_t i = edge; i + edge < tone.size(); ++i) {
    p_in += tone[i] * tone[i];
    p_out += y[i] * y[i];
    p_dc += ydc[i] * ydc[i];
  }
  const double gain10 = std::sqrt(p_out / p_in);
  const double dc_resid = std::sqrt(p_dc / static_cast<double>(tone.size() - 2 * edge));
  const auto notch = design_filter(FilterSpec::notch(50.0), rate);
  const double att50 = -20.0 * std::log10(notch.gain(50.0, rate) + 1e-300);
  const double att40 = -20.0 * std::log10(notch.gain(40.0, rate));
  int best_lag = 0;
  double best = -1e300;
  for (int lag = -10; lag <= 10; ++lag) {
    double acc = 0.0;
    for (std::size_t i = edge; i + edge < tone.size(); ++i) acc += tone[i] * y[static_cast<std::size_t>(static_cast<long>(i) + lag)];
    if (acc > best) best = acc, best_lag = lag;
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = std::fabs(gain10 - 1.0) <= 0.05 && dc_resid <= 0.01 && att50 >= 20.0 && att40 <= 3.0 && best_lag == 0 &&
           secs < 5.0;
  o.detail = "10 Hz gain " + num(gain10) + ", DC residual " + sci(dc_resid) + ", notch " + num(att50, 1) +
             " dB at 50 Hz / " + num(att40, 2) + " dB at 40 Hz, lag " + std::to_string(best_lag) + ", " +
             num(secs, 3) + " s";
  return o;
}

// Criterion 4 ---------------------------------------------------------------

Outcome catch22_conformance() {
  const auto t0 = Clock::now();
  const fs::path dir = fs::path(COGLOAD_TEST_DATA) / "catch22";
  double worst = 0.0;
  int vectors = 0;
  bool names_ok = true;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string f = entry.path().filename().string();
    const std::string suffix = ".input.txt";
    if (f.size() <= suffix.size() || f.compare(f.size() - suffix.size(), suffix.size(), suffix) != 0) continue;
    const std::string stem = f.substr(0, f.size() - suffix.size());
    std::ifstream in(entry.path());
    std::vector<double> x;
    double v;
    while (in >> x.emplace_back()) {
    }
    x.pop_back();
    std::ifstream ex(dir / (stem + ".expected.txt"));
    const Catch22Vector got = compute_catch22(x);
    std::string name, value;
    std::size_t k = 0;
    while (ex >> name >> value) {
      if (k >= kCatch22Count || name != catch22_names()[k]) names_ok = false;
      v = std::stod(value);
      const double d = std::fabs(got.values[k] - v);
      worst = std::max(worst, std::isfinite(d) ? d : 1e300);
      ++k;
    }
    names_ok = names_ok && k == kCatch22Count;
    ++vectors;
  }
  Rng rng(404);
  const double scales[] = {0.25, 0.5, 1.5, 2.0, 3.0, 4.0, 8.0};
  int bitwise_fail = 0;
  for (int s = 0; s < 100; ++s) {
    std::vector<double> x(200 + rng.index(400));
    for (auto& v : x) v = static_cast<double>(static_cast<long>(rng.index(8192)) - 4096) / 2048.0;
    const double a = scales[rng.index(7)];
    const double b = static_cast<double>(static_cast<long>(rng.index(128)) - 64) / 16.0;
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = a * x[i] + b;
    const auto fx = compute_catch22(x), fy = compute_catch22(y);
    for (std::size_t k = 0; k < kCatch22Count; ++k) {
      const bool same = (std::isnan(fx.values[k]) && std::isnan(fy.values[k])) || fx.values[k] == fy.values[k];
      if (!same) {
        ++bitwise_fail;
        break;
      }
    }
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = vectors >= 5 && names_ok && worst <= 1e-6 && bitwise_fail == 0 && secs < 10.0;
  o.detail = std::to_string(vectors) + " vectors, max abs err " + sci(worst) + ", affine bitwise mismatches " +
             std::to_string(bitwise_fail) + "/100, " + num(secs, 2) + " s";
  return o;
}

// Criteria 5 and 8 ------------------------------------------------------------

struct Tables {
  FeatureTable ecg;
  FeatureTable eeg;
};

Tables build_tables(const CoupledLoadSpec& spec, const fs::path& root) {
  const Manifest m = gen_coupled_dataset(spec, root);
  return {build_ecg_feature_table(epoch_trials(m, Modality::ECG)),
          build_eeg_feature_table(epoch_trials(m, Modality::EEG))};
}

FeatureTable keep_columns(const FeatureTable& t, const std::vector<std::string>& names) {
  FeatureTable out;
  out.columns = names;
  std::vector<std::size_t> pos;
  for (const auto& n : names) pos.push_back(t.column_index(n));
  for (std::size_t r = 0; r < t.rows(); ++r) {
    std::vector<double> v;
    for (std::size_t p : pos) v.push_back(t.x[r][p]);
    out.add_row(t.meta[r], std::move(v));
  }
  return out;
}

std::vector<std::string> c22_names() {
  std::vector<std::string> v;
  for (auto n : catch22_names()) v.emplace_back(n);
  return v;
}

double gb_accuracy(const FeatureTable& t, Task task, SplitMode mode, std::uint64_t seed) {
  const TaskData d = for_task(t, task);
  const auto [train, test] = split(d, mode, 0.2, seed);
  GradientBoostingParams p;
  p.seed = seed;
  return evaluate(train_gradient_boosting(train, p), test).accuracy;
}

double chance(Task task, const FeatureTable& t) {
  const TaskData d = for_task(t, task);
  std::vector<double> counts(d.classes.size(), 0.0);
  for (int y : d.y) counts[static_cast<std::size_t>(y)] += 1.0;
  return *std::max_element(counts.begin(), counts.end()) / static_cast<double>(d.rows());
}

Outcome directional(const fs::path& root) {
  const auto t0 = Clock::now();
  const std::uint64_t seed = 42;
  CoupledLoadSpec spec;
  spec.seed = seed;
  const Tables real = build_tables(spec, root / "coupled");
  const double hrv = gb_accuracy(keep_columns(real.ecg, hrv_feature_names(false)), Task::MC, SplitMode::TrialStratified, seed);
  const double c22 = gb_accuracy(keep_columns(real.ecg, c22_names()), Task::MC, SplitMode::TrialStratified, seed);
  TransferSpec ts;
  ts.rf.seed = seed;
  const TransferPair tp = run_transfer_both(ts, real.ecg, real.eeg);
  const double mc_chance = 1.0 / 3.0;

  CoupledLoadSpec null_spec = spec;
  null_spec.seed = seed + 1;
  null_spec.offset_scale = 0.0;
  const Tables null = build_tables(null_spec, root / "null");
  double worst_null = 0.0;
  std::string null_detail;
  for (Task task : {Task::MC, Task::BC, Task::FC}) {
    const double ch = chance(task, null.ecg);
    const double a_ecg = gb_accuracy(null.ecg, task, SplitMode::TrialStratified, seed);
    const double a_eeg = gb_accuracy(null.eeg, task, SplitMode::TrialStratified, seed);
    TransferSpec nts = ts;
    nts.task = task;
    const TransferPair ntp = run_transfer_both(nts, null.ecg, null.eeg);
    for (double a : {a_ecg, a_eeg, ntp.ecg_to_eeg.accuracy, ntp.eeg_to_ecg.accuracy}) {
      worst_null = std::max(worst_null, std::fabs(a - ch));
    }
    null_detail += " " + to_string(task) + "[chance " + num(ch, 3) + ": ecg " + num(a_ecg, 3) + " eeg " +
                   num(a_eeg, 3) + " xfer " + num(ntp.ecg_to_eeg.accuracy, 3) + "/" +
                   num(ntp.eeg_to_ecg.accuracy, 3) + "]";
  }
  const double secs = seconds_since(t0);
  const bool a = c22 > hrv;
  const bool b = c22 >= 0.90;
  const bool c = tp.ecg_to_eeg.accuracy - mc_chance >= 0.4 && tp.eeg_to_ecg.accuracy - mc_chance >= 0.4;
  const bool d = worst_null <= 0.1;
  Outcome o;
  o.pass = a && b && c && d && secs < 300.0;
  o.detail = std::string("(a) ") + (a ? "ok" : "no") + " catch22 " + num(c22, 3) + " vs HRV-5 " + num(hrv, 3) +
             "; (b) " + (b ? "ok" : "no") + "; (c) " + (c ? "ok" : "no") + " ECG->EEG " +
             num(tp.ecg_to_eeg.accuracy, 3) + ", EEG->ECG " + num(tp.eeg_to_ecg.accuracy, 3) + " vs chance " +
             num(mc_chance, 3) + "; (d) " + (d ? "ok" : "no") + " max |acc-chance| " + num(worst_null, 3) + null_detail +
             "; " + num(secs, 1) + " s";
  return o;
}

Outcome leakage(const fs::path& root) {
  const std::uint64_t seed = 44;
  CoupledLoadSpec spec;
  spec.seed = seed;
  spec.subject_noise = true;
  const Tables t = build_tables(spec, root / "noisy");
  const FeatureTable c22 = keep_columns(t.ecg, c22_names());
  const double strat = gb_accuracy(c22, Task::MC, SplitMode::TrialStratified, seed);
  const double grouped = gb_accuracy(c22, Task::MC, SplitMode::SubjectGrouped, seed);
  Outcome o;
  o.pass = grouped <= strat;
  o.detail = "MC catch22 GB: trial_stratified " + num(strat, 3) + ", subject_grouped " + num(grouped, 3) + ", gap " +
             num(strat - grouped, 3);
  return o;
}

// Criterion 6 ---------------------------------------------------------------

Outcome metric_identities() {
  Rng rng(606);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t k = 2 + rng.index(4);
    std::vector<std::vector<long>> cm(k, std::vector<long>(k));
    for (auto& row : cm) {
      for (auto& v : row) v = static_cast<long>(rng.index(t % 7 == 0 ? 3 : 30));
    }
    std::vector<std::string> classes;
    for (std::size_t i = 0; i < k; ++i) classes.push_back("c" + std::to_string(i));
    const EvalReport r = report_from_confusion(classes, cm);
    long n = 0, trace = 0;
    for (std::size_t i = 0; i < k; ++i) {
      trace += cm[i][i];
      for (long v : cm[i]) n += v;
    }
    if (n == 0) continue;
    double macro = 0.0, weighted = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      long col = 0, row = 0;
      for (std::size_t i = 0; i < k; ++i) {
        col += cm[i][c];
        row += cm[c][i];
      }
      const double tp = static_cast<double>(cm[c][c]);
      const double denom = static_cast<double>(row + col);
      const double f1 = denom > 0.0 ? 2.0 * tp / denom : 0.0;
      macro += f1;
      weighted += f1 * static_cast<double>(row);
    }
    macro /= static_cast<double>(k);
    weighted /= static_cast<double>(n);
    worst = std::max({worst, std::fabs(r.accuracy - static_cast<double>(trace) / static_cast<double>(n)),
                      std::fabs(r.macro_f1 - macro), std::fabs(r.weighted_f1 - weighted)});
  }
  const EvalReport hand = report_from_confusion({"0", "1"}, {{8, 2}, {3, 7}});
  const double expected = (16.0 / 21.0 + 14.0 / 19.0) / 2.0;
  Outcome o;
  o.pass = worst <= 1e-12 && hand.macro_f1 == expected && std::fabs(hand.macro_f1 - 0.7494) < 5e-5 &&
           hand.accuracy == 0.75;
  o.detail = "max identity err " + sci(worst) + ", [[8,2],[3,7]] macro-F1 " + num(hand.macro_f1, 6);
  return o;
}

// Criterion 7 ---------------------------------------------------------------

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const auto ext = e.path().extension();
    if (ext != ".json" && ext != ".csv" && ext != ".svg") continue;
    std::ifstream in(e.path(), std::ios::binary);
    files[fs::relative(e.path(), dir).generic_string()] = std::string(std::istreambuf_iterator<char>(in), {});
  }
  return files;
}

bool pipeline(const fs::path& work, std::string& err) {
  std::ostringstream out, e;
  const std::string w = work.string();
  const std::vector<std::vector<std::string>> steps = {
      {"synth", "--out", w + "/ds", "--subjects", "2", "--trials", "10", "--seed", "77", "--subject-noise"},
      {"features", "--dataset", w + "/ds", "--out", w + "/features"},
      {"train-eval", "--features", w + "/features/ecg_features.csv", "--out", w + "/te", "--split", "both", "--seed",
       "77", "--n-rounds", "50", "--no-timestamp"},
      {"train-eval", "--features", w + "/features/eeg_features.csv", "--out", w + "/te_eeg", "--model", "rf",
       "--seed", "77", "--n-trees", "50", "--no-timestamp"},
      {"transfer", "--ecg", w + "/features/ecg_features.csv", "--eeg", w + "/features/eeg_features.csv", "--out",
       w + "/tr", "--seed", "77", "--n-trees", "50"}};
  for (const auto& s : steps) {
    if (run_cli(s, out, e) != 0) {
      err = e.str();
      return false;
    }
  }
  return true;
}

Outcome determinism(const fs::path& root) {
  const fs::path work = root / "det";
  std::string err;
  Outcome o;
  if (!pipeline(work, err)) {
    o.detail = "first run failed: " + err;
    return o;
  }
  const auto first = snapshot(work);
  fs::remove_all(work);
  if (!pipeline(work, err)) {
    o.detail = "second run failed: " + err;
    return o;
  }
  const auto second = snapshot(work);
  std::size_t differing = 0;
  std::string which;
  for (const auto& [name, bytes] : first) {
    const auto it = second.find(name);
    if (it == second.end() || it->second != bytes) {
      ++differing;
      which += " " + name;
    }
  }
  o.pass = differing == 0 && first.size() == second.size() && first.size() >= 10;
  o.detail = std::to_string(first.size()) + " JSON/CSV/SVG artifacts compared, " + std::to_string(differing) +
             " differ" + which;
  return o;
}

}  // namespace

int main() {
  const fs::path root = scratch_root();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"HRV oracle equivalence", hrv_oracle},
      {"R-peak recovery", rpeak_recovery},
      {"Filter conformance", filter_conformance},
      {"catch22 conformance", catch22_conformance},
      {"Directional reproduction on coupled synthetic data", [&] { return directional(root); }},
      {"ML metric identities", metric_identities},
      {"Determinism", [&] { return determinism(root); }},
      {"Leakage guard", [&] { return leakage(root); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  std::error_code ec;
  fs::remove_all(root, ec);
  return failures == 0 ? 0 : 1;
}
