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

#include "cogload/feature_table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "cogload/catch22.hpp"
#include "cogload/ecg.hpp"
#include "cogload/error.hpp"
#include "cogload/hrv.hpp"
#include "cogload/signal.hpp"

namespace cogload {

namespace {

constexpr std::size_t kMetaColumns = 4;
const char* const kMetaNames[kMetaColumns] = {"subject", "condition", "subcondition", "trial"};

void append_number(std::string& out, double v) {
  if (std::isnan(v)) {
    out += "nan";
    return;
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

const std::vector<std::string>& ecg_flag_columns() {
  static const std::vector<std::string> kFlags = {"hrv_failed", "n_peaks", "rr_corrected", "sd2_clamped",
                                                   "c22_invalid"};
  return kFlags;
}

}  // namespace

std::string to_string(FeatureSet s) {
  switch (s) {
    case FeatureSet::Hrv: return "hrv";
    case FeatureSet::Catch22: return "catch22";
    case FeatureSet::Both: return "both";
  }
  return "both";
}

FeatureSet parse_feature_set(const std::string& s) {
  if (s == "hrv") return FeatureSet::Hrv;
  if (s == "catch22") return FeatureSet::Catch22;
  if (s == "both") return FeatureSet::Both;
  fail(ErrorKind::InvalidArgument, "unknown feature set '" + s + "'");
}

std::size_t FeatureTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  return static_cast<std::size_t>(-1);
}

void FeatureTable::add_row(RowMeta row_meta, std::vector<double> values, std::vector<double> flag_values) {
  if (values.size() != columns.size()) {
    fail(ErrorKind::Length, "row has " + std::to_string(values.size()) + " values for " +
                                std::to_string(columns.size()) + " columns");
  }
  if (flag_values.empty()) flag_values.assign(flag_columns.size(), 0.0);
  if (flag_values.size() != flag_columns.size()) fail(ErrorKind::Length, "row flag count does not match");
  meta.push_back(std::move(row_meta));
  x.push_back(std::move(values));
  flags.push_back(std::move(flag_values));
}

void FeatureTable::validate() const {
  std::set<std::string> names;
  for (const auto& c : columns) {
    if (!names.insert(c).second) fail(ErrorKind::Validation, "duplicate feature column " + c);
    if (c.rfind("flag.", 0) == 0) fail(ErrorKind::Validation, "feature column may not start with 'flag.': " + c);
  }
  for (const auto& c : flag_columns) {
    if (!names.insert("flag." + c).second) fail(ErrorKind::Validation, "duplicate flag column " + c);
  }
  if (meta.size() != x.size() || flags.size() != x.size()) fail(ErrorKind::Validation, "ragged feature table");
  for (std::size_t r = 0; r < x.size(); ++r) {
    if (x[r].size() != columns.size() || flags[r].size() != flag_columns.size()) {
      fail(ErrorKind::Validation, "row " + std::to_string(r) + " has the wrong width");
    }
    if (meta[r].subject.empty()) fail(ErrorKind::Validation, "row " + std::to_string(r) + " has no subject");
    if (!meta[r].label.valid()) fail(ErrorKind::Validation, "row " + std::to_string(r) + " has an invalid label");
  }
}

TaskData TaskData::subset(const std::vector<std::size_t>& idx) const {
  TaskData out;
  out.columns = columns;
  out.classes = classes;
  for (std::size_t i : idx) {
    out.x.push_back(x[i]);
    out.y.push_back(y[i]);
    out.groups.push_back(groups[i]);
    if (!meta.empty()) out.meta.push_back(meta[i]);
  }
  return out;
}

TaskData for_task(const FeatureTable& table, Task task) {
  TaskData d;
  d.columns = table.columns;
  d.classes = task_classes(task);
  for (std::size_t r = 0; r < table.rows(); ++r) {
    const auto cls = task_class(task, table.meta[r].label);
    if (!cls) continue;
    d.x.push_back(table.x[r]);
    d.y.push_back(*cls);
    d.groups.push_back(table.meta[r].subject);
    d.meta.push_back(table.meta[r]);
  }
  return d;
}

std::string feature_table_to_csv(const FeatureTable& table) {
  std::string out;
  for (const auto& n : table.notes) out += "# " + n + "\n";
  for (const auto& e : table.log) out += "# log: " + e + "\n";
  for (std::size_t i = 0; i < kMetaColumns; ++i) {
    if (i) out += ',';
    out += kMetaNames[i];
  }
  for (const auto& c : table.columns) out += "," + c;
  for (const auto& c : table.flag_columns) out += ",flag." + c;
  out += '\n';
  for (std::size_t r = 0; r < table.rows(); ++r) {
    const RowMeta& m = table.meta[r];
    out += m.subject + "," + to_string(m.label.condition) + "," + to_string(m.label.subcondition) + "," +
           std::to_string(m.trial_index);
    for (double v : table.x[r]) {
      out += ',';
      append_number(out, v);
    }
    for (double v : table.flags[r]) {
      out += ',';
      append_number(out, v);
    }
    out += '\n';
  }
  return out;
}

FeatureTable feature_table_from_csv(const std::string& text, const std::string& origin) {
  FeatureTable t;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<bool> is_flag;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string note = line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1);
      if (note.rfind("log: ", 0) == 0) {
        t.log.push_back(note.substr(5));
      } else {
        t.notes.push_back(note);
      }
      continue;
    }
    const auto cells = split_csv(line);
    if (!have_header) {
      if (cells.size() < kMetaColumns) fail(ErrorKind::Parse, origin + ": line " + std::to_string(line_no) + ": short header");
      for (std::size_t i = 0; i < kMetaColumns; ++i) {
        if (cells[i] != kMetaNames[i]) {
          fail(ErrorKind::Parse, origin + ": line " + std::to_string(line_no) + ": expected column '" +
                                     kMetaNames[i] + "', found '" + cells[i] + "'");
        }
      }
      for (std::size_t i = kMetaColumns; i < cells.size(); ++i) {
        const bool flag = cells[i].rfind("flag.", 0) == 0;
        is_flag.push_back(flag);
        if (flag) {
          t.flag_columns.push_back(cells[i].substr(5));
        } else {
          t.columns.push_back(cells[i]);
        }
      }
      have_header = true;
      continue;
    }
    if (cells.size() != kMetaColumns + is_flag.size()) {
      fail(ErrorKind::Parse, origin + ": line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                                 " fields, expected " + std::to_string(kMetaColumns + is_flag.size()));
    }
    RowMeta m;
    m.subject = cells[0];
    try {
      m.label = {parse_condition(cells[1]), parse_subcondition(cells[2])};
    } catch (const Error& e) {
      fail(ErrorKind::Parse, origin + ": line " + std::to_string(line_no) + ": " + e.what());
    }
    auto parse_num = [&](const std::string& s, std::size_t col) {
      double v = 0.0;
      auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        fail(ErrorKind::Parse, origin + ": line " + std::to_string(line_no) + ", column " + std::to_string(col + 1) +
                                   ": not a number '" + s + "'");
      }
      return v;
    };
    const double trial = parse_num(cells[3], 3);
    m.trial_index = static_cast<int>(trial);
    std::vector<double> values, flag_values;
    for (std::size_t i = 0; i < is_flag.size(); ++i) {
      const double v = parse_num(cells[kMetaColumns + i], kMetaColumns + i);
      (is_flag[i] ? flag_values : values).push_back(v);
    }
    t.add_row(std::move(m), std::move(values), std::move(flag_values));
  }
  if (!have_header) fail(ErrorKind::Parse, origin + ": no header row");
  t.validate();
  return t;
}

void save_feature_table(const FeatureTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  out << feature_table_to_csv(table);
  if (!out) fail(ErrorKind::Io, "write failed for " + path.string());
}

FeatureTable load_feature_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return feature_table_from_csv(ss.str(), path.string());
}

std::vector<std::string> ecg_feature_columns(const EcgFeatureOptions& options) {
  std::vector<std::string> cols;
  if (options.set != FeatureSet::Catch22) cols = hrv_feature_names(options.include_pnn40);
  if (options.set != FeatureSet::Hrv) {
    for (auto n : catch22_names()) cols.emplace_back(n);
  }
  return cols;
}

FeatureTable build_ecg_feature_table(const TrialTensor& ecg, const EcgFeatureOptions& options) {
  if (ecg.modality() != Modality::ECG) fail(ErrorKind::InvalidArgument, "expected an ECG tensor");
  FeatureTable t;
  t.columns = ecg_feature_columns(options);
  t.flag_columns = ecg_flag_columns();
  if (ecg.total_epochs() == 0) return t;
  const double fs = ecg.fs();
  const double high = std::min(options.high_hz, 0.45 * fs);
  const auto coeffs = design_filter(FilterSpec::bandpass(options.low_hz, high, options.order), fs);
  const bool want_hrv = options.set != FeatureSet::Catch22;
  const bool want_c22 = options.set != FeatureSet::Hrv;
  const std::size_t n_hrv = want_hrv ? hrv_feature_names(options.include_pnn40).size() : 0;

  for (const auto& [key, trials] : ecg.cells()) {
    for (const auto& epoch : trials) {
      const std::vector<double> filtered = filtfilt(coeffs, epoch.samples.front());
      std::vector<double> values;
      std::vector<double> flag_values(t.flag_columns.size(), 0.0);
      if (want_hrv) {
        try {
          const RPeakList peaks = detect_r_peaks(filtered, fs);
          flag_values[1] = static_cast<double>(peaks.indices.size());
          RRSeries rr = compute_rr(peaks);
          if (rr.size() >= 4) {
            rr = mad_correct(rr, options.mad_multiplier);
            double corrected = 0.0;
            for (bool b : rr.corrected_mask) corrected += b ? 1.0 : 0.0;
            flag_values[2] = corrected;
          }
          const HrvFeatures h = compute_hrv(rr);
          flag_values[3] = h.sd2_clamped ? 1.0 : 0.0;
          values = hrv_feature_values(h, options.include_pnn40);
        } catch (const Error& e) {
          values.assign(n_hrv, std::numeric_limits<double>::quiet_NaN());
          flag_values[0] = 1.0;
          t.log.push_back(key.subject + "/" + key.label.class_name() + "/" + std::to_string(epoch.trial_index) +
                               " hrv: " + e.what());
        }
      }
      if (want_c22) {
        const Catch22Vector c = compute_catch22(filtered);
        double invalid = 0.0;
        for (std::size_t k = 0; k < kCatch22Count; ++k) {
          values.push_back(c.values[k]);
          invalid += c.invalid[k] ? 1.0 : 0.0;
        }
        flag_values[4] = invalid;
      }
      t.add_row({key.subject, key.label, epoch.trial_index}, std::move(values), std::move(flag_values));
    }
  }
  return t;
}

}  // namespace cogload
