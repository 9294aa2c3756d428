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

#include "cogload/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cogload/bsig.hpp"
#include "cogload/error.hpp"
#include "json.hpp"

namespace cogload {

using nlohmann::json;

namespace {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  out << text;
  if (!out) fail(ErrorKind::Io, "write failed for " + path.string());
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::size_t epoch_samples(double seconds, double fs) {
  return static_cast<std::size_t>(std::llround(seconds * fs));
}

template <typename T>
T field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) fail(ErrorKind::Validation, where + ": missing field '" + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    fail(ErrorKind::Validation, where + ": field '" + key + "' has the wrong type");
  }
}

std::size_t probe_samples(const std::filesystem::path& path, SignalFormat format, std::size_t* channels) {
  if (format == SignalFormat::Bsig) {
    const BsigHeader h = read_bsig_header(path);
    *channels = h.n_channels;
    return static_cast<std::size_t>(h.n_samples);
  }
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::string line;
  std::size_t rows = 0;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      *channels = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
      header = false;
      continue;
    }
    ++rows;
  }
  return rows;
}

}  // namespace

std::string to_string(Modality m) { return m == Modality::ECG ? "ECG" : "EEG"; }

std::string to_string(Condition c) { return c == Condition::JustListen ? "JustListen" : "Memory"; }

std::string to_string(Subcondition s) {
  switch (s) {
    case Subcondition::None: return "None";
    case Subcondition::Five: return "Five";
    case Subcondition::Nine: return "Nine";
    case Subcondition::Thirteen: return "Thirteen";
  }
  return "None";
}

std::string to_string(SignalFormat f) { return f == SignalFormat::Csv ? "csv" : "bsig"; }

std::string to_string(Task t) {
  switch (t) {
    case Task::MC: return "mc";
    case Task::BC: return "bc";
    case Task::FC: return "fc";
  }
  return "mc";
}

Modality parse_modality(const std::string& s) {
  if (s == "ECG" || s == "ecg") return Modality::ECG;
  if (s == "EEG" || s == "eeg") return Modality::EEG;
  fail(ErrorKind::InvalidArgument, "unknown modality '" + s + "'");
}

Condition parse_condition(const std::string& s) {
  if (s == "JustListen") return Condition::JustListen;
  if (s == "Memory") return Condition::Memory;
  fail(ErrorKind::InvalidArgument, "unknown condition '" + s + "'");
}

Subcondition parse_subcondition(const std::string& s) {
  if (s == "None") return Subcondition::None;
  if (s == "Five") return Subcondition::Five;
  if (s == "Nine") return Subcondition::Nine;
  if (s == "Thirteen") return Subcondition::Thirteen;
  fail(ErrorKind::InvalidArgument, "unknown subcondition '" + s + "'");
}

SignalFormat parse_format(const std::string& s) {
  if (s == "csv") return SignalFormat::Csv;
  if (s == "bsig") return SignalFormat::Bsig;
  fail(ErrorKind::InvalidArgument, "unknown signal format '" + s + "'");
}

Task parse_task(const std::string& s) {
  if (s == "mc" || s == "MC") return Task::MC;
  if (s == "bc" || s == "BC") return Task::BC;
  if (s == "fc" || s == "FC") return Task::FC;
  fail(ErrorKind::InvalidArgument, "unknown task '" + s + "'");
}

bool ConditionLabel::valid() const {
  if (condition == Condition::JustListen) return subcondition == Subcondition::None;
  return subcondition != Subcondition::None;
}

std::string ConditionLabel::class_name() const {
  return condition == Condition::JustListen ? "JustListen" : to_string(subcondition);
}

ConditionLabel ConditionLabel::from_class_name(const std::string& name) {
  if (name == "JustListen") return {Condition::JustListen, Subcondition::None};
  const Subcondition s = parse_subcondition(name);
  if (s == Subcondition::None) fail(ErrorKind::InvalidArgument, "'None' is not a class name");
  return {Condition::Memory, s};
}

std::vector<std::string> task_classes(Task task) {
  switch (task) {
    case Task::MC: return {"Five", "Nine", "Thirteen"};
    case Task::BC: return {"JustListen", "Memory"};
    case Task::FC: return {"JustListen", "Five", "Nine", "Thirteen"};
  }
  return {};
}

std::optional<int> task_class(Task task, const ConditionLabel& label) {
  if (!label.valid()) return std::nullopt;
  const int load = label.subcondition == Subcondition::Five   ? 0
                   : label.subcondition == Subcondition::Nine ? 1
                                                              : 2;
  switch (task) {
    case Task::MC:
      if (label.condition != Condition::Memory) return std::nullopt;
      return load;
    case Task::BC: return label.condition == Condition::JustListen ? 0 : 1;
    case Task::FC: return label.condition == Condition::JustListen ? 0 : load + 1;
  }
  return std::nullopt;
}

std::string Event::describe() const {
  return "event(subject=" + subject + ", condition=" + to_string(label.condition) +
         ", subcondition=" + to_string(label.subcondition) + ", trial=" + std::to_string(trial_index) + ")";
}

const SubjectInfo* Manifest::find_subject(const std::string& id) const {
  for (const auto& s : subjects) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

const RecordingInfo* Manifest::find_recording(const std::string& subject, const std::string& id) const {
  const SubjectInfo* s = find_subject(subject);
  if (s == nullptr) return nullptr;
  for (const auto& r : s->recordings) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

Manifest parse_manifest(const std::string& text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorKind::Parse, "manifest parse error at line " + std::to_string(line) + ", column " +
                               std::to_string(col) + ": " + e.what());
  }
  if (!doc.is_object()) fail(ErrorKind::Parse, "manifest must be a JSON object");

  Manifest m;
  m.base_dir = base_dir;
  if (doc.contains("epoch_seconds")) m.epoch_seconds = field<double>(doc, "epoch_seconds", "manifest");
  const json subjects = doc.value("subjects", json::array());
  const json events = doc.value("events", json::array());
  if (!subjects.is_array() || !events.is_array()) {
    fail(ErrorKind::Validation, "manifest: 'subjects' and 'events' must be arrays");
  }
  for (std::size_t i = 0; i < subjects.size(); ++i) {
    const std::string where = "subjects[" + std::to_string(i) + "]";
    SubjectInfo s;
    s.id = field<std::string>(subjects[i], "id", where);
    const json recs = subjects[i].value("recordings", json::array());
    for (std::size_t j = 0; j < recs.size(); ++j) {
      const std::string rw = where + ".recordings[" + std::to_string(j) + "]";
      RecordingInfo r;
      r.id = field<std::string>(recs[j], "id", rw);
      try {
        r.modality = parse_modality(field<std::string>(recs[j], "modality", rw));
        r.format = parse_format(recs[j].value("format", std::string("bsig")));
      } catch (const Error& e) {
        fail(ErrorKind::Validation, rw + ": " + e.what());
      }
      r.signal_path = field<std::string>(recs[j], "signal_path", rw);
      r.fs = field<double>(recs[j], "fs", rw);
      r.channel_names = field<std::vector<std::string>>(recs[j], "channel_names", rw);
      s.recordings.push_back(std::move(r));
    }
    m.subjects.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < events.size(); ++i) {
    const std::string where = "events[" + std::to_string(i) + "]";
    Event e;
    e.subject = field<std::string>(events[i], "subject", where);
    try {
      e.label.condition = parse_condition(field<std::string>(events[i], "condition", where));
      e.label.subcondition = parse_subcondition(events[i].value("subcondition", std::string("None")));
    } catch (const Error& err) {
      if (err.kind() == ErrorKind::Validation) throw;
      fail(ErrorKind::Validation, where + ": " + err.what());
    }
    e.trial_index = field<int>(events[i], "trial_index", where);
    if (events[i].contains("onsets")) {
      const json& onsets = events[i]["onsets"];
      for (std::size_t k = 0; k < onsets.size(); ++k) {
        const std::string ow = where + ".onsets[" + std::to_string(k) + "]";
        EventOnset o;
        o.recording = field<std::string>(onsets[k], "recording", ow);
        const auto onset = field<long long>(onsets[k], "onset_sample", ow);
        if (onset < 0) fail(ErrorKind::Validation, ow + ": negative onset_sample");
        o.onset_sample = static_cast<std::size_t>(onset);
        e.onsets.push_back(std::move(o));
      }
    } else {
      EventOnset o;
      o.recording = field<std::string>(events[i], "recording", where);
      const auto onset = field<long long>(events[i], "onset_sample", where);
      if (onset < 0) fail(ErrorKind::Validation, where + ": negative onset_sample");
      o.onset_sample = static_cast<std::size_t>(onset);
      e.onsets.push_back(std::move(o));
    }
    m.events.push_back(std::move(e));
  }
  return m;
}

Manifest load_manifest(const std::filesystem::path& path) {
  Manifest m = parse_manifest(read_text(path), path.parent_path());
  validate_manifest(m, true);
  return m;
}

void validate_manifest(Manifest& m, bool probe_signals) {
  std::vector<std::string> problems;
  if (!(m.epoch_seconds > 0.0)) problems.push_back("epoch_seconds must be positive");
  std::set<std::string> subject_ids;
  for (auto& s : m.subjects) {
    if (!subject_ids.insert(s.id).second) problems.push_back("duplicate subject id " + s.id);
    std::set<std::string> rec_ids;
    for (auto& r : s.recordings) {
      const std::string name = s.id + "/" + r.id;
      if (!rec_ids.insert(r.id).second) problems.push_back("duplicate recording id " + name);
      if (!(r.fs > 0.0)) problems.push_back("recording " + name + ": fs must be positive");
      std::set<std::string> ch(r.channel_names.begin(), r.channel_names.end());
      if (r.channel_names.empty()) problems.push_back("recording " + name + ": no channel names");
      if (ch.size() != r.channel_names.size()) problems.push_back("recording " + name + ": duplicate channel names");
      if (probe_signals) {
        std::size_t channels = 0;
        r.n_samples = probe_samples(m.resolve(r), r.format, &channels);
        if (channels != r.channel_names.size()) {
          problems.push_back("recording " + name + ": file has " + std::to_string(channels) +
                             " channels, manifest lists " + std::to_string(r.channel_names.size()));
        }
      }
    }
  }
  std::set<std::tuple<std::string, ConditionLabel, int>> seen;
  for (const auto& e : m.events) {
    if (!e.label.valid()) {
      problems.push_back(e.describe() + ": JustListen requires subcondition None, Memory requires Five/Nine/Thirteen");
    }
    if (!seen.insert({e.subject, e.label, e.trial_index}).second) {
      problems.push_back(e.describe() + ": duplicate trial_index within its cell");
    }
    if (m.find_subject(e.subject) == nullptr) {
      problems.push_back(e.describe() + ": unknown subject '" + e.subject + "'");
      continue;
    }
    if (e.onsets.empty()) problems.push_back(e.describe() + ": no onsets");
    for (const auto& o : e.onsets) {
      const RecordingInfo* r = m.find_recording(e.subject, o.recording);
      if (r == nullptr) {
        problems.push_back(e.describe() + ": unknown recording '" + o.recording + "'");
        continue;
      }
      if (probe_signals) {
        const std::size_t len = epoch_samples(m.epoch_seconds, r->fs);
        if (o.onset_sample + len > r->n_samples) {
          problems.push_back(e.describe() + ": onset " + std::to_string(o.onset_sample) + " + " +
                             std::to_string(len) + " exceeds " + std::to_string(r->n_samples) +
                             " samples of recording '" + o.recording + "'");
        }
      }
    }
  }
  if (!problems.empty()) fail(ErrorKind::Validation, join(problems, "; "));
}

std::string manifest_to_json(const Manifest& m) {
  json doc;
  doc["version"] = 1;
  doc["epoch_seconds"] = m.epoch_seconds;
  json subjects = json::array();
  for (const auto& s : m.subjects) {
    json recs = json::array();
    for (const auto& r : s.recordings) {
      recs.push_back({{"id", r.id},
                      {"modality", to_string(r.modality)},
                      {"signal_path", r.signal_path},
                      {"format", to_string(r.format)},
                      {"fs", r.fs},
                      {"channel_names", r.channel_names}});
    }
    subjects.push_back({{"id", s.id}, {"recordings", recs}});
  }
  json events = json::array();
  for (const auto& e : m.events) {
    json onsets = json::array();
    for (const auto& o : e.onsets) onsets.push_back({{"recording", o.recording}, {"onset_sample", o.onset_sample}});
    events.push_back({{"subject", e.subject},
                      {"condition", to_string(e.label.condition)},
                      {"subcondition", to_string(e.label.subcondition)},
                      {"trial_index", e.trial_index},
                      {"onsets", onsets}});
  }
  doc["subjects"] = subjects;
  doc["events"] = events;
  return doc.dump(2) + "\n";
}

void save_manifest(const Manifest& manifest, const std::filesystem::path& path) {
  write_text(path, manifest_to_json(manifest));
}

SignalRecord read_signal(const std::filesystem::path& path, SignalFormat format, double fs) {
  if (format == SignalFormat::Bsig) {
    SignalRecord rec = read_bsig(path);
    if (fs > 0.0) rec.fs = fs;
    return rec;
  }
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  SignalRecord rec;
  rec.fs = fs;
  std::string line;
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (header) {
      rec.channel_names = cells;
      rec.samples.assign(cells.size(), {});
      header = false;
      continue;
    }
    if (cells.size() != rec.channel_names.size()) {
      fail(ErrorKind::Parse, path.string() + ": line " + std::to_string(line_no) + " has " +
                                 std::to_string(cells.size()) + " fields, expected " +
                                 std::to_string(rec.channel_names.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::string& t = cells[c];
      const char* b = t.data();
      while (b < t.data() + t.size() && *b == ' ') ++b;
      double v = 0.0;
      auto res = std::from_chars(b, t.data() + t.size(), v);
      if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
        fail(ErrorKind::Parse, path.string() + ": line " + std::to_string(line_no) + ", column " +
                                   std::to_string(c + 1) + ": not a number '" + t + "'");
      }
      rec.samples[c].push_back(v);
    }
  }
  if (header) fail(ErrorKind::Parse, path.string() + ": empty CSV, header row missing");
  return rec;
}

void write_signal(const std::filesystem::path& path, const SignalRecord& rec, SignalFormat format) {
  if (format == SignalFormat::Bsig) {
    write_bsig(path, rec);
    return;
  }
  std::string out = join(rec.channel_names, ",") + "\n";
  for (std::size_t i = 0; i < rec.n_samples(); ++i) {
    for (std::size_t c = 0; c < rec.n_channels(); ++c) {
      if (c) out += ',';
      out += fmt_double(rec.samples[c][i]);
    }
    out += '\n';
  }
  write_text(path, out);
}

TrialTensor::TrialTensor(Modality modality, double fs, std::vector<std::string> channels, std::size_t epoch_length)
    : modality_(modality), fs_(fs), channels_(std::move(channels)), epoch_length_(epoch_length) {}

void TrialTensor::add(const CellKey& key, Epoch epoch) {
  if (epoch.samples.size() != channels_.size()) {
    fail(ErrorKind::InvalidArgument, "epoch has " + std::to_string(epoch.samples.size()) + " channels, tensor has " +
                                         std::to_string(channels_.size()));
  }
  for (auto& ch : epoch.samples) {
    if (ch.size() != epoch_length_) {
      fail(ErrorKind::Length, "epoch has " + std::to_string(ch.size()) + " samples, expected " +
                                  std::to_string(epoch_length_));
    }
    for (double& v : ch) v = static_cast<double>(static_cast<float>(v));
  }
  auto& trials = cells_[key];
  for (const auto& t : trials) {
    if (t.trial_index == epoch.trial_index) {
      fail(ErrorKind::Validation, "duplicate trial " + std::to_string(epoch.trial_index) + " for subject " + key.subject);
    }
  }
  trials.push_back(std::move(epoch));
}

const std::vector<Epoch>* TrialTensor::cell(const CellKey& key) const {
  auto it = cells_.find(key);
  return it == cells_.end() ? nullptr : &it->second;
}

const Epoch* TrialTensor::find(const CellKey& key, int trial_index) const {
  const auto* trials = cell(key);
  if (trials == nullptr) return nullptr;
  for (const auto& t : *trials) {
    if (t.trial_index == trial_index) return &t;
  }
  return nullptr;
}

std::size_t TrialTensor::total_epochs() const {
  std::size_t n = 0;
  for (const auto& [k, v] : cells_) n += v.size();
  return n;
}

std::vector<std::string> TrialTensor::subjects() const {
  std::set<std::string> s;
  for (const auto& [k, v] : cells_) s.insert(k.subject);
  return {s.begin(), s.end()};
}

void TrialTensor::save(const std::filesystem::path& dir) const {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
  json index;
  index["version"] = 1;
  index["modality"] = to_string(modality_);
  index["fs"] = fs_;
  index["channels"] = channels_;
  index["epoch_length"] = epoch_length_;
  json cells = json::array();
  std::size_t k = 0;
  for (const auto& [key, trials] : cells_) {
    char name[32];
    std::snprintf(name, sizeof(name), "cell_%05zu.bsig", k++);
    SignalRecord rec;
    rec.fs = fs_;
    std::vector<int> trial_ids;
    for (const auto& t : trials) {
      trial_ids.push_back(t.trial_index);
      for (std::size_t c = 0; c < t.samples.size(); ++c) {
        rec.samples.push_back(t.samples[c]);
        rec.channel_names.push_back(std::to_string(t.trial_index) + "." + channels_[c]);
      }
    }
    write_bsig(dir / name, rec);
    cells.push_back({{"subject", key.subject},
                     {"condition", to_string(key.label.condition)},
                     {"subcondition", to_string(key.label.subcondition)},
                     {"file", name},
                     {"trials", trial_ids}});
  }
  index["cells"] = cells;
  write_text(dir / "index.json", index.dump(2) + "\n");
}

TrialTensor TrialTensor::load(const std::filesystem::path& dir) {
  json index;
  try {
    index = json::parse(read_text(dir / "index.json"));
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Parse, (dir / "index.json").string() + ": " + e.what());
  }
  TrialTensor t(parse_modality(index.at("modality").get<std::string>()), index.at("fs").get<double>(),
                index.at("channels").get<std::vector<std::string>>(), index.at("epoch_length").get<std::size_t>());
  const std::size_t nch = t.channels_.size();
  for (const auto& cell : index.at("cells")) {
    CellKey key{cell.at("subject").get<std::string>(),
                {parse_condition(cell.at("condition").get<std::string>()),
                 parse_subcondition(cell.at("subcondition").get<std::string>())}};
    const auto trials = cell.at("trials").get<std::vector<int>>();
    const SignalRecord rec = read_bsig(dir / cell.at("file").get<std::string>());
    if (rec.n_channels() != trials.size() * nch) {
      fail(ErrorKind::Length, "cell file " + cell.at("file").get<std::string>() + " has the wrong channel count");
    }
    for (std::size_t i = 0; i < trials.size(); ++i) {
      Epoch e;
      e.trial_index = trials[i];
      for (std::size_t c = 0; c < nch; ++c) e.samples.push_back(rec.samples[i * nch + c]);
      t.add(key, std::move(e));
    }
  }
  return t;
}

bool TrialTensor::operator==(const TrialTensor& o) const {
  if (modality_ != o.modality_ || fs_ != o.fs_ || channels_ != o.channels_ || epoch_length_ != o.epoch_length_) {
    return false;
  }
  if (cells_.size() != o.cells_.size()) return false;
  for (const auto& [key, trials] : cells_) {
    const auto* other = o.cell(key);
    if (other == nullptr || other->size() != trials.size()) return false;
    for (std::size_t i = 0; i < trials.size(); ++i) {
      if (trials[i].trial_index != (*other)[i].trial_index || trials[i].samples != (*other)[i].samples) return false;
    }
  }
  return true;
}

TrialTensor epoch_trials(const Manifest& m, Modality modality, const EpochOptions& opt) {
  struct Prepared {
    SignalRecord rec;
    std::size_t epoch_len = 0;
  };
  std::map<std::pair<std::string, std::string>, Prepared> cache;
  TrialTensor tensor;
  bool init = false;

  auto prepare = [&](const std::string& subject, const RecordingInfo& info) -> const Prepared& {
    auto key = std::make_pair(subject, info.id);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    SignalRecord raw = read_signal(m.resolve(info), info.format, info.fs);
    raw.fs = info.fs;
    if (raw.n_channels() != info.channel_names.size()) {
      fail(ErrorKind::Channel, "recording " + subject + "/" + info.id + " channel count does not match manifest");
    }
    raw.channel_names = info.channel_names;
    Prepared p;
    p.epoch_len = epoch_samples(m.epoch_seconds, info.fs);
    if (modality == Modality::ECG) {
      p.rec = std::move(raw);
    } else {
      SignalRecord sel;
      sel.fs = raw.fs;
      for (const auto& name : opt.eeg_channels) {
        const std::size_t idx = raw.channel_index(name);
        if (idx == static_cast<std::size_t>(-1)) {
          fail(ErrorKind::Channel, "required EEG channel missing: " + name + " (recording " + subject + "/" +
                                       info.id + ")");
        }
        sel.samples.push_back(raw.samples[idx]);
        sel.channel_names.push_back(name);
      }
      const auto bp = design_filter(FilterSpec::bandpass(opt.eeg_low_hz, opt.eeg_high_hz, opt.eeg_order), sel.fs);
      sel = apply_filter(sel, bp, true);
      if (opt.notch_hz > 0.0 && opt.notch_hz < sel.fs / 2.0) {
        const auto notch = design_filter(FilterSpec::notch(opt.notch_hz, opt.notch_q), sel.fs);
        sel = apply_filter(sel, notch, true);
      }
      if (opt.eeg_artifact_hook) sel = opt.eeg_artifact_hook(sel);
      p.rec = std::move(sel);
    }
    return cache.emplace(key, std::move(p)).first->second;
  };

  for (const auto& e : m.events) {
    for (const auto& o : e.onsets) {
      const RecordingInfo* info = m.find_recording(e.subject, o.recording);
      if (info == nullptr) fail(ErrorKind::Validation, e.describe() + ": unknown recording '" + o.recording + "'");
      if (info->modality != modality) continue;
      const Prepared& p = prepare(e.subject, *info);
      if (o.onset_sample + p.epoch_len > p.rec.n_samples()) {
        fail(ErrorKind::Validation, e.describe() + ": epoch exceeds recording bounds");
      }
      Epoch ep;
      ep.trial_index = e.trial_index;
      for (const auto& ch : p.rec.samples) {
        ep.samples.emplace_back(ch.begin() + static_cast<std::ptrdiff_t>(o.onset_sample),
                                ch.begin() + static_cast<std::ptrdiff_t>(o.onset_sample + p.epoch_len));
      }
      double fs = p.rec.fs;
      if (modality == Modality::EEG) {
        SignalRecord slice{ep.samples, p.rec.fs, p.rec.channel_names, 0.0};
        if (opt.eeg_target_fs > 0.0 && opt.eeg_target_fs != slice.fs) slice = resample(slice, opt.eeg_target_fs);
        const std::size_t want = epoch_samples(m.epoch_seconds, slice.fs);
        for (auto& ch : slice.samples) {
          if (ch.size() > want) ch.resize(want);
          while (ch.size() < want) ch.push_back(ch.back());
        }
        slice = baseline_correct(slice, 0.0, static_cast<double>(want) / slice.fs);
        ep.samples = std::move(slice.samples);
        fs = slice.fs;
      }
      if (!init) {
        tensor = TrialTensor(modality, fs, modality == Modality::EEG ? opt.eeg_channels : p.rec.channel_names,
                             ep.samples.front().size());
        init = true;
      } else if (fs != tensor.fs() || ep.samples.front().size() != tensor.epoch_length()) {
        fail(ErrorKind::Validation, e.describe() + ": sampling rate differs from earlier " + to_string(modality) +
                                        " recordings");
      } else if (modality == Modality::ECG && p.rec.channel_names != tensor.channels()) {
        fail(ErrorKind::Channel, e.describe() + ": ECG channel layout differs between recordings");
      }
      tensor.add({e.subject, e.label}, std::move(ep));
    }
  }
  return tensor;
}

}  // namespace cogload
