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

#include "cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "cogload/catch22.hpp"
#include "cogload/crossmodal.hpp"
#include "cogload/dataset.hpp"
#include "cogload/error.hpp"
#include "cogload/feature_table.hpp"
#include "cogload/hrv.hpp"
#include "cogload/ml.hpp"
#include "cogload/synth.hpp"
#include "json.hpp"

namespace cogload {

namespace {

using ojson = nlohmann::ordered_json;

std::string hex(const unsigned char* d, unsigned int n) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (unsigned int i = 0; i < n; ++i) {
    s += digits[d[i] >> 4];
    s += digits[d[i] & 15];
  }
  return s;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) fail(ErrorKind::Io, "write failed for " + path.string());
}

void make_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    fail(ErrorKind::Io, "cannot create output directory " + dir.string() + (ec ? ": " + ec.message() : ""));
  }
}

std::string fmt(double v, int digits = 3) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, digits);
  return std::string(buf, res.ptr);
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Provenance shared by every artifact of one invocation.
struct Provenance {
  ojson config;
  std::uint64_t seed = 0;
  ojson inputs = ojson::array();

  void add_input(const std::filesystem::path& path, const std::string& digest) {
    inputs.push_back({{"path", path.generic_string()}, {"sha256", digest}});
  }

  ojson versions() const {
    return {{"cogload", kVersion}, {"bsig", 1}, {"model_format", 1}, {"catch22_features", kCatch22Count}};
  }

  ojson header() const {
    ojson j;
    j["config"] = config;
    j["seed"] = seed;
    j["versions"] = versions();
    j["inputs"] = inputs;
    return j;
  }

  std::vector<std::string> csv_notes() const {
    std::vector<std::string> notes;
    notes.push_back("config: " + config.dump());
    notes.push_back("seed: " + std::to_string(seed));
    notes.push_back("versions: " + versions().dump());
    for (const auto& in : inputs) {
      notes.push_back("input: " + in["path"].get<std::string>() + " sha256=" + in["sha256"].get<std::string>());
    }
    return notes;
  }

  std::string csv_comment_block() const {
    std::string s;
    for (const auto& n : csv_notes()) s += "# " + n + "\n";
    return s;
  }
};

std::string timestamp_comment(bool enabled) {
  if (!enabled) return "";
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[64];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return std::string("<!-- generated ") + buf + " -->\n";
}

std::string confusion_svg(const EvalReport& r, const std::string& title, bool timestamp) {
  const std::size_t k = r.classes.size();
  const int cell = 70, left = 110, top = 60;
  const int w = left + static_cast<int>(k) * cell + 20;
  const int h = top + static_cast<int>(k) * cell + 50;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" font-family=\"sans-serif\">\n";
  s << timestamp_comment(timestamp);
  s << "<text x=\"" << w / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << xml_escape(title) << "</text>\n";
  s << "<text x=\"" << left + static_cast<int>(k) * cell / 2 << "\" y=\"" << h - 10
    << "\" text-anchor=\"middle\" font-size=\"12\">predicted</text>\n";
  for (std::size_t i = 0; i < k; ++i) {
    long row = 0;
    for (long v : r.confusion[i]) row += v;
    const int y = top + static_cast<int>(i) * cell;
    s << "<text x=\"" << left - 6 << "\" y=\"" << y + cell / 2 + 4 << "\" text-anchor=\"end\" font-size=\"12\">"
      << xml_escape(r.classes[i]) << "</text>\n";
    for (std::size_t j = 0; j < k; ++j) {
      const int x = left + static_cast<int>(j) * cell;
      const double frac = row > 0 ? static_cast<double>(r.confusion[i][j]) / static_cast<double>(row) : 0.0;
      const int shade = 255 - static_cast<int>(std::lround(frac * 200.0));
      s << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\"rgb("
        << shade << "," << shade << ",255)\" stroke=\"#444\"/>\n";
      s << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + cell / 2 + 5 << "\" text-anchor=\"middle\" font-size=\"14\">"
        << r.confusion[i][j] << "</text>\n";
      if (i == 0) {
        s << "<text x=\"" << x + cell / 2 << "\" y=\"" << top - 8 << "\" text-anchor=\"middle\" font-size=\"12\">"
          << xml_escape(r.classes[j]) << "</text>\n";
      }
    }
  }
  s << "</svg>\n";
  return s.str();
}

std::string importance_svg(const std::vector<std::pair<std::string, double>>& imp, bool timestamp) {
  const std::size_t n = std::min<std::size_t>(imp.size(), 20);
  const int bar_h = 18, left = 330, width = 300, top = 40;
  const int h = top + static_cast<int>(n) * (bar_h + 4) + 20;
  const double top_w = n > 0 && imp[0].second > 0.0 ? imp[0].second : 1.0;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << left + width + 70 << "\" height=\"" << h
    << "\" font-family=\"sans-serif\">\n";
  s << timestamp_comment(timestamp);
  s << "<text x=\"10\" y=\"22\" font-size=\"14\">feature importance (normalized total gain)</text>\n";
  for (std::size_t i = 0; i < n; ++i) {
    const int y = top + static_cast<int>(i) * (bar_h + 4);
    const int len = static_cast<int>(std::lround(imp[i].second / top_w * width));
    s << "<text x=\"" << left - 6 << "\" y=\"" << y + bar_h - 5 << "\" text-anchor=\"end\" font-size=\"11\">"
      << xml_escape(imp[i].first) << "</text>\n";
    s << "<rect x=\"" << left << "\" y=\"" << y << "\" width=\"" << len << "\" height=\"" << bar_h
      << "\" fill=\"#4a78b5\"/>\n";
    s << "<text x=\"" << left + len + 4 << "\" y=\"" << y + bar_h - 5 << "\" font-size=\"11\">" << fmt(imp[i].second, 4)
      << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::filesystem::path manifest_path(const std::filesystem::path& dataset) {
  return std::filesystem::is_directory(dataset) ? dataset / "manifest.json" : dataset;
}

std::string hash_dataset(const Manifest& m, const std::filesystem::path& manifest_file) {
  std::string listing = sha256_file(manifest_file) + "\n";
  for (const auto& s : m.subjects) {
    for (const auto& r : s.recordings) listing += r.signal_path + " " + sha256_file(m.resolve(r)) + "\n";
  }
  return sha256_hex(listing);
}

FeatureTable select_columns(const FeatureTable& t, const std::vector<std::string>& names) {
  FeatureTable out;
  out.columns = names;
  out.flag_columns = t.flag_columns;
  out.notes = t.notes;
  out.log = t.log;
  std::vector<std::size_t> pos;
  for (const auto& n : names) pos.push_back(t.column_index(n));
  for (std::size_t r = 0; r < t.rows(); ++r) {
    std::vector<double> v;
    for (std::size_t p : pos) v.push_back(t.x[r][p]);
    out.add_row(t.meta[r], std::move(v), t.flags[r]);
  }
  return out;
}

// Columns the chosen feature set expects; missing ones are a schema error.
FeatureTable apply_feature_set(const FeatureTable& t, FeatureSet set, const std::string& origin) {
  const bool is_eeg = !t.columns.empty() && t.columns.front().find(".f") != std::string::npos;
  std::vector<std::string> want;
  if (is_eeg) {
    if (set == FeatureSet::Hrv) fail(ErrorKind::FeatureAlignment, origin + ": EEG feature tables carry no HRV columns");
    return t;
  }
  std::vector<std::string> hrv = hrv_feature_names(false);
  if (set != FeatureSet::Catch22) {
    want = hrv;
    if (t.column_index("pnn40") != static_cast<std::size_t>(-1)) want.push_back("pnn40");
  }
  if (set != FeatureSet::Hrv) {
    for (auto n : catch22_names()) want.emplace_back(n);
  }
  std::vector<std::string> missing;
  for (const auto& w : want) {
    if (t.column_index(w) == static_cast<std::size_t>(-1)) missing.push_back(w);
  }
  if (!missing.empty()) {
    std::string msg = origin + ": feature schema mismatch; missing:";
    for (const auto& m : missing) msg += " " + m;
    fail(ErrorKind::FeatureAlignment, msg);
  }
  return select_columns(t, want);
}

struct SynthArgs {
  std::string out;
  std::size_t subjects = 4;
  std::size_t trials = 50;
  std::uint64_t seed = 0;
  double offset_scale = 1.0;
  bool subject_noise = false;
  double cardiac_field = 5.0;
  std::string format = "bsig";
};

struct FeaturesArgs {
  std::string dataset;
  std::string out;
  std::string modality = "both";
  std::string feature_set = "both";
  bool pnn40 = false;
};

struct TrainArgs {
  std::string features;
  std::string out;
  std::string task = "mc";
  std::string feature_set = "both";
  std::string model = "gb";
  std::string split = "trial_stratified";
  double test_fraction = 0.2;
  std::uint64_t seed = 0;
  std::size_t n_trees = 300;
  std::size_t n_rounds = 200;
  bool no_timestamp = false;
};

struct TransferArgs {
  std::string ecg;
  std::string eeg;
  std::string out;
  std::string task = "mc";
  std::string model = "rf";
  std::string alignment = "channel_mean";
  std::string standardization = "per_domain";
  std::uint64_t seed = 0;
  std::size_t n_trees = 300;
  std::size_t n_rounds = 200;
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  CoupledLoadSpec spec;
  spec.subjects = a.subjects;
  spec.trials_per_class = a.trials;
  spec.seed = a.seed;
  spec.offset_scale = a.offset_scale;
  spec.subject_noise = a.subject_noise;
  spec.cardiac_field = a.cardiac_field;
  spec.format = parse_format(a.format);
  make_dir(a.out);
  const Manifest m = gen_coupled_dataset(spec, a.out);
  Provenance p;
  p.config = {{"command", "synth"},         {"out", a.out},
              {"subjects", a.subjects},     {"trials", a.trials},
              {"seed", a.seed},             {"offset_scale", a.offset_scale},
              {"subject_noise", a.subject_noise}, {"cardiac_field", a.cardiac_field},
              {"format", a.format}};
  p.seed = a.seed;
  write_file(std::filesystem::path(a.out) / "provenance.json", p.header().dump(2) + "\n");
  std::size_t files = 0;
  for (const auto& s : m.subjects) files += s.recordings.size();
  out << "wrote " << m.events.size() << " events and " << files << " signal files to " << a.out << "\n";
  return 0;
}

int cmd_features(const FeaturesArgs& a, std::ostream& out) {
  const std::filesystem::path mpath = manifest_path(a.dataset);
  if (!std::filesystem::exists(mpath)) fail(ErrorKind::Io, "cannot open " + mpath.string());
  const Manifest m = load_manifest(mpath);
  if (m.events.empty()) fail(ErrorKind::Validation, "no trials in " + mpath.string());
  make_dir(a.out);
  Provenance p;
  p.config = {{"command", "features"}, {"dataset", a.dataset}, {"out", a.out},
              {"modality", a.modality}, {"feature_set", a.feature_set}, {"pnn40", a.pnn40}};
  p.add_input(mpath, hash_dataset(m, mpath));

  const bool ecg = a.modality != "eeg";
  const bool eeg = a.modality != "ecg";
  if (ecg) {
    const TrialTensor t = epoch_trials(m, Modality::ECG);
    if (t.total_epochs() == 0) fail(ErrorKind::Validation, "no trials with ECG recordings");
    EcgFeatureOptions opt;
    opt.set = parse_feature_set(a.feature_set);
    opt.include_pnn40 = a.pnn40;
    FeatureTable table = build_ecg_feature_table(t, opt);
    table.notes = p.csv_notes();
    save_feature_table(table, std::filesystem::path(a.out) / "ecg_features.csv");
    out << "ecg_features.csv: " << table.rows() << " rows x " << table.cols() << " features\n";
  }
  if (eeg) {
    const TrialTensor t = epoch_trials(m, Modality::EEG);
    if (t.total_epochs() == 0) fail(ErrorKind::Validation, "no trials with EEG recordings");
    FeatureTable table = build_eeg_feature_table(t);
    table.notes = p.csv_notes();
    save_feature_table(table, std::filesystem::path(a.out) / "eeg_features.csv");
    out << "eeg_features.csv: " << table.rows() << " rows x " << table.cols() << " features\n";
  }
  return 0;
}

int cmd_train_eval(const TrainArgs& a, std::ostream& out) {
  const Task task = parse_task(a.task);
  const FeatureSet set = parse_feature_set(a.feature_set);
  const ModelKind kind = parse_model_kind(a.model);
  std::vector<SplitMode> modes;
  if (a.split == "both") {
    modes = {SplitMode::TrialStratified, SplitMode::SubjectGrouped};
  } else {
    modes = {parse_split_mode(a.split)};
  }
  const FeatureTable raw = load_feature_table(a.features);
  const FeatureTable table = apply_feature_set(raw, set, a.features);
  const TaskData data = for_task(table, task);
  if (data.rows() == 0) fail(ErrorKind::Task, "no rows for task " + a.task + " in " + a.features);
  make_dir(a.out);

  Provenance p;
  p.config = {{"command", "train-eval"}, {"features", a.features}, {"out", a.out},
              {"task", a.task},          {"feature_set", a.feature_set}, {"model", a.model},
              {"split", a.split},        {"test_fraction", a.test_fraction}, {"seed", a.seed},
              {"n_trees", a.n_trees},    {"n_rounds", a.n_rounds}};
  p.seed = a.seed;
  p.add_input(a.features, sha256_file(a.features));

  RandomForestParams rf;
  rf.n_trees = a.n_trees;
  rf.seed = a.seed;
  GradientBoostingParams gb;
  gb.n_rounds = a.n_rounds;
  gb.seed = a.seed;

  ojson doc = p.header();
  ojson reports = ojson::object();
  std::vector<std::pair<std::string, double>> importance;
  const std::filesystem::path dir(a.out);
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const std::string mode = to_string(modes[i]);
    const auto [train, test] = split(data, modes[i], a.test_fraction, a.seed);
    const TrainedEnsemble model = train_model(kind, train, rf, gb);
    EvalReport r = evaluate(model, test);
    r.protocol["task"] = a.task;
    r.protocol["feature_set"] = a.feature_set;
    r.protocol["split"] = mode;
    r.protocol["test_fraction"] = fmt(a.test_fraction, 6);
    r.protocol["seed"] = std::to_string(a.seed);
    r.protocol["n_train"] = std::to_string(train.rows());
    r.protocol["n_test"] = std::to_string(test.rows());
    reports[mode] = report_to_json(r);
    write_file(dir / ("confusion_" + mode + ".csv"), p.csv_comment_block() + confusion_to_csv(r));
    write_file(dir / ("confusion_" + mode + ".svg"),
               confusion_svg(r, a.task + " / " + a.model + " / " + mode + "  accuracy " + fmt(r.accuracy), !a.no_timestamp));
    if (i == 0) {
      importance = feature_importance(model);
      ojson model_doc = ojson::parse(model.to_json());
      model_doc["provenance"] = p.header();
      write_file(dir / "model.json", model_doc.dump(2) + "\n");
    }
    out << mode << ": accuracy " << fmt(r.accuracy, 4) << ", macro-F1 " << fmt(r.macro_f1, 4) << " (" << test.rows()
        << " test rows)\n";
  }
  doc["reports"] = reports;
  if (modes.size() == 2) {
    doc["leakage_gap"] = reports["trial_stratified"]["accuracy"].get<double>() -
                         reports["subject_grouped"]["accuracy"].get<double>();
  }
  ojson imp = ojson::array();
  std::string imp_csv = p.csv_comment_block() + "feature,weight\n";
  for (const auto& [name, w] : importance) {
    imp.push_back({{"feature", name}, {"weight", w}});
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), w);
    imp_csv += name + "," + std::string(buf, res.ptr) + "\n";
  }
  doc["feature_importance"] = imp;
  write_file(dir / "metrics.json", doc.dump(2) + "\n");
  write_file(dir / "importance.csv", imp_csv);
  write_file(dir / "importance.svg", importance_svg(importance, !a.no_timestamp));
  return 0;
}

int cmd_transfer(const TransferArgs& a, std::ostream& out) {
  TransferSpec spec;
  spec.task = parse_task(a.task);
  spec.model = parse_model_kind(a.model);
  spec.alignment = parse_alignment(a.alignment);
  spec.standardization = parse_standardization(a.standardization);
  spec.rf.n_trees = a.n_trees;
  spec.rf.seed = a.seed;
  spec.gb.n_rounds = a.n_rounds;
  spec.gb.seed = a.seed;
  const FeatureTable ecg = load_feature_table(a.ecg);
  const FeatureTable eeg = load_feature_table(a.eeg);
  make_dir(a.out);
  Provenance p;
  p.config = {{"command", "transfer"},  {"ecg", a.ecg},     {"eeg", a.eeg},
              {"out", a.out},           {"task", a.task},   {"model", a.model},
              {"alignment", a.alignment}, {"standardization", a.standardization},
              {"seed", a.seed},         {"n_trees", a.n_trees}, {"n_rounds", a.n_rounds}};
  p.seed = a.seed;
  p.add_input(a.ecg, sha256_file(a.ecg));
  p.add_input(a.eeg, sha256_file(a.eeg));
  const TransferPair pair = run_transfer_both(spec, ecg, eeg);
  ojson doc = p.header();
  doc["ECG->EEG"] = report_to_json(pair.ecg_to_eeg);
  doc["EEG->ECG"] = report_to_json(pair.eeg_to_ecg);
  const std::filesystem::path dir(a.out);
  write_file(dir / "transfer.json", doc.dump(2) + "\n");
  write_file(dir / "transfer_comparison.csv", p.csv_comment_block() + transfer_comparison_csv(pair));
  out << "ECG->EEG: accuracy " << fmt(pair.ecg_to_eeg.accuracy, 4) << "\n";
  out << "EEG->ECG: accuracy " << fmt(pair.eeg_to_ecg.accuracy, 4) << "\n";
  return 0;
}

// Turns a JSON config file into leading "--key value" arguments so that
// explicit flags, which come later, take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--config") path = args[i + 1];
  }
  for (const auto& a : args) {
    if (a.rfind("--config=", 0) == 0) path = a.substr(9);
  }
  if (path.empty() || args.empty()) return args;
  ojson cfg;
  try {
    cfg = ojson::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::Parse, path + ": " + e.what());
  }
  if (!cfg.is_object()) fail(ErrorKind::Parse, path + ": config must be a JSON object");
  std::vector<std::string> out{args.front()};
  for (const auto& [key, value] : cfg.items()) {
    if (key == "command") continue;
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (value.is_boolean()) {
      if (value.get<bool>()) out.push_back(flag);
    } else if (value.is_string()) {
      out.push_back(flag);
      out.push_back(value.get<std::string>());
    } else {
      out.push_back(flag);
      out.push_back(value.dump());
    }
  }
  out.insert(out.end(), args.begin() + 1, args.end());
  return out;
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    fail(ErrorKind::Io, "SHA-256 failed");
  }
  return hex(md, len);
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_file(path)); }

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cogload: cognitive-load pipeline over ECG and EEG"};
  app.name("cogload");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config;

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "write a coupled synthetic ECG/EEG dataset");
  synth->add_option("--out", sa.out, "output directory")->required();
  synth->add_option("--subjects", sa.subjects, "number of subjects")->check(CLI::PositiveNumber);
  synth->add_option("--trials", sa.trials, "trials per class and subject")->check(CLI::PositiveNumber);
  synth->add_option("--seed", sa.seed, "root seed");
  synth->add_option("--offset-scale", sa.offset_scale, "multiplier on class offsets; 0 gives a null dataset");
  synth->add_flag("--subject-noise", sa.subject_noise, "draw per-subject parameter offsets");
  synth->add_option("--cardiac-field", sa.cardiac_field, "cardiac field variance relative to EEG variance");
  synth->add_option("--format", sa.format, "signal file format")->check(CLI::IsMember({"bsig", "csv"}));
  synth->add_option("--config", config, "JSON file with option values");

  FeaturesArgs fa;
  auto* features = app.add_subcommand("features", "extract ECG and EEG feature tables");
  features->add_option("--dataset", fa.dataset, "dataset directory or manifest file")->required();
  features->add_option("--out", fa.out, "output directory")->required();
  features->add_option("--modality", fa.modality, "ecg, eeg or both")->check(CLI::IsMember({"ecg", "eeg", "both"}));
  features->add_option("--feature-set", fa.feature_set, "ECG columns")->check(CLI::IsMember({"hrv", "catch22", "both"}));
  features->add_flag("--pnn40", fa.pnn40, "add pnn40 to the HRV columns");
  features->add_option("--config", config, "JSON file with option values");

  TrainArgs ta;
  auto* train = app.add_subcommand("train-eval", "train a classifier and write metrics and plots");
  train->add_option("--features", ta.features, "feature CSV")->required();
  train->add_option("--out", ta.out, "output directory")->required();
  train->add_option("--task", ta.task, "mc, bc or fc")->check(CLI::IsMember({"mc", "bc", "fc"}));
  train->add_option("--feature-set", ta.feature_set, "hrv, catch22 or both")->check(CLI::IsMember({"hrv", "catch22", "both"}));
  train->add_option("--model", ta.model, "rf or gb")->check(CLI::IsMember({"rf", "gb"}));
  train->add_option("--split", ta.split, "split protocol")
      ->check(CLI::IsMember({"trial_stratified", "subject_grouped", "both"}));
  train->add_option("--test-fraction", ta.test_fraction, "held-out fraction")->check(CLI::Range(0.01, 0.99));
  train->add_option("--seed", ta.seed, "root seed");
  train->add_option("--n-trees", ta.n_trees, "random forest size")->check(CLI::PositiveNumber);
  train->add_option("--n-rounds", ta.n_rounds, "boosting rounds")->check(CLI::PositiveNumber);
  train->add_flag("--no-timestamp", ta.no_timestamp, "omit the timestamp comment from SVG files");
  train->add_option("--config", config, "JSON file with option values");

  TransferArgs xa;
  auto* transfer = app.add_subcommand("transfer", "cross-modal transfer in both directions");
  transfer->add_option("--ecg", xa.ecg, "ECG feature CSV")->required();
  transfer->add_option("--eeg", xa.eeg, "EEG feature CSV")->required();
  transfer->add_option("--out", xa.out, "output directory")->required();
  transfer->add_option("--task", xa.task, "mc, bc or fc")->check(CLI::IsMember({"mc", "bc", "fc"}));
  transfer->add_option("--model", xa.model, "rf or gb")->check(CLI::IsMember({"rf", "gb"}));
  transfer->add_option("--alignment", xa.alignment, "EEG to ECG space reduction")
      ->check(CLI::IsMember({"channel_mean", "per_channel_instances"}));
  transfer->add_option("--standardization", xa.standardization, "feature scaling across modalities")
      ->check(CLI::IsMember({"per_domain", "per_domain_rank", "source_only", "none"}));
  transfer->add_option("--seed", xa.seed, "root seed");
  transfer->add_option("--n-trees", xa.n_trees, "random forest size")->check(CLI::PositiveNumber);
  transfer->add_option("--n-rounds", xa.n_rounds, "boosting rounds")->check(CLI::PositiveNumber);
  transfer->add_option("--config", config, "JSON file with option values");

  std::vector<std::string> args;
  try {
    args = expand_config(raw_args);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    err << "run 'cogload --help' for usage\n";
    return 2;
  }

  try {
    if (synth->parsed()) return cmd_synth(sa, out);
    if (features->parsed()) return cmd_features(fa, out);
    if (train->parsed()) return cmd_train_eval(ta, out);
    if (transfer->parsed()) return cmd_transfer(xa, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace cogload
