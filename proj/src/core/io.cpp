// Copyright 2026 The mvpl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/io.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "core/rng.hpp"

namespace mvpl {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// little-endian primitives
// ---------------------------------------------------------------------------

namespace {

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f32(std::string& out, float v) {
  put_u32(out, std::bit_cast<std::uint32_t>(v));
}

class ByteReader {
 public:
  explicit ByteReader(const std::string& bytes) : bytes_(bytes) {}

  std::uint16_t u16() {
    need(2);
    const auto* p = reinterpret_cast<const unsigned char*>(bytes_.data() + pos_);
    pos_ += 2;
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
  }

  std::uint32_t u32() {
    need(4);
    const auto* p = reinterpret_cast<const unsigned char*>(bytes_.data() + pos_);
    pos_ += 4;
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) |
           (static_cast<std::uint32_t>(p[3]) << 24);
  }

  float f32() { return std::bit_cast<float>(u32()); }

  std::string bytes(std::size_t n) {
    need(n);
    std::string out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) {
      throw Error(ErrorCode::CorruptFile, "truncated payload");
    }
  }

  const std::string& bytes_;
  std::size_t pos_ = 0;
};

constexpr char kMagic[4] = {'E', 'M', 'B', '1'};
constexpr std::uint16_t kVersion = 1;

}  // namespace

// ---------------------------------------------------------------------------
// embedding file
// ---------------------------------------------------------------------------

std::string encode_embeddings(const std::vector<std::string>& order,
                              const std::map<std::string, Eigen::MatrixXd>& frames) {
  if (order.empty()) {
    throw Error(ErrorCode::InvalidInput, "embedding file needs at least one item");
  }
  std::set<std::string> seen;
  const Eigen::Index dim = frames.at(order.front()).cols();
  if (dim < 1) {
    throw Error(ErrorCode::InvalidInput, "embedding dimension must be >= 1");
  }

  std::string out;
  out.append(kMagic, 4);
  put_u16(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(order.size()));
  put_u32(out, static_cast<std::uint32_t>(dim));

  for (const std::string& item : order) {
    if (!seen.insert(item).second) {
      throw Error(ErrorCode::DuplicateItem, "duplicate item id '" + item + "'");
    }
    if (item.empty() || item.size() > 0xffff) {
      throw Error(ErrorCode::InvalidInput, "item id length out of range");
    }
    const auto it = frames.find(item);
    if (it == frames.end()) {
      throw Error(ErrorCode::InvalidInput, "no frames for item '" + item + "'");
    }
    const Eigen::MatrixXd& m = it->second;
    if (m.cols() != dim) {
      throw Error(ErrorCode::DimensionMismatch,
                  "item '" + item + "' has dimension " + std::to_string(m.cols()) +
                      ", expected " + std::to_string(dim));
    }
    if (m.rows() < 1) {
      throw Error(ErrorCode::InvalidInput, "item '" + item + "' has no frames");
    }
    if (!m.allFinite()) {
      throw Error(ErrorCode::InvalidData,
                  "item '" + item + "' has non-finite values");
    }
    put_u16(out, static_cast<std::uint16_t>(item.size()));
    out.append(item);
    put_u32(out, static_cast<std::uint32_t>(m.rows()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < dim; ++c) {
        put_f32(out, static_cast<float>(m(r, c)));
      }
    }
  }
  return out;
}

EmbeddingFileContent decode_embeddings(const std::string& bytes,
                                       const std::string& encoder_id) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::UnrecognizedFormat, "bad magic bytes");
  }
  ByteReader reader(bytes);
  reader.bytes(4);  // magic
  const std::uint16_t version = reader.u16();
  if (version != kVersion) {
    throw Error(ErrorCode::UnrecognizedFormat,
                "unsupported format version " + std::to_string(version));
  }
  const std::uint32_t item_count = reader.u32();
  const std::uint32_t dim = reader.u32();
  if (item_count == 0 || dim == 0) {
    throw Error(ErrorCode::InvalidData, "zero item count or dimension");
  }

  EmbeddingFileContent content;
  content.dim = dim;
  for (std::uint32_t i = 0; i < item_count; ++i) {
    const std::uint16_t id_len = reader.u16();
    if (id_len == 0) {
      throw Error(ErrorCode::InvalidData, "empty item id");
    }
    const std::string item = reader.bytes(id_len);
    const std::uint32_t frame_count = reader.u32();
    if (frame_count == 0) {
      throw Error(ErrorCode::InvalidData, "item '" + item + "' has zero frames");
    }
    Eigen::MatrixXd m(frame_count, dim);
    for (std::uint32_t r = 0; r < frame_count; ++r) {
      for (std::uint32_t c = 0; c < dim; ++c) {
        const float v = reader.f32();
        if (!std::isfinite(v)) {
          throw Error(ErrorCode::InvalidData,
                      "item '" + item + "' has a non-finite value");
        }
        m(r, c) = static_cast<double>(v);
      }
    }
    if (content.items.count(item)) {
      throw Error(ErrorCode::DuplicateItem, "duplicate item id '" + item + "'");
    }
    content.order.push_back(item);
    content.items.emplace(item, EmbeddingSet::create({item}, std::move(m), encoder_id));
  }
  if (reader.remaining() != 0) {
    throw Error(ErrorCode::CorruptFile,
                std::to_string(reader.remaining()) + " trailing bytes");
  }
  return content;
}

void write_embeddings(const std::string& path,
                      const std::vector<std::string>& order,
                      const std::map<std::string, Eigen::MatrixXd>& frames) {
  atomic_write_file(path, encode_embeddings(order, frames));
}

EmbeddingFileContent load_embeddings(const std::string& path,
                                     const std::string& encoder_id) {
  return decode_embeddings(read_file(path), encoder_id);
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

namespace {

void check_field(const std::string& field, const char* what) {
  if (field.empty()) {
    throw Error(ErrorCode::InvalidData, std::string(what) + " is empty");
  }
  if (field.find_first_of(",\"\r\n") != std::string::npos) {
    throw Error(ErrorCode::InvalidData,
                std::string(what) + " '" + field + "' contains a reserved character");
  }
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

/// Reads a CSV with the exact expected header; returns data rows split into
/// fields, each with exactly the header's column count.
std::vector<std::vector<std::string>> read_csv(const std::string& path,
                                               const std::string& header) {
  const std::string text = read_file(path);
  std::vector<std::vector<std::string>> rows;
  std::istringstream stream(text);
  std::string line;
  bool first = true;
  const std::size_t columns = split_line(header).size();
  while (std::getline(stream, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first) {
      if (line != header) {
        throw Error(ErrorCode::UnrecognizedFormat,
                    path + ": expected header '" + header + "', got '" + line + "'");
      }
      first = false;
      continue;
    }
    if (line.empty()) continue;
    auto fields = split_line(line);
    if (fields.size() != columns) {
      throw Error(ErrorCode::CorruptFile,
                  path + ": row with " + std::to_string(fields.size()) +
                      " fields, expected " + std::to_string(columns));
    }
    rows.push_back(std::move(fields));
  }
  if (first) {
    throw Error(ErrorCode::UnrecognizedFormat, path + ": missing header");
  }
  return rows;
}

void check_known_class(const std::string& label,
                       const std::vector<std::string>& classes,
                       const std::string& context) {
  if (classes.empty()) return;
  if (std::find(classes.begin(), classes.end(), label) == classes.end()) {
    throw Error(ErrorCode::UnknownClass,
                context + ": label '" + label + "' is not a registered class");
  }
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_label_csv(
    const std::string& path, const std::vector<std::string>& classes) {
  std::vector<std::pair<std::string, std::string>> out;
  std::set<std::string> seen;
  for (auto& row : read_csv(path, "item_id,label")) {
    if (!seen.insert(row[0]).second) {
      throw Error(ErrorCode::DuplicateItem,
                  path + ": duplicate item id '" + row[0] + "'");
    }
    check_known_class(row[1], classes, path);
    out.emplace_back(std::move(row[0]), std::move(row[1]));
  }
  return out;
}

void write_label_csv(const std::string& path,
                     const std::vector<std::pair<std::string, std::string>>& rows) {
  std::string out = "item_id,label\n";
  for (const auto& [item, label] : rows) {
    check_field(item, "item id");
    check_field(label, "label");
    out += item + "," + label + "\n";
  }
  atomic_write_file(path, out);
}

std::vector<PredictionSet> read_prediction_csv(
    const std::string& path, const std::vector<std::string>& classes) {
  std::vector<PredictionSet> out;
  std::map<std::string, std::size_t> index;
  std::set<std::pair<std::string, std::string>> seen;
  for (auto& row : read_csv(path, "item_id,predictor_id,label")) {
    if (!seen.emplace(row[0], row[1]).second) {
      throw Error(ErrorCode::DuplicateItem,
                  path + ": duplicate (item, predictor) pair ('" + row[0] + "', '" +
                      row[1] + "')");
    }
    check_known_class(row[2], classes, path);
    auto it = index.find(row[0]);
    if (it == index.end()) {
      index.emplace(row[0], out.size());
      out.push_back(PredictionSet{row[0], {}});
      it = index.find(row[0]);
    }
    out[it->second].votes.emplace_back(std::move(row[1]), std::move(row[2]));
  }
  return out;
}

void write_prediction_csv(const std::string& path,
                          const std::vector<PredictionSet>& predictions) {
  std::string out = "item_id,predictor_id,label\n";
  for (const PredictionSet& set : predictions) {
    check_field(set.item_id, "item id");
    for (const auto& [predictor, label] : set.votes) {
      check_field(predictor, "predictor id");
      check_field(label, "label");
      out += set.item_id + "," + predictor + "," + label + "\n";
    }
  }
  atomic_write_file(path, out);
}

SplitAssignment read_split_csv(const std::string& path) {
  SplitAssignment out;
  std::set<std::string> seen;
  for (auto& row : read_csv(path, "item_id,split")) {
    if (!seen.insert(row[0]).second) {
      throw Error(ErrorCode::DuplicateItem,
                  path + ": duplicate item id '" + row[0] + "'");
    }
    if (row[1] == "train") {
      out.train.push_back(std::move(row[0]));
    } else if (row[1] == "val") {
      out.val.push_back(std::move(row[0]));
    } else if (row[1] == "test") {
      out.test.push_back(std::move(row[0]));
    } else {
      throw Error(ErrorCode::InvalidData,
                  path + ": unknown split '" + row[1] + "'");
    }
  }
  return out;
}

void write_split_csv(const std::string& path, const SplitAssignment& splits) {
  std::string out = "item_id,split\n";
  auto emit = [&](const std::vector<std::string>& ids, const char* name) {
    for (const std::string& item : ids) {
      check_field(item, "item id");
      out += item + "," + name + "\n";
    }
  };
  emit(splits.train, "train");
  emit(splits.val, "val");
  emit(splits.test, "test");
  atomic_write_file(path, out);
}

// ---------------------------------------------------------------------------
// JSON configs
// ---------------------------------------------------------------------------

namespace {

/// Strict object walker: every key must be consumed, every consumed key must
/// have the right JSON type.
class StrictObject {
 public:
  StrictObject(const json& doc, std::string context)
      : doc_(doc), context_(std::move(context)) {
    if (!doc.is_object()) {
      throw Error(ErrorCode::InvalidConfig, context_ + " must be a JSON object");
    }
  }

  const json& require(const std::string& key) {
    const auto it = doc_.find(key);
    if (it == doc_.end()) {
      throw Error(ErrorCode::InvalidConfig,
                  context_ + ": missing required key '" + key + "'");
    }
    consumed_.insert(key);
    return *it;
  }

  const json* optional(const std::string& key) {
    const auto it = doc_.find(key);
    if (it == doc_.end()) return nullptr;
    consumed_.insert(key);
    return &*it;
  }

  void finish() const {
    for (const auto& [key, value] : doc_.items()) {
      (void)value;
      if (!consumed_.count(key)) {
        throw Error(ErrorCode::InvalidConfig,
                    context_ + ": unknown key '" + key + "'");
      }
    }
  }

 private:
  const json& doc_;
  std::string context_;
  std::set<std::string> consumed_;
};

double as_number(const json& v, const std::string& what) {
  if (!v.is_number()) {
    throw Error(ErrorCode::InvalidConfig, what + " must be a number");
  }
  return v.get<double>();
}

int as_int(const json& v, const std::string& what) {
  if (!v.is_number_integer()) {
    throw Error(ErrorCode::InvalidConfig, what + " must be an integer");
  }
  return v.get<int>();
}

std::uint64_t as_seed(const json& v, const std::string& what) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  throw Error(ErrorCode::InvalidConfig, what + " must be a non-negative integer");
}

std::string as_string(const json& v, const std::string& what) {
  if (!v.is_string()) {
    throw Error(ErrorCode::InvalidConfig, what + " must be a string");
  }
  return v.get<std::string>();
}

std::vector<std::string> as_string_list(const json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) {
    throw Error(ErrorCode::InvalidConfig, what + " must be a non-empty array");
  }
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& entry : v) {
    std::string s = as_string(entry, what + " entry");
    if (s.empty() || !seen.insert(s).second) {
      throw Error(ErrorCode::InvalidConfig,
                  what + " entries must be non-empty and unique");
    }
    out.push_back(std::move(s));
  }
  return out;
}

void require_range(double v, double lo, double hi, const std::string& what) {
  if (!(v >= lo && v <= hi)) {
    throw Error(ErrorCode::InvalidConfig, what + " out of range");
  }
}

}  // namespace

FusionMode fusion_from_name(const std::string& name) {
  if (name == "early") return FusionMode::early;
  if (name == "tensor") return FusionMode::tensor;
  throw Error(ErrorCode::InvalidConfig, "unknown fusion mode '" + name + "'");
}

const char* fusion_name(FusionMode mode) {
  return mode == FusionMode::early ? "early" : "tensor";
}

RunConfig parse_run_config(const json& doc) {
  StrictObject root(doc, "run config");
  RunConfig cfg;

  cfg.classes = as_string_list(root.require("classes"), "classes");
  if (cfg.classes.size() < 2) {
    throw Error(ErrorCode::InvalidConfig, "need at least 2 classes");
  }
  cfg.encoders = as_string_list(root.require("encoders"), "encoders");
  cfg.audio_view = as_string(root.require("audio_view"), "audio_view");
  cfg.text_view = as_string(root.require("text_view"), "text_view");
  for (const std::string* view : {&cfg.audio_view, &cfg.text_view}) {
    if (std::find(cfg.encoders.begin(), cfg.encoders.end(), *view) ==
        cfg.encoders.end()) {
      throw Error(ErrorCode::InvalidConfig,
                  "view encoder '" + *view + "' is not in the encoder list");
    }
  }
  cfg.fusion = fusion_from_name(as_string(root.require("fusion"), "fusion"));
  cfg.strategy = strategy_from_name(as_string(root.require("strategy"), "strategy"));

  cfg.label_rate = as_number(root.require("label_rate"), "label_rate");
  if (!(cfg.label_rate > 0.0 && cfg.label_rate <= 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "label_rate must be in (0, 1]");
  }
  cfg.admission_threshold =
      as_number(root.require("admission_threshold"), "admission_threshold");
  require_range(cfg.admission_threshold, 0.0, 1.0, "admission_threshold");
  cfg.ridge = as_number(root.require("ridge"), "ridge");
  if (cfg.ridge < 0.0) {
    throw Error(ErrorCode::InvalidConfig, "ridge must be >= 0");
  }

  {
    StrictObject hp(root.require("hyperparams"), "hyperparams");
    cfg.hyperparams.learning_rate =
        as_number(hp.require("learning_rate"), "learning_rate");
    cfg.hyperparams.weight_decay =
        as_number(hp.require("weight_decay"), "weight_decay");
    cfg.hyperparams.epochs = as_int(hp.require("epochs"), "epochs");
    cfg.hyperparams.batch_size = as_int(hp.require("batch_size"), "batch_size");
    hp.finish();
    if (cfg.hyperparams.learning_rate <= 0.0 || cfg.hyperparams.weight_decay < 0.0 ||
        cfg.hyperparams.epochs < 1 || cfg.hyperparams.batch_size < 1) {
      throw Error(ErrorCode::InvalidConfig, "invalid hyperparameters");
    }
  }

  cfg.max_iterations = as_int(root.require("max_iterations"), "max_iterations");
  cfg.patience = as_int(root.require("patience"), "patience");
  cfg.removal_fraction =
      as_number(root.require("removal_fraction"), "removal_fraction");
  if (cfg.max_iterations < 1 || cfg.patience < 1) {
    throw Error(ErrorCode::InvalidConfig, "max_iterations and patience must be >= 1");
  }
  require_range(cfg.removal_fraction, 0.0, 1.0, "removal_fraction");
  cfg.seed = as_seed(root.require("seed"), "seed");

  {
    StrictObject paths(root.require("paths"), "paths");
    cfg.paths.embeddings_dir =
        as_string(paths.require("embeddings_dir"), "embeddings_dir");
    cfg.paths.labels = as_string(paths.require("labels"), "labels");
    cfg.paths.predictions = as_string(paths.require("predictions"), "predictions");
    cfg.paths.splits = as_string(paths.require("splits"), "splits");
    paths.finish();
  }

  root.finish();
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig,
                path + ": JSON parse failure: " + e.what());
  }
  return parse_run_config(doc);
}

json run_config_to_json(const RunConfig& cfg) {
  json doc;
  doc["classes"] = cfg.classes;
  doc["encoders"] = cfg.encoders;
  doc["audio_view"] = cfg.audio_view;
  doc["text_view"] = cfg.text_view;
  doc["fusion"] = fusion_name(cfg.fusion);
  doc["strategy"] = strategy_name(cfg.strategy);
  doc["label_rate"] = cfg.label_rate;
  doc["admission_threshold"] = cfg.admission_threshold;
  doc["ridge"] = cfg.ridge;
  doc["hyperparams"] = {{"learning_rate", cfg.hyperparams.learning_rate},
                        {"weight_decay", cfg.hyperparams.weight_decay},
                        {"epochs", cfg.hyperparams.epochs},
                        {"batch_size", cfg.hyperparams.batch_size}};
  doc["max_iterations"] = cfg.max_iterations;
  doc["patience"] = cfg.patience;
  doc["removal_fraction"] = cfg.removal_fraction;
  doc["seed"] = cfg.seed;
  doc["paths"] = {{"embeddings_dir", cfg.paths.embeddings_dir},
                  {"labels", cfg.paths.labels},
                  {"predictions", cfg.paths.predictions},
                  {"splits", cfg.paths.splits}};
  return doc;
}

std::string config_digest(const RunConfig& cfg) {
  const std::string canonical = run_config_to_json(cfg).dump();
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical)));
  return buf;
}

SynthConfig parse_synth_config(const json& doc) {
  StrictObject root(doc, "synth config");
  SynthConfig cfg;
  cfg.classes = as_int(root.require("classes"), "classes");
  cfg.encoders = as_int(root.require("encoders"), "encoders");
  cfg.frames_per_item = as_int(root.require("frames_per_item"), "frames_per_item");
  cfg.items_per_class = as_int(root.require("items_per_class"), "items_per_class");
  cfg.dims = as_int(root.require("dims"), "dims");
  cfg.class_separation =
      as_number(root.require("class_separation"), "class_separation");
  cfg.predictor_count = as_int(root.require("predictor_count"), "predictor_count");
  cfg.predictor_accuracy =
      as_number(root.require("predictor_accuracy"), "predictor_accuracy");
  cfg.label_rate = as_number(root.require("label_rate"), "label_rate");
  cfg.seed = as_seed(root.require("seed"), "seed");
  root.finish();
  validate_synth_config(cfg);
  return cfg;
}

SynthConfig load_synth_config(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig,
                path + ": JSON parse failure: " + e.what());
  }
  return parse_synth_config(doc);
}

json synth_config_to_json(const SynthConfig& cfg) {
  json doc;
  doc["classes"] = cfg.classes;
  doc["encoders"] = cfg.encoders;
  doc["frames_per_item"] = cfg.frames_per_item;
  doc["items_per_class"] = cfg.items_per_class;
  doc["dims"] = cfg.dims;
  doc["class_separation"] = cfg.class_separation;
  doc["predictor_count"] = cfg.predictor_count;
  doc["predictor_accuracy"] = cfg.predictor_accuracy;
  doc["label_rate"] = cfg.label_rate;
  doc["seed"] = cfg.seed;
  return doc;
}

// ---------------------------------------------------------------------------
// filesystem helpers
// ---------------------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoFailure, "cannot open '" + path + "' for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (!in.good() && !in.eof()) {
    throw Error(ErrorCode::IoFailure, "read failure on '" + path + "'");
  }
  return std::move(buffer).str();
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  static std::atomic<unsigned> counter{0};
  const fs::path tmp = target.parent_path() /
                       (target.filename().string() + ".tmp" +
                        std::to_string(::getpid()) + "." +
                        std::to_string(counter.fetch_add(1)));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::IoFailure, "cannot open '" + tmp.string() + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out.good()) {
      throw Error(ErrorCode::IoFailure, "write failure on '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::IoFailure,
                "cannot rename temporary file into '" + path + "'");
  }
}

void append_line(const std::string& path, const std::string& line) {
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) {
    throw Error(ErrorCode::IoFailure, "cannot open '" + path + "' for appending");
  }
  out << line << '\n';
  if (!out.good()) {
    throw Error(ErrorCode::IoFailure, "append failure on '" + path + "'");
  }
}

}  // namespace mvpl
