// Copyright 2026 The sketchadam Authors. All Rights Reserved.
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
// =============================================================================

#include "sketchadam/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sketchadam/errors.hpp"

namespace sketchadam {
namespace {

using json = nlohmann::json;

// Walks one JSON object, remembering which keys were read so that leftovers
// can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& object, std::string path) : object_(object), path_(std::move(path)) {
    if (!object_.is_object()) throw ConfigError(where() + " must be a JSON object", path_);
  }

  bool has(const std::string& key) const { return object_.contains(key); }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = object_.find(key);
    return it == object_.end() ? nullptr : &*it;
  }

  void read_size(const std::string& key, std::size_t& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_unsigned()) fail(key, "a non-negative integer");
      out = v->get<std::size_t>();
    }
  }

  void read_u64(const std::string& key, std::uint64_t& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_unsigned()) fail(key, "a non-negative integer");
      out = v->get<std::uint64_t>();
    }
  }

  void read_i64(const std::string& key, std::int64_t& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) fail(key, "an integer");
      out = v->get<std::int64_t>();
    }
  }

  void read_double(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) fail(key, "a number");
      out = v->get<double>();
    }
  }

  void read_bool(const std::string& key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) fail(key, "a boolean");
      out = v->get<bool>();
    }
  }

  std::optional<std::string> read_string(const std::string& key) {
    if (const json* v = find(key)) {
      if (!v->is_string()) fail(key, "a string");
      return v->get<std::string>();
    }
    return std::nullopt;
  }

  template <typename T>
  void read_list(const std::string& key, std::vector<T>& out) {
    if (const json* v = find(key)) {
      if (!v->is_array()) fail(key, "an array");
      out.clear();
      for (const json& e : *v) {
        if constexpr (std::is_same_v<T, double>) {
          if (!e.is_number()) fail(key, "an array of numbers");
        } else {
          if (!e.is_number_unsigned()) fail(key, "an array of non-negative integers");
        }
        out.push_back(e.get<T>());
      }
    }
  }

  std::string key_path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  // Rejects any key that was never read.
  void finish() const {
    for (auto it = object_.begin(); it != object_.end(); ++it) {
      if (!seen_.count(it.key())) {
        throw ConfigError("unknown key '" + key_path(it.key()) + "'", key_path(it.key()));
      }
    }
  }

  [[noreturn]] void fail(const std::string& key, const std::string& expected) const {
    throw ConfigError("'" + key_path(key) + "' must be " + expected, key_path(key));
  }

 private:
  std::string where() const { return path_.empty() ? "config" : "'" + path_ + "'"; }

  const json& object_;
  std::string path_;
  std::set<std::string> seen_;
};

// Parser callback that rejects duplicate keys within one object.
json parse_strict(std::string_view text) {
  std::vector<std::set<std::string>> open_objects;
  std::vector<std::string> key_stack;
  auto callback = [&](int /*depth*/, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
        open_objects.emplace_back();
        break;
      case json::parse_event_t::object_end:
        if (!open_objects.empty()) open_objects.pop_back();
        break;
      case json::parse_event_t::key: {
        const std::string key = parsed.get<std::string>();
        if (!open_objects.empty() && !open_objects.back().insert(key).second) {
          throw ConfigError("duplicate key '" + key + "'", key);
        }
        break;
      }
      default:
        break;
    }
    return true;
  };
  try {
    return json::parse(text.begin(), text.end(), callback);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
}

std::string_view unsketch_mode_name(UnsketchMode mode) {
  return mode == UnsketchMode::kEstimateThenScale ? "estimate_then_scale" : "bucket_rescale";
}

std::string_view ga_error_mode_name(GaErrorMode mode) {
  return mode == GaErrorMode::kUnscaled ? "unscaled" : "literal_mixed";
}

void read_problem(ObjectReader& top, ProblemSpec& spec) {
  const json* node = top.find("problem");
  if (!node) return;
  ObjectReader r(*node, "problem");
  if (auto kind = r.read_string("kind")) {
    try {
      spec.kind = problem_kind_from_string(*kind);
    } catch (const ArgumentError& e) {
      throw ConfigError(e.what(), "problem.kind");
    }
  }
  if (spec.kind == ProblemKind::kQuadratic) {
    r.read_size("dim", spec.quadratic.dim);
    r.read_double("condition_number", spec.quadratic.condition_number);
    r.read_double("noise_std", spec.quadratic.noise_std);
    r.read_size("n_samples", spec.quadratic.n_samples);
  } else {
    r.read_size("n_samples", spec.logreg.n_samples);
    r.read_size("features", spec.logreg.features);
    r.read_size("n_classes", spec.logreg.n_classes);
    r.read_double("separation", spec.logreg.separation);
    r.read_double("l2", spec.logreg.l2);
  }
  r.finish();
}

void read_hyper(ObjectReader& top, HyperParams& h) {
  const json* node = top.find("hyper");
  if (!node) return;
  ObjectReader r(*node, "hyper");
  r.read_double("alpha", h.alpha);
  r.read_double("beta1", h.beta1);
  r.read_double("beta2", h.beta2);
  r.read_double("epsilon", h.epsilon);
  r.read_i64("horizon", h.horizon);
  r.finish();
}

void read_protocol(ObjectReader& top, ProtocolConfig& p) {
  const json* node = top.find("protocol");
  if (!node) return;
  ObjectReader r(*node, "protocol");
  if (auto preset = r.read_string("preset")) {
    try {
      p = protocol_preset(*preset);
    } catch (const ArgumentError& e) {
      throw ConfigError(e.what(), "protocol.preset");
    }
  }
  r.read_size("k", p.k);
  r.read_size("p_factor", p.p_factor);
  r.read_size("rows", p.sketch.rows);
  r.read_size("cols", p.sketch.cols);
  if (auto mode = r.read_string("unsketch_mode")) {
    if (*mode == "estimate_then_scale") {
      p.unsketch_mode = UnsketchMode::kEstimateThenScale;
    } else if (*mode == "bucket_rescale") {
      p.unsketch_mode = UnsketchMode::kBucketRescale;
    } else {
      throw ConfigError("unknown unsketch_mode '" + *mode + "'", "protocol.unsketch_mode");
    }
  }
  r.finish();
}

void read_partition(ObjectReader& top, RunConfig& run) {
  const json* node = top.find("partition");
  if (!node) return;
  ObjectReader r(*node, "partition");
  if (auto mode = r.read_string("mode")) {
    try {
      run.partition = partition_mode_from_string(*mode);
    } catch (const ArgumentError& e) {
      throw ConfigError(e.what(), "partition.mode");
    }
  }
  r.read_double("skew_param", run.skew_param);
  r.finish();
}

SweepSpec read_sweep(const json& node) {
  ObjectReader r(node, "sweep");
  SweepSpec s;
  r.read_list("worker_counts", s.worker_counts);
  r.read_list("k_values", s.k_values);
  r.read_list("learning_rates", s.learning_rates);
  if (r.has("threshold")) {
    double th = 0.0;
    r.read_double("threshold", th);
    s.threshold = th;
  }
  r.read_size("window", s.window);
  r.finish();
  for (std::size_t n : s.worker_counts) {
    if (n < 1) throw ConfigError("sweep worker counts must be >= 1", "sweep.worker_counts");
  }
  for (std::size_t k : s.k_values) {
    if (k < 1) throw ConfigError("sweep k values must be >= 1", "sweep.k_values");
  }
  for (double lr : s.learning_rates) {
    if (!(lr > 0.0)) throw ConfigError("sweep learning rates must be > 0", "sweep.learning_rates");
  }
  if (s.window < 1) throw ConfigError("sweep.window must be >= 1", "sweep.window");
  return s;
}

}  // namespace

ProtocolConfig protocol_preset(std::string_view name) {
  ProtocolConfig p;
  if (name == "mnist") {
    p.k = 500;
    p.p_factor = 4;
    p.sketch.rows = 5;
    p.sketch.cols = 400;
  } else if (name == "cifar") {
    p.k = 50000;
    p.p_factor = 8;
    p.sketch.rows = 10;
    p.sketch.cols = 100000;
  } else {
    throw ArgumentError("unknown protocol preset '" + std::string(name) + "'");
  }
  return p;
}

ExperimentConfig parse_config(std::string_view json_text) {
  const json doc = parse_strict(json_text);
  ExperimentConfig cfg;
  RunConfig& run = cfg.run;
  run.protocol = protocol_preset("mnist");

  ObjectReader top(doc, "");
  read_problem(top, run.problem);
  if (auto variant = top.read_string("variant")) {
    try {
      run.variant = optimizer_kind_from_string(*variant);
    } catch (const ArgumentError& e) {
      throw ConfigError(e.what(), "variant");
    }
  }
  read_hyper(top, run.hyper);
  top.read_size("n_workers", run.hyper.n_workers);
  read_protocol(top, run.protocol);
  top.read_size("batch_size", run.batch_size);
  read_partition(top, run);
  top.read_u64("seed", run.seed);
  top.read_bool("check_invariants", run.check_invariants);
  if (auto mode = top.read_string("ga_error_mode")) {
    if (*mode == "unscaled") {
      run.ga_error_mode = GaErrorMode::kUnscaled;
    } else if (*mode == "literal_mixed") {
      run.ga_error_mode = GaErrorMode::kLiteralMixed;
    } else {
      throw ConfigError("unknown ga_error_mode '" + *mode + "'", "ga_error_mode");
    }
  }
  if (const json* sweep = top.find("sweep")) cfg.sweep = read_sweep(*sweep);
  top.finish();

  run.protocol.sketch.dim = problem_dim(run.problem);
  try {
    run.validate();
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string serialize_config(const ExperimentConfig& config) {
  const RunConfig& run = config.run;
  json doc;
  json problem;
  problem["kind"] = std::string(to_string(run.problem.kind));
  if (run.problem.kind == ProblemKind::kQuadratic) {
    const QuadraticSpec& q = run.problem.quadratic;
    problem["dim"] = q.dim;
    problem["condition_number"] = q.condition_number;
    problem["noise_std"] = q.noise_std;
    problem["n_samples"] = q.n_samples;
  } else {
    const LogRegSpec& l = run.problem.logreg;
    problem["n_samples"] = l.n_samples;
    problem["features"] = l.features;
    problem["n_classes"] = l.n_classes;
    problem["separation"] = l.separation;
    problem["l2"] = l.l2;
  }
  doc["problem"] = problem;
  doc["variant"] = std::string(to_string(run.variant));
  doc["hyper"] = {{"alpha", run.hyper.alpha},
                  {"beta1", run.hyper.beta1},
                  {"beta2", run.hyper.beta2},
                  {"epsilon", run.hyper.epsilon},
                  {"horizon", run.hyper.horizon}};
  doc["n_workers"] = run.hyper.n_workers;
  doc["protocol"] = {{"k", run.protocol.k},
                     {"p_factor", run.protocol.p_factor},
                     {"rows", run.protocol.sketch.rows},
                     {"cols", run.protocol.sketch.cols},
                     {"unsketch_mode", std::string(unsketch_mode_name(run.protocol.unsketch_mode))}};
  doc["batch_size"] = run.batch_size;
  doc["partition"] = {{"mode", std::string(to_string(run.partition))},
                      {"skew_param", run.skew_param}};
  doc["seed"] = run.seed;
  doc["check_invariants"] = run.check_invariants;
  doc["ga_error_mode"] = std::string(ga_error_mode_name(run.ga_error_mode));
  if (config.sweep) {
    const SweepSpec& s = *config.sweep;
    json sweep = {{"worker_counts", s.worker_counts},
                  {"k_values", s.k_values},
                  {"learning_rates", s.learning_rates},
                  {"window", s.window}};
    if (s.threshold) sweep["threshold"] = *s.threshold;
    doc["sweep"] = sweep;
  }
  return doc.dump(2) + "\n";
}

}  // namespace sketchadam
