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

#include "sketchadam/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include "json.hpp"
#include "sketchadam/config.hpp"
#include "sketchadam/errors.hpp"
#include "sketchadam/verify.hpp"

namespace sketchadam {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

ordered_json number_or_null(double v) {
  return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

// Maps an exception to its exit code and writes one JSON error line.
int report_error(std::ostream& err) {
  ordered_json e;
  int code = kExitFailure;
  try {
    throw;
  } catch (const ConfigError& ex) {
    code = kExitConfig;
    e["error"] = "config";
    e["message"] = ex.what();
    if (!ex.key().empty()) e["key"] = ex.key();
  } catch (const ArgumentError& ex) {
    code = kExitConfig;
    e["error"] = "argument";
    e["message"] = ex.what();
  } catch (const NumericError& ex) {
    code = kExitNumeric;
    e["error"] = "numeric";
    e["message"] = ex.what();
    e["iteration"] = ex.iteration();
  } catch (const InvariantViolation& ex) {
    code = kExitInvariant;
    e["error"] = "invariant";
    e["message"] = ex.what();
    e["iteration"] = ex.iteration();
  } catch (const std::exception& ex) {
    e["error"] = "internal";
    e["message"] = ex.what();
  }
  e["exit_code"] = code;
  err << e.dump() << '\n';
  return code;
}

// Runs fn(0..count-1) on up to `jobs` threads. The first exception (by task
// index) is rethrown after all threads finish.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  std::vector<std::exception_ptr> errors(count);
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

ExperimentConfig load_with_overrides(const fs::path& path, const RunOptions& options) {
  ExperimentConfig cfg = load_config(path);
  if (options.seed) cfg.run.seed = *options.seed;
  if (!options.check_invariants) cfg.run.check_invariants = false;
  return cfg;
}

std::string trace_csv(const RunResult& result) {
  std::ostringstream csv;
  write_trace_csv(csv, result.trace);
  return csv.str();
}

// Writes the three per-run files; the directory is created if needed.
void write_run_dir(const fs::path& dir, const ExperimentConfig& cfg, const RunResult& result) {
  fs::create_directories(dir);
  write_file_atomic(dir / "config.resolved.json", serialize_config(cfg));
  write_file_atomic(dir / "trace.csv", trace_csv(result));
  write_file_atomic(dir / "summary.json", summary_json(cfg.run, result));
}

double mean_grad_norm_sq(const RunResult& r) {
  if (r.trace.empty()) return std::nan("");
  double s = 0.0;
  for (const auto& rec : r.trace) s += rec.grad_norm_sq;
  return s / static_cast<double>(r.trace.size());
}

double overall_compression_rate(const RunResult& r) {
  std::int64_t traffic = 0;
  for (const auto& rec : r.trace) traffic += rec.upstream_scalars + rec.downstream_scalars;
  if (r.trace.empty() || traffic == 0) return std::nan("");
  return 2.0 * static_cast<double>(r.dim) * static_cast<double>(r.trace.size()) /
         static_cast<double>(traffic);
}

struct GridPoint {
  std::size_t n_workers;
  std::size_t k;
  double alpha;
  std::string name;
};

std::vector<GridPoint> expand_grid(const RunConfig& base, const SweepSpec& sweep) {
  const std::vector<std::size_t> ns =
      sweep.worker_counts.empty() ? std::vector<std::size_t>{base.hyper.n_workers}
                                  : sweep.worker_counts;
  const std::vector<std::size_t> ks =
      sweep.k_values.empty() ? std::vector<std::size_t>{base.protocol.k} : sweep.k_values;
  const std::vector<double> lrs =
      sweep.learning_rates.empty() ? std::vector<double>{base.hyper.alpha} : sweep.learning_rates;
  std::vector<GridPoint> grid;
  std::set<std::string> names;
  for (std::size_t n : ns) {
    for (std::size_t k : ks) {
      for (double lr : lrs) {
        char name[96];
        std::snprintf(name, sizeof(name), "n%zu_k%zu_lr%g", n, k, lr);
        if (!names.insert(name).second) {
          throw ConfigError(std::string("sweep contains a repeated grid point ") + name, "sweep");
        }
        grid.push_back({n, k, lr, name});
      }
    }
  }
  return grid;
}

int run_sweep(const ExperimentConfig& cfg, const fs::path& out_dir, const RunOptions& options,
              std::ostream& out) {
  const SweepSpec& sweep = *cfg.sweep;
  const std::vector<GridPoint> grid = expand_grid(cfg.run, sweep);
  std::vector<ExperimentConfig> configs;
  for (const GridPoint& p : grid) {
    ExperimentConfig c;
    c.run = cfg.run;
    c.run.hyper.n_workers = p.n_workers;
    c.run.protocol.k = p.k;
    c.run.hyper.alpha = p.alpha;
    c.run.validate();
    configs.push_back(c);
  }
  std::vector<RunResult> results(grid.size());
  parallel_for(grid.size(), options.jobs,
               [&](std::size_t i) { results[i] = run(configs[i].run); });

  fs::create_directories(out_dir);
  write_file_atomic(out_dir / "config.resolved.json", serialize_config(cfg));
  std::ostringstream table;
  table << "name,n_workers,k,alpha,final_loss,mean_grad_norm_sq,compression_rate,"
           "iterations_to_threshold,reached\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    write_run_dir(out_dir / grid[i].name, configs[i], results[i]);
    table << grid[i].name << ',' << grid[i].n_workers << ',' << grid[i].k << ','
          << format_double(grid[i].alpha) << ',' << format_double(results[i].final_loss) << ','
          << format_double(mean_grad_norm_sq(results[i])) << ','
          << format_double(overall_compression_rate(results[i])) << ',';
    if (sweep.threshold) {
      bool reached = false;
      table << iterations_to_threshold(results[i].trace, *sweep.threshold, sweep.window, &reached)
            << ',' << (reached ? "true" : "false");
    } else {
      table << ',';
    }
    table << '\n';
  }
  write_file_atomic(out_dir / "sweep_summary.csv", table.str());
  out << "wrote " << grid.size() << " runs to " << out_dir.string() << '\n';
  return kExitOk;
}

}  // namespace

void write_file_atomic(const fs::path& path, std::string_view contents) {
  const fs::path tmp = path.parent_path() / ("." + path.filename().string() + ".tmp");
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    f.flush();
    if (!f) {
      std::error_code ignore;
      fs::remove(tmp, ignore);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

std::string summary_json(const RunConfig& config, const RunResult& result) {
  std::int64_t up = 0;
  std::int64_t down = 0;
  double max_gap = 0.0;
  bool gap_tracked = false;
  for (const auto& rec : result.trace) {
    up += rec.upstream_scalars;
    down += rec.downstream_scalars;
    if (!std::isnan(rec.shadow_gap)) {
      gap_tracked = true;
      max_gap = std::max(max_gap, rec.shadow_gap);
    }
  }
  ordered_json s;
  s["variant"] = std::string(to_string(config.variant));
  s["dim"] = result.dim;
  s["n_workers"] = config.hyper.n_workers;
  s["iterations"] = result.trace.size();
  s["final_loss"] = number_or_null(result.final_loss);
  s["final_grad_norm_sq"] = number_or_null(result.final_grad_norm_sq);
  s["mean_grad_norm_sq"] = number_or_null(mean_grad_norm_sq(result));
  s["total_upstream_scalars_per_worker"] = up;
  s["total_downstream_scalars"] = down;
  s["total_scalars_communicated"] = up * static_cast<std::int64_t>(config.hyper.n_workers) + down;
  s["compression_rate"] = number_or_null(overall_compression_rate(result));
  s["max_grad_inf"] = number_or_null(result.max_grad_inf);
  s["max_shadow_gap"] = gap_tracked ? number_or_null(max_gap) : ordered_json(nullptr);
  return s.dump(2) + "\n";
}

int cmd_run(const fs::path& config_path, const fs::path& out_dir, const RunOptions& options,
            std::ostream& out, std::ostream& err) {
  try {
    const ExperimentConfig cfg = load_with_overrides(config_path, options);
    if (cfg.sweep) return run_sweep(cfg, out_dir, options, out);
    const RunResult result = run(cfg.run);
    write_run_dir(out_dir, cfg, result);
    out << "wrote " << result.trace.size() << " iterations to " << out_dir.string() << '\n';
    return kExitOk;
  } catch (...) {
    return report_error(err);
  }
}

int cmd_verify(std::string_view suite, std::uint64_t seed, std::ostream& out, std::ostream& err) {
  try {
    const auto results = verify_suite(suite, seed);
    std::size_t failed = 0;
    for (const auto& r : results) {
      out << format_result(r) << '\n';
      if (!r.informational && !r.passed) ++failed;
    }
    out << (failed == 0 ? "all properties passed" : std::to_string(failed) + " properties failed")
        << '\n';
    return failed == 0 ? kExitOk : kExitInvariant;
  } catch (...) {
    return report_error(err);
  }
}

int cmd_compare(const fs::path& config_path, std::span<const std::string> variants,
                const fs::path& out_dir, const RunOptions& options, std::ostream& out,
                std::ostream& err) {
  try {
    if (variants.empty()) throw ArgumentError("compare needs at least one variant");
    std::set<std::string> seen;
    std::vector<OptimizerKind> kinds;
    for (const std::string& v : variants) {
      if (!seen.insert(v).second) throw ArgumentError("variant '" + v + "' listed twice");
      kinds.push_back(optimizer_kind_from_string(v));
    }
    const ExperimentConfig base = load_with_overrides(config_path, options);
    if (base.sweep) throw ConfigError("compare does not accept a sweep block", "sweep");

    std::vector<ExperimentConfig> configs(kinds.size(), base);
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      configs[i].run.variant = kinds[i];
      configs[i].run.validate();
    }
    std::vector<RunResult> results(kinds.size());
    parallel_for(kinds.size(), options.jobs,
                 [&](std::size_t i) { results[i] = run(configs[i].run); });

    fs::create_directories(out_dir);
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      write_run_dir(out_dir / variants[i], configs[i], results[i]);
    }
    std::ostringstream joined;
    joined << "iter";
    for (const std::string& v : variants) {
      joined << ',' << v << "_train_loss," << v << "_grad_norm_sq," << v << "_compression_rate";
    }
    joined << '\n';
    const std::size_t rows = results.front().trace.size();
    for (std::size_t t = 0; t < rows; ++t) {
      joined << results.front().trace[t].iter;
      for (const RunResult& r : results) {
        const TraceRecord& rec = r.trace[t];
        joined << ',' << format_double(rec.train_loss) << ',' << format_double(rec.grad_norm_sq)
               << ',' << format_double(rec.compression_rate);
      }
      joined << '\n';
    }
    write_file_atomic(out_dir / "joined.csv", joined.str());
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      out << variants[i] << ": final_loss=" << format_double(results[i].final_loss) << '\n';
    }
    return kExitOk;
  } catch (...) {
    return report_error(err);
  }
}

}  // namespace sketchadam
