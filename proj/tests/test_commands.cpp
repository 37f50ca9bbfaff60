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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "sketchadam/commands.hpp"
#include "sketchadam/config.hpp"

namespace sketchadam {
namespace {

namespace fs = std::filesystem;

const fs::path kData = SKETCHADAM_TEST_DATA;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CommandsTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("sketchadam_cmd_" + std::string(info->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CommandsTest, RunWritesArtifacts) {
  const fs::path out = dir_ / "run";
  ASSERT_EQ(cmd_run(kData / "small_ga.json", out, {}, out_, err_), kExitOk) << err_.str();
  const std::string trace = slurp(out / "trace.csv");
  EXPECT_EQ(trace.substr(0, kTraceHeader.size()), kTraceHeader);
  EXPECT_EQ(std::count(trace.begin(), trace.end(), '\n'), 51);

  const auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
  EXPECT_EQ(summary["variant"], "ga");
  EXPECT_EQ(summary["iterations"], 50);
  EXPECT_EQ(summary["total_upstream_scalars_per_worker"], 50 * (5 * 16 + 2 * 4 + 4));
  EXPECT_EQ(summary["total_downstream_scalars"], 50 * 4);
  EXPECT_DOUBLE_EQ(summary["compression_rate"].get<double>(), 80.0 / 96.0);

  // The resolved config reparses to the same experiment.
  EXPECT_EQ(parse_config(slurp(out / "config.resolved.json")), load_config(kData / "small_ga.json"));
  for (const auto& entry : fs::directory_iterator(out)) {
    EXPECT_NE(entry.path().filename().string().front(), '.') << "leftover temporary file";
  }
}

TEST_F(CommandsTest, RunIsByteDeterministicAndSeedOverride) {
  ASSERT_EQ(cmd_run(kData / "small_ga.json", dir_ / "a", {}, out_, err_), kExitOk);
  ASSERT_EQ(cmd_run(kData / "small_ga.json", dir_ / "b", {}, out_, err_), kExitOk);
  EXPECT_EQ(slurp(dir_ / "a" / "trace.csv"), slurp(dir_ / "b" / "trace.csv"));
  RunOptions opts;
  opts.seed = 4;
  ASSERT_EQ(cmd_run(kData / "small_ga.json", dir_ / "c", opts, out_, err_), kExitOk);
  EXPECT_NE(slurp(dir_ / "a" / "trace.csv"), slurp(dir_ / "c" / "trace.csv"));
  EXPECT_EQ(parse_config(slurp(dir_ / "c" / "config.resolved.json")).run.seed, 4u);
}

TEST_F(CommandsTest, ErrorsMapToExitCodes) {
  EXPECT_EQ(cmd_run(kData / "unknown_key.json", dir_ / "x", {}, out_, err_), kExitConfig);
  const auto e = nlohmann::json::parse(err_.str());
  EXPECT_EQ(e["error"], "config");
  EXPECT_EQ(e["key"], "hyper.learning_rate");
  EXPECT_EQ(e["exit_code"], kExitConfig);

  EXPECT_EQ(cmd_run(kData / "duplicate_key.json", dir_ / "x", {}, out_, err_), kExitConfig);
  EXPECT_EQ(cmd_run(dir_ / "missing.json", dir_ / "x", {}, out_, err_), kExitConfig);

  std::ostringstream numeric_err;
  EXPECT_EQ(cmd_run(kData / "diverging.json", dir_ / "x", {}, out_, numeric_err), kExitNumeric);
  const auto n = nlohmann::json::parse(numeric_err.str());
  EXPECT_EQ(n["error"], "numeric");
  EXPECT_GT(n["iteration"].get<int>(), 0);
  EXPECT_FALSE(fs::exists(dir_ / "x" / "trace.csv"));
}

TEST_F(CommandsTest, ZeroHorizonSummaryHasNullRate) {
  ASSERT_EQ(cmd_run(kData / "zero_horizon.json", dir_ / "z", {}, out_, err_), kExitOk);
  const auto summary = nlohmann::json::parse(slurp(dir_ / "z" / "summary.json"));
  EXPECT_EQ(summary["iterations"], 0);
  EXPECT_TRUE(summary["compression_rate"].is_null());
  EXPECT_EQ(slurp(dir_ / "z" / "trace.csv"), std::string(kTraceHeader) + "\n");
}

TEST_F(CommandsTest, SweepWritesGridAndTable) {
  const fs::path cfg = write("sweep.json", R"({
    "problem": {"kind": "quadratic", "dim": 30, "noise_std": 0.5, "n_samples": 128},
    "variant": "ga",
    "hyper": {"alpha": 0.1, "epsilon": 0.01, "horizon": 20},
    "protocol": {"k": 3, "p_factor": 2, "rows": 3, "cols": 12},
    "batch_size": 4,
    "sweep": {"worker_counts": [1, 2], "k_values": [3, 5], "threshold": 1e9}
  })");
  RunOptions opts;
  opts.jobs = 3;
  ASSERT_EQ(cmd_run(cfg, dir_ / "s", opts, out_, err_), kExitOk) << err_.str();
  const std::string table = slurp(dir_ / "s" / "sweep_summary.csv");
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 5);
  EXPECT_TRUE(fs::exists(dir_ / "s" / "n2_k5_lr0.1" / "trace.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "s" / "config.resolved.json"));

  // A parallel sweep produces the same traces as a serial one.
  ASSERT_EQ(cmd_run(cfg, dir_ / "serial", {}, out_, err_), kExitOk);
  EXPECT_EQ(slurp(dir_ / "s" / "n1_k3_lr0.1" / "trace.csv"),
            slurp(dir_ / "serial" / "n1_k3_lr0.1" / "trace.csv"));
  EXPECT_EQ(table, slurp(dir_ / "serial" / "sweep_summary.csv"));
}

TEST_F(CommandsTest, CompareJoinsTraces) {
  const std::vector<std::string> variants{"ga", "pa", "dense_amsgrad"};
  ASSERT_EQ(cmd_compare(kData / "small_ga.json", variants, dir_ / "c", {}, out_, err_), kExitOk)
      << err_.str();
  std::istringstream joined(slurp(dir_ / "c" / "joined.csv"));
  std::string header;
  std::getline(joined, header);
  EXPECT_EQ(header,
            "iter,ga_train_loss,ga_grad_norm_sq,ga_compression_rate,pa_train_loss,"
            "pa_grad_norm_sq,pa_compression_rate,dense_amsgrad_train_loss,"
            "dense_amsgrad_grad_norm_sq,dense_amsgrad_compression_rate");
  std::size_t rows = 0;
  for (std::string line; std::getline(joined, line);) ++rows;
  EXPECT_EQ(rows, 50u);
  for (const auto& v : variants) EXPECT_TRUE(fs::exists(dir_ / "c" / v / "summary.json"));

  // The ga column equals a standalone run.
  ASSERT_EQ(cmd_run(kData / "small_ga.json", dir_ / "solo", {}, out_, err_), kExitOk);
  EXPECT_EQ(slurp(dir_ / "c" / "ga" / "trace.csv"), slurp(dir_ / "solo" / "trace.csv"));
}

TEST_F(CommandsTest, CompareRejectsBadVariants) {
  const std::vector<std::string> unknown{"ga", "adam"};
  EXPECT_EQ(cmd_compare(kData / "small_ga.json", unknown, dir_ / "c", {}, out_, err_), kExitConfig);
  const std::vector<std::string> dup{"ga", "ga"};
  EXPECT_EQ(cmd_compare(kData / "small_ga.json", dup, dir_ / "c", {}, out_, err_), kExitConfig);
}

TEST_F(CommandsTest, VerifyUnknownSuite) {
  EXPECT_EQ(cmd_verify("everything", 0, out_, err_), kExitConfig);
}

TEST_F(CommandsTest, AtomicWriteReplaces) {
  const fs::path p = dir_ / "file.txt";
  write_file_atomic(p, "first");
  write_file_atomic(p, "second");
  EXPECT_EQ(slurp(p), "second");
  EXPECT_FALSE(fs::exists(dir_ / ".file.txt.tmp"));
}

}  // namespace
}  // namespace sketchadam
