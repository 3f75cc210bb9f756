// Copyright 2026 The adtypes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace adtypes::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path Dir(const std::string& name) {
  const fs::path p = fs::path(ADTYPES_TEST_WORKDIR) / name;
  fs::remove_all(p);
  return p;
}

std::string ReadAll(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::vector<std::vector<std::string>> ReadCsv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(ReadAll(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

json Summary(const fs::path& dir) {
  return json::parse(ReadAll(dir / "summary.json"));
}

TEST(CliTest, EquilibriumExample) {
  const fs::path out = Dir("eq");
  ASSERT_EQ(RunCli({"equilibrium", "--delta-a", "0.5", "--delta-b", "0.6667",
                    "--samples", "100000", "--seed", "3", "--out",
                    out.string()}),
            kExitOk);
  const auto rows = ReadCsv(out / "equilibrium.csv");
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[1][2], "GreedyGSP");
  EXPECT_NEAR(std::stod(rows[1][5]), 0.12963, 1e-5);
  const json s = Summary(out);
  EXPECT_EQ(s["command"], "equilibrium");
  EXPECT_EQ(s["seed"], 3);
  EXPECT_TRUE(s["ok"]);
  EXPECT_EQ(ReadCsv(out / "hierarchy.csv").size(), 2u);
}

TEST(CliTest, PoaExample) {
  const fs::path out = Dir("poa");
  ASSERT_EQ(RunCli({"poa", "--seed", "1", "--out", out.string()}), kExitOk);
  const auto rows = ReadCsv(out / "poa.csv");
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1][0], "GreedyGSP");
  EXPECT_EQ(rows[1][3], "1.99");
  EXPECT_EQ(rows[1][6], "4");
}

TEST(CliTest, AuctionOnZeroOneFixture) {
  const fs::path poa = Dir("poa_for_auction");
  ASSERT_EQ(RunCli({"poa", "--seed", "1", "--out", poa.string()}), kExitOk);
  const fs::path out = Dir("auction");
  ASSERT_EQ(RunCli({"auction", "run", "--instance",
                    (poa / "zero_one.json").string(), "--bids", "0,1",
                    "--format", "GreedyGSP", "--seed", "1", "--out",
                    out.string()}),
            kExitOk);
  const json doc = json::parse(ReadAll(out / "auction.json"));
  ASSERT_EQ(doc["results"].size(), 1u);
  EXPECT_EQ(doc["results"][0]["format"], "GreedyGSP");
  EXPECT_EQ(doc["results"][0]["revenue"], 0.0);
  EXPECT_EQ(doc["results"][0]["true_welfare"], 1.0);
}

TEST(CliTest, UsageErrors) {
  const fs::path out = Dir("usage");
  EXPECT_EQ(RunCli({"--out", out.string()}), kExitUsage);
  EXPECT_EQ(RunCli({"nonsense", "--out", out.string()}), kExitUsage);
  EXPECT_EQ(RunCli({"learn", "exp9", "--out", out.string()}), kExitUsage);
  EXPECT_EQ(RunCli({"equilibrium", "--delta-a", "0.7", "--delta-b", "0.2",
                    "--seed", "1", "--out", out.string()}),
            kExitUsage);
  const json s = Summary(out);
  EXPECT_FALSE(s["ok"]);
  EXPECT_TRUE(s.contains("error"));
  EXPECT_EQ(RunCli({"auction", "run", "--instance",
                    (out / "missing.json").string(), "--seed", "1", "--out",
                    out.string()}),
            kExitUsage);
}

TEST(CliTest, ConfigSuppliesSeedAndOverrides) {
  const fs::path out = Dir("config");
  fs::create_directories(out);
  {
    std::ofstream f(out / "cfg.json");
    f << R"({"seed": 11, "N_s": 2, "N_l": 20, "N_t": 10,
            "formats": ["GreedyGSP", "OptVCG"]})";
  }
  ASSERT_EQ(RunCli({"learn", "exp3", "--config", (out / "cfg.json").string(),
                    "--out", out.string()}),
            kExitOk);
  const json s = Summary(out);
  EXPECT_EQ(s["seed"], 11);
  EXPECT_EQ(s["command"], "learn exp3");
  const json report = json::parse(ReadAll(out / "report.json"));
  EXPECT_EQ(report["formats"].size(), 2u);
  EXPECT_EQ(ReadCsv(out / "draws.csv").size(), 5u);
}

TEST(CliTest, DatasetRoundTrip) {
  const fs::path synth = Dir("synth");
  ASSERT_EQ(RunCli({"dataset", "synth", "--auctions", "40", "--seed", "5",
                    "--out", synth.string()}),
            kExitOk);
  EXPECT_EQ(ReadCsv(synth / "raw.csv").size(), 401u);
  const fs::path norm = Dir("normalize");
  ASSERT_EQ(RunCli({"dataset", "normalize", "--input",
                    (synth / "raw.csv").string(), "--mode", "correlated",
                    "--seed", "5", "--out", norm.string()}),
            kExitOk);
  const auto rows = ReadCsv(norm / "normalized.csv");
  EXPECT_EQ(rows.size(), 401u);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const double b = std::stod(rows[r][2]);
    EXPECT_GE(b, 0.0);
    EXPECT_LE(b, 1.0);
  }
  const json side = json::parse(ReadAll(norm / "normalized.json"));
  EXPECT_EQ(side["mode"], "correlated");
}

TEST(CliTest, RerunsAreByteIdentical) {
  for (const std::vector<std::string>& cmd :
       {std::vector<std::string>{"equilibrium", "--delta-a", "0.2",
                                 "--delta-b", "0.9", "--samples", "20000"},
        std::vector<std::string>{"learn", "exp2", "--threads", "1"}}) {
    std::vector<fs::path> dirs;
    for (const char* threads : {"1", "3"}) {
      dirs.push_back(Dir(cmd[0] + threads));
      std::vector<std::string> args = cmd;
      if (cmd[0] == "learn") args.back() = threads;
      args.insert(args.end(), {"--seed", "9", "--out", dirs.back().string()});
      ASSERT_EQ(RunCli(args), kExitOk);
    }
    int compared = 0;
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      EXPECT_EQ(ReadAll(entry.path()),
                ReadAll(dirs[1] / entry.path().filename()))
          << entry.path();
      ++compared;
    }
    EXPECT_GT(compared, 2);
  }
}

}  // namespace
}  // namespace adtypes::cli
