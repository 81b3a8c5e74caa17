#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "oracles.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kData = LATTRACE_DATA_DIR;

struct CliRun {
  int code;
  std::string out;
};

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "lattrace_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CliRun run(const std::string& args) {
  static int counter = 0;
  const fs::path out = scratch("stdout_" + std::to_string(counter++));
  const std::string cmd = std::string(LATTRACE_CLI) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out)};
}

json run_json(const std::string& args, int expected_code = 0) {
  const CliRun r = run(args);
  EXPECT_EQ(r.code, expected_code) << args;
  return json::parse(r.out);
}

double abs_entry(const json& e) { return std::hypot(e[0].get<double>(), e[1].get<double>()); }

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("verify").code, 2);
  EXPECT_EQ(run("verify bogus-suite").code, 2);
  EXPECT_EQ(run("fit").code, 2);
  EXPECT_EQ(run("fit --alpha 1,1,1,1").code, 2);
  EXPECT_EQ(run("fit --alpha 0,-1,1").code, 2);
  EXPECT_EQ(run("expand --what zeta --order 3").code, 2);
  EXPECT_EQ(run("expand --what theta-series --order 3 --coset 9").code, 2);
  EXPECT_EQ(run("expand --what theta-series --order 3 --coset 1/3").code, 2);
}

TEST(Cli, BadFilesExitTwo) {
  const fs::path bad = scratch("odd.json");
  std::ofstream(bad) << R"({"name": "odd", "gram": [[3]]})";
  EXPECT_EQ(run("verify combinatorics --lattice " + bad.string()).code, 2);
  EXPECT_EQ(run("verify combinatorics --lattice /nonexistent.json").code, 2);
  const fs::path cfg = scratch("unknown_key.json");
  std::ofstream(cfg) << R"({"tolerence": {}})";
  EXPECT_EQ(run("verify combinatorics --config " + cfg.string()).code, 2);
}

TEST(Cli, VerifyPassesAndIsByteIdentical) {
  const fs::path a = scratch("a.json"), b = scratch("b.json");
  EXPECT_EQ(run("verify combinatorics --out " + a.string()).code, 0);
  EXPECT_EQ(run("verify combinatorics --jobs 3 --out " + b.string()).code, 0);
  const std::string text = slurp(a);
  EXPECT_FALSE(text.empty());
  EXPECT_EQ(text, slurp(b));
  const json j = json::parse(text);
  EXPECT_EQ(j["overall"], "pass");
  EXPECT_EQ(j["suite"], "combinatorics");
}

TEST(Cli, VerifyFailureExitsOne) {
  const fs::path cfg = scratch("strict.json");
  std::ofstream(cfg) << R"({"tolerances": {"special-functions": 1e-300}, "cutoffs": {"points": 3}})";
  const CliRun r = run("verify special-functions --config " + cfg.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.out)["overall"], "fail");
}

TEST(Cli, TimingsAreOptIn) {
  const json plain = run_json("verify combinatorics");
  EXPECT_FALSE(plain["checks"][0].contains("runtime_ms"));
  const json timed = run_json("verify combinatorics --timings");
  EXPECT_TRUE(timed["checks"][0].contains("runtime_ms"));
}

TEST(Cli, ExpandEta) {
  const json j = run_json("expand --what eta --order 5");
  ASSERT_EQ(j["denom"], 24);
  // η = q^{1/24} Σ (-1)^k q^{k(3k-1)/2}: exponents 1, 25, 49, 121 in units of q^{1/24}.
  const auto pent = oracle::pentagonal(5);
  std::map<long, long> got;
  for (const auto& t : j["terms"]) got[t[0].get<long>()] = t[1].get<long>();
  std::map<long, long> expected;
  for (int n = 0; n <= 5; ++n) {
    if (pent[static_cast<std::size_t>(n)] != 0) expected[24L * n + 1] = pent[static_cast<std::size_t>(n)];
  }
  EXPECT_EQ(got, expected);
}

TEST(Cli, ExpandThetaSeries) {
  const json j = run_json("expand --what theta-series --order 8 --coset 0");
  ASSERT_EQ(j["denom"], 1);
  EXPECT_EQ(j["terms"], json::parse("[[0,1,0],[2,2,0],[8,2,0]]"));
  const json q = run_json("expand --what theta-series --order 3 --coset 1/4");
  EXPECT_EQ(q["coset"], json::parse(R"(["1/4"])"));
  EXPECT_EQ(q["terms"][0][1], 1);
  const json a2 = run_json("expand --what theta-series --order 3 --lattice " + (kData / "a2.json").string());
  EXPECT_EQ(a2["terms"], json::parse("[[0,1,0],[1,6,0],[3,6,0]]"));
}

TEST(Cli, ExpandG2) {
  const json j = run_json("expand --what g2 --order 3");
  // π²/3 (1 - 24 Σ σ₁(n) qⁿ)
  const double c = std::numbers::pi * std::numbers::pi / 3.0;
  ASSERT_EQ(j["terms"].size(), 4U);
  EXPECT_NEAR(j["terms"][0][1].get<double>(), c, 1e-12);
  EXPECT_NEAR(j["terms"][2][1].get<double>(), -24.0 * 3.0 * c, 1e-10);
}

TEST(Cli, FitS) {
  const json j = run_json("fit --alpha 0,-1,1,0");
  EXPECT_EQ(j["overall"], "pass");
  ASSERT_EQ(j["entries"].size(), 4U);
  for (const auto& row : j["entries"]) {
    for (const auto& e : row) EXPECT_NEAR(abs_entry(e), 0.5, 1e-9);
  }
  EXPECT_LT(j["holdout_residual"].get<double>(), 1e-8);
}

TEST(Cli, FitTAndIdentity) {
  const json t = run_json("fit --alpha 1,1,0,1");
  for (std::size_t h = 0; h < 4; ++h) {
    for (std::size_t k = 0; k < 4; ++k) {
      EXPECT_NEAR(abs_entry(t["entries"][h][k]), h == k ? 1.0 : 0.0, 1e-10);
    }
  }
  const json id = run_json("fit --alpha 1,0,0,1 --lattice " + (kData / "a2.json").string());
  EXPECT_EQ(id["lattice"], "a2");
  ASSERT_EQ(id["entries"].size(), 3U);
  EXPECT_NEAR(id["entries"][1][1][0].get<double>(), 1.0, 1e-10);
  EXPECT_NEAR(abs_entry(id["entries"][0][1]), 0.0, 1e-10);
}

TEST(Cli, FitIsByteIdentical) {
  EXPECT_EQ(run("fit --alpha 0,-1,1,0 --seed 4").out, run("fit --alpha 0,-1,1,0 --seed 4").out);
}
