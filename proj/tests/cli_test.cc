#include "bipoly/cli.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bipoly/serialize.h"
#include "gtest/gtest.h"
#include "nlohmann/json.hpp"

namespace bipoly::cli {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

fs::path ScratchDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("bipoly_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(Thresholds, GoldenTable) {
  std::ostringstream out, err;
  EXPECT_EQ(RunThresholds({}, out, err), kExitOk);
  EXPECT_EQ(out.str(),
            "budget,proposed_m,proposed_rth,gasp_m,gasp_rth\n"
            "2,1,47,1,44\n"
            "3,2,54,1,44\n"
            "4,3,61,2,61\n"
            "5,4,68,2,61\n"
            "6,5,75,3,67\n"
            "7,5,75,3,67\n"
            "8,5,75,4,73\n"
            "9,5,75,4,73\n"
            "10,5,75,5,79\n");
}

TEST(Thresholds, RejectsBudgetOutsideRange) {
  ThresholdOptions opts;
  opts.budgets = {1};
  std::ostringstream out, err;
  EXPECT_EQ(RunThresholds(opts, out, err), kExitValidation);
  EXPECT_NE(err.str().find("budget 1"), std::string::npos);
}

TEST(Thresholds, WritesManifest) {
  const fs::path dir = ScratchDir("thresholds");
  ThresholdOptions opts;
  opts.out = dir / "fig1.csv";
  std::ostringstream out, err;
  ASSERT_EQ(RunThresholds(opts, out, err), kExitOk);
  EXPECT_EQ(Slurp(*opts.out), ThresholdCsv(opts));
  const auto manifest = nlohmann::json::parse(Slurp(dir / "fig1.csv.manifest.json"));
  EXPECT_EQ(manifest["subcommand"], "thresholds");
  EXPECT_EQ(manifest["tool_version"], kToolVersion);
}

DemoOptions SmallDemo() {
  DemoOptions opts;
  opts.params = {2, 2, 1, 2, 6, 2147483647};
  opts.r = opts.s = opts.c = 4;
  opts.seed = 3;
  return opts;
}

TEST(Demo, SmallInstancePasses) {
  std::ostringstream out, err;
  EXPECT_EQ(RunDemo(SmallDemo(), out, err), kExitOk) << err.str();
  EXPECT_NE(out.str().find("recovery threshold: 10\n"), std::string::npos);
  EXPECT_NE(out.str().find("PASS"), std::string::npos);
}

TEST(Demo, RerunIsByteIdentical) {
  std::ostringstream a, b, err;
  RunDemo(SmallDemo(), a, err);
  RunDemo(SmallDemo(), b, err);
  EXPECT_EQ(a.str(), b.str());
}

TEST(Demo, ValidationFailures) {
  std::ostringstream out, err;
  auto small_q = SmallDemo();
  small_q.params.q = 2;
  EXPECT_EQ(RunDemo(small_q, out, err), kExitValidation);
  EXPECT_NE(err.str().find("2K+2T-2"), std::string::npos);

  auto bad_split = SmallDemo();
  bad_split.params.K = 3;
  EXPECT_EQ(RunDemo(bad_split, out, err), kExitValidation);

  auto too_few = SmallDemo();
  too_few.params.N = 4;  // 8 results, threshold 10
  EXPECT_EQ(RunDemo(too_few, out, err), kExitIncompletable);
}

TEST(Demo, DumpWritesParseableFiles) {
  const fs::path dir = ScratchDir("demo");
  auto opts = SmallDemo();
  opts.dump_dir = dir;
  std::ostringstream out, err;
  ASSERT_EQ(RunDemo(opts, out, err), kExitOk) << err.str();
  const auto manifest = nlohmann::json::parse(Slurp(dir / "manifest.json"));
  EXPECT_EQ(manifest["seed"], 3);
  EXPECT_EQ(manifest["outputs"].size(), 6u + 10u);
  WireHeader header;
  const auto share = DeserializeShare(ReadBytes(dir / "share_0001.bin"), &header);
  EXPECT_EQ(share.worker_id, 1u);
  EXPECT_EQ(header.params.N, 6u);
  EXPECT_EQ(header.r, 4u);
}

TEST(Simulate, ShortRunIsReproducible) {
  const fs::path dir = ScratchDir("simulate");
  SimulateOptions opts;
  opts.config = fs::path(BIPOLY_CONFIG_DIR) / "homogeneous.cfg";
  opts.trials = 200;
  opts.out = dir / "a.csv";
  std::ostringstream out, err;
  ASSERT_EQ(RunSimulate(opts, out, err), kExitOk) << err.str();
  opts.out = dir / "b.csv";
  opts.threads = 3;
  ASSERT_EQ(RunSimulate(opts, out, err), kExitOk);
  const std::string a = Slurp(dir / "a.csv");
  EXPECT_EQ(a, Slurp(dir / "b.csv"));
  EXPECT_EQ(a.substr(0, a.find('\n')), "scheme,budget,m,r_th,mean_time_s,std_err_s,trials,seed");
  EXPECT_TRUE(fs::exists(dir / "a.csv.manifest.json"));
}

TEST(Simulate, RejectsBadInput) {
  SimulateOptions opts;
  opts.config = fs::path(BIPOLY_CONFIG_DIR) / "homogeneous.cfg";
  opts.trials = 0;
  std::ostringstream out, err;
  EXPECT_EQ(RunSimulate(opts, out, err), kExitValidation);
  opts.trials = 10;
  opts.scheme = "other";
  EXPECT_EQ(RunSimulate(opts, out, err), kExitValidation);
  opts.scheme = "both";
  opts.config = "/nonexistent.cfg";
  EXPECT_EQ(RunSimulate(opts, out, err), kExitValidation);
}

TEST(Privacy, SmallInstanceReportsZeroInformation) {
  PrivacyOptions opts;
  opts.params = {1, 1, 1, 1, 2, 3};
  std::ostringstream out, err;
  EXPECT_EQ(RunPrivacy(opts, out, err), kExitOk) << err.str();
  EXPECT_NE(out.str().find("exhaustive MI (workers 1..1): 0 bits"), std::string::npos);
  EXPECT_NE(out.str().find("failed: 0\n"), std::string::npos);
}

TEST(Privacy, DegenerateDrawFailsWithWitness) {
  PrivacyOptions opts;
  opts.params = {2, 2, 2, 2, 4, 101};
  opts.sweeps = 2;
  opts.allow_degenerate = true;
  std::ostringstream out, err;
  EXPECT_NE(RunPrivacy(opts, out, err), kExitOk);
  EXPECT_NE(out.str().find("witness: draw 0, workers {1,2}, MA rank 1 < 2"), std::string::npos)
      << out.str();
  EXPECT_NE(out.str().find("FAIL"), std::string::npos);
}

TEST(Seed, EnvironmentOverride) {
  ::setenv("BIPOLY_SEED", "77", 1);
  EXPECT_EQ(SeedFromEnvironment(5), 77u);
  ::setenv("BIPOLY_SEED", "junk", 1);
  EXPECT_EQ(SeedFromEnvironment(5), 5u);
  ::unsetenv("BIPOLY_SEED");
  EXPECT_EQ(SeedFromEnvironment(5), 5u);
}

}  // namespace
}  // namespace bipoly::cli
