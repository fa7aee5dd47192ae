#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct Result {
  int status = -1;
  std::string out;
  std::string err;
};

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("stancelp_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result Run(const std::string& args) {
    const fs::path out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
    const std::string cmd = std::string("'") + STANCELP_CLI + "' " + args + " >'" +
                            out.string() + "' 2>'" + err.string() + "'";
    const int raw = std::system(cmd.c_str());
    Result r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = Slurp(out);
    r.err = Slurp(err);
    return r;
  }

  fs::path dir_;
};

const std::string kFixture = STANCELP_FIXTURE_DIR;

TEST_F(CliTest, Version) {
  auto r = Run("--version");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("0.1.0"), std::string::npos);
}

TEST_F(CliTest, RunOnFixture) {
  auto r = Run("run --config '" + kFixture + "/config.json' --out '" + (dir_ / "out").string() +
               "' --reps 200");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("estimate: 16 horizons"), std::string::npos) << r.out;
  const std::string csv = Slurp(dir_ / "out" / "irf" / "SPY_sentiment_fine.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 17);
}

TEST_F(CliTest, StagesFromFlagsOnly) {
  const std::string common = " --manifest '" + kFixture + "/manifest.json' --labels '" + kFixture +
                             "/labels.jsonl' --out '" + (dir_ / "o").string() + "'";
  EXPECT_EQ(Run("segment" + common).status, 0);
  EXPECT_EQ(Run("label" + common).status, 0);
  auto r = Run("aggregate" + common + " --granularity coarse");
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "o" / "indicators" / "sentiment_coarse.csv"));
}

TEST_F(CliTest, MissingSeedListsField) {
  auto r = Run("run --manifest '" + kFixture + "/manifest.json' --market-csv '" + kFixture +
               "/SPY.csv' --controls-csv '" + kFixture + "/controls.csv' --out '" +
               (dir_ / "o").string() + "'");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("\"seed\""), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("InvalidConfig"), std::string::npos) << r.err;
}

TEST_F(CliTest, UnreadableMarketCsvNamesPath) {
  const std::string missing = (dir_ / "nowhere" / "SPY.csv").string();
  auto r = Run("run --config '" + kFixture + "/config.json' --market-csv '" + missing +
               "' --out '" + (dir_ / "o").string() + "'");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("IoError"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find(missing), std::string::npos) << r.err;
}

TEST_F(CliTest, InvalidFlagValue) {
  auto r = Run("run --config '" + kFixture + "/config.json' --alpha 3 --out '" +
               (dir_ / "o").string() + "'");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("alpha"), std::string::npos) << r.err;
}

}  // namespace
