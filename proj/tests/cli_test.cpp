#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <sys/wait.h>

#include "cursamp/cli/experiment_config.hpp"
#include "cursamp/cli/output.hpp"

namespace fs = std::filesystem;
using namespace cursamp;

namespace {

const char* kSmallBandit = R"(
[experiment]
kind = "bandit"
name = "small"
seed_count = 3

[bandit]
means = [0.9, 0.6]
horizons = [200, 500]
policies = ["ucb1_greedy", "uniform"]
)";

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cursamp-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  int run(const std::string& args) {
    const std::string cmd = std::string(CURSAMP_TOOL) + " " + args + " > " + (dir_ / "stdout.txt").string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string output() const { return cli::read_file(dir_ / "stdout.txt"); }

  fs::path dir_;
};

}  // namespace

TEST(ParseConfig, ErrorsNameTheField) {
  try {
    cli::parse_config_text("[experiment]\nkind = \"curriculum\"\n[curriculum]\nepsilon = 1.5\n");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("curriculum.epsilon"), std::string::npos) << e.what();
  }
  EXPECT_THROW(cli::parse_config_text("[experiment]\nkind = \"poker\"\n"), ValidationError);
  EXPECT_THROW(cli::parse_config_text("[experiment\n"), ValidationError);
}

TEST(ParseConfig, ShippedConfigsParse) {
  for (const auto& entry : fs::directory_iterator(CURSAMP_CONFIG_DIR)) {
    if (entry.path().extension() != ".toml") continue;
    EXPECT_NO_THROW(cli::parse_config_text(cli::read_file(entry.path()), entry.path().string()))
        << entry.path();
  }
}

TEST(ParseConfig, SeedCountExpandsToRange) {
  const auto cfg = cli::parse_config_text(kSmallBandit);
  EXPECT_EQ(cfg.seeds, (std::vector<std::uint64_t>{0, 1, 2}));
  EXPECT_EQ(cfg.kind, cli::ExperimentKind::bandit);
}

TEST_F(CliTest, SameConfigGivesIdenticalFiles) {
  const auto cfg = write("small.toml", kSmallBandit);
  ASSERT_EQ(run("bandit --config " + cfg.string() + " --out " + (dir_ / "a").string()), 0) << output();
  ASSERT_EQ(run("run --config " + cfg.string() + " --out " + (dir_ / "b").string()), 0) << output();
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(dir_ / "a")) {
    const auto other = dir_ / "b" / entry.path().filename();
    ASSERT_TRUE(fs::exists(other)) << other;
    EXPECT_EQ(cli::read_file(entry.path()), cli::read_file(other)) << entry.path().filename();
    ++compared;
  }
  EXPECT_EQ(compared, 4u);  // three seeds and a summary
}

TEST_F(CliTest, SeedFlagOverridesList) {
  const auto cfg = write("small.toml", kSmallBandit);
  ASSERT_EQ(run("bandit --config " + cfg.string() + " --seed 7 --out " + (dir_ / "o").string()), 0);
  EXPECT_TRUE(fs::exists(dir_ / "o" / "small-7.csv"));
  EXPECT_FALSE(fs::exists(dir_ / "o" / "small-0.csv"));
}

TEST_F(CliTest, ExitCodes) {
  const auto bad = write("bad.toml", "[experiment]\nkind = \"curriculum\"\n[curriculum]\nepsilon = 1.5\n");
  EXPECT_EQ(run("run --config " + bad.string()), 1);
  EXPECT_NE(output().find("curriculum.epsilon"), std::string::npos) << output();

  const auto small = write("small.toml", kSmallBandit);
  EXPECT_EQ(run("anchors --config " + small.string()), 1);

  const auto strict = write("strict.toml", std::string(kSmallBandit) +
                                               "swap_every = 100\n[checks]\nmin_nonstationary_ratio = 1e9\n");
  EXPECT_EQ(run("run --config " + strict.string() + " --out " + (dir_ / "s").string()), 0);
  EXPECT_EQ(run("run --check --config " + strict.string() + " --out " + (dir_ / "s").string()), 2);
  EXPECT_NE(output().find("FAIL"), std::string::npos);

  write("blocker", "not a directory");
  EXPECT_EQ(run("run --config " + small.string() + " --out " + (dir_ / "blocker" / "sub").string()), 3);
  EXPECT_EQ(run("run --config " + (dir_ / "missing.toml").string()), 3);
}

TEST_F(CliTest, CheckpointReplayAndRestoreMatchDump) {
  const std::string cfg = std::string(CURSAMP_CONFIG_DIR) + "/checkpoint.toml";
  const std::string out = " --out " + dir_.string();
  ASSERT_EQ(run("checkpoint dump --config " + cfg + out), 0) << output();
  const auto ckpt = dir_ / "session-7.json";
  const auto log = dir_ / "session-7.ops.jsonl";
  ASSERT_TRUE(fs::exists(ckpt));
  ASSERT_TRUE(fs::exists(log));

  ASSERT_EQ(run("checkpoint replay --config " + cfg + out + " --log " + log.string()), 0) << output();
  EXPECT_EQ(cli::read_file(dir_ / "session-replay.json"), cli::read_file(ckpt));

  ASSERT_EQ(run("checkpoint restore --config " + cfg + out + " --in " + ckpt.string()), 0) << output();
  EXPECT_EQ(cli::read_file(dir_ / "session-restored.json"), cli::read_file(ckpt));

  EXPECT_EQ(run("checkpoint restore --config " + cfg + out), 1);
}
