#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.h"

namespace arena::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome RunArena(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(ARENA_TEST_TMPDIR) /
           ("cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    config_ = dir_ / "config.json";
    std::ofstream(config_) << R"({
      "models": [
        {"name": "greedy", "backend": "heuristic", "seed": 1},
        {"name": "rnd", "backend": "random", "seed": 2},
        {"name": "rnd2", "backend": "random", "seed": 3},
        {"name": "down", "endpoint": "http://127.0.0.1:1/v1"}
      ],
      "games": [{"name": "chess", "max_turns": 30}],
      "pool": {"pool_id": "t", "games_per_ordered_pair": 2, "seed": 7},
      "transport": {"max_tries": 1, "initial_backoff_ms": 0}
    })";
    pool_config_ = dir_ / "pool.json";
    std::ofstream(pool_config_) << R"({
      "models": [
        {"name": "greedy", "backend": "heuristic", "seed": 1},
        {"name": "rnd", "backend": "random", "seed": 2},
        {"name": "rnd2", "backend": "random", "seed": 3}
      ],
      "games": [{"name": "chess", "max_turns": 30}],
      "pool": {"pool_id": "t", "games_per_ordered_pair": 2, "seed": 7}
    })";
  }

  fs::path dir_;
  fs::path config_;
  fs::path pool_config_;
};

TEST_F(CliTest, PlayWritesTranscript) {
  const Outcome r = RunArena({"play", "--config", config_.string(), "--game", "chess", "--p1",
                         "greedy", "--p2", "rnd", "--out-dir", (dir_ / "out").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["match_id"], "chess-greedy-vs-rnd");
  EXPECT_TRUE(fs::exists(dir_ / "out" / "chess-greedy-vs-rnd.jsonl"));

  const Outcome replay =
      RunArena({"replay", "--transcript", (dir_ / "out" / "chess-greedy-vs-rnd.jsonl").string()});
  ASSERT_EQ(replay.code, kExitOk) << replay.err;
  EXPECT_NE(replay.out.find("game_start"), std::string::npos);
  EXPECT_NE(replay.out.find("game_end"), std::string::npos);
}

TEST_F(CliTest, PlayAcceptsKnownGameOutsideConfig) {
  const Outcome r = RunArena({"play", "--config", config_.string(), "--game", "liars_dice", "--p1",
                         "rnd", "--p2", "rnd2", "--out-dir", (dir_ / "out").string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
}

TEST_F(CliTest, ConfigErrorsExitOne) {
  EXPECT_EQ(RunArena({"play", "--config", config_.string(), "--game", "go", "--p1", "rnd", "--p2",
                 "rnd2"})
                .code,
            kExitConfigError);
  const Outcome missing = RunArena({"play", "--config", config_.string(), "--game", "chess",
                               "--p1", "nobody", "--p2", "rnd"});
  EXPECT_EQ(missing.code, kExitConfigError);
  EXPECT_NE(missing.err.find("--p1"), std::string::npos);
  EXPECT_EQ(RunArena({"pool", "--config", (dir_ / "absent.json").string()}).code, kExitConfigError);
  EXPECT_EQ(RunArena({"frobnicate"}).code, kExitConfigError);
  EXPECT_EQ(RunArena({"play", "--config", config_.string()}).code, kExitConfigError);
  EXPECT_EQ(RunArena({"--help"}).code, kExitOk);
}

TEST_F(CliTest, UnreachableEndpointExitsTwo) {
  const Outcome r = RunArena({"play", "--config", config_.string(), "--game", "chess", "--p1",
                         "rnd", "--p2", "down", "--out-dir", (dir_ / "out").string()});
  EXPECT_EQ(r.code, kExitAborted);
  EXPECT_EQ(nlohmann::json::parse(r.out)["aborted"], true);
}

TEST_F(CliTest, PoolIsReproducible) {
  const Outcome first =
      RunArena({"pool", "--config", pool_config_.string(), "--out-dir", (dir_ / "a").string()});
  ASSERT_EQ(first.code, kExitOk) << first.err;
  const Outcome second =
      RunArena({"pool", "--config", pool_config_.string(), "--out-dir", (dir_ / "b").string()});
  ASSERT_EQ(second.code, kExitOk) << second.err;
  size_t transcripts = 0;
  for (const auto& entry : fs::directory_iterator(dir_ / "a" / "t")) {
    transcripts += entry.path().extension() == ".jsonl";
  }
  EXPECT_EQ(transcripts, 12u);
  EXPECT_EQ(Slurp(dir_ / "a" / "results.csv"), Slurp(dir_ / "b" / "results.csv"));
  EXPECT_EQ(Slurp(dir_ / "a" / "results.json"), Slurp(dir_ / "b" / "results.json"));

  const Outcome rate = RunArena({"rate", "--transcripts", (dir_ / "a" / "t").string(), "--bootstrap",
                            "50", "--seed", "3"});
  ASSERT_EQ(rate.code, kExitOk) << rate.err;
  const nlohmann::json board = nlohmann::json::parse(rate.out);
  ASSERT_TRUE(board.contains("leaderboard")) << rate.out;
  EXPECT_EQ(board["leaderboard"][0]["model"], "greedy");
  EXPECT_TRUE(board["leaderboard"][0].contains("ci_low"));

  const Outcome csv = RunArena({"rate", "--results-csv", (dir_ / "a" / "results.csv").string(),
                           "--format", "csv"});
  ASSERT_EQ(csv.code, kExitOk) << csv.err;
  EXPECT_EQ(csv.out.rfind("model,rating,strength\ngreedy,", 0), 0u) << csv.out;

  const Outcome analyze = RunArena({"analyze", "--transcripts", (dir_ / "a" / "t").string(),
                               "--depth", "1", "--max-plies", "10"});
  ASSERT_EQ(analyze.code, kExitOk) << analyze.err;
  EXPECT_EQ(nlohmann::json::parse(analyze.out)["chess_games"], 12);
}

TEST_F(CliTest, RateRejectsEmptyInput) {
  fs::create_directories(dir_ / "empty");
  EXPECT_EQ(RunArena({"rate", "--transcripts", (dir_ / "empty").string()}).code, kExitConfigError);
  EXPECT_EQ(RunArena({"rate"}).code, kExitConfigError);
}

}  // namespace
}  // namespace arena::cli
