#ifndef ARENA_POOL_H_
#define ARENA_POOL_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "arena/manager.h"

namespace arena {

struct ModelSpec {
  std::string name;
  BackendSpec backend;
  AttemptPolicy attempt_policy;
};

struct GameSpec {
  std::string name;
  nlohmann::json options = nlohmann::json::object();
  std::optional<int> max_turns;
};

struct PoolConfig {
  std::string pool_id = "pool";
  std::vector<ModelSpec> models;
  std::vector<GameSpec> games;
  int games_per_ordered_pair = 1;
  int max_parallel = 4;
  uint64_t seed = 0;
};

struct ScheduledMatch {
  // Position in the schedule; also the seed offset.
  size_t index = 0;
  size_t game_index = 0;
  std::string model_a;
  std::string model_b;
  int repetition = 0;
  MatchConfig config;
};

// Throws ConfigError.
void ValidatePoolConfig(const PoolConfig& config);

// Every ordered pair (a, b) with a != b, for every game and repetition. Model
// a takes the game's first seat. Seeds are distinct across the schedule.
std::vector<ScheduledMatch> Schedule(const PoolConfig& config);

// Seed of the match at `index` in the schedule of a pool seeded `pool_seed`.
uint64_t MatchSeed(uint64_t pool_seed, size_t index);

struct PairTally {
  int wins_a = 0;
  int wins_b = 0;
  int draws = 0;
  int aborted = 0;

  friend bool operator==(const PairTally&, const PairTally&) = default;
};

struct ModelTotals {
  int wins = 0;
  int losses = 0;
  int draws = 0;
  int aborted = 0;

  int games() const { return wins + losses + draws; }
  friend bool operator==(const ModelTotals&, const ModelTotals&) = default;
};

class ResultsTable {
 public:
  // Adds one finished match between `model_a` (first seat) and `model_b`.
  void Add(const std::string& model_a, const std::string& model_b, const MatchResult& result);

  // Commutative, associative merge.
  void Merge(const ResultsTable& other);

  const std::map<std::pair<std::string, std::string>, PairTally>& pairs() const {
    return pairs_;
  }
  const std::map<std::string, ModelTotals>& totals() const { return totals_; }
  // Sorted match ids.
  const std::vector<std::string>& aborted_matches() const { return aborted_matches_; }

  nlohmann::json ToJson() const;
  // Columns: model_a, model_b, wins_a, wins_b, draws, aborted.
  std::string ToCsv() const;

  friend bool operator==(const ResultsTable&, const ResultsTable&) = default;

 private:
  std::map<std::pair<std::string, std::string>, PairTally> pairs_;
  std::map<std::string, ModelTotals> totals_;
  std::vector<std::string> aborted_matches_;
};

struct PoolRunOptions {
  // When set, transcripts go to {out_dir}/{pool_id}/{match_id}.jsonl.
  std::optional<std::filesystem::path> out_dir;
  RunOptions run;
};

struct PoolRun {
  ResultsTable table;
  // In schedule order.
  std::vector<MatchResult> results;
};

// Runs the whole schedule with at most max_parallel matches in flight.
// Aborted matches are tallied separately and do not stop the pool.
PoolRun RunPool(const PoolConfig& config, const PoolRunOptions& options = {});

// Model and pool names may use letters, digits, '_', '-' and '.'.
bool IsValidName(std::string_view name);

}  // namespace arena

#endif  // ARENA_POOL_H_
