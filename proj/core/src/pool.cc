#include "arena/pool.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "arena/games/registry.h"
#include "arena/random.h"

namespace arena {

bool IsValidName(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-' || c == '.';
  });
}

void ValidatePoolConfig(const PoolConfig& config) {
  if (!IsValidName(config.pool_id)) {
    throw ConfigError("pool_id '" + config.pool_id + "' must match [A-Za-z0-9_.-]+");
  }
  if (config.models.size() < 2) throw ConfigError("pool needs at least 2 models");
  std::set<std::string> names;
  for (const ModelSpec& m : config.models) {
    if (!IsValidName(m.name)) {
      throw ConfigError("model name '" + m.name + "' must match [A-Za-z0-9_.-]+");
    }
    if (!names.insert(m.name).second) {
      throw ConfigError("duplicate model name '" + m.name + "'");
    }
  }
  if (config.games.empty()) throw ConfigError("pool needs at least one game");
  std::set<std::string> game_names;
  for (const GameSpec& g : config.games) {
    if (!game_names.insert(g.name).second) {
      throw ConfigError("game '" + g.name + "' listed twice");
    }
    ValidateGameOptions(g.name, g.options);
  }
  if (config.games_per_ordered_pair < 1) {
    throw ConfigError("games_per_ordered_pair must be >= 1");
  }
  if (config.max_parallel < 1) throw ConfigError("max_parallel must be >= 1");
}

uint64_t MatchSeed(uint64_t pool_seed, size_t index) {
  return Mix64(pool_seed) + static_cast<uint64_t>(index);
}

std::vector<ScheduledMatch> Schedule(const PoolConfig& config) {
  ValidatePoolConfig(config);
  std::vector<ScheduledMatch> out;
  for (size_t g = 0; g < config.games.size(); ++g) {
    const GameSpec& game = config.games[g];
    const std::vector<std::string> roles =
        MakeGame(game.name, GameParams{0, game.max_turns, game.options})->RoleNames();
    if (roles.size() != 2) {
      throw ConfigError("game " + game.name + " is not a two-player game");
    }
    for (const ModelSpec& a : config.models) {
      for (const ModelSpec& b : config.models) {
        if (a.name == b.name) continue;
        for (int rep = 0; rep < config.games_per_ordered_pair; ++rep) {
          ScheduledMatch m;
          m.index = out.size();
          m.game_index = g;
          m.model_a = a.name;
          m.model_b = b.name;
          m.repetition = rep;
          char rep_text[16];
          std::snprintf(rep_text, sizeof(rep_text), "r%02d", rep);
          m.config.match_id = game.name + "-" + a.name + "-vs-" + b.name + "-" + rep_text;
          m.config.game = game.name;
          m.config.seed = MatchSeed(config.seed, m.index);
          m.config.max_turns = game.max_turns;
          m.config.game_options = game.options;
          m.config.players = {
              PlayerSpec{a.name, roles[0], a.backend, a.attempt_policy},
              PlayerSpec{b.name, roles[1], b.backend, b.attempt_policy},
          };
          out.push_back(std::move(m));
        }
      }
    }
  }
  return out;
}

void ResultsTable::Add(const std::string& model_a, const std::string& model_b,
                       const MatchResult& result) {
  PairTally& pair = pairs_[{model_a, model_b}];
  ModelTotals& ta = totals_[model_a];
  ModelTotals& tb = totals_[model_b];
  if (result.aborted) {
    ++pair.aborted;
    ++ta.aborted;
    ++tb.aborted;
    aborted_matches_.insert(
        std::upper_bound(aborted_matches_.begin(), aborted_matches_.end(), result.match_id),
        result.match_id);
  } else if (result.draw) {
    ++pair.draws;
    ++ta.draws;
    ++tb.draws;
  } else if (result.winner == model_a) {
    ++pair.wins_a;
    ++ta.wins;
    ++tb.losses;
  } else {
    ++pair.wins_b;
    ++tb.wins;
    ++ta.losses;
  }
}

void ResultsTable::Merge(const ResultsTable& other) {
  for (const auto& [key, t] : other.pairs_) {
    PairTally& p = pairs_[key];
    p.wins_a += t.wins_a;
    p.wins_b += t.wins_b;
    p.draws += t.draws;
    p.aborted += t.aborted;
  }
  for (const auto& [name, t] : other.totals_) {
    ModelTotals& m = totals_[name];
    m.wins += t.wins;
    m.losses += t.losses;
    m.draws += t.draws;
    m.aborted += t.aborted;
  }
  std::vector<std::string> merged;
  std::merge(aborted_matches_.begin(), aborted_matches_.end(), other.aborted_matches_.begin(),
             other.aborted_matches_.end(), std::back_inserter(merged));
  aborted_matches_ = std::move(merged);
}

nlohmann::json ResultsTable::ToJson() const {
  nlohmann::json j;
  j["pairs"] = nlohmann::json::array();
  for (const auto& [key, t] : pairs_) {
    j["pairs"].push_back({{"model_a", key.first},
                          {"model_b", key.second},
                          {"wins_a", t.wins_a},
                          {"wins_b", t.wins_b},
                          {"draws", t.draws},
                          {"aborted", t.aborted}});
  }
  j["totals"] = nlohmann::json::object();
  for (const auto& [name, t] : totals_) {
    j["totals"][name] = {{"wins", t.wins},
                         {"losses", t.losses},
                         {"draws", t.draws},
                         {"aborted", t.aborted},
                         {"games", t.games()}};
  }
  j["aborted_matches"] = aborted_matches_;
  return j;
}

std::string ResultsTable::ToCsv() const {
  std::string out = "model_a,model_b,wins_a,wins_b,draws,aborted\n";
  for (const auto& [key, t] : pairs_) {
    out += key.first + "," + key.second + "," + std::to_string(t.wins_a) + "," +
           std::to_string(t.wins_b) + "," + std::to_string(t.draws) + "," +
           std::to_string(t.aborted) + "\n";
  }
  return out;
}

PoolRun RunPool(const PoolConfig& config, const PoolRunOptions& options) {
  const std::vector<ScheduledMatch> schedule = Schedule(config);
  for (const ScheduledMatch& m : schedule) ValidateMatchConfig(m.config);

  std::vector<MatchResult> results(schedule.size());
  std::atomic<size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= schedule.size()) return;
      {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error) return;
      }
      try {
        MatchRun run = RunMatch(schedule[i].config, options.run);
        if (options.out_dir) {
          WriteTranscript(*options.out_dir / config.pool_id /
                              (schedule[i].config.match_id + ".jsonl"),
                          run.events);
        }
        results[i] = std::move(run.result);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };

  const size_t n_workers =
      std::min(static_cast<size_t>(config.max_parallel), std::max<size_t>(schedule.size(), 1));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(n_workers);
    for (size_t t = 0; t < n_workers; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  PoolRun run;
  for (size_t i = 0; i < schedule.size(); ++i) {
    run.table.Add(schedule[i].model_a, schedule[i].model_b, results[i]);
  }
  run.results = std::move(results);
  return run;
}

}  // namespace arena
