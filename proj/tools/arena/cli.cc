#include "cli.h"

#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "arena/analysis/engine.h"
#include "arena/analysis/report.h"
#include "arena/chess/board.h"
#include "arena/config.h"
#include "arena/games/registry.h"
#include "arena/manager.h"
#include "arena/pool.h"
#include "arena/rating.h"
#include "arena/transcript.h"

namespace arena::cli {
namespace {

namespace fs = std::filesystem;

struct GlobalOptions {
  std::optional<uint64_t> seed;
};

struct PlayOptions {
  std::string config;
  std::string game;
  std::string p1;
  std::string p2;
  std::string out_dir = "transcripts";
  std::string match_id;
};

struct PoolOptions {
  std::string config;
  std::string out_dir = "pool_output";
};

struct RateOptions {
  std::string config;
  std::string transcripts;
  std::string results_csv;
  std::optional<int> bootstrap;
  std::optional<double> confidence;
  std::optional<double> virtual_draws;
  bool include_aborted = false;
  std::string format = "json";
};

struct AnalyzeOptions {
  std::string transcripts;
  std::string engine = "mock";
  int depth = 15;
  int threshold_cp = 30;
  int max_plies = 200;
};

struct ReplayOptions {
  std::string transcript;
  bool boards = false;
};

int RunPlay(const GlobalOptions& global, const PlayOptions& opts, std::ostream& out,
            std::ostream& err) {
  const RootConfig config = LoadRootConfig(opts.config);
  const GameSpec* game = config.FindGame(opts.game);
  GameSpec adhoc;
  if (game == nullptr) {
    const std::vector<std::string>& known = KnownGames();
    if (std::find(known.begin(), known.end(), opts.game) == known.end()) {
      throw ConfigError("--game: unknown game '" + opts.game + "'");
    }
    adhoc.name = opts.game;
    game = &adhoc;
  }
  const ModelSpec* m1 = config.FindModel(opts.p1);
  if (m1 == nullptr) throw ConfigError("--p1: no model named '" + opts.p1 + "' in config");
  const ModelSpec* m2 = config.FindModel(opts.p2);
  if (m2 == nullptr) throw ConfigError("--p2: no model named '" + opts.p2 + "' in config");
  if (m1->name == m2->name) throw ConfigError("--p2: must differ from --p1");

  MatchConfig match;
  match.match_id =
      opts.match_id.empty() ? game->name + "-" + m1->name + "-vs-" + m2->name : opts.match_id;
  if (!IsValidName(match.match_id)) {
    throw ConfigError("--match-id: must match [A-Za-z0-9_.-]+");
  }
  match.game = game->name;
  match.seed = global.seed.value_or(config.pool.seed);
  match.max_turns = game->max_turns;
  match.game_options = game->options;
  const std::vector<std::string> roles =
      MakeGame(game->name, GameParams{0, game->max_turns, game->options})->RoleNames();
  match.players = {PlayerSpec{m1->name, roles.at(0), m1->backend, m1->attempt_policy},
                   PlayerSpec{m2->name, roles.at(1), m2->backend, m2->attempt_policy}};
  ValidateMatchConfig(match);

  RunOptions run;
  run.clock = SystemClockMillis;
  run.transport = config.transport;
  const MatchRun result = RunMatch(match, run);
  const fs::path path = fs::path(opts.out_dir) / (match.match_id + ".jsonl");
  WriteTranscript(path, result.events);

  nlohmann::json j = result.result.ToJson();
  j["transcript"] = path.string();
  out << j.dump(2) << "\n";
  if (result.result.aborted) {
    err << "match aborted: " << result.result.reason << "\n";
    return kExitAborted;
  }
  return kExitOk;
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw IoError("failed writing " + path.string());
}

int RunPoolCommand(const GlobalOptions& global, const PoolOptions& opts, std::ostream& out,
                   std::ostream& err) {
  const RootConfig config = LoadRootConfig(opts.config);
  PoolConfig pool = config.ToPoolConfig();
  if (global.seed) pool.seed = *global.seed;
  ValidatePoolConfig(pool);
  for (const ScheduledMatch& m : Schedule(pool)) ValidateMatchConfig(m.config);

  PoolRunOptions run;
  run.out_dir = fs::path(opts.out_dir);
  run.run.clock = SystemClockMillis;
  run.run.transport = config.transport;
  const PoolRun result = RunPool(pool, run);

  nlohmann::json j = result.table.ToJson();
  j["pool_id"] = pool.pool_id;
  j["seed"] = pool.seed;
  j["matches"] = nlohmann::json::array();
  for (const MatchResult& r : result.results) j["matches"].push_back(r.ToJson());
  WriteFile(fs::path(opts.out_dir) / "results.csv", result.table.ToCsv());
  WriteFile(fs::path(opts.out_dir) / "results.json", j.dump(2) + "\n");

  nlohmann::json summary = result.table.ToJson();
  summary["pool_id"] = pool.pool_id;
  summary["scheduled"] = result.results.size();
  summary["out_dir"] = opts.out_dir;
  out << summary.dump(2) << "\n";
  if (!result.results.empty() &&
      result.table.aborted_matches().size() == result.results.size()) {
    err << "every match of the pool aborted\n";
    return kExitAborted;
  }
  return kExitOk;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << f.rdbuf();
  return buffer.str();
}

int RunRate(const GlobalOptions& global, const RateOptions& opts, std::ostream& out,
            std::ostream& err) {
  RatingSettings settings;
  if (!opts.config.empty()) settings = LoadRootConfig(opts.config).rating;
  if (opts.bootstrap) settings.bootstrap_resamples = *opts.bootstrap;
  if (opts.confidence) settings.confidence = *opts.confidence;
  if (opts.virtual_draws) settings.virtual_draws = *opts.virtual_draws;
  if (global.seed) settings.seed = *global.seed;
  if (settings.bootstrap_resamples < 0) throw ConfigError("--bootstrap: must be >= 0");
  if (!(settings.confidence > 0.0 && settings.confidence < 1.0)) {
    throw ConfigError("--confidence: must be in (0, 1)");
  }
  if (settings.virtual_draws < 0) throw ConfigError("--virtual-draws: must be >= 0");
  if (opts.transcripts.empty() == opts.results_csv.empty()) {
    throw ConfigError("rate: give exactly one of --transcripts or --results-csv");
  }

  std::vector<OutcomeRecord> records;
  int aborted_skipped = 0;
  if (!opts.transcripts.empty()) {
    RecordExtraction extraction = RecordsFromTranscripts(opts.transcripts, opts.include_aborted);
    records = std::move(extraction.records);
    aborted_skipped = extraction.aborted_skipped;
  } else {
    records = RecordsFromCsv(ReadFile(opts.results_csv));
  }
  if (records.empty()) throw ConfigError("rate: no game records in input");

  FitOptions fit;
  fit.virtual_draws = settings.virtual_draws;
  std::vector<RatingRow> rows = ToRatings(FitBt(records, fit));
  const bool with_ci = settings.bootstrap_resamples > 0;
  if (with_ci) {
    BootstrapOptions boot;
    boot.resamples = settings.bootstrap_resamples;
    boot.confidence = settings.confidence;
    boot.seed = settings.seed;
    boot.fit = fit;
    const BootstrapResult ci = BootstrapCi(records, boot);
    for (RatingRow& row : rows) {
      const auto& [lo, hi] = ci.intervals.at(row.model);
      row.ci_low = lo;
      row.ci_high = hi;
    }
    if (ci.failed_resamples > 0) {
      err << ci.failed_resamples << " bootstrap resamples failed to fit and were redrawn\n";
    }
  }
  rows = Leaderboard(std::move(rows));

  if (opts.format == "csv") {
    out << LeaderboardCsv(rows, with_ci);
  } else {
    nlohmann::json j;
    j["records"] = records.size();
    j["aborted_skipped"] = aborted_skipped;
    j["virtual_draws"] = settings.virtual_draws;
    if (with_ci) {
      j["bootstrap_resamples"] = settings.bootstrap_resamples;
      j["confidence"] = settings.confidence;
    }
    j["leaderboard"] = LeaderboardJson(rows);
    out << j.dump(2) << "\n";
  }
  return kExitOk;
}

int RunAnalyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.depth < 1) throw ConfigError("--depth: must be >= 1");
  if (opts.threshold_cp < 0) throw ConfigError("--threshold-cp: must be >= 0");
  const std::vector<fs::path> paths = FindTranscripts(opts.transcripts);
  if (paths.empty()) throw IoError("no transcripts under " + opts.transcripts);

  std::unique_ptr<analysis::PositionEvaluator> engine;
  auto get_engine = [&]() -> analysis::PositionEvaluator& {
    if (!engine) {
      if (opts.engine == "mock") {
        engine = std::make_unique<analysis::MaterialEvaluator>();
      } else {
        engine = std::make_unique<analysis::UciEngine>(opts.engine);
      }
    }
    return *engine;
  };

  analysis::ClassifyOptions classify;
  classify.depth = opts.depth;
  classify.threshold_cp = opts.threshold_cp;
  classify.max_plies = opts.max_plies;
  analysis::MoveQualityReport quality;
  quality.threshold_cp = opts.threshold_cp;
  std::map<std::string, analysis::ReasoningStat> reasoning;
  int chess_games = 0;
  for (const fs::path& path : paths) {
    const std::vector<TranscriptEvent> events = ReadTranscript(path);
    for (const auto& [id, s] : analysis::ReasoningStats(events)) {
      reasoning[id].outputs += s.outputs;
      reasoning[id].total_words += s.total_words;
    }
    if (!events.empty() && events.front().parsed.is_object() &&
        events.front().parsed.value("game", "") == "chess") {
      ++chess_games;
      quality.Merge(analysis::ClassifyMoves(events, get_engine(), classify));
    }
  }
  if (chess_games == 0) err << "no chess transcripts; move quality skipped\n";

  nlohmann::json j;
  j["transcripts"] = paths.size();
  j["chess_games"] = chess_games;
  j["engine"] = opts.engine;
  j["depth"] = opts.depth;
  j["move_quality"] = chess_games > 0 ? quality.ToJson() : nlohmann::json();
  j["reasoning"] = analysis::ReasoningStatsJson(reasoning);
  out << j.dump(2) << "\n";
  return kExitOk;
}

std::string OneLine(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '\n') {
      out += "\\n";
    } else if (c == '\r') {
      out += "\\r";
    } else {
      out += c;
    }
  }
  return out;
}

std::string RenderEvent(const TranscriptEvent& e) {
  std::ostringstream line;
  line << "#" << e.seq << " " << EventTypeName(e.event);
  switch (e.event) {
    case EventType::kGameStart:
      line << " " << e.parsed.value("game", "?") << " seed=" << e.parsed.value("seed", 0ULL);
      if (e.parsed.contains("players")) {
        for (const auto& p : e.parsed["players"]) {
          line << " " << p.value("role", "?") << "=" << p.value("player_id", "?");
        }
      }
      break;
    case EventType::kMoveAttempt:
    case EventType::kMoveAccepted:
    case EventType::kMoveRejected:
      line << " " << e.role.value_or("?") << " (" << e.player_id.value_or("?") << ") attempt "
           << e.attempt_index.value_or(0);
      if (e.raw_output) line << " raw=\"" << OneLine(*e.raw_output) << "\"";
      if (e.parsed.is_string()) line << " move=" << e.parsed.get<std::string>();
      if (e.error_code) line << " " << *e.error_code << ": " << OneLine(e.feedback.value_or(""));
      break;
    case EventType::kVerification:
      line << " " << e.role.value_or("?") << " passed=" << e.parsed.value("passed", false);
      break;
    case EventType::kGameEnd:
      line << " reason=" << e.parsed.value("reason", "?");
      if (e.parsed.contains("winner") && e.parsed["winner"].is_string()) {
        line << " winner=" << e.parsed["winner"].get<std::string>();
      } else {
        line << " winner=none";
      }
      if (e.scores) {
        for (const auto& [role, score] : *e.scores) line << " " << role << "=" << score;
      }
      break;
  }
  return line.str();
}

int RunReplay(const ReplayOptions& opts, std::ostream& out) {
  if (!fs::is_regular_file(opts.transcript)) {
    throw IoError("no such transcript: " + opts.transcript);
  }
  const std::vector<TranscriptEvent> events = ReadTranscript(opts.transcript);
  const bool chess = !events.empty() && events.front().parsed.is_object() &&
                     events.front().parsed.value("game", "") == "chess";
  for (const TranscriptEvent& e : events) {
    out << RenderEvent(e) << "\n";
    if (opts.boards && chess && e.state_view &&
        (e.event == EventType::kGameStart || e.event == EventType::kMoveAccepted)) {
      out << chess::RenderBoard(chess::ParseFen(*e.state_view).board) << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Run, rate and analyze games between language models"};
  app.name("arena");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  uint64_t seed_value = 0;
  CLI::Option* seed_option =
      app.add_option("--seed", seed_value, "Seed override for every random choice");

  PlayOptions play;
  CLI::App* play_cmd = app.add_subcommand("play", "Run one match");
  play_cmd->add_option("--config", play.config, "Config file")->required();
  play_cmd->add_option("--game", play.game, "Game name")->required();
  play_cmd->add_option("--p1", play.p1, "Model in the first seat")->required();
  play_cmd->add_option("--p2", play.p2, "Model in the second seat")->required();
  play_cmd->add_option("--out-dir", play.out_dir, "Transcript directory");
  play_cmd->add_option("--match-id", play.match_id, "Match id (default game-p1-vs-p2)");

  PoolOptions pool;
  CLI::App* pool_cmd = app.add_subcommand("pool", "Run a round-robin pool");
  pool_cmd->add_option("--config", pool.config, "Config file")->required();
  pool_cmd->add_option("--out-dir", pool.out_dir, "Output directory");

  RateOptions rate;
  CLI::App* rate_cmd = app.add_subcommand("rate", "Fit Bradley-Terry ratings");
  rate_cmd->add_option("--config", rate.config, "Config file for rating defaults");
  rate_cmd->add_option("--transcripts", rate.transcripts, "Transcript file or directory");
  rate_cmd->add_option("--results-csv", rate.results_csv, "Results CSV");
  rate_cmd->add_option("--bootstrap", rate.bootstrap, "Bootstrap resamples (0 disables)");
  rate_cmd->add_option("--confidence", rate.confidence, "Confidence level of the intervals");
  rate_cmd->add_option("--virtual-draws", rate.virtual_draws, "Virtual draws per pair");
  rate_cmd->add_flag("--include-aborted", rate.include_aborted,
                     "Count aborted matches as forfeits");
  rate_cmd->add_option("--format", rate.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  AnalyzeOptions analyze;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Move quality and reasoning length");
  analyze_cmd->add_option("--transcripts", analyze.transcripts, "Transcript file or directory")
      ->required();
  analyze_cmd->add_option("--engine", analyze.engine, "UCI engine path, or 'mock'");
  analyze_cmd->add_option("--depth", analyze.depth, "Search depth");
  analyze_cmd->add_option("--threshold-cp", analyze.threshold_cp, "Allowed drop in centipawns");
  analyze_cmd->add_option("--max-plies", analyze.max_plies, "Ignore moves past this ply");

  ReplayOptions replay;
  CLI::App* replay_cmd = app.add_subcommand("replay", "Print a transcript");
  replay_cmd->add_option("--transcript", replay.transcript, "Transcript file")->required();
  replay_cmd->add_flag("--boards", replay.boards, "Draw the board after chess moves");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }
  if (seed_option->count() > 0) global.seed = seed_value;

  try {
    if (play_cmd->parsed()) return RunPlay(global, play, out, err);
    if (pool_cmd->parsed()) return RunPoolCommand(global, pool, out, err);
    if (rate_cmd->parsed()) return RunRate(global, rate, out, err);
    if (analyze_cmd->parsed()) return RunAnalyze(analyze, out, err);
    if (replay_cmd->parsed()) return RunReplay(replay, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const ArenaError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}

}  // namespace arena::cli
