#include "arena/rating.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "arena/random.h"
#include "arena/text.h"
#include "arena/transcript.h"

namespace arena {
namespace {

struct Tallies {
  std::vector<std::string> names;
  std::vector<double> wins;
  // Row-major games-played matrix, including virtual draws.
  std::vector<double> games;

  size_t size() const { return names.size(); }
  double n(size_t i, size_t j) const { return games[i * names.size() + j]; }
};

Tallies Tally(const std::vector<OutcomeRecord>& records, double virtual_draws,
              const std::vector<std::string>& extra_models) {
  std::set<std::string> names(extra_models.begin(), extra_models.end());
  for (const OutcomeRecord& r : records) {
    if (r.player_a == r.player_b) {
      throw ContractError("record of " + r.player_a + " against itself");
    }
    names.insert(r.player_a);
    names.insert(r.player_b);
  }
  Tallies t;
  t.names.assign(names.begin(), names.end());
  const size_t m = t.size();
  t.wins.assign(m, 0.0);
  t.games.assign(m * m, 0.0);
  auto index = [&](const std::string& name) {
    return static_cast<size_t>(
        std::lower_bound(t.names.begin(), t.names.end(), name) - t.names.begin());
  };
  for (const OutcomeRecord& r : records) {
    const size_t a = index(r.player_a);
    const size_t b = index(r.player_b);
    t.games[a * m + b] += 1.0;
    t.games[b * m + a] += 1.0;
    switch (r.result) {
      case Outcome::kAWins: t.wins[a] += 1.0; break;
      case Outcome::kBWins: t.wins[b] += 1.0; break;
      case Outcome::kDraw:
        t.wins[a] += 0.5;
        t.wins[b] += 0.5;
        break;
    }
  }
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      t.games[i * m + j] += virtual_draws;
      t.wins[i] += virtual_draws / 2.0;
    }
  }
  return t;
}

// One minorization-maximization step (unnormalized).
std::vector<double> MmStep(const Tallies& t, const std::vector<double>& pi) {
  std::vector<double> next(t.size());
  for (size_t i = 0; i < t.size(); ++i) {
    double denom = 0.0;
    for (size_t j = 0; j < t.size(); ++j) {
      if (i != j && t.n(i, j) > 0) denom += t.n(i, j) / (pi[i] + pi[j]);
    }
    next[i] = denom > 0 ? t.wins[i] / denom : pi[i];
  }
  return next;
}

void NormalizeGeometric(std::vector<double>& pi) {
  double log_sum = 0.0;
  for (double p : pi) log_sum += std::log(p);
  const double scale = std::exp(-log_sum / static_cast<double>(pi.size()));
  for (double& p : pi) p *= scale;
}

}  // namespace

std::string_view OutcomeName(Outcome outcome) {
  switch (outcome) {
    case Outcome::kAWins: return "a_wins";
    case Outcome::kBWins: return "b_wins";
    case Outcome::kDraw: return "draw";
  }
  return "draw";
}

std::optional<Outcome> ParseOutcome(std::string_view name) {
  for (Outcome o : {Outcome::kAWins, Outcome::kBWins, Outcome::kDraw}) {
    if (OutcomeName(o) == name) return o;
  }
  return std::nullopt;
}

std::map<std::string, double> FitBt(const std::vector<OutcomeRecord>& records,
                                    const FitOptions& options,
                                    const std::vector<std::string>& models) {
  if (records.empty()) throw EmptyInput("no game records to fit");
  if (options.virtual_draws < 0) throw ConfigError("virtual_draws must be >= 0");
  const Tallies t = Tally(records, options.virtual_draws, models);
  for (size_t i = 0; i < t.size(); ++i) {
    if (t.wins[i] <= 0.0) {
      throw ConvergenceError("model " + t.names[i] +
                             " has no wins or draws; its strength is not finite");
    }
  }

  std::vector<double> pi(t.size(), 1.0);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    std::vector<double> next = MmStep(t, pi);
    NormalizeGeometric(next);
    double change = 0.0;
    for (size_t i = 0; i < pi.size(); ++i) {
      change = std::max(change, std::abs(next[i] - pi[i]) / pi[i]);
    }
    pi = std::move(next);
    if (!std::isfinite(change)) break;
    if (change < options.tolerance) {
      std::map<std::string, double> out;
      for (size_t i = 0; i < t.size(); ++i) out[t.names[i]] = pi[i];
      return out;
    }
  }
  throw ConvergenceError("Bradley-Terry fit did not converge in " +
                         std::to_string(options.max_iterations) + " iterations");
}

double StationarityResidual(const std::vector<OutcomeRecord>& records,
                            const std::map<std::string, double>& strengths,
                            double virtual_draws) {
  std::vector<std::string> models;
  for (const auto& [name, p] : strengths) models.push_back(name);
  const Tallies t = Tally(records, virtual_draws, models);
  std::vector<double> pi(t.size());
  for (size_t i = 0; i < t.size(); ++i) pi[i] = strengths.at(t.names[i]);
  const std::vector<double> next = MmStep(t, pi);
  double residual = 0.0;
  for (size_t i = 0; i < pi.size(); ++i) residual = std::max(residual, std::abs(pi[i] - next[i]));
  return residual;
}

std::vector<RatingRow> ToRatings(const std::map<std::string, double>& strengths) {
  double log_sum = 0.0;
  for (const auto& [name, p] : strengths) log_sum += std::log10(p);
  const double log_mean = strengths.empty() ? 0.0 : log_sum / strengths.size();
  std::vector<RatingRow> rows;
  for (const auto& [name, p] : strengths) {
    RatingRow row;
    row.model = name;
    row.strength = p;
    row.rating = 1000.0 + 400.0 * (std::log10(p) - log_mean);
    rows.push_back(row);
  }
  return rows;
}

double Percentile(const std::vector<double>& sorted_values, double q) {
  if (sorted_values.empty()) throw EmptyInput("percentile of an empty sample");
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(sorted_values.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, sorted_values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted_values[lo] + frac * (sorted_values[hi] - sorted_values[lo]);
}

BootstrapResult BootstrapCi(const std::vector<OutcomeRecord>& records,
                            const BootstrapOptions& options) {
  if (options.resamples < 1) throw ConfigError("bootstrap resamples must be >= 1");
  if (!(options.confidence > 0.0 && options.confidence < 1.0)) {
    throw ConfigError("confidence must be in (0, 1)");
  }
  if (records.empty()) throw EmptyInput("no game records to bootstrap");

  std::set<std::string> name_set;
  for (const OutcomeRecord& r : records) {
    name_set.insert(r.player_a);
    name_set.insert(r.player_b);
  }
  const std::vector<std::string> models(name_set.begin(), name_set.end());
  const int max_failures = options.resamples / 100;

  BootstrapResult result;
  std::map<std::string, std::vector<double>> samples;
  uint64_t stream = 0;
  std::vector<OutcomeRecord> resample(records.size());
  for (int done = 0; done < options.resamples;) {
    Rng rng(DeriveSeed({options.seed, stream++}));
    for (OutcomeRecord& r : resample) r = records[rng.Uniform(records.size())];
    try {
      for (const RatingRow& row : ToRatings(FitBt(resample, options.fit, models))) {
        samples[row.model].push_back(row.rating);
      }
      ++done;
    } catch (const ConvergenceError&) {
      if (++result.failed_resamples > max_failures) {
        throw ConvergenceError("bootstrap: " + std::to_string(result.failed_resamples) +
                               " resample fits failed, more than 1% of " +
                               std::to_string(options.resamples));
      }
    }
  }
  const double lo_q = (1.0 - options.confidence) / 2.0;
  const double hi_q = (1.0 + options.confidence) / 2.0;
  for (auto& [name, values] : samples) {
    std::sort(values.begin(), values.end());
    result.intervals[name] = {Percentile(values, lo_q), Percentile(values, hi_q)};
  }
  return result;
}

std::vector<RatingRow> Leaderboard(std::vector<RatingRow> rows) {
  std::sort(rows.begin(), rows.end(), [](const RatingRow& a, const RatingRow& b) {
    if (a.rating != b.rating) return a.rating > b.rating;
    return a.model < b.model;
  });
  return rows;
}

nlohmann::json LeaderboardJson(const std::vector<RatingRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const RatingRow& row : rows) {
    nlohmann::json j = {{"model", row.model}, {"rating", row.rating}, {"strength", row.strength}};
    if (row.ci_low && row.ci_high) {
      j["ci_low"] = *row.ci_low;
      j["ci_high"] = *row.ci_high;
    }
    out.push_back(j);
  }
  return out;
}

std::string LeaderboardCsv(const std::vector<RatingRow>& rows, bool with_ci) {
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return std::string(buf);
  };
  std::string out = with_ci ? "model,rating,strength,ci_low,ci_high\n" : "model,rating,strength\n";
  for (const RatingRow& row : rows) {
    out += row.model + "," + fmt(row.rating) + "," + fmt(row.strength);
    if (with_ci) {
      out += "," + (row.ci_low ? fmt(*row.ci_low) : "") + "," +
             (row.ci_high ? fmt(*row.ci_high) : "");
    }
    out += "\n";
  }
  return out;
}

RecordExtraction RecordsFromTranscripts(const std::filesystem::path& root,
                                        bool aborted_as_forfeits) {
  RecordExtraction out;
  for (const std::filesystem::path& path : FindTranscripts(root)) {
    const std::vector<TranscriptEvent> events = ReadTranscript(path);
    const TranscriptEvent* start = nullptr;
    const TranscriptEvent* end = nullptr;
    std::optional<std::string> failed_player;
    for (const TranscriptEvent& e : events) {
      if (e.event == EventType::kGameStart) start = &e;
      if (e.event == EventType::kGameEnd) end = &e;
      if (e.event == EventType::kMoveAttempt && e.error_code == "backend-unavailable") {
        failed_player = e.player_id;
      }
    }
    if (start == nullptr || end == nullptr) {
      throw SchemaError(events.size(), path.string() + ": transcript lacks game_start or game_end");
    }
    const nlohmann::json& players = start->parsed.value("players", nlohmann::json::array());
    if (!players.is_array() || players.size() != 2) {
      throw SchemaError(1, path.string() + ": game_start must list two players");
    }
    OutcomeRecord rec;
    std::string role_a;
    std::string role_b;
    try {
      role_a = players[0].at("role").get<std::string>();
      role_b = players[1].at("role").get<std::string>();
      rec.player_a = players[0].at("player_id").get<std::string>();
      rec.player_b = players[1].at("player_id").get<std::string>();
    } catch (const nlohmann::json::exception&) {
      throw SchemaError(1, path.string() + ": malformed players in game_start");
    }
    const bool aborted = end->parsed.is_object() && end->parsed.value("aborted", false);
    if (aborted) {
      if (!aborted_as_forfeits || !failed_player) {
        ++out.aborted_skipped;
        continue;
      }
      rec.result = *failed_player == rec.player_a ? Outcome::kBWins : Outcome::kAWins;
      out.records.push_back(rec);
      continue;
    }
    if (!end->scores || !end->scores->count(role_a) || !end->scores->count(role_b)) {
      throw SchemaError(events.size(), path.string() + ": game_end lacks scores");
    }
    const double sa = end->scores->at(role_a);
    const double sb = end->scores->at(role_b);
    rec.result = sa > sb ? Outcome::kAWins : sb > sa ? Outcome::kBWins : Outcome::kDraw;
    out.records.push_back(rec);
  }
  return out;
}

std::vector<OutcomeRecord> RecordsFromCsv(std::string_view csv_text) {
  std::vector<std::vector<std::string>> rows;
  for (std::string_view line : SplitLines(csv_text)) {
    if (Trim(line).empty()) continue;
    std::vector<std::string> fields;
    size_t start = 0;
    for (;;) {
      const size_t comma = line.find(',', start);
      fields.emplace_back(Trim(line.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) throw ConfigError("results csv: empty input");
  const std::vector<std::string>& header = rows[0];
  auto column = [&](const std::string& name) -> std::optional<size_t> {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<size_t>(it - header.begin());
  };
  const auto col_a = column("model_a");
  const auto col_b = column("model_b");
  if (!col_a || !col_b) throw ConfigError("results csv: header needs model_a and model_b");
  const auto col_result = column("result");
  const auto col_wa = column("wins_a");
  const auto col_wb = column("wins_b");
  const auto col_d = column("draws");
  if (!col_result && !(col_wa && col_wb && col_d)) {
    throw ConfigError("results csv: header needs result or wins_a, wins_b and draws");
  }

  auto count = [](const std::string& text, size_t line) {
    try {
      size_t used = 0;
      const int v = std::stoi(text, &used);
      if (used != text.size() || v < 0) throw std::invalid_argument(text);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("results csv line " + std::to_string(line) + ": bad count '" + text + "'");
    }
  };

  std::vector<OutcomeRecord> records;
  for (size_t r = 1; r < rows.size(); ++r) {
    const std::vector<std::string>& row = rows[r];
    if (row.size() != header.size()) {
      throw ConfigError("results csv line " + std::to_string(r + 1) + ": expected " +
                        std::to_string(header.size()) + " fields");
    }
    const std::string& a = row[*col_a];
    const std::string& b = row[*col_b];
    if (a.empty() || b.empty() || a == b) {
      throw ConfigError("results csv line " + std::to_string(r + 1) + ": bad model pair");
    }
    if (col_result) {
      std::optional<Outcome> o = ParseOutcome(row[*col_result]);
      if (!o) {
        throw ConfigError("results csv line " + std::to_string(r + 1) + ": result must be "
                          "a_wins, b_wins or draw");
      }
      records.push_back({a, b, *o});
      continue;
    }
    const int wa = count(row[*col_wa], r + 1);
    const int wb = count(row[*col_wb], r + 1);
    const int d = count(row[*col_d], r + 1);
    for (int i = 0; i < wa; ++i) records.push_back({a, b, Outcome::kAWins});
    for (int i = 0; i < wb; ++i) records.push_back({a, b, Outcome::kBWins});
    for (int i = 0; i < d; ++i) records.push_back({a, b, Outcome::kDraw});
  }
  return records;
}

}  // namespace arena
