#ifndef ARENA_RATING_H_
#define ARENA_RATING_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "arena/errors.h"

namespace arena {

enum class Outcome { kAWins, kBWins, kDraw };

std::string_view OutcomeName(Outcome outcome);
std::optional<Outcome> ParseOutcome(std::string_view name);

struct OutcomeRecord {
  std::string player_a;
  std::string player_b;
  Outcome result = Outcome::kDraw;

  friend bool operator==(const OutcomeRecord&, const OutcomeRecord&) = default;
};

class ConvergenceError : public ArenaError {
 public:
  using ArenaError::ArenaError;
};

class EmptyInput : public ArenaError {
 public:
  using ArenaError::ArenaError;
};

struct FitOptions {
  // Virtual draws added for every unordered pair of models.
  double virtual_draws = 1.0;
  double tolerance = 1e-10;
  int max_iterations = 10000;
};

// Bradley-Terry strengths by minorization-maximization, normalized to
// geometric mean 1. Draws count as half a win for each side. `models` adds
// models that may be absent from `records` (they still receive virtual
// draws). Throws EmptyInput, ConvergenceError or ContractError (a record of a
// model against itself).
std::map<std::string, double> FitBt(const std::vector<OutcomeRecord>& records,
                                    const FitOptions& options = {},
                                    const std::vector<std::string>& models = {});

// max_i |pi_i - W_i / sum_j n_ij / (pi_i + pi_j)| for the given strengths.
double StationarityResidual(const std::vector<OutcomeRecord>& records,
                            const std::map<std::string, double>& strengths,
                            double virtual_draws);

struct RatingRow {
  std::string model;
  double strength = 1.0;
  double rating = 1000.0;
  std::optional<double> ci_low;
  std::optional<double> ci_high;
};

// rating = 1000 + 400 * log10(strength / geometric mean), in model order.
std::vector<RatingRow> ToRatings(const std::map<std::string, double>& strengths);

struct BootstrapOptions {
  int resamples = 1000;
  double confidence = 0.95;
  uint64_t seed = 0;
  FitOptions fit;
};

struct BootstrapResult {
  std::map<std::string, std::pair<double, double>> intervals;
  // Resamples whose fit failed and were redrawn.
  int failed_resamples = 0;
};

// Percentile intervals of the rating of every model over game-level
// resamples with replacement. A failed fit is redrawn from the next
// substream; more than 1% failures is a ConvergenceError.
BootstrapResult BootstrapCi(const std::vector<OutcomeRecord>& records,
                            const BootstrapOptions& options = {});

// Linear-interpolation percentile of sorted `values`, q in [0, 1].
double Percentile(const std::vector<double>& sorted_values, double q);

// Sorted by rating descending, then by model name.
std::vector<RatingRow> Leaderboard(std::vector<RatingRow> rows);
nlohmann::json LeaderboardJson(const std::vector<RatingRow>& rows);
std::string LeaderboardCsv(const std::vector<RatingRow>& rows, bool with_ci);

struct RecordExtraction {
  std::vector<OutcomeRecord> records;
  int aborted_skipped = 0;
};

// One record per finished match transcript under `root`. The first seat is
// player_a. Aborted matches are skipped unless `aborted_as_forfeits`, in
// which case the player whose backend failed loses.
RecordExtraction RecordsFromTranscripts(const std::filesystem::path& root,
                                        bool aborted_as_forfeits = false);

// Accepts per-game rows (model_a,model_b,result with result one of a_wins,
// b_wins, draw) or the pool's aggregate rows
// (model_a,model_b,wins_a,wins_b,draws,aborted). Throws ConfigError.
std::vector<OutcomeRecord> RecordsFromCsv(std::string_view csv_text);

}  // namespace arena

#endif  // ARENA_RATING_H_
