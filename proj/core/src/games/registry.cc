#include "arena/games/registry.h"

#include <set>

#include "arena/errors.h"
#include "arena/games/chess_game.h"
#include "arena/games/gandalf.h"
#include "arena/games/liars_dice.h"
#include "arena/games/math_quiz.h"

namespace arena {
namespace {

using Json = nlohmann::json;

void RequireKnownKeys(std::string_view game, const Json& options,
                      std::initializer_list<std::string_view> allowed) {
  if (!options.is_object()) {
    throw ConfigError(std::string(game) + ".params: must be an object");
  }
  for (const auto& [key, value] : options.items()) {
    bool known = false;
    for (std::string_view a : allowed) known = known || key == a;
    if (!known) {
      throw ConfigError(std::string(game) + ".params." + key + ": unknown option");
    }
  }
}

int PositiveInt(std::string_view game, const Json& options, const char* key, int fallback) {
  if (!options.contains(key)) return fallback;
  const Json& v = options.at(key);
  if (!v.is_number_integer() || v.get<int64_t>() < 1) {
    throw ConfigError(std::string(game) + ".params." + key + ": must be a positive integer");
  }
  return v.get<int>();
}

std::string StringOption(std::string_view game, const Json& options, const char* key,
                         std::string fallback) {
  if (!options.contains(key)) return fallback;
  if (!options.at(key).is_string()) {
    throw ConfigError(std::string(game) + ".params." + key + ": must be a string");
  }
  return options.at(key).get<std::string>();
}

std::unique_ptr<Game> Build(std::string_view name, const GameParams& params) {
  // A missing params section arrives as null.
  const Json options = params.options.is_null() ? Json::object() : params.options;
  if (name == "chess") {
    RequireKnownKeys(name, options, {"fen", "max_plies"});
    int max_plies = PositiveInt(name, options, "max_plies", ChessGame::kDefaultMaxPlies);
    if (params.max_turns) max_plies = *params.max_turns;
    const std::string fen =
        StringOption(name, options, "fen", std::string(chess::kInitialFen));
    try {
      return std::make_unique<ChessGame>(chess::ParseFen(fen), max_plies);
    } catch (const chess::FenError& e) {
      throw ConfigError("chess.params.fen: " + std::string(e.what()));
    }
  }
  if (name == "liars_dice") {
    RequireKnownKeys(name, options, {"dice_per_player"});
    return std::make_unique<LiarsDiceGame>(
        params.seed, PositiveInt(name, options, "dice_per_player",
                                 LiarsDiceGame::kDefaultDicePerPlayer));
  }
  if (name == "gandalf") {
    RequireKnownKeys(name, options, {"password", "max_turns", "reveal_mode"});
    int max_turns = PositiveInt(name, options, "max_turns", GandalfGame::kDefaultMaxTurns);
    if (params.max_turns) max_turns = *params.max_turns;
    const std::string mode_name = StringOption(name, options, "reveal_mode", "substring");
    std::optional<RevealMode> mode = ParseRevealMode(mode_name);
    if (!mode) {
      throw ConfigError("gandalf.params.reveal_mode: expected substring, word or exact");
    }
    if (options.contains("password")) {
      return std::make_unique<GandalfGame>(StringOption(name, options, "password", ""),
                                           max_turns, *mode);
    }
    return std::make_unique<GandalfGame>(params.seed, max_turns, *mode);
  }
  if (name == "mathquiz") {
    RequireKnownKeys(name, options, {"target", "target_min", "target_max"});
    if (options.contains("target")) {
      const Json& t = options.at("target");
      std::optional<Rational> target;
      if (t.is_number_integer()) target = Rational(t.get<int64_t>());
      if (t.is_string()) target = Rational::Parse(t.get<std::string>());
      if (!target) {
        throw ConfigError("mathquiz.params.target: expected an integer or \"a/b\"");
      }
      return std::make_unique<MathQuizGame>(*target);
    }
    TargetSpec spec;
    spec.seed = params.seed;
    for (const char* key : {"target_min", "target_max"}) {
      if (options.contains(key) && !options.at(key).is_number_integer()) {
        throw ConfigError(std::string("mathquiz.params.") + key + ": must be an integer");
      }
    }
    spec.min = options.value("target_min", spec.min);
    spec.max = options.value("target_max", spec.max);
    if (spec.min > spec.max) {
      throw ConfigError("mathquiz.params.target_min: must not exceed target_max");
    }
    return std::make_unique<MathQuizGame>(spec);
  }
  throw ConfigError("unknown game '" + std::string(name) + "'");
}

}  // namespace

std::unique_ptr<Game> MakeGame(std::string_view name, const GameParams& params) {
  return Build(name, params);
}

void ValidateGameOptions(std::string_view name, const Json& options) {
  GameParams params;
  params.options = options;
  Build(name, params);
}

const std::vector<std::string>& KnownGames() {
  static const std::vector<std::string> kGames = {"chess", "gandalf", "liars_dice",
                                                  "mathquiz"};
  return kGames;
}

}  // namespace arena
