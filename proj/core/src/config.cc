#include "arena/config.h"

#include <fstream>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>

#include "arena/games/registry.h"

namespace arena {
namespace {

using Json = nlohmann::json;

// A JSON object together with its path from the document root.
class Node {
 public:
  Node(const Json& json, std::string path) : json_(json), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const Json& json() const { return json_; }

  void ExpectObject(std::initializer_list<std::string_view> allowed) const {
    if (!json_.is_object()) Fail("must be an object");
    for (const auto& [key, value] : json_.items()) {
      bool known = false;
      for (std::string_view a : allowed) known = known || a == key;
      if (!known) throw ConfigError(Child(key) + ": unknown field");
    }
  }

  bool Has(const std::string& key) const { return json_.contains(key) && !json_[key].is_null(); }

  Node At(const std::string& key) const { return Node(json_.at(key), Child(key)); }

  std::string String(const std::string& key, std::optional<std::string> fallback) const {
    if (!Has(key)) {
      if (!fallback) throw ConfigError(Child(key) + ": required");
      return *fallback;
    }
    const Json& v = json_[key];
    if (!v.is_string()) throw ConfigError(Child(key) + ": must be a string");
    return v.get<std::string>();
  }

  int Int(const std::string& key, int fallback, int min_value) const {
    if (!Has(key)) return fallback;
    const Json& v = json_[key];
    if (!v.is_number_integer() || v.get<int64_t>() < min_value ||
        v.get<int64_t>() > std::numeric_limits<int>::max()) {
      throw ConfigError(Child(key) + ": must be an integer >= " + std::to_string(min_value));
    }
    return v.get<int>();
  }

  uint64_t Seed(const std::string& key, uint64_t fallback) const {
    if (!Has(key)) return fallback;
    const Json& v = json_[key];
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<int64_t>() >= 0)) {
      throw ConfigError(Child(key) + ": must be a non-negative integer");
    }
    return v.get<uint64_t>();
  }

  double Double(const std::string& key, double fallback, double lo, double hi) const {
    if (!Has(key)) return fallback;
    const Json& v = json_[key];
    if (!v.is_number() || v.get<double>() < lo || v.get<double>() > hi) {
      std::ostringstream msg;
      msg << Child(key) << ": must be a number in [" << lo << ", " << hi << "]";
      throw ConfigError(msg.str());
    }
    return v.get<double>();
  }

  bool Bool(const std::string& key, bool fallback) const {
    if (!Has(key)) return fallback;
    const Json& v = json_[key];
    if (!v.is_boolean()) throw ConfigError(Child(key) + ": must be true or false");
    return v.get<bool>();
  }

  std::vector<std::string> StringList(const std::string& key) const {
    if (!Has(key)) return {};
    const Json& v = json_[key];
    if (!v.is_array()) throw ConfigError(Child(key) + ": must be an array of strings");
    std::vector<std::string> out;
    for (size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_string()) {
        throw ConfigError(Child(key) + "[" + std::to_string(i) + "]: must be a string");
      }
      out.push_back(v[i].get<std::string>());
    }
    return out;
  }

  [[noreturn]] void Fail(const std::string& reason) const {
    throw ConfigError(path_ + ": " + reason);
  }

 private:
  std::string Child(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const Json& json_;
  std::string path_;
};

AttemptPolicy ParsePolicy(const Node& node, const AttemptPolicy& fallback) {
  AttemptPolicy policy;
  policy.max_attempts = node.Int("max_attempts", fallback.max_attempts, 1);
  policy.include_prior_feedback =
      node.Bool("include_prior_feedback", fallback.include_prior_feedback);
  return policy;
}

ModelSpec ParseModel(const Node& node, const AttemptPolicy& default_policy) {
  node.ExpectObject({"name", "backend", "endpoint", "model", "api_key_env", "temperature",
                     "max_tokens", "seed", "heuristic", "moves", "moves_by_role",
                     "max_attempts", "include_prior_feedback"});
  ModelSpec spec;
  spec.name = node.String("name", std::nullopt);
  if (!IsValidName(spec.name)) {
    throw ConfigError(node.path() + ".name: must match [A-Za-z0-9_.-]+");
  }
  const std::string backend = node.String("backend", "remote");
  spec.attempt_policy = ParsePolicy(node, default_policy);
  auto reject = [&](std::initializer_list<const char*> keys) {
    for (const char* key : keys) {
      if (node.Has(key)) {
        throw ConfigError(node.path() + "." + key + ": not used by the " + backend +
                          " backend");
      }
    }
  };
  if (backend == "remote") {
    reject({"seed", "heuristic", "moves", "moves_by_role"});
    RemoteBackend remote;
    remote.endpoint = node.String("endpoint", std::nullopt);
    if (!remote.endpoint.starts_with("http://") && !remote.endpoint.starts_with("https://")) {
      throw ConfigError(node.path() + ".endpoint: must be an absolute http(s) URL");
    }
    remote.model = node.String("model", spec.name);
    remote.api_key_env = node.String("api_key_env", "");
    remote.temperature = node.Double("temperature", 0.0, 0.0, 2.0);
    remote.max_tokens = node.Int("max_tokens", 1024, 1);
    spec.backend = remote;
  } else if (backend == "random") {
    reject({"endpoint", "model", "api_key_env", "temperature", "max_tokens", "heuristic",
            "moves", "moves_by_role"});
    spec.backend = RandomBackend{node.Seed("seed", 0)};
  } else if (backend == "heuristic") {
    reject({"endpoint", "model", "api_key_env", "temperature", "max_tokens", "moves",
            "moves_by_role"});
    HeuristicBackend h;
    h.name = node.String("heuristic", "greedy-material");
    if (h.name != "greedy-material") {
      throw ConfigError(node.path() + ".heuristic: unknown heuristic '" + h.name + "'");
    }
    h.seed = node.Seed("seed", 0);
    spec.backend = h;
  } else if (backend == "scripted") {
    reject({"endpoint", "model", "api_key_env", "temperature", "max_tokens", "heuristic",
            "seed"});
    ScriptedBackend script;
    script.moves = node.StringList("moves");
    if (node.Has("moves_by_role")) {
      const Node by_role = node.At("moves_by_role");
      if (!by_role.json().is_object()) by_role.Fail("must be an object");
      for (const auto& [role, moves] : by_role.json().items()) {
        script.moves_by_role[role] = by_role.StringList(role);
      }
    }
    spec.backend = script;
  } else {
    throw ConfigError(node.path() +
                      ".backend: expected remote, random, heuristic or scripted");
  }
  return spec;
}

GameSpec ParseGame(const Node& node) {
  node.ExpectObject({"name", "params", "max_turns"});
  GameSpec spec;
  spec.name = node.String("name", std::nullopt);
  const std::vector<std::string>& known = KnownGames();
  if (std::find(known.begin(), known.end(), spec.name) == known.end()) {
    throw ConfigError(node.path() + ".name: unknown game '" + spec.name + "'");
  }
  if (node.Has("max_turns")) spec.max_turns = node.Int("max_turns", 0, 1);
  if (node.Has("params")) {
    spec.options = node.At("params").json();
    try {
      ValidateGameOptions(spec.name, spec.options);
    } catch (const ConfigError& e) {
      std::string msg = e.what();
      const std::string prefix = spec.name + ".";
      if (msg.starts_with(prefix)) msg = node.path() + "." + msg.substr(prefix.size());
      throw ConfigError(msg);
    }
  }
  return spec;
}

}  // namespace

const ModelSpec* RootConfig::FindModel(const std::string& name) const {
  for (const ModelSpec& m : models) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

const GameSpec* RootConfig::FindGame(const std::string& name) const {
  for (const GameSpec& g : games) {
    if (g.name == name) return &g;
  }
  return nullptr;
}

PoolConfig RootConfig::ToPoolConfig() const {
  PoolConfig config;
  config.pool_id = pool.pool_id;
  config.models = models;
  config.games = games;
  config.games_per_ordered_pair = pool.games_per_ordered_pair;
  config.max_parallel = pool.max_parallel;
  config.seed = pool.seed;
  return config;
}

RootConfig ParseRootConfig(const Json& json) {
  const Node root(json, "");
  if (!json.is_object()) throw ConfigError("config: must be a JSON object");
  root.ExpectObject({"models", "games", "pool", "player", "rating", "transport"});

  RootConfig config;
  if (root.Has("player")) {
    const Node player = root.At("player");
    player.ExpectObject({"max_attempts", "include_prior_feedback"});
    config.player = ParsePolicy(player, AttemptPolicy{});
  }

  if (root.Has("models")) {
    if (!json["models"].is_array()) throw ConfigError("models: must be an array");
    std::set<std::string> names;
    for (size_t i = 0; i < json["models"].size(); ++i) {
      const Node node(json["models"][i], "models[" + std::to_string(i) + "]");
      ModelSpec model = ParseModel(node, config.player);
      if (!names.insert(model.name).second) {
        throw ConfigError(node.path() + ".name: duplicate model name '" + model.name + "'");
      }
      config.models.push_back(std::move(model));
    }
  }

  if (root.Has("games")) {
    if (!json["games"].is_array()) throw ConfigError("games: must be an array");
    std::set<std::string> names;
    for (size_t i = 0; i < json["games"].size(); ++i) {
      const std::string path = "games[" + std::to_string(i) + "]";
      const Node node(json["games"][i], path);
      GameSpec game = ParseGame(node);
      if (!names.insert(game.name).second) {
        throw ConfigError(path + ".name: game '" + game.name + "' listed twice");
      }
      config.games.push_back(std::move(game));
    }
  }

  if (root.Has("pool")) {
    const Node pool = root.At("pool");
    pool.ExpectObject({"pool_id", "games_per_ordered_pair", "max_parallel", "seed"});
    config.pool.pool_id = pool.String("pool_id", config.pool.pool_id);
    if (!IsValidName(config.pool.pool_id)) {
      throw ConfigError("pool.pool_id: must match [A-Za-z0-9_.-]+");
    }
    config.pool.games_per_ordered_pair = pool.Int("games_per_ordered_pair", 1, 1);
    config.pool.max_parallel = pool.Int("max_parallel", 4, 1);
    config.pool.seed = pool.Seed("seed", 0);
  }

  if (root.Has("rating")) {
    const Node rating = root.At("rating");
    rating.ExpectObject({"virtual_draws", "bootstrap_resamples", "confidence", "seed"});
    config.rating.virtual_draws = rating.Double("virtual_draws", 1.0, 0.0, 1e6);
    config.rating.bootstrap_resamples = rating.Int("bootstrap_resamples", 0, 0);
    config.rating.confidence = rating.Double("confidence", 0.95, 1e-9, 1.0 - 1e-9);
    config.rating.seed = rating.Seed("seed", 0);
  }

  if (root.Has("transport")) {
    const Node transport = root.At("transport");
    transport.ExpectObject({"max_tries", "initial_backoff_ms", "timeout_s"});
    config.transport.max_tries = transport.Int("max_tries", 3, 1);
    config.transport.initial_backoff =
        std::chrono::milliseconds(transport.Int("initial_backoff_ms", 500, 0));
    config.transport.timeout = std::chrono::seconds(transport.Int("timeout_s", 120, 1));
  }
  return config;
}

RootConfig LoadRootConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  Json json;
  try {
    json = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config: invalid JSON in " + path.string() + ": " + e.what());
  }
  return ParseRootConfig(json);
}

}  // namespace arena
