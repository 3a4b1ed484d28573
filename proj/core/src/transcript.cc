#include "arena/transcript.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "arena/text.h"

namespace arena {
namespace {

using OrderedJson = nlohmann::ordered_json;

constexpr std::array<std::string_view, 14> kKeys = {
    "match_id",   "seq",        "ts",         "event",         "role",
    "player_id",  "action",     "raw_output", "parsed",        "attempt_index",
    "error_code", "feedback",   "state_view", "scores",
};

template <typename T>
OrderedJson OrNull(const std::optional<T>& value) {
  if (!value) return nullptr;
  return *value;
}

std::optional<std::string> OptString(const nlohmann::json& obj, const char* key,
                                     size_t line) {
  const nlohmann::json& v = obj.at(key);
  if (v.is_null()) return std::nullopt;
  if (!v.is_string()) throw SchemaError(line, std::string(key) + " must be a string or null");
  return v.get<std::string>();
}

}  // namespace

std::string_view EventTypeName(EventType type) {
  switch (type) {
    case EventType::kGameStart: return "game_start";
    case EventType::kMoveAttempt: return "move_attempt";
    case EventType::kMoveAccepted: return "move_accepted";
    case EventType::kMoveRejected: return "move_rejected";
    case EventType::kVerification: return "verification";
    case EventType::kGameEnd: return "game_end";
  }
  return "unknown";
}

std::optional<EventType> ParseEventType(std::string_view name) {
  for (EventType t : {EventType::kGameStart, EventType::kMoveAttempt,
                      EventType::kMoveAccepted, EventType::kMoveRejected,
                      EventType::kVerification, EventType::kGameEnd}) {
    if (EventTypeName(t) == name) return t;
  }
  return std::nullopt;
}

SchemaError::SchemaError(size_t line, const std::string& reason)
    : ArenaError("transcript line " + std::to_string(line) + ": " + reason), line_(line) {}

std::string SerializeEvent(const TranscriptEvent& e) {
  OrderedJson j;
  j["match_id"] = e.match_id;
  j["seq"] = e.seq;
  j["ts"] = OrNull(e.ts);
  j["event"] = EventTypeName(e.event);
  j["role"] = OrNull(e.role);
  j["player_id"] = OrNull(e.player_id);
  j["action"] = OrNull(e.action);
  j["raw_output"] = OrNull(e.raw_output);
  // Round-trip through text keeps nested key order canonical (sorted).
  j["parsed"] = OrderedJson::parse(e.parsed.dump());
  j["attempt_index"] = OrNull(e.attempt_index);
  j["error_code"] = OrNull(e.error_code);
  j["feedback"] = OrNull(e.feedback);
  j["state_view"] = OrNull(e.state_view);
  if (e.scores) {
    OrderedJson scores = OrderedJson::object();
    for (const auto& [role, score] : *e.scores) scores[role] = score;
    j["scores"] = scores;
  } else {
    j["scores"] = nullptr;
  }
  return j.dump(-1, ' ', false, OrderedJson::error_handler_t::replace);
}

TranscriptEvent ParseEvent(std::string_view line, size_t line_number) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(line_number, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError(line_number, "event must be a JSON object");
  for (std::string_view key : kKeys) {
    if (!j.contains(std::string(key))) {
      throw SchemaError(line_number, "missing field " + std::string(key));
    }
  }
  for (const auto& [key, value] : j.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw SchemaError(line_number, "unknown field " + key);
    }
  }

  TranscriptEvent e;
  if (!j["match_id"].is_string()) throw SchemaError(line_number, "match_id must be a string");
  e.match_id = j["match_id"].get<std::string>();
  if (!j["seq"].is_number_integer()) throw SchemaError(line_number, "seq must be an integer");
  e.seq = j["seq"].get<int64_t>();
  if (!j["ts"].is_null()) {
    if (!j["ts"].is_number_integer()) {
      throw SchemaError(line_number, "ts must be an integer or null");
    }
    e.ts = j["ts"].get<int64_t>();
  }
  if (!j["event"].is_string()) throw SchemaError(line_number, "event must be a string");
  std::optional<EventType> type = ParseEventType(j["event"].get<std::string>());
  if (!type) {
    throw SchemaError(line_number, "unknown event type " + j["event"].get<std::string>());
  }
  e.event = *type;
  e.role = OptString(j, "role", line_number);
  e.player_id = OptString(j, "player_id", line_number);
  e.action = OptString(j, "action", line_number);
  e.raw_output = OptString(j, "raw_output", line_number);
  e.parsed = j["parsed"];
  if (!j["attempt_index"].is_null()) {
    if (!j["attempt_index"].is_number_integer()) {
      throw SchemaError(line_number, "attempt_index must be an integer or null");
    }
    e.attempt_index = j["attempt_index"].get<int>();
  }
  e.error_code = OptString(j, "error_code", line_number);
  e.feedback = OptString(j, "feedback", line_number);
  e.state_view = OptString(j, "state_view", line_number);
  if (!j["scores"].is_null()) {
    if (!j["scores"].is_object()) {
      throw SchemaError(line_number, "scores must be an object or null");
    }
    Scores scores;
    for (const auto& [role, value] : j["scores"].items()) {
      if (!value.is_number()) throw SchemaError(line_number, "score must be a number");
      scores[role] = value.get<double>();
    }
    e.scores = std::move(scores);
  }
  return e;
}

std::string SerializeTranscript(const std::vector<TranscriptEvent>& events) {
  std::string out;
  for (const TranscriptEvent& e : events) {
    out += SerializeEvent(e);
    out += '\n';
  }
  return out;
}

std::vector<TranscriptEvent> ParseTranscript(std::string_view text) {
  std::vector<TranscriptEvent> events;
  std::vector<std::string_view> lines = SplitLines(text);
  // A trailing newline leaves one empty final element.
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (size_t i = 0; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) throw SchemaError(i + 1, "empty line");
    events.push_back(ParseEvent(lines[i], i + 1));
  }
  return events;
}

void WriteTranscript(const std::filesystem::path& path,
                     const std::vector<TranscriptEvent>& events) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << SerializeTranscript(events);
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<TranscriptEvent> ReadTranscript(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseTranscript(buffer.str());
}

std::vector<std::filesystem::path> FindTranscripts(const std::filesystem::path& root) {
  std::error_code ec;
  if (!std::filesystem::exists(root, ec)) throw IoError("no such path: " + root.string());
  if (std::filesystem::is_regular_file(root, ec)) return {root};
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
      out.push_back(entry.path());
    }
  }
  if (ec) throw IoError("cannot list " + root.string() + ": " + ec.message());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TranscriptEvent> WithoutTimestamps(std::vector<TranscriptEvent> events) {
  for (TranscriptEvent& e : events) e.ts.reset();
  return events;
}

}  // namespace arena
