#ifndef ARENA_TRANSCRIPT_H_
#define ARENA_TRANSCRIPT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "arena/errors.h"
#include "arena/types.h"

namespace arena {

enum class EventType {
  kGameStart,
  // An attempt that produced no move at all (the backend failed).
  kMoveAttempt,
  kMoveAccepted,
  kMoveRejected,
  kVerification,
  kGameEnd,
};

std::string_view EventTypeName(EventType type);
std::optional<EventType> ParseEventType(std::string_view name);

// One line of a match transcript. Fields a given event does not use are
// nullopt / null and serialize as JSON null.
struct TranscriptEvent {
  std::string match_id;
  int64_t seq = 0;
  // Milliseconds since the Unix epoch; excluded from replay comparisons.
  std::optional<int64_t> ts;
  EventType event = EventType::kGameStart;
  std::optional<std::string> role;
  std::optional<std::string> player_id;
  std::optional<std::string> action;
  std::optional<std::string> raw_output;
  nlohmann::json parsed;
  std::optional<int> attempt_index;
  std::optional<std::string> error_code;
  std::optional<std::string> feedback;
  std::optional<std::string> state_view;
  std::optional<Scores> scores;

  friend bool operator==(const TranscriptEvent&, const TranscriptEvent&) = default;
};

class SchemaError : public ArenaError {
 public:
  SchemaError(size_t line, const std::string& reason);
  size_t line() const { return line_; }

 private:
  size_t line_;
};

// Canonical single-line JSON with keys in schema order and no trailing
// newline. Invalid UTF-8 in model output is replaced, not rejected.
std::string SerializeEvent(const TranscriptEvent& event);

// `line_number` is 1-based and only used for error reporting.
TranscriptEvent ParseEvent(std::string_view line, size_t line_number);

std::string SerializeTranscript(const std::vector<TranscriptEvent>& events);
std::vector<TranscriptEvent> ParseTranscript(std::string_view text);

// Creates parent directories. Throws IoError.
void WriteTranscript(const std::filesystem::path& path,
                     const std::vector<TranscriptEvent>& events);
// Throws IoError or SchemaError.
std::vector<TranscriptEvent> ReadTranscript(const std::filesystem::path& path);

// All *.jsonl files under `root` (or `root` itself if it is a file), sorted.
std::vector<std::filesystem::path> FindTranscripts(const std::filesystem::path& root);

// Copy of `events` with timestamps cleared, for replay comparisons.
std::vector<TranscriptEvent> WithoutTimestamps(std::vector<TranscriptEvent> events);

}  // namespace arena

#endif  // ARENA_TRANSCRIPT_H_
