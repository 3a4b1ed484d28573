#ifndef ARENA_PLAYERS_CHAT_CLIENT_H_
#define ARENA_PLAYERS_CHAT_CLIENT_H_

#include <string>

#include <nlohmann/json.hpp>

#include "arena/players/player.h"

namespace arena {

struct ChatMessage {
  std::string role;
  std::string content;
};

// Minimal client for POST {endpoint}/chat/completions.
class ChatClient {
 public:
  // Throws ConfigError if the endpoint is not an absolute http(s) URL.
  ChatClient(RemoteBackend backend, TransportOptions transport = {});

  // Returns choices[0].message.content. Retries transport failures and
  // non-2xx responses with exponential backoff, then throws
  // BackendUnavailable.
  std::string Complete(const std::vector<ChatMessage>& messages) const;

  nlohmann::json RequestBody(const std::vector<ChatMessage>& messages) const;

 private:
  RemoteBackend backend_;
  TransportOptions transport_;
  std::string scheme_host_port_;
  std::string base_path_;
};

struct ParsedUrl {
  std::string scheme;
  std::string host_port;
  std::string path;
};

// Parses "http(s)://host[:port][/path]"; nullopt otherwise.
std::optional<ParsedUrl> ParseEndpointUrl(std::string_view url);

}  // namespace arena

#endif  // ARENA_PLAYERS_CHAT_CLIENT_H_
