#include "arena/players/chat_client.h"

#include <cstdlib>
#include <thread>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

namespace arena {

std::optional<ParsedUrl> ParseEndpointUrl(std::string_view url) {
  ParsedUrl out;
  if (url.starts_with("http://")) {
    out.scheme = "http";
    url.remove_prefix(7);
  } else if (url.starts_with("https://")) {
    out.scheme = "https";
    url.remove_prefix(8);
  } else {
    return std::nullopt;
  }
  const size_t slash = url.find('/');
  out.host_port = std::string(url.substr(0, slash));
  if (out.host_port.empty() || out.host_port.find(' ') != std::string::npos) {
    return std::nullopt;
  }
  out.path = slash == std::string_view::npos ? "" : std::string(url.substr(slash));
  while (!out.path.empty() && out.path.back() == '/') out.path.pop_back();
  return out;
}

ChatClient::ChatClient(RemoteBackend backend, TransportOptions transport)
    : backend_(std::move(backend)), transport_(transport) {
  std::optional<ParsedUrl> url = ParseEndpointUrl(backend_.endpoint);
  if (!url) {
    throw ConfigError("endpoint must be an absolute http(s) URL: " + backend_.endpoint);
  }
  scheme_host_port_ = url->scheme + "://" + url->host_port;
  base_path_ = url->path;
}

nlohmann::json ChatClient::RequestBody(const std::vector<ChatMessage>& messages) const {
  nlohmann::json body;
  body["model"] = backend_.model;
  body["messages"] = nlohmann::json::array();
  for (const ChatMessage& m : messages) {
    body["messages"].push_back({{"role", m.role}, {"content", m.content}});
  }
  body["temperature"] = backend_.temperature;
  body["max_tokens"] = backend_.max_tokens;
  return body;
}

std::string ChatClient::Complete(const std::vector<ChatMessage>& messages) const {
  const std::string body = RequestBody(messages).dump();
  httplib::Headers headers;
  if (!backend_.api_key_env.empty()) {
    if (const char* key = std::getenv(backend_.api_key_env.c_str()); key && *key) {
      headers.emplace("Authorization", std::string("Bearer ") + key);
    }
  }

  std::string last_error;
  auto backoff = transport_.initial_backoff;
  for (int attempt = 1; attempt <= transport_.max_tries; ++attempt) {
    if (attempt > 1) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    httplib::Client client(scheme_host_port_);
    client.set_connection_timeout(transport_.timeout);
    client.set_read_timeout(transport_.timeout);
    client.set_write_timeout(transport_.timeout);
    auto result = client.Post(base_path_ + "/chat/completions", headers, body,
                              "application/json");
    if (!result) {
      last_error = "transport error: " + httplib::to_string(result.error());
      continue;
    }
    if (result->status < 200 || result->status >= 300) {
      last_error = "HTTP " + std::to_string(result->status);
      continue;
    }
    try {
      const nlohmann::json reply = nlohmann::json::parse(result->body);
      const nlohmann::json& content = reply.at("choices").at(0).at("message").at("content");
      if (content.is_null()) return "";
      return content.get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      last_error = std::string("malformed response: ") + e.what();
    }
  }
  throw BackendUnavailable(backend_.endpoint + ": " + last_error + " after " +
                           std::to_string(transport_.max_tries) + " tries");
}

}  // namespace arena
