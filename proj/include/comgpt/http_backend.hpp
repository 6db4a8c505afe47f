#pragma once

#include <chrono>
#include <cstdlib>
#include <string>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "comgpt/oracle.hpp"

namespace comgpt {

/// Chat-completion endpoint settings. The bearer credential comes from
/// the environment, never from flags or files.
struct ApiConfig {
  std::string base_url = "https://api.openai.com";
  std::string path = "/v1/chat/completions";
  std::string model = "gpt-3.5-turbo-0125";
  double temperature = 0.0;
  std::string api_key_env = "COMGPT_API_KEY";
  int timeout_seconds = 120;
  int max_transport_retries = 3;
  int backoff_initial_ms = 500;
};

/// Splits "https://host:port/some/base" into client target and path
/// prefix understood by httplib.
inline std::pair<std::string, std::string> split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  std::size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  auto path_start = url.find('/', host_start);
  if (path_start == std::string::npos) return {url, ""};
  return {url.substr(0, path_start), url.substr(path_start)};
}

/// OpenAI-style chat completions over HTTP with exponential backoff on
/// transient failures (connect errors, 429, 5xx).
class HttpChatBackend : public ChatBackend {
 public:
  explicit HttpChatBackend(ApiConfig config) : config_(std::move(config)) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (!key) key = std::getenv("OPENAI_API_KEY");
    if (key) api_key_ = key;
  }

  std::string complete(const std::string& system_text, const std::string& user_text) override {
    nlohmann::json messages = nlohmann::json::array();
    if (!system_text.empty())
      messages.push_back({{"role", "system"}, {"content", system_text}});
    messages.push_back({{"role", "user"}, {"content", user_text}});
    nlohmann::json body{
        {"model", config_.model},
        {"messages", messages},
        {"temperature", config_.temperature},
    };

    auto [target, prefix] = split_url(config_.base_url);
    std::string last_error;
    int backoff_ms = config_.backoff_initial_ms;
    for (int attempt = 0; attempt <= config_.max_transport_retries; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
        backoff_ms *= 2;
      }
      httplib::Client client(target);
      client.set_connection_timeout(config_.timeout_seconds, 0);
      client.set_read_timeout(config_.timeout_seconds, 0);
      httplib::Headers headers;
      if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
      auto res = client.Post(prefix + config_.path, headers, body.dump(), "application/json");
      if (!res) {
        last_error = "connection failed: " + httplib::to_string(res.error());
        continue;
      }
      if (res->status == 429 || res->status >= 500) {
        last_error = "status " + std::to_string(res->status);
        continue;
      }
      if (res->status != 200)
        throw TransportError("chat endpoint returned status " + std::to_string(res->status) +
                             ": " + res->body);
      try {
        nlohmann::json payload = nlohmann::json::parse(res->body);
        return payload.at("choices").at(0).at("message").at("content").get<std::string>();
      } catch (const nlohmann::json::exception& e) {
        throw TransportError(std::string("malformed completion payload: ") + e.what());
      }
    }
    throw TransportError("chat endpoint unreachable after " +
                         std::to_string(config_.max_transport_retries + 1) +
                         " attempts (last: " + last_error + ")");
  }

  const ApiConfig& config() const { return config_; }
  bool has_credential() const { return !api_key_.empty(); }

 private:
  ApiConfig config_;
  std::string api_key_;
};

}  // namespace comgpt
