#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace owlbench {

struct ChatMessage {
  std::string role;  // "system" or "user"
  std::string content;
};

struct ChatRequest {
  std::string model;
  double temperature = 0.0;
  int max_tokens = 1024;
  std::vector<ChatMessage> messages;  // exactly one system, then user(s)
  std::string instance_id;

  void validate() const;
  // Canonical serialization of the fields that determine the completion.
  std::string cache_key_material() const;
};

struct ChatResponse {
  std::string text;
  int prompt_tokens = 0;
  int completion_tokens = 0;
  double latency_ms = 0;
  std::string backend;
  bool cached = false;
};

struct Backend {
  enum class Kind { kHttpChat, kMockOracle, kMockFixed } kind = Kind::kMockFixed;
  // http_chat
  std::string endpoint;
  std::string credential_env;  // env var holding the API key
  // mock_oracle: instance_id -> truth text
  std::map<std::string, std::string> oracle_truths;
  // mock_fixed
  std::string fixed_text;

  static Backend mock_fixed(std::string text);
  static Backend mock_oracle(std::map<std::string, std::string> truths);
  static Backend http_chat(std::string endpoint, std::string credential_env);
};

struct RetryPolicy {
  int max_attempts = 5;
  int initial_delay_ms = 1000;
  double factor = 2.0;
  bool jitter = true;
  int timeout_s = 60;
};

// Dispatches one request. Transient failures (connect errors, timeouts, 429,
// 5xx) are retried with exponential backoff; auth failures are terminal and
// raised before any network call when the credential is unresolvable.
ChatResponse send(const ChatRequest& request, const Backend& backend, const RetryPolicy& policy);

// Append-only JSONL response cache with per-record checksums. Corrupt records
// are skipped on load and recomputed on demand.
class ResponseCache {
 public:
  explicit ResponseCache(std::string path);

  std::optional<std::string> lookup(const std::string& key) const;
  void store(const std::string& key, const std::string& request_json,
             const std::string& response_text);
  size_t size() const { return entries_.size(); }
  int skipped_records() const { return skipped_; }

 private:
  std::string path_;
  std::map<std::string, std::string> entries_;
  mutable std::mutex mutex_;
  int skipped_ = 0;
};

ChatResponse cached_send(const ChatRequest& request, const Backend& backend, ResponseCache& cache,
                         const RetryPolicy& policy);

std::string cache_key(const ChatRequest& request);

}  // namespace owlbench
