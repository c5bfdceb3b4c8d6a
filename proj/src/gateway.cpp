#include "owlbench/gateway.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "owlbench/hash.hpp"
#include "owlbench/rng.hpp"

namespace owlbench {

void ChatRequest::validate() const {
  int system_count = 0, user_count = 0;
  for (const auto& m : messages) {
    if (m.role == "system") ++system_count;
    else if (m.role == "user") ++user_count;
    else throw std::invalid_argument("chat request: unknown role " + m.role);
  }
  if (system_count != 1) throw std::invalid_argument("chat request: need exactly one system message");
  if (user_count < 1) throw std::invalid_argument("chat request: need at least one user message");
  if (temperature < 0) throw std::invalid_argument("chat request: negative temperature");
  if (max_tokens <= 0) throw std::invalid_argument("chat request: max_tokens must be positive");
}

std::string ChatRequest::cache_key_material() const {
  nlohmann::json j;
  j["model"] = model;
  j["temperature"] = temperature;
  j["max_tokens"] = max_tokens;
  auto msgs = nlohmann::json::array();
  for (const auto& m : messages) msgs.push_back({{"role", m.role}, {"content", m.content}});
  j["messages"] = msgs;
  return j.dump();
}

std::string cache_key(const ChatRequest& request) {
  return sha256_hex(request.cache_key_material());
}

Backend Backend::mock_fixed(std::string text) {
  Backend b;
  b.kind = Kind::kMockFixed;
  b.fixed_text = std::move(text);
  return b;
}

Backend Backend::mock_oracle(std::map<std::string, std::string> truths) {
  Backend b;
  b.kind = Kind::kMockOracle;
  b.oracle_truths = std::move(truths);
  return b;
}

Backend Backend::http_chat(std::string endpoint, std::string credential_env) {
  Backend b;
  b.kind = Kind::kHttpChat;
  b.endpoint = std::move(endpoint);
  b.credential_env = std::move(credential_env);
  return b;
}

namespace {

struct Transient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ChatResponse http_dispatch(const ChatRequest& request, const Backend& backend,
                           const std::string& api_key, const RetryPolicy& policy) {
  // endpoint: scheme://host[:port]/path
  auto scheme_end = backend.endpoint.find("://");
  if (scheme_end == std::string::npos)
    throw std::invalid_argument("http_chat: malformed endpoint " + backend.endpoint);
  auto path_start = backend.endpoint.find('/', scheme_end + 3);
  std::string base = backend.endpoint.substr(0, path_start);
  std::string path = path_start == std::string::npos ? "/" : backend.endpoint.substr(path_start);

  httplib::Client client(base);
  client.set_connection_timeout(policy.timeout_s);
  client.set_read_timeout(policy.timeout_s);
  client.set_bearer_token_auth(api_key);

  nlohmann::json body = nlohmann::json::parse(request.cache_key_material());
  auto res = client.Post(path, body.dump(), "application/json");
  if (!res) throw Transient("http_chat: connection failure");
  if (res->status == 429 || res->status >= 500)
    throw Transient("http_chat: status " + std::to_string(res->status));
  if (res->status == 401 || res->status == 403)
    throw std::runtime_error("http_chat: authentication rejected (status " +
                             std::to_string(res->status) + ")");
  if (res->status != 200)
    throw std::runtime_error("http_chat: status " + std::to_string(res->status));

  ChatResponse out;
  try {
    auto j = nlohmann::json::parse(res->body);
    out.text = j.at("choices").at(0).at("message").at("content").get<std::string>();
    if (j.contains("usage")) {
      out.prompt_tokens = j["usage"].value("prompt_tokens", 0);
      out.completion_tokens = j["usage"].value("completion_tokens", 0);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("http_chat: malformed endpoint response: ") + e.what());
  }
  return out;
}

}  // namespace

ChatResponse send(const ChatRequest& request, const Backend& backend, const RetryPolicy& policy) {
  request.validate();
  auto start = std::chrono::steady_clock::now();
  ChatResponse out;
  switch (backend.kind) {
    case Backend::Kind::kMockFixed:
      out.text = backend.fixed_text;
      out.backend = "mock_fixed";
      break;
    case Backend::Kind::kMockOracle: {
      auto it = backend.oracle_truths.find(request.instance_id);
      if (it == backend.oracle_truths.end())
        throw std::invalid_argument("mock_oracle: no truth recorded for instance " +
                                    request.instance_id);
      out.text = "<<ANSWER>> " + it->second;
      out.backend = "mock_oracle";
      break;
    }
    case Backend::Kind::kHttpChat: {
      const char* key = backend.credential_env.empty()
                            ? nullptr
                            : std::getenv(backend.credential_env.c_str());
      if (key == nullptr || *key == '\0')
        throw std::runtime_error("http_chat: credential env var " + backend.credential_env +
                                 " is unset");
      SplitMix64 jitter_rng(std::chrono::steady_clock::now().time_since_epoch().count());
      std::string last_error;
      double delay_ms = policy.initial_delay_ms;
      for (int attempt = 1; attempt <= policy.max_attempts; ++attempt) {
        try {
          out = http_dispatch(request, backend, key, policy);
          out.backend = "http_chat";
          last_error.clear();
          break;
        } catch (const Transient& e) {
          last_error += std::string("attempt ") + std::to_string(attempt) + ": " + e.what() + "; ";
          if (attempt == policy.max_attempts)
            throw std::runtime_error("http_chat: retries exhausted [" + last_error + "]");
          double sleep_ms = delay_ms;
          if (policy.jitter) sleep_ms *= 0.5 + jitter_rng.next_double();
          std::this_thread::sleep_for(std::chrono::milliseconds(static_cast<long>(sleep_ms)));
          delay_ms *= policy.factor;
        }
      }
      break;
    }
  }
  out.latency_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                             start)
                       .count();
  return out;
}

ResponseCache::ResponseCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      std::string key = j.at("key").get<std::string>();
      std::string response = j.at("response").get<std::string>();
      std::string checksum = j.at("checksum").get<std::string>();
      if (checksum != sha256_hex(key + response)) {
        ++skipped_;
        continue;
      }
      entries_[key] = response;
    } catch (const nlohmann::json::exception&) {
      ++skipped_;
    }
  }
}

std::optional<std::string> ResponseCache::lookup(const std::string& key) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ResponseCache::store(const std::string& key, const std::string& request_json,
                          const std::string& response_text) {
  std::lock_guard lock(mutex_);
  entries_[key] = response_text;
  nlohmann::json j;
  j["key"] = key;
  j["request"] = request_json;
  j["response"] = response_text;
  j["checksum"] = sha256_hex(key + response_text);
  j["timestamp"] =
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();
  std::ofstream out(path_, std::ios::app);
  out << j.dump() << "\n";
}

ChatResponse cached_send(const ChatRequest& request, const Backend& backend, ResponseCache& cache,
                         const RetryPolicy& policy) {
  request.validate();
  std::string key = cache_key(request);
  if (auto hit = cache.lookup(key)) {
    ChatResponse out;
    out.text = *hit;
    out.backend = "cache";
    out.cached = true;
    return out;
  }
  ChatResponse out = send(request, backend, policy);
  cache.store(key, request.cache_key_material(), out.text);
  return out;
}

}  // namespace owlbench
