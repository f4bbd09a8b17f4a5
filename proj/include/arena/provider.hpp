#pragma once

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "arena/util.hpp"

namespace arena {

enum class Role { System, User, Assistant };

std::string role_name(Role r);
Role role_from_name(const std::string& name);

struct ChatMessage {
  Role role = Role::User;
  std::string content;
};

struct ChatRequest {
  std::vector<ChatMessage> messages;
  int max_tokens = 1024;
  double temperature = 0.0;
  std::string model_ref;
  std::optional<std::int64_t> seed;  // honored by offline providers

  void validate() const;
};

struct Completion {
  std::string text;
  int token_count = 0;
  std::string finish_reason = "stop";
};

enum class ProviderKind { HttpOpenAiCompatible, Scripted, LatentSkillSim };

struct RetryPolicy {
  int max_attempts = 3;
  int base_backoff_ms = 250;
};

struct ProviderProfile {
  std::string name;
  ProviderKind kind = ProviderKind::Scripted;
  std::string endpoint;      // http kind only
  std::string auth_env;      // env var holding the bearer token
  bool supports_system_prompt = true;
  int rate_limit_per_minute = 0;  // 0 = unlimited
  RetryPolicy retry;

  void validate() const;
  static ProviderProfile from_json(const std::string& name, const json& j);
};

// One raw completion attempt; transport errors surface as Error.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual Completion complete(const ChatRequest& request) = 0;
};

// Thrown by backends for failures worth retrying (5xx, 429, timeouts).
class TransientError : public Error {
 public:
  explicit TransientError(const std::string& msg, int status = 0)
      : Error(ErrorKind::Provider, msg), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

// Sliding 60-second window limiter. Clock and sleep are injectable so the
// window logic is testable without waiting.
class RateLimiter {
 public:
  using Clock = std::function<double()>;               // seconds
  using Sleep = std::function<void(double /*secs*/)>;  //

  RateLimiter(int per_minute, Clock clock = nullptr, Sleep sleep = nullptr);
  void acquire();

 private:
  int per_minute_;
  Clock clock_;
  Sleep sleep_;
  std::deque<double> window_;
  std::mutex mu_;
};

// Wraps a backend with the cross-cutting behavior every call gets: system
// prompt folding, retry with exponential backoff + jitter, rate limiting,
// and request logging.
class Gateway {
 public:
  using SleepFn = std::function<void(double)>;

  Gateway(ProviderProfile profile, std::shared_ptr<ChatBackend> backend,
          std::filesystem::path request_log = {}, SleepFn sleep = nullptr,
          RateLimiter::Clock clock = nullptr);

  Completion complete(const ChatRequest& request);

  const ProviderProfile& profile() const { return profile_; }

 private:
  ProviderProfile profile_;
  std::shared_ptr<ChatBackend> backend_;
  std::filesystem::path request_log_;
  SleepFn sleep_;
  RateLimiter limiter_;
  std::mutex log_mu_;
  std::uint64_t jitter_state_;
};

// Folds a leading system message into the first user message (prefix + blank
// line) for providers without system-prompt support.
ChatRequest fold_system_message(const ChatRequest& request);

// Scripted replay backend: returns canned responses in order; loops on the
// last one when exhausted unless strict.
class ScriptedBackend : public ChatBackend {
 public:
  explicit ScriptedBackend(std::vector<std::string> replies, bool strict = false);
  Completion complete(const ChatRequest& request) override;

  // Responses can also be keyed on a substring of the last message.
  void add_rule(std::string needle, std::string reply);

 private:
  std::vector<std::string> replies_;
  std::vector<std::pair<std::string, std::string>> rules_;
  bool strict_;
  size_t next_ = 0;
  std::mutex mu_;
};

// HTTP chat-completion backend (messages array in, choices[0].message.content
// out), bearer auth from the profile's env var.
class HttpBackend : public ChatBackend {
 public:
  explicit HttpBackend(const ProviderProfile& profile);
  Completion complete(const ChatRequest& request) override;

 private:
  std::string endpoint_;
  std::string auth_env_;
};

}  // namespace arena
