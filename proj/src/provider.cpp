#include "arena/provider.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include "arena/tokens.hpp"

namespace arena {

std::string role_name(Role r) {
  switch (r) {
    case Role::System: return "system";
    case Role::User: return "user";
    case Role::Assistant: return "assistant";
  }
  return "user";
}

Role role_from_name(const std::string& name) {
  if (name == "system") return Role::System;
  if (name == "user") return Role::User;
  if (name == "assistant") return Role::Assistant;
  throw validation_error("unknown message role: " + name);
}

void ChatRequest::validate() const {
  if (messages.empty()) throw validation_error("messages must be non-empty");
  if (max_tokens < 1) throw validation_error("max_tokens must be >= 1");
  if (temperature < 0) throw validation_error("temperature must be >= 0");
  int system_count = 0;
  for (size_t i = 0; i < messages.size(); ++i) {
    if (messages[i].role == Role::System) {
      ++system_count;
      if (i != 0) throw validation_error("system message must come first");
    }
  }
  if (system_count > 1) throw validation_error("at most one system message");
}

void ProviderProfile::validate() const {
  if (kind == ProviderKind::HttpOpenAiCompatible) {
    if (endpoint.empty())
      throw config_error("http provider '" + name + "' requires an endpoint");
    if (auth_env.empty())
      throw config_error("http provider '" + name + "' requires auth_env");
  }
  if (retry.max_attempts < 1)
    throw config_error("retry.max_attempts must be >= 1");
}

ProviderProfile ProviderProfile::from_json(const std::string& name,
                                           const json& j) {
  ProviderProfile p;
  p.name = name;
  std::string kind = j.value("kind", "scripted");
  if (kind == "http-openai-compatible")
    p.kind = ProviderKind::HttpOpenAiCompatible;
  else if (kind == "scripted")
    p.kind = ProviderKind::Scripted;
  else if (kind == "latent-skill-sim")
    p.kind = ProviderKind::LatentSkillSim;
  else
    throw config_error("unknown provider kind: " + kind);
  p.endpoint = j.value("endpoint", std::string());
  p.auth_env = j.value("auth_env", std::string());
  p.supports_system_prompt = j.value("supports_system_prompt", true);
  p.rate_limit_per_minute = j.value("rate_limit_per_minute", 0);
  if (j.contains("retry")) {
    p.retry.max_attempts = j["retry"].value("max_attempts", 3);
    p.retry.base_backoff_ms = j["retry"].value("base_backoff_ms", 250);
  }
  p.validate();
  return p;
}

ChatRequest fold_system_message(const ChatRequest& request) {
  if (request.messages.empty() || request.messages[0].role != Role::System)
    return request;
  ChatRequest out = request;
  std::string system_text = out.messages[0].content;
  out.messages.erase(out.messages.begin());
  for (auto& m : out.messages) {
    if (m.role == Role::User) {
      m.content = system_text + "\n\n" + m.content;
      return out;
    }
  }
  // No user message to fold into: re-emit the system text as a user message.
  out.messages.insert(out.messages.begin(), {Role::User, system_text});
  return out;
}

RateLimiter::RateLimiter(int per_minute, Clock clock, Sleep sleep)
    : per_minute_(per_minute),
      clock_(clock ? std::move(clock)
                   : []() {
                       return std::chrono::duration<double>(
                                  std::chrono::steady_clock::now()
                                      .time_since_epoch())
                           .count();
                     }),
      sleep_(sleep ? std::move(sleep) : [](double s) {
        std::this_thread::sleep_for(std::chrono::duration<double>(s));
      }) {}

void RateLimiter::acquire() {
  if (per_minute_ <= 0) return;
  std::unique_lock<std::mutex> lock(mu_);
  for (;;) {
    double now = clock_();
    while (!window_.empty() && now - window_.front() >= 60.0)
      window_.pop_front();
    if (static_cast<int>(window_.size()) < per_minute_) {
      window_.push_back(now);
      return;
    }
    double wait = 60.0 - (now - window_.front());
    lock.unlock();
    sleep_(wait > 0 ? wait : 0.001);
    lock.lock();
  }
}

Gateway::Gateway(ProviderProfile profile, std::shared_ptr<ChatBackend> backend,
                 std::filesystem::path request_log, SleepFn sleep,
                 RateLimiter::Clock clock)
    : profile_(std::move(profile)),
      backend_(std::move(backend)),
      request_log_(std::move(request_log)),
      sleep_(sleep ? std::move(sleep)
                   : [](double s) {
                       std::this_thread::sleep_for(
                           std::chrono::duration<double>(s));
                     }),
      limiter_(profile_.rate_limit_per_minute, clock,
               [this](double s) { sleep_(s); }),
      jitter_state_(fnv1a(profile_.name)) {}

Completion Gateway::complete(const ChatRequest& request) {
  request.validate();
  ChatRequest effective =
      profile_.supports_system_prompt ? request : fold_system_message(request);

  int attempts = 0;
  std::string last_error;
  Completion result;
  bool ok = false;
  while (attempts < profile_.retry.max_attempts) {
    ++attempts;
    limiter_.acquire();
    try {
      result = backend_->complete(effective);
      ok = true;
      break;
    } catch (const TransientError& e) {
      last_error = e.what();
      if (attempts >= profile_.retry.max_attempts) break;
      // exponential backoff with multiplicative jitter in [1, 2)
      jitter_state_ = hash_combine(jitter_state_, attempts);
      double jitter = 1.0 + (jitter_state_ % 1000) / 1000.0;
      double delay_ms =
          profile_.retry.base_backoff_ms * (1 << (attempts - 1)) * jitter;
      sleep_(delay_ms / 1000.0);
    }
  }

  if (!request_log_.empty()) {
    std::lock_guard<std::mutex> lock(log_mu_);
    json rec;
    rec["ts"] = std::chrono::duration<double>(
                    std::chrono::system_clock::now().time_since_epoch())
                    .count();
    rec["provider"] = profile_.name;
    rec["model"] = request.model_ref;
    rec["attempts"] = attempts;
    rec["ok"] = ok;
    rec["max_tokens"] = request.max_tokens;
    if (ok) {
      rec["tokens"] = result.token_count;
      rec["truncated"] = result.finish_reason == "length";
    } else {
      rec["error"] = last_error;
    }
    append_line(request_log_, rec.dump());
  }

  if (!ok)
    throw provider_error("provider '" + profile_.name + "' unavailable after " +
                         std::to_string(attempts) + " attempts: " + last_error);
  return result;
}

ScriptedBackend::ScriptedBackend(std::vector<std::string> replies, bool strict)
    : replies_(std::move(replies)), strict_(strict) {}

void ScriptedBackend::add_rule(std::string needle, std::string reply) {
  std::lock_guard<std::mutex> lock(mu_);
  rules_.emplace_back(std::move(needle), std::move(reply));
}

Completion ScriptedBackend::complete(const ChatRequest& request) {
  std::lock_guard<std::mutex> lock(mu_);
  std::string text;
  if (!rules_.empty() && !request.messages.empty()) {
    const std::string& last = request.messages.back().content;
    for (const auto& [needle, reply] : rules_) {
      if (last.find(needle) != std::string::npos) {
        text = reply;
        break;
      }
    }
  }
  if (text.empty()) {
    if (replies_.empty())
      throw provider_error("scripted backend has no replies");
    if (next_ >= replies_.size()) {
      if (strict_) throw provider_error("scripted backend exhausted");
      text = replies_.back();
    } else {
      text = replies_[next_++];
    }
  }
  return {text, approx_token_count(text), "stop"};
}

}  // namespace arena
