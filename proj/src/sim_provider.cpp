#include "arena/sim_provider.hpp"

#include <cmath>
#include <random>
#include <regex>
#include <sstream>

#include "arena/debate.hpp"
#include "arena/tokens.hpp"

namespace arena {

LatentSkillConfig LatentSkillConfig::from_json(const json& j) {
  LatentSkillConfig c;
  for (auto it = j.at("skill").begin(); it != j.at("skill").end(); ++it)
    c.skill[it.key()] = it.value().get<double>();
  c.noise_sigma = j.value("noise_sigma", 1.0);
  c.seed = j.value("seed", 0);
  c.tie_epsilon = j.value("tie_epsilon", 0.05);
  return c;
}

std::vector<double> extract_quality_tokens(const std::string& text) {
  static const std::regex token(R"(\(q=(-?[0-9]+(?:\.[0-9]+)?)\))");
  std::vector<double> out;
  auto begin = std::sregex_iterator(text.begin(), text.end(), token);
  for (auto it = begin; it != std::sregex_iterator(); ++it)
    out.push_back(std::stod((*it)[1].str()));
  return out;
}

SimBackend::SimBackend(std::string player_id, LatentSkillConfig config,
                       DiscussionStyle style)
    : player_id_(std::move(player_id)),
      config_(std::move(config)),
      style_(style) {}

namespace {

std::uint64_t history_hash(const ChatRequest& request) {
  std::uint64_t h = fnv1a("history");
  for (const auto& m : request.messages) {
    h = fnv1a(role_name(m.role), h);
    h = fnv1a(m.content, h);
  }
  if (request.seed)
    h = hash_combine(h, static_cast<std::uint64_t>(*request.seed));
  return h;
}

const std::string& last_user(const ChatRequest& request) {
  for (auto it = request.messages.rbegin(); it != request.messages.rend(); ++it)
    if (it->role == Role::User) return it->content;
  return request.messages.back().content;
}

}  // namespace

Completion SimBackend::complete(const ChatRequest& request) {
  request.validate();
  std::uint64_t stream = hash_combine(
      fnv1a(player_id_, fnv1a("sim")), static_cast<std::uint64_t>(config_.seed));
  stream = hash_combine(stream, history_hash(request));

  const std::string& last = last_user(request);
  std::string text;
  if (last.find("You have been assigned the task of drafting a set of") !=
      std::string::npos) {
    text = respond_as_examiner(request, stream);
  } else if (last.rfind("Below are the responses from other judges", 0) == 0) {
    text = respond_in_discussion(request);
  } else if (last.rfind("This is a chatbot arena. Two AI assistants", 0) == 0) {
    text = respond_as_judge(request, stream);
  } else if (last.rfind("Answer this question", 0) == 0) {
    text = "A concise reference answer (by " + player_id_ + ").";
  } else if (!request.messages.empty() &&
             request.messages.front().role == Role::System &&
             request.messages.front().content.find(
                 "competitive chatbot arena") != std::string::npos) {
    text = respond_as_debater(request, stream);
  } else {
    text = "Acknowledged.";
  }

  bool truncated = false;
  std::string capped = truncate_to_token_cap(text, request.max_tokens, truncated);
  return {capped, approx_token_count(capped), truncated ? "length" : "stop"};
}

std::string SimBackend::respond_as_examiner(const ChatRequest& request,
                                            std::uint64_t stream) {
  const std::string& prompt = last_user(request);
  static const std::regex count_re(
      R"(drafting a set of (\d+) different user queries to a chat assistant on ([^.]+)\.)");
  std::smatch m;
  int count = 1;
  std::string domain = "general";
  if (std::regex_search(prompt, m, count_re)) {
    count = std::stoi(m[1].str());
    domain = m[2].str();
  }
  std::mt19937_64 rng(stream);
  std::ostringstream out;
  for (int i = 1; i <= count; ++i) {
    std::uint64_t tag = rng();
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(tag));
    out << "(" << i << "). Please give a thorough analysis of scenario " << hex
        << " in the area of " << domain << ".\n";
  }
  return out.str();
}

std::string SimBackend::respond_as_debater(const ChatRequest& request,
                                           std::uint64_t stream) {
  auto it = config_.skill.find(player_id_);
  if (it == config_.skill.end())
    throw config_error("no latent skill entry for player " + player_id_);
  double skill = it->second;

  // Actions come from the action guide in the last user message.
  const std::string& guide = last_user(request);
  std::string lower = to_lower(guide);
  std::vector<ActionKind> actions;
  size_t ga = lower.find("action guide:");
  std::string guide_part = ga == std::string::npos ? lower : lower.substr(ga);
  size_t guide_end = guide_part.find("tags!");
  if (guide_end != std::string::npos) guide_part = guide_part.substr(0, guide_end);
  for (ActionKind k :
       {ActionKind::Respond, ActionKind::Criticize, ActionKind::Raise}) {
    if (guide_part.find("<" + action_name(k) + ">") != std::string::npos)
      actions.push_back(k);
  }
  if (actions.empty()) actions.push_back(ActionKind::Respond);

  std::mt19937_64 rng(stream);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::ostringstream out;
  out << "<think>planning my move as " << player_id_ << "</think>\n";
  for (ActionKind k : actions) {
    double q = skill + config_.noise_sigma * noise(rng);
    char qbuf[32];
    std::snprintf(qbuf, sizeof qbuf, "(q=%.4f)", q);
    out << "<" << action_name(k) << ">";
    switch (k) {
      case ActionKind::Respond:
        out << "Here is my answer " << qbuf << ".";
        break;
      case ActionKind::Criticize:
        out << "Your argument has a gap " << qbuf << ".";
        break;
      case ActionKind::Raise:
        out << "Then how would you handle the harder variant? " << qbuf;
        break;
      default:
        break;
    }
    out << "</" << action_name(k) << ">\n";
  }
  return out.str();
}

std::string SimBackend::respond_as_judge(const ChatRequest& request,
                                         std::uint64_t stream) {
  const std::string& prompt = last_user(request);
  double sum_a = 0, sum_b = 0;
  int n_a = 0, n_b = 0;
  std::istringstream in(prompt);
  std::string line;
  while (std::getline(in, line)) {
    bool is_a = line.rfind("Assistant A:", 0) == 0;
    bool is_b = line.rfind("Assistant B:", 0) == 0;
    if (!is_a && !is_b) continue;
    for (double q : extract_quality_tokens(line)) {
      if (is_a) { sum_a += q; ++n_a; }
      else      { sum_b += q; ++n_b; }
    }
  }
  std::ostringstream out;
  out << "As a judge I weighed helpfulness and accuracy on both sides. ";
  if (n_a == 0 || n_b == 0) {
    out << "I could not separate the two assistants. Final verdict: [[Tie]]";
    return out.str();
  }
  double mean_a = sum_a / n_a;
  double mean_b = sum_b / n_b;
  double delta = mean_a - mean_b;
  if (std::abs(delta) < config_.tie_epsilon) {
    out << "The two performed equally well. Final verdict: [[Tie]]";
    return out.str();
  }
  double p_a = 1.0 / (1.0 + std::exp(-delta));
  std::mt19937_64 rng(stream);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  bool pick_a = unif(rng) < p_a;
  out << "Assistant " << (pick_a ? "A" : "B")
      << " was more convincing overall. Final verdict: [["
      << (pick_a ? "A" : "B") << "]]";
  return out.str();
}

std::string SimBackend::respond_in_discussion(const ChatRequest& request) {
  // Own previous verdict is in the last assistant message.
  std::string own_text;
  for (auto it = request.messages.rbegin(); it != request.messages.rend(); ++it)
    if (it->role == Role::Assistant) { own_text = it->content; break; }

  auto count_markers = [](const std::string& text, const char* marker) {
    int n = 0;
    std::string lower = to_lower(text);
    for (size_t p = lower.find(marker); p != std::string::npos;
         p = lower.find(marker, p + 1))
      ++n;
    return n;
  };

  std::string own_pick = "Tie";
  {
    std::string lower = to_lower(own_text);
    size_t pa = lower.rfind("[[a]]");
    size_t pb = lower.rfind("[[b]]");
    size_t pt = lower.rfind("[[tie]]");
    size_t best = std::string::npos;
    if (pa != std::string::npos) { best = pa; own_pick = "A"; }
    if (pb != std::string::npos && (best == std::string::npos || pb > best)) { best = pb; own_pick = "B"; }
    if (pt != std::string::npos && (best == std::string::npos || pt > best)) { own_pick = "Tie"; }
  }

  if (style_ == DiscussionStyle::KeepOwn)
    return "I maintain my original judgement. Final verdict: [[" + own_pick + "]]";

  const std::string& peers = last_user(request);
  int a = count_markers(peers, "[[a]]");
  int b = count_markers(peers, "[[b]]");
  int tie = count_markers(peers, "[[tie]]");
  if (own_pick == "A") ++a;
  else if (own_pick == "B") ++b;
  else ++tie;

  std::string pick;
  if (a > b && a > tie) pick = "A";
  else if (b > a && b > tie) pick = "B";
  else if (tie > a && tie > b) pick = "Tie";
  else pick = own_pick;  // no clear majority: stay put
  return "After reading the committee I side with the majority. Final "
         "verdict: [[" + pick + "]]";
}

}  // namespace arena
