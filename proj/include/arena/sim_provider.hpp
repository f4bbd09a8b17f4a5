#pragma once

#include <map>
#include <string>

#include "arena/provider.hpp"

namespace arena {

// Offline stand-in for a real model. Response quality encodes a latent skill
// so that downstream ranking can be checked against ground truth.
struct LatentSkillConfig {
  std::map<std::string, double> skill;  // player id -> latent skill
  double noise_sigma = 1.0;
  std::int64_t seed = 0;
  double tie_epsilon = 0.05;  // judge sees a tie below this quality gap

  static LatentSkillConfig from_json(const json& j);
};

// Extracts "(q=...)" quality tokens from text; used by the simulated judge
// and by tests.
std::vector<double> extract_quality_tokens(const std::string& text);

// One simulated model. Recognizes the examiner, debater, judge, and
// reference-answer prompts and answers each in the expected wire format.
// Deterministic given (config seed, player, full message history).
class SimBackend : public ChatBackend {
 public:
  // behavior of the discussion round: adopt the committee majority, or
  // keep the original verdict
  enum class DiscussionStyle { AdoptMajority, KeepOwn };

  SimBackend(std::string player_id, LatentSkillConfig config,
             DiscussionStyle style = DiscussionStyle::AdoptMajority);

  Completion complete(const ChatRequest& request) override;

 private:
  std::string respond_as_examiner(const ChatRequest& request,
                                  std::uint64_t stream);
  std::string respond_as_debater(const ChatRequest& request,
                                 std::uint64_t stream);
  std::string respond_as_judge(const ChatRequest& request,
                               std::uint64_t stream);
  std::string respond_in_discussion(const ChatRequest& request);

  std::string player_id_;
  LatentSkillConfig config_;
  DiscussionStyle style_;
};

}  // namespace arena
