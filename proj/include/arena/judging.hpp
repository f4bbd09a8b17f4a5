#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arena/debate.hpp"
#include "arena/registry.hpp"

namespace arena {

enum class Verdict { A, B, Tie };

std::string verdict_name(Verdict v);
Verdict verdict_from_name(const std::string& name);

struct Judgment {
  std::string judge;
  int round = 0;               // 0 = initial, k >= 1 = discussion
  std::string rationale;
  std::optional<Verdict> verdict;  // nullopt = abstain
};

struct Committee {
  std::vector<std::string> members;  // at most 5, ranking order
  std::vector<std::string> basis;    // ranking snapshot used for selection
  std::optional<std::string> shortage;
};

// Top five eligible judges under the given ranking. Participants and their
// family-mates are never eligible.
Committee select_committee(const std::vector<std::string>& ranking,
                           const std::string& a, const std::string& b,
                           const Registry& registry);

// Scans for [[A]] / [[B]] / [[Tie]] and returns the LAST marker found.
// Throws Protocol error when no marker is present.
Verdict parse_verdict(const std::string& raw);

// Strict plurality; an A/B count tie is a Tie regardless of Tie votes.
Verdict majority_vote(const std::vector<Judgment>& final_round);

struct JudgePrompts {
  std::string initial_prompt;
  std::string discussion_prompt;
  std::string reference_header;
  static JudgePrompts english();
};

struct JudgeOptions {
  double temperature = 0.0;
  int word_cap = 300;  // judges share the debater token approximation
  JudgePrompts prompts = JudgePrompts::english();
  bool initial_responses_only = false;  // no-debate ablation: T1 and T4 only
};

// Seat-labeled, THINK-free transcript as judges see it.
std::string render_for_judges(const Battle& battle, bool initial_only);

class JudgingPanel {
 public:
  JudgingPanel(GatewayResolver resolver, JudgeOptions options = {});

  std::vector<Judgment> initial_judgments(const Battle& battle,
                                          const Committee& committee);

  // One discussion round; prior must contain every member's latest
  // judgment. Judges that abstained earlier stay excluded.
  std::vector<Judgment> discussion_round(const Battle& battle,
                                         const Committee& committee,
                                         const std::vector<Judgment>& prior,
                                         int round);

 private:
  Judgment judge_once(const Battle& battle, const std::string& judge,
                      const std::vector<ChatMessage>& messages, int round);

  GatewayResolver resolver_;
  JudgeOptions options_;
};

}  // namespace arena
