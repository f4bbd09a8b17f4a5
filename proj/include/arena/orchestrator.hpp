#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arena/debate.hpp"
#include "arena/journal.hpp"
#include "arena/judging.hpp"
#include "arena/provider.hpp"
#include "arena/questions.hpp"
#include "arena/rating.hpp"
#include "arena/registry.hpp"
#include "arena/sim_provider.hpp"
#include "arena/swiss.hpp"

namespace arena {

struct RunConfig {
  std::string run_id;
  std::string language_pack = "en";  // "en" builtin, or a pack file path
  int per_category_questions = 5;
  int discussion_rounds = 1;
  double k_factor = 32.0;
  double lambda = 0.1;
  int bootstrap_resamples = 200;
  int parallelism = 1;
  std::int64_t seed = 0;
  std::string examiner;
  std::string mode = "full";  // full | no-debate | no-discussion
  double debater_temperature = 0.7;
  double judge_temperature = 0.0;
  double examiner_temperature = 0.7;
  std::string registry_path;
  std::string providers_path;
  std::string output_root = "runs";

  json to_json() const;
  static RunConfig from_json(const json& j);
  void validate() const;
};

// Thrown when a configured event budget is hit; used to exercise
// kill-and-resume without killing the process.
struct StopRequested {};

class Orchestrator {
 public:
  struct Options {
    bool resume = false;
    int stop_after_events = 0;  // 0 = unlimited
    SimBackend::DiscussionStyle sim_discussion =
        SimBackend::DiscussionStyle::AdoptMajority;
  };

  explicit Orchestrator(RunConfig config) : Orchestrator(std::move(config), Options()) {}
  Orchestrator(RunConfig config, Options options);
  ~Orchestrator();

  // Full Swiss tournament; returns the final BT leaderboard (also written
  // under the run directory).
  RatingTable run_tournament();

  // Schedules ceil(log2(n+1)) matches for a newcomer against a completed
  // tournament, refitting ratings between matches.
  RatingTable add_model(const std::string& new_player);

  std::filesystem::path run_dir() const;
  const std::vector<MatchRecord>& records() const { return records_; }
  const Registry& registry() const { return registry_; }
  Gateway& gateway_for(const std::string& player_id);

 private:
  struct ReplayState {
    std::optional<json> config;
    std::map<std::string, json> outcomes;  // battle_id -> outcome event
    std::map<int, Pairing> pairings;       // round -> pairing
    std::set<int> rounds_ended;
    bool run_ended = false;
    std::set<int> addition_matches;        // journaled addition match indices
    std::map<std::string, std::string> addition_opponents;  // idx -> opponent
    bool addition_ended = false;
  };

  void load_providers();
  int jappend(const std::string& type, json payload);
  ReplayState replay_journal();
  std::vector<std::string> standings_order(int round) const;
  std::vector<std::string> mmlu_order() const;

  struct BattleResult {
    Battle battle;
    std::vector<Judgment> judgments;
    std::optional<Verdict> verdict;
    Committee committee;
  };
  BattleResult run_one_battle(const std::string& battle_id,
                              const Question& question, const std::string& a,
                              const std::string& b,
                              const std::vector<std::string>& basis);

  // Runs (or skips, when journaled) every battle of one match; appends match
  // records in battle order.
  void run_match(int round, const std::string& a, const std::string& b,
                 const ReplayState& replayed, const std::string& match_tag,
                 const std::vector<std::string>& basis);

  RatingTable final_leaderboard();
  void write_leaderboard(const RatingTable& table);

  RunConfig config_;
  Options options_;
  Registry registry_;
  std::unique_ptr<Journal> journal_;
  int events_written_ = 0;

  std::map<std::string, ProviderProfile> profiles_;
  LatentSkillConfig latent_;
  bool have_latent_ = false;
  json scripts_;
  std::map<std::string, std::unique_ptr<Gateway>> gateways_;
  std::mutex gateway_mu_;

  std::vector<MatchRecord> records_;
  std::set<PairKey> played_;
  std::set<std::string> had_bye_;

  DebatePrompts debate_prompts_;
  JudgePrompts judge_prompts_;
};

}  // namespace arena
