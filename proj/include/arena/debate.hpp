#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "arena/provider.hpp"
#include "arena/questions.hpp"
#include "arena/util.hpp"

namespace arena {

enum class ActionKind { Think, Respond, Criticize, Raise };

std::string action_name(ActionKind a);        // "think", "respond", ...
ActionKind action_from_name(const std::string& name);

enum class Seat { A, B };
inline std::string seat_name(Seat s) { return s == Seat::A ? "A" : "B"; }

struct TurnSpec {
  int index = 0;  // 1..9
  Seat speaker = Seat::A;
  std::vector<ActionKind> required_actions;  // THINK never required
  int word_budget = 0;
};

// The fixed 9-turn alternating schedule with budgets for the category.
std::vector<TurnSpec> turn_plan(const Category& category);

struct Segment {
  ActionKind kind = ActionKind::Respond;
  std::string text;
};

struct Turn {
  TurnSpec spec;
  std::string player;
  std::vector<Segment> segments;
  bool truncated = false;
  std::optional<std::string> violation;
};

struct Battle {
  std::string id;
  Question question;
  std::string player_a;  // seat A
  std::string player_b;  // seat B
  std::vector<Turn> turns;
  std::int64_t seed = 0;
  std::optional<std::string> reference_answer;
  bool void_battle = false;
  std::optional<std::string> void_reason;
};

// Splits raw model output into action-tagged segments. Tags are matched
// case-insensitively; an unclosed final tag runs to end of text. A missing
// required action is a protocol violation, not a failure; when exactly one
// action was required, untagged text is coerced into it.
std::pair<std::vector<Segment>, std::optional<std::string>> parse_actions(
    const std::string& raw, const std::vector<ActionKind>& required);

// Renders the given turns for the other side: every segment except THINK,
// with tags, in order.
std::string render_redacted(const std::vector<Turn>& turns);

// Prompt text builders (overridable via language packs).
struct DebatePrompts {
  std::string system_prompt;      // persona + arena rules + action definitions
  std::string opponent_prefix;    // "Opponent's Response: "
  std::string initial_input_prefix;  // "Initial user input: "
  std::string follow_guide;       // "Follow the action guide strictly."
  static DebatePrompts english();
};

std::string action_guide(const std::vector<ActionKind>& required,
                         int word_budget);

// Resolves a player id to the gateway that serves it.
using GatewayResolver = std::function<Gateway&(const std::string& player_id)>;

struct DebateOptions {
  double temperature = 0.7;
  DebatePrompts prompts = DebatePrompts::english();
};

class DebateEngine {
 public:
  DebateEngine(GatewayResolver resolver, DebateOptions options = {});

  // Runs the full 9-turn battle. Seats are randomized from the seed. For
  // math/coding/reasoning a reference answer is obtained from
  // reference_judge before any turn runs. Provider exhaustion voids the
  // battle rather than throwing.
  Battle run_battle(const std::string& battle_id, const Question& question,
                    const std::string& a, const std::string& b,
                    std::int64_t seed,
                    const std::optional<std::string>& reference_judge);

 private:
  GatewayResolver resolver_;
  DebateOptions options_;
};

bool is_logical_category(const std::string& category);

// Transcript persistence: header record then one record per turn.
void save_battle(const std::filesystem::path& path, const Battle& battle);
Battle load_battle(const std::filesystem::path& path);
json battle_header_json(const Battle& battle);
json turn_json(const Turn& turn, const std::string& battle_id);

}  // namespace arena
