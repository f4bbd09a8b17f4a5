#include "arena/debate.hpp"

#include <algorithm>
#include <sstream>

#include "arena/tokens.hpp"

namespace arena {

std::string action_name(ActionKind a) {
  switch (a) {
    case ActionKind::Think: return "think";
    case ActionKind::Respond: return "respond";
    case ActionKind::Criticize: return "criticize";
    case ActionKind::Raise: return "raise";
  }
  return "respond";
}

ActionKind action_from_name(const std::string& name) {
  std::string n = to_lower(name);
  if (n == "think") return ActionKind::Think;
  if (n == "respond") return ActionKind::Respond;
  if (n == "criticize") return ActionKind::Criticize;
  if (n == "raise") return ActionKind::Raise;
  throw validation_error("unknown action: " + name);
}

bool is_logical_category(const std::string& category) {
  return category == "math" || category == "coding" || category == "reasoning";
}

std::vector<TurnSpec> turn_plan(const Category& category) {
  const int w = category.long_form ? 400 : 300;
  using A = ActionKind;
  std::vector<TurnSpec> plan = {
      {1, Seat::A, {A::Respond}, w},
      {2, Seat::B, {A::Criticize, A::Raise}, w},
      {3, Seat::A, {A::Respond}, w},
      {4, Seat::B, {A::Respond}, w},
      {5, Seat::A, {A::Criticize, A::Raise}, w},
      {6, Seat::B, {A::Respond}, w},
      {7, Seat::A, {A::Criticize, A::Raise}, w},
      {8, Seat::B, {A::Respond, A::Criticize, A::Raise}, 2 * w},
      {9, Seat::A, {A::Respond}, w},
  };
  return plan;
}

std::pair<std::vector<Segment>, std::optional<std::string>> parse_actions(
    const std::string& raw, const std::vector<ActionKind>& required) {
  static const std::array<ActionKind, 4> kAll = {
      ActionKind::Think, ActionKind::Respond, ActionKind::Criticize,
      ActionKind::Raise};

  std::string lower = to_lower(raw);
  struct TagHit {
    size_t pos;
    size_t len;
    ActionKind kind;
    bool closing;
  };
  std::vector<TagHit> hits;
  for (ActionKind k : kAll) {
    std::string open = "<" + action_name(k) + ">";
    std::string close = "</" + action_name(k) + ">";
    for (size_t p = lower.find(open); p != std::string::npos;
         p = lower.find(open, p + 1))
      hits.push_back({p, open.size(), k, false});
    for (size_t p = lower.find(close); p != std::string::npos;
         p = lower.find(close, p + 1))
      hits.push_back({p, close.size(), k, true});
  }
  std::sort(hits.begin(), hits.end(),
            [](const TagHit& a, const TagHit& b) { return a.pos < b.pos; });

  std::vector<Segment> segments;
  std::string untagged;
  size_t cursor = 0;
  std::optional<ActionKind> open_kind;
  size_t open_start = 0;
  for (const TagHit& h : hits) {
    if (!open_kind) {
      if (!h.closing) {
        untagged += raw.substr(cursor, h.pos - cursor);
        open_kind = h.kind;
        open_start = h.pos + h.len;
      }
      // stray closing tag outside any block: ignore
      cursor = h.pos + h.len;
    } else {
      if (h.closing && h.kind == *open_kind) {
        segments.push_back({*open_kind, trim(raw.substr(open_start, h.pos - open_start))});
        open_kind.reset();
        cursor = h.pos + h.len;
      } else if (!h.closing) {
        // a new opening tag implicitly closes the current block
        segments.push_back({*open_kind, trim(raw.substr(open_start, h.pos - open_start))});
        open_kind = h.kind;
        open_start = h.pos + h.len;
        cursor = h.pos + h.len;
      }
    }
  }
  if (open_kind) {
    segments.push_back({*open_kind, trim(raw.substr(open_start))});
  } else {
    untagged += raw.substr(cursor);
  }

  std::vector<ActionKind> missing;
  for (ActionKind k : required) {
    bool found = std::any_of(segments.begin(), segments.end(),
                             [&](const Segment& s) { return s.kind == k; });
    if (!found) missing.push_back(k);
  }

  std::optional<std::string> violation;
  if (!missing.empty()) {
    if (required.size() == 1 && !trim(untagged).empty()) {
      segments.push_back({required[0], trim(untagged)});
      violation = "untagged output coerced into <" + action_name(required[0]) + ">";
    } else {
      std::string note = "missing required action(s):";
      for (ActionKind k : missing) {
        note += " <" + action_name(k) + ">";
        segments.push_back({k, ""});
      }
      violation = note;
    }
  }
  return {segments, violation};
}

std::string render_redacted(const std::vector<Turn>& turns) {
  std::ostringstream out;
  bool first = true;
  for (const Turn& t : turns) {
    for (const Segment& s : t.segments) {
      if (s.kind == ActionKind::Think) continue;
      if (!first) out << "\n";
      first = false;
      out << "<" << action_name(s.kind) << ">" << s.text << "</"
          << action_name(s.kind) << ">";
    }
  }
  return out.str();
}

DebatePrompts DebatePrompts::english() {
  DebatePrompts p;
  p.system_prompt =
      "You are a helpful assistant that provides accurate answers to user "
      "requests. As an experienced assistant, you follow the user's requests "
      "and provide reliable responses as much as you can. You outline your "
      "reasons for the response to make it easy for the users to understand. "
      "While maintaining the important details in the responses, you aim to "
      "output concise and straight-to-the-point answers without being overly "
      "verbose.\n\n"
      "This is a competitive chatbot arena. You are competing against another "
      "chatbot assistant in a debate and being judged by a committee on "
      "factors such as helpfulness, relevance, accuracy, depth, and "
      "creativity. After answering the initial user input, you will engage in "
      "a multi-round debate with your opponent. Below are your actions:\n\n"
      "<think>: Think step-by-step to analyze the question or plan your "
      "strategy in the debate. This is hidden from the opponent. Only think "
      "when necessary and make it concise.\n\n"
      "<respond>: Answer to the user input as accurately as you can.\n\n"
      "<criticize>: Criticize the weaknesses of your opponent's response.\n\n"
      "<raise>: Target your opponent's weaknesses. Give a potential follow-up "
      "user input that the opponent could fail to respond. The input can be "
      "answered concisely and focus on variations or motivations of its "
      "previous response. Generate one input only. Be reasonable. Avoid "
      "becoming too specific or repetitive. DO NOT raise a follow-up if you "
      "DON'T SEE the opponent's response!";
  p.opponent_prefix = "Opponent's Response: ";
  p.initial_input_prefix = "Initial user input: ";
  p.follow_guide = "Follow the action guide strictly.";
  return p;
}

std::string action_guide(const std::vector<ActionKind>& required,
                         int word_budget) {
  std::ostringstream out;
  out << "Action guide: ";
  if (required.size() == 1) {
    out << "only include <" << action_name(required[0]) << ">.";
  } else if (required.size() == 2) {
    out << "include both <" << action_name(required[0]) << "> and <"
        << action_name(required[1]) << ">.";
  } else {
    out << "include all of ";
    for (size_t i = 0; i < required.size(); ++i) {
      if (i) out << (i + 1 == required.size() ? ", and " : ", ");
      out << "<" << action_name(required[i]) << ">";
    }
    out << ".";
  }
  out << " Use <think> if needed. Finish your whole response within "
      << word_budget
      << " words, including <think>. ENCLOSE EACH ACTION IN ITS RESPECTIVE "
         "TAGS!";
  return out.str();
}

DebateEngine::DebateEngine(GatewayResolver resolver, DebateOptions options)
    : resolver_(std::move(resolver)), options_(std::move(options)) {}

namespace {

// Builds the provider-visible message history for the seat about to speak.
std::vector<ChatMessage> build_messages(const DebatePrompts& prompts,
                                        const Battle& battle,
                                        const TurnSpec& spec,
                                        const std::vector<Turn>& turns) {
  std::vector<ChatMessage> msgs;
  msgs.push_back({Role::System, prompts.system_prompt});

  // Walk the battle so far. Own turns become assistant messages; stretches of
  // opponent turns become user messages carrying the redacted rendering.
  std::vector<Turn> pending_opponent;
  bool first_user_sent = false;
  auto flush_opponent = [&](const std::string& guide) {
    std::string redacted = render_redacted(pending_opponent);
    pending_opponent.clear();
    std::string content = guide;
    if (!redacted.empty())
      content += " " + prompts.opponent_prefix + redacted;
    msgs.push_back({Role::User, content});
  };

  for (const Turn& t : turns) {
    if (t.spec.speaker == spec.speaker) {
      if (!first_user_sent) {
        // own first turn: the initial question prompt preceded it
        std::string guide = prompts.follow_guide + "\n\n" +
                            action_guide(t.spec.required_actions, t.spec.word_budget);
        std::string content = guide;
        if (!pending_opponent.empty()) {
          content += " " + prompts.opponent_prefix + render_redacted(pending_opponent);
          pending_opponent.clear();
        }
        content += "\n\n" + prompts.initial_input_prefix + battle.question.text;
        msgs.push_back({Role::User, content});
        first_user_sent = true;
      } else {
        flush_opponent(action_guide(t.spec.required_actions, t.spec.word_budget));
      }
      // own raw output, THINK included
      std::ostringstream own;
      for (size_t i = 0; i < t.segments.size(); ++i) {
        if (i) own << "\n";
        own << "<" << action_name(t.segments[i].kind) << ">"
            << t.segments[i].text << "</" << action_name(t.segments[i].kind)
            << ">";
      }
      msgs.push_back({Role::Assistant, own.str()});
    } else {
      pending_opponent.push_back(t);
    }
  }

  // Prompt for the turn about to be taken.
  std::string guide;
  if (!first_user_sent) {
    guide = prompts.follow_guide + "\n\n" +
            action_guide(spec.required_actions, spec.word_budget);
    std::string content = guide;
    if (!pending_opponent.empty()) {
      content += " " + prompts.opponent_prefix + render_redacted(pending_opponent);
      pending_opponent.clear();
    }
    content += "\n\n" + prompts.initial_input_prefix + battle.question.text;
    msgs.push_back({Role::User, content});
  } else {
    flush_opponent(action_guide(spec.required_actions, spec.word_budget));
  }
  return msgs;
}

}  // namespace

Battle DebateEngine::run_battle(
    const std::string& battle_id, const Question& question,
    const std::string& a, const std::string& b, std::int64_t seed,
    const std::optional<std::string>& reference_judge) {
  if (a == b) throw validation_error("a battle needs two distinct players");

  Battle battle;
  battle.id = battle_id;
  battle.question = question;
  battle.seed = seed;

  // Seat randomization, stable in the seed.
  std::uint64_t h = hash_combine(fnv1a(battle_id), static_cast<std::uint64_t>(seed));
  bool swap = (h & 1) != 0;
  battle.player_a = swap ? b : a;
  battle.player_b = swap ? a : b;

  const Category& cat = category_by_name(question.category);

  if (is_logical_category(cat.name) && reference_judge) {
    try {
      ChatRequest req;
      req.messages.push_back(
          {Role::User, "Answer this question as accurately and concisely as "
                       "you can:\n\n" + question.text});
      req.max_tokens = token_cap(cat.long_form ? 400 : 300);
      req.temperature = 0.0;
      req.model_ref = *reference_judge;
      req.seed = static_cast<std::int64_t>(hash_combine(h, fnv1a("reference")));
      Completion c = resolver_(*reference_judge).complete(req);
      battle.reference_answer = c.text;
    } catch (const Error&) {
      battle.void_battle = true;
      battle.void_reason = "reference answer generation failed";
      return battle;
    }
  }

  for (const TurnSpec& spec : turn_plan(cat)) {
    const std::string& player =
        spec.speaker == Seat::A ? battle.player_a : battle.player_b;
    ChatRequest req;
    req.messages = build_messages(options_.prompts, battle, spec, battle.turns);
    req.max_tokens = token_cap(spec.word_budget);
    req.temperature = options_.temperature;
    req.model_ref = player;
    req.seed = static_cast<std::int64_t>(
        hash_combine(h, static_cast<std::uint64_t>(spec.index)));

    Completion c;
    try {
      c = resolver_(player).complete(req);
    } catch (const Error&) {
      battle.void_battle = true;
      battle.void_reason =
          "provider failure on turn " + std::to_string(spec.index);
      return battle;
    }

    Turn turn;
    turn.spec = spec;
    turn.player = player;
    std::string text =
        truncate_to_token_cap(c.text, req.max_tokens, turn.truncated);
    auto [segments, violation] = parse_actions(text, spec.required_actions);
    turn.segments = std::move(segments);
    turn.violation = violation;
    battle.turns.push_back(std::move(turn));
  }
  return battle;
}

json battle_header_json(const Battle& battle) {
  json h;
  h["type"] = "header";
  h["battle_id"] = battle.id;
  h["question"] = battle.question.to_json();
  h["player_a"] = battle.player_a;
  h["player_b"] = battle.player_b;
  h["seed"] = battle.seed;
  if (battle.reference_answer) h["reference_answer"] = *battle.reference_answer;
  h["void"] = battle.void_battle;
  if (battle.void_reason) h["void_reason"] = *battle.void_reason;
  return h;
}

json turn_json(const Turn& turn, const std::string& battle_id) {
  json t;
  t["type"] = "turn";
  t["battle_id"] = battle_id;
  t["turn_index"] = turn.spec.index;
  t["seat"] = seat_name(turn.spec.speaker);
  t["player_id"] = turn.player;
  json segs = json::array();
  for (const Segment& s : turn.segments) {
    json sj;
    sj["kind"] = action_name(s.kind);
    sj["text"] = s.text;
    segs.push_back(sj);
  }
  t["segments"] = segs;
  t["truncated"] = turn.truncated;
  if (turn.violation) t["violation"] = *turn.violation;
  return t;
}

void save_battle(const std::filesystem::path& path, const Battle& battle) {
  std::string body = battle_header_json(battle).dump() + "\n";
  for (const Turn& t : battle.turns) body += turn_json(t, battle.id).dump() + "\n";
  write_file_atomic(path, body);
}

Battle load_battle(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::string line;
  Battle battle;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    json j = parse_json(line, path.string());
    if (j.at("type") == "header") {
      battle.id = j.at("battle_id").get<std::string>();
      battle.question = Question::from_json(j.at("question"));
      battle.player_a = j.at("player_a").get<std::string>();
      battle.player_b = j.at("player_b").get<std::string>();
      battle.seed = j.at("seed").get<std::int64_t>();
      if (j.contains("reference_answer"))
        battle.reference_answer = j["reference_answer"].get<std::string>();
      battle.void_battle = j.value("void", false);
      if (j.contains("void_reason"))
        battle.void_reason = j["void_reason"].get<std::string>();
      have_header = true;
    } else if (j.at("type") == "turn") {
      Turn t;
      t.spec.index = j.at("turn_index").get<int>();
      t.spec.speaker = j.at("seat").get<std::string>() == "A" ? Seat::A : Seat::B;
      t.player = j.at("player_id").get<std::string>();
      for (const auto& sj : j.at("segments"))
        t.segments.push_back({action_from_name(sj.at("kind").get<std::string>()),
                              sj.at("text").get<std::string>()});
      t.truncated = j.value("truncated", false);
      if (j.contains("violation"))
        t.violation = j["violation"].get<std::string>();
      battle.turns.push_back(std::move(t));
    }
  }
  if (!have_header)
    throw Error(ErrorKind::Protocol, "battle file missing header: " + path.string());
  // rebuild specs from the plan so budgets and required actions are exact
  const Category& cat = category_by_name(battle.question.category);
  auto plan = turn_plan(cat);
  for (Turn& t : battle.turns) {
    for (const TurnSpec& s : plan)
      if (s.index == t.spec.index) t.spec = s;
  }
  return battle;
}

}  // namespace arena
