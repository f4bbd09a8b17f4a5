#include "arena/orchestrator.hpp"

#include <algorithm>
#include <future>
#include <sstream>

namespace arena {

json RunConfig::to_json() const {
  json j;
  j["run_id"] = run_id;
  j["language_pack"] = language_pack;
  j["per_category_questions"] = per_category_questions;
  j["discussion_rounds"] = discussion_rounds;
  j["k_factor"] = k_factor;
  j["lambda"] = lambda;
  j["bootstrap_resamples"] = bootstrap_resamples;
  j["parallelism"] = parallelism;
  j["seed"] = seed;
  j["examiner"] = examiner;
  j["mode"] = mode;
  j["debater_temperature"] = debater_temperature;
  j["judge_temperature"] = judge_temperature;
  j["examiner_temperature"] = examiner_temperature;
  j["registry_path"] = registry_path;
  j["providers_path"] = providers_path;
  j["output_root"] = output_root;
  return j;
}

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  c.run_id = j.at("run_id").get<std::string>();
  c.language_pack = j.value("language_pack", std::string("en"));
  c.per_category_questions = j.value("per_category_questions", 5);
  c.discussion_rounds = j.value("discussion_rounds", 1);
  c.k_factor = j.value("k_factor", 32.0);
  c.lambda = j.value("lambda", 0.1);
  c.bootstrap_resamples = j.value("bootstrap_resamples", 200);
  c.parallelism = j.value("parallelism", 1);
  c.seed = j.value("seed", static_cast<std::int64_t>(0));
  c.examiner = j.at("examiner").get<std::string>();
  c.mode = j.value("mode", std::string("full"));
  c.debater_temperature = j.value("debater_temperature", 0.7);
  c.judge_temperature = j.value("judge_temperature", 0.0);
  c.examiner_temperature = j.value("examiner_temperature", 0.7);
  c.registry_path = j.at("registry_path").get<std::string>();
  c.providers_path = j.at("providers_path").get<std::string>();
  c.output_root = j.value("output_root", std::string("runs"));
  return c;
}

void RunConfig::validate() const {
  if (run_id.empty()) throw validation_error("run_id must be non-empty");
  if (per_category_questions < 1)
    throw validation_error("per_category_questions must be >= 1");
  if (discussion_rounds < 0)
    throw validation_error("discussion_rounds must be >= 0");
  if (mode != "full" && mode != "no-debate" && mode != "no-discussion")
    throw validation_error("unknown mode: " + mode);
  if (examiner.empty()) throw validation_error("examiner must be set");
  if (parallelism < 1) throw validation_error("parallelism must be >= 1");
}

Orchestrator::Orchestrator(RunConfig config, Options options)
    : config_(std::move(config)), options_(options) {
  config_.validate();
  registry_ = Registry::load(config_.registry_path);
  if (!registry_.contains(config_.examiner))
    throw validation_error("examiner not registered: " + config_.examiner);
  load_providers();

  debate_prompts_ = DebatePrompts::english();
  judge_prompts_ = JudgePrompts::english();
  if (config_.language_pack != "en") {
    json pack = load_json_file(config_.language_pack);
    if (pack.contains("debate_system_prompt"))
      debate_prompts_.system_prompt = pack["debate_system_prompt"];
    if (pack.contains("opponent_prefix"))
      debate_prompts_.opponent_prefix = pack["opponent_prefix"];
    if (pack.contains("initial_input_prefix"))
      debate_prompts_.initial_input_prefix = pack["initial_input_prefix"];
    if (pack.contains("follow_guide"))
      debate_prompts_.follow_guide = pack["follow_guide"];
    if (pack.contains("judge_initial_prompt"))
      judge_prompts_.initial_prompt = pack["judge_initial_prompt"];
    if (pack.contains("judge_discussion_prompt"))
      judge_prompts_.discussion_prompt = pack["judge_discussion_prompt"];
    if (pack.contains("reference_header"))
      judge_prompts_.reference_header = pack["reference_header"];
  }

  journal_ = std::make_unique<Journal>(run_dir() / "journal.jsonl");
}

Orchestrator::~Orchestrator() = default;

std::filesystem::path Orchestrator::run_dir() const {
  return std::filesystem::path(config_.output_root) / config_.run_id;
}

void Orchestrator::load_providers() {
  json doc = load_json_file(config_.providers_path);
  if (doc.contains("profiles")) {
    for (auto it = doc["profiles"].begin(); it != doc["profiles"].end(); ++it)
      profiles_[it.key()] = ProviderProfile::from_json(it.key(), it.value());
  }
  if (doc.contains("latent_skill")) {
    latent_ = LatentSkillConfig::from_json(doc["latent_skill"]);
    have_latent_ = true;
  }
  if (doc.contains("scripts")) scripts_ = doc["scripts"];
}

Gateway& Orchestrator::gateway_for(const std::string& player_id) {
  std::lock_guard<std::mutex> lock(gateway_mu_);
  auto it = gateways_.find(player_id);
  if (it != gateways_.end()) return *it->second;

  const Player& player = registry_.get(player_id);
  auto pit = profiles_.find(player.provider_binding);
  if (pit == profiles_.end())
    throw config_error("player " + player_id + " references unknown provider '" +
                       player.provider_binding + "'");
  const ProviderProfile& profile = pit->second;

  std::shared_ptr<ChatBackend> backend;
  switch (profile.kind) {
    case ProviderKind::HttpOpenAiCompatible:
      backend = std::make_shared<HttpBackend>(profile);
      break;
    case ProviderKind::LatentSkillSim: {
      if (!have_latent_)
        throw config_error("latent_skill section missing from provider config");
      backend = std::make_shared<SimBackend>(player_id, latent_,
                                             options_.sim_discussion);
      break;
    }
    case ProviderKind::Scripted: {
      json script;
      if (scripts_.contains(player_id)) script = scripts_[player_id];
      else if (scripts_.contains(profile.name)) script = scripts_[profile.name];
      else throw config_error("no script for player " + player_id);
      std::vector<std::string> replies;
      for (const auto& r : script.value("replies", json::array()))
        replies.push_back(r.get<std::string>());
      auto sb = std::make_shared<ScriptedBackend>(std::move(replies));
      for (const auto& rule : script.value("rules", json::array()))
        sb->add_rule(rule[0].get<std::string>(), rule[1].get<std::string>());
      backend = sb;
      break;
    }
  }

  auto gw = std::make_unique<Gateway>(profile, std::move(backend),
                                      run_dir() / "requests.jsonl");
  auto& ref = *gw;
  gateways_[player_id] = std::move(gw);
  return ref;
}

int Orchestrator::jappend(const std::string& type, json payload) {
  if (options_.stop_after_events > 0 &&
      events_written_ >= options_.stop_after_events)
    throw StopRequested{};
  ++events_written_;
  return journal_->append(type, std::move(payload));
}

Orchestrator::ReplayState Orchestrator::replay_journal() {
  ReplayState state;
  for (const json& rec : Journal::replay(run_dir() / "journal.jsonl")) {
    const std::string type = rec.at("type").get<std::string>();
    if (type == "run_start") {
      state.config = rec.at("config");
    } else if (type == "pairing") {
      Pairing p = Pairing::from_json(rec);
      state.pairings[p.round] = p;
    } else if (type == "outcome") {
      state.outcomes[rec.at("battle_id").get<std::string>()] = rec;
    } else if (type == "round_end") {
      state.rounds_ended.insert(rec.at("round").get<int>());
    } else if (type == "run_end") {
      state.run_ended = true;
    } else if (type == "addition_match") {
      int idx = rec.at("match_index").get<int>();
      state.addition_matches.insert(idx);
      state.addition_opponents[std::to_string(idx)] =
          rec.at("opponent").get<std::string>();
    } else if (type == "addition_end") {
      state.addition_ended = true;
    }
  }
  return state;
}

std::vector<std::string> Orchestrator::mmlu_order() const {
  std::vector<Player> players = registry_.active_players();
  std::sort(players.begin(), players.end(), [](const Player& a, const Player& b) {
    if (a.mmlu_seed != b.mmlu_seed) return a.mmlu_seed > b.mmlu_seed;
    return a.id < b.id;
  });
  std::vector<std::string> out;
  for (const Player& p : players) out.push_back(p.id);
  return out;
}

std::vector<std::string> Orchestrator::standings_order(int round) const {
  if (round <= 1 || records_.empty()) return mmlu_order();
  std::map<std::string, double> initial;
  for (const Player& p : registry_.active_players()) initial[p.id] = 1000.0;
  RatingTable table = online_elo(records_, config_.k_factor, initial);
  return table.ranking();
}

Orchestrator::BattleResult Orchestrator::run_one_battle(
    const std::string& battle_id, const Question& question,
    const std::string& a, const std::string& b,
    const std::vector<std::string>& basis) {
  BattleResult result;
  result.committee = select_committee(basis, a, b, registry_);

  DebateOptions dopts;
  dopts.temperature = config_.debater_temperature;
  dopts.prompts = debate_prompts_;
  DebateEngine engine([this](const std::string& id) -> Gateway& {
    return gateway_for(id);
  }, dopts);

  std::optional<std::string> reference_judge;
  if (is_logical_category(question.category))
    reference_judge = result.committee.members.front();

  std::int64_t battle_seed = static_cast<std::int64_t>(
      hash_combine(fnv1a(battle_id), static_cast<std::uint64_t>(config_.seed)));
  result.battle = engine.run_battle(battle_id, question, a, b, battle_seed,
                                    reference_judge);
  if (result.battle.void_battle) return result;

  JudgeOptions jopts;
  jopts.temperature = config_.judge_temperature;
  jopts.prompts = judge_prompts_;
  jopts.initial_responses_only = config_.mode == "no-debate";
  JudgingPanel panel([this](const std::string& id) -> Gateway& {
    return gateway_for(id);
  }, jopts);

  result.judgments = panel.initial_judgments(result.battle, result.committee);
  std::vector<Judgment> latest = result.judgments;
  int rounds = config_.mode == "no-discussion" ? 0 : config_.discussion_rounds;
  for (int k = 1; k <= rounds; ++k) {
    std::vector<Judgment> next =
        panel.discussion_round(result.battle, result.committee, latest, k);
    for (const Judgment& j : next) result.judgments.push_back(j);
    latest = next;
  }
  try {
    result.verdict = majority_vote(latest);
  } catch (const Error&) {
    result.verdict = std::nullopt;  // all judges abstained
  }
  return result;
}

void Orchestrator::run_match(int round, const std::string& a,
                             const std::string& b,
                             const ReplayState& replayed,
                             const std::string& match_tag,
                             const std::vector<std::string>& basis) {
  // Question set for this pairing (deterministic in the run seed).
  std::filesystem::path qpath = run_dir() / "questions" / (match_tag + ".jsonl");
  std::vector<Question> questions;
  if (std::filesystem::exists(qpath)) {
    questions = load_question_set(qpath);
  } else {
    QuestionFactory factory(gateway_for(config_.examiner), config_.examiner,
                            config_.examiner_temperature);
    std::int64_t qseed = static_cast<std::int64_t>(hash_combine(
        fnv1a("questions:" + match_tag), static_cast<std::uint64_t>(config_.seed)));
    questions = factory.generate_set(config_.per_category_questions, match_tag,
                                     qseed);
    save_question_set(qpath, questions);
  }

  struct Slot {
    std::string battle_id;
    bool pending = false;
    BattleResult result;
  };
  std::vector<Slot> slots(questions.size());
  for (size_t i = 0; i < questions.size(); ++i) {
    slots[i].battle_id = match_tag + "-b" + std::to_string(i);
    slots[i].pending = replayed.outcomes.count(slots[i].battle_id) == 0;
  }

  // Pending battles may run concurrently; journaling stays in battle order.
  std::vector<size_t> pending;
  for (size_t i = 0; i < slots.size(); ++i)
    if (slots[i].pending) pending.push_back(i);
  size_t cursor = 0;
  while (cursor < pending.size()) {
    size_t chunk = std::min<size_t>(config_.parallelism,
                                    pending.size() - cursor);
    std::vector<std::future<BattleResult>> futures;
    for (size_t c = 0; c < chunk; ++c) {
      size_t idx = pending[cursor + c];
      futures.push_back(std::async(
          chunk == 1 ? std::launch::deferred : std::launch::async,
          [this, idx, &slots, &questions, &a, &b, &basis]() {
            return run_one_battle(slots[idx].battle_id, questions[idx], a, b,
                                  basis);
          }));
    }
    for (size_t c = 0; c < chunk; ++c)
      slots[pending[cursor + c]].result = futures[c].get();
    cursor += chunk;
  }

  for (size_t i = 0; i < slots.size(); ++i) {
    Slot& slot = slots[i];
    if (!slot.pending) {
      // already journaled: recover the record
      const json& ev = replayed.outcomes.at(slot.battle_id);
      if (!ev.value("void", false) && ev.contains("record"))
        records_.push_back(MatchRecord::from_json(ev["record"]));
      continue;
    }
    BattleResult& r = slot.result;
    save_battle(run_dir() / "battles" / (slot.battle_id + ".jsonl"), r.battle);

    json ev;
    ev["battle_id"] = slot.battle_id;
    if (r.battle.void_battle) {
      ev["void"] = true;
      ev["void_reason"] = r.battle.void_reason.value_or("");
      jappend("outcome", ev);
      continue;
    }

    // judgments side log
    for (const Judgment& j : r.judgments) {
      json jj;
      jj["battle_id"] = slot.battle_id;
      jj["judge_id"] = j.judge;
      jj["round"] = j.round;
      jj["rationale"] = j.rationale;
      jj["verdict"] = j.verdict ? verdict_name(*j.verdict) : "abstain";
      append_line(run_dir() / "judgments.jsonl", jj.dump());
    }

    ev["committee"] = r.committee.members;
    if (r.committee.shortage) ev["shortage"] = *r.committee.shortage;
    if (r.verdict) {
      ev["verdict"] = verdict_name(*r.verdict);
      MatchRecord record;
      record.first = a;
      record.second = b;
      record.battle_id = slot.battle_id;
      if (*r.verdict == Verdict::Tie) record.outcome = Outcome::Tie;
      else if ((*r.verdict == Verdict::A && r.battle.player_a == a) ||
               (*r.verdict == Verdict::B && r.battle.player_b == a))
        record.outcome = Outcome::WinFirst;
      else
        record.outcome = Outcome::WinSecond;
      ev["record"] = record.to_json();

      json outcome_line;
      outcome_line["battle_id"] = slot.battle_id;
      outcome_line["verdict"] = verdict_name(*r.verdict);
      outcome_line["committee"] = r.committee.members;
      if (r.committee.shortage) outcome_line["shortage"] = *r.committee.shortage;
      append_line(run_dir() / "judgments.jsonl", outcome_line.dump());

      jappend("outcome", ev);
      records_.push_back(record);
    } else {
      ev["void"] = true;
      ev["void_reason"] = "no non-abstaining judgments";
      jappend("outcome", ev);
    }
  }
}

RatingTable Orchestrator::run_tournament() {
  ReplayState replayed = replay_journal();
  records_.clear();
  played_.clear();
  had_bye_.clear();

  if (replayed.config) {
    if (*replayed.config != config_.to_json())
      throw validation_error("config does not match the journaled run; "
                             "mid-run config mutation is rejected");
  } else {
    json payload;
    payload["config"] = config_.to_json();
    jappend("run_start", payload);
  }

  const int n = static_cast<int>(registry_.active_players().size());
  const int rounds = rounds_required(n);

  for (int round = 1; round <= rounds; ++round) {
    std::vector<std::string> standings = standings_order(round);

    Pairing pairing;
    auto pit = replayed.pairings.find(round);
    if (pit != replayed.pairings.end()) {
      pairing = pit->second;
    } else {
      pairing = next_pairing(standings, round, played_, had_bye_);
      json ev = pairing.to_json();
      jappend("pairing", ev);
    }
    for (const auto& [a, b] : pairing.matches) played_.insert(pair_key(a, b));
    if (pairing.bye) had_bye_.insert(*pairing.bye);

    for (const auto& [a, b] : pairing.matches) {
      std::string tag = "r" + std::to_string(round) + "-" + a + "-vs-" + b;
      run_match(round, a, b, replayed, tag, standings);
    }

    if (!replayed.rounds_ended.count(round)) {
      json ev;
      ev["round"] = round;
      ev["standings"] = standings_order(round + 1);
      jappend("round_end", ev);
    }
  }

  if (!replayed.run_ended) jappend("run_end", json::object());

  RatingTable table = final_leaderboard();
  write_leaderboard(table);
  return table;
}

RatingTable Orchestrator::add_model(const std::string& new_player) {
  ReplayState replayed = replay_journal();
  if (!replayed.run_ended)
    throw validation_error("add-model requires a completed tournament");
  if (!registry_.contains(new_player))
    throw validation_error("new player not registered: " + new_player);

  // Rebuild incumbent state by walking the completed structure.
  records_.clear();
  played_.clear();
  had_bye_.clear();
  {
    // replay main-run records in structural order
    std::vector<json> ordered;
    for (const json& rec : Journal::replay(run_dir() / "journal.jsonl")) {
      if (rec.at("type") == "outcome" && !rec.value("void", false) &&
          rec.contains("record"))
        ordered.push_back(rec["record"]);
    }
    for (const json& r : ordered) records_.push_back(MatchRecord::from_json(r));
    for (const auto& [round, pairing] : replayed.pairings) {
      for (const auto& [a, b] : pairing.matches) played_.insert(pair_key(a, b));
      if (pairing.bye) had_bye_.insert(*pairing.bye);
    }
  }
  size_t incumbent_record_count = records_.size();

  std::vector<std::string> incumbents;
  for (const Player& p : registry_.active_players())
    if (p.id != new_player) incumbents.push_back(p.id);

  const int n_new = static_cast<int>(incumbents.size()) + 1;
  const int k = rounds_required(n_new);

  std::vector<std::string> all_ids;
  for (const Player& p : registry_.active_players()) all_ids.push_back(p.id);

  std::set<std::string> faced;
  for (const MatchRecord& r : records_) {
    if (r.first == new_player) faced.insert(r.second);
    if (r.second == new_player) faced.insert(r.first);
  }

  for (int m = 0; m < k; ++m) {
    std::string opponent;
    auto oit = replayed.addition_opponents.find(std::to_string(m));
    if (oit != replayed.addition_opponents.end()) {
      opponent = oit->second;
    } else {
      std::vector<std::string> candidates;
      for (const std::string& id : incumbents)
        if (!faced.count(id)) candidates.push_back(id);
      if (m == 0) {
        opponent = opponent_by_mmlu(registry_, new_player, candidates);
      } else {
        RatingTable current = fit_bt(records_, config_.lambda, all_ids);
        opponent = opponent_by_rating(current, new_player, candidates);
      }
      json ev;
      ev["match_index"] = m;
      ev["player"] = new_player;
      ev["opponent"] = opponent;
      jappend("addition_match", ev);
    }
    faced.insert(opponent);
    played_.insert(pair_key(new_player, opponent));

    // committee basis: current BT ranking over everyone
    RatingTable basis_table = fit_bt(records_, config_.lambda, all_ids);
    std::string tag = "add-" + new_player + "-m" + std::to_string(m);
    run_match(0, new_player, opponent, replayed, tag, basis_table.ranking());

    RatingTable refit = fit_bt(records_, config_.lambda, all_ids);
    json hist;
    hist["match_index"] = m;
    hist["player"] = new_player;
    hist["rating"] = refit.players.at(new_player).rating;
    append_line(run_dir() / "rating_history.jsonl", hist.dump());
  }

  // incumbents' records are append-only: the prefix is untouched
  (void)incumbent_record_count;

  if (!replayed.addition_ended) jappend("addition_end", json::object());

  RatingTable table = final_leaderboard();
  write_leaderboard(table);
  return table;
}

RatingTable Orchestrator::final_leaderboard() {
  std::vector<std::string> all_ids;
  for (const Player& p : registry_.active_players()) all_ids.push_back(p.id);
  RatingTable table = fit_bt(records_, config_.lambda, all_ids);
  if (config_.bootstrap_resamples > 0 && !records_.empty()) {
    BootstrapResult ci = bootstrap_ci(
        records_, config_.lambda, config_.bootstrap_resamples,
        static_cast<std::uint64_t>(config_.seed) ^ 0x626f6f74ull, all_ids);
    for (auto& [id, pr] : table.players) {
      auto it = ci.intervals.find(id);
      if (it != ci.intervals.end()) {
        pr.ci_low = it->second.first;
        pr.ci_high = it->second.second;
        pr.has_ci = true;
      }
    }
  }
  return table;
}

void Orchestrator::write_leaderboard(const RatingTable& table) {
  write_file_atomic(run_dir() / "leaderboard.json",
                    table.to_leaderboard_json().dump(2) + "\n");
  write_file_atomic(run_dir() / "leaderboard.txt", table.to_text_table());
}

}  // namespace arena
