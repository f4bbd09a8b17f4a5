// Acceptance checks. Each criterion prints exactly one PASS/FAIL line; the
// process exits non-zero when any criterion fails. Everything runs offline
// against the simulated and scripted providers.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "arena/analysis.hpp"
#include "arena/debate.hpp"
#include "arena/judging.hpp"
#include "arena/orchestrator.hpp"
#include "arena/rating.hpp"
#include "arena/registry.hpp"
#include "arena/sim_provider.hpp"
#include "arena/swiss.hpp"
#include "arena/tokens.hpp"

namespace fs = std::filesystem;
using namespace arena;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool ok,
            const std::string& detail = "") {
  std::printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", number,
              name.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

template <typename Fn>
void criterion(int number, const std::string& name, Fn fn) {
  try {
    std::string detail;
    bool ok = fn(detail);
    report(number, name, ok, detail);
  } catch (const std::exception& e) {
    report(number, name, false, std::string("exception: ") + e.what());
  }
}

// Temporary tournament setup: n simulated players m0..m(n-1) with latent
// skill step*i and the given judge noise.
struct Arena {
  fs::path dir;
  RunConfig config;

  Arena(const std::string& tag, int players, double skill_step,
        double noise_sigma) {
    dir = fs::temp_directory_path() / ("acceptance-" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);

    Registry reg;
    json skill = json::object();
    for (int i = 0; i < players; ++i) {
      Player p;
      p.id = "m" + std::to_string(i);
      p.display_name = p.id;
      p.family = "fam" + std::to_string(i);
      p.provider_binding = "sim";
      p.mmlu_seed = 40.0 + 2.0 * i;
      reg.register_player(p);
      skill[p.id] = skill_step * i;
    }
    reg.save(dir / "registry.json");

    json providers;
    providers["profiles"]["sim"]["kind"] = "latent-skill-sim";
    providers["latent_skill"]["skill"] = skill;
    providers["latent_skill"]["noise_sigma"] = noise_sigma;
    providers["latent_skill"]["seed"] = 3;
    write_file_atomic(dir / "providers.json", providers.dump(2));

    config.run_id = "run";
    config.per_category_questions = 1;
    config.examiner = "m0";
    config.parallelism = 4;
    config.bootstrap_resamples = 0;
    config.registry_path = (dir / "registry.json").string();
    config.providers_path = (dir / "providers.json").string();
    config.output_root = (dir / "runs").string();
  }

  ~Arena() { fs::remove_all(dir); }

  fs::path run_dir() const {
    return fs::path(config.output_root) / config.run_id;
  }
};

// Spearman of a fitted table against the descending-skill truth m(n-1)..m0.
double spearman_vs_skill(const RatingTable& table, int players) {
  std::vector<std::string> truth;
  for (int i = players - 1; i >= 0; --i) truth.push_back("m" + std::to_string(i));
  return spearman(ranks_from_order(table.ranking()), ranks_from_order(truth));
}

MatchRecord rec(const std::string& a, const std::string& b, Outcome o) {
  MatchRecord r;
  r.first = a;
  r.second = b;
  r.battle_id = a + "-" + b;
  r.outcome = o;
  return r;
}

// Independent 1-D oracle for the two-player BT fit (see rating_test.cpp):
// with an L2 penalty the optimum splits symmetrically around the anchor, so
// only the gap g in s-units is free; golden-section search minimizes
//   f(g) = lambda * g^2 / 2 - w1*log p(g) - w2*log(1 - p(g)).
double oracle_gap(double w1, double w2, double lambda) {
  auto f = [&](double g) {
    double p = 1.0 / (1.0 + std::pow(10.0, -g));
    double penalty = lambda * g * g / 2.0;
    double ll = 0.0;
    if (w1 > 0) ll += w1 * std::log(p);
    if (w2 > 0) ll += w2 * std::log(1.0 - p);
    return penalty - ll;
  };
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = -20.0, hi = 20.0;
  double c = hi - phi * (hi - lo), d = lo + phi * (hi - lo);
  for (int i = 0; i < 200; ++i) {
    if (f(c) < f(d)) { hi = d; d = c; c = hi - phi * (hi - lo); }
    else { lo = c; c = d; d = lo + phi * (hi - lo); }
  }
  return 400.0 * (lo + hi) / 2.0;
}

Judgment vote(const std::string& judge, std::optional<Verdict> v) {
  Judgment j;
  j.judge = judge;
  j.round = 0;
  j.rationale = "because";
  j.verdict = v;
  return j;
}

std::vector<json> read_jsonl(const fs::path& path) {
  std::ifstream in(path);
  std::vector<json> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(parse_json(line, path.string()));
  return out;
}

// --- criteria ---------------------------------------------------------------

bool c1_ranking_recovery(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  std::vector<double> rhos;
  for (int s = 0; s < 10; ++s) {
    Arena arena("c1-" + std::to_string(s), 9, 0.8, 0.5);
    arena.config.seed = 100 + s;
    Orchestrator orch(arena.config);
    rhos.push_back(spearman_vs_skill(orch.run_tournament(), 9));
  }
  std::sort(rhos.begin(), rhos.end());
  double median = (rhos[4] + rhos[5]) / 2.0;
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::ostringstream os;
  os << "median Spearman " << median << " over 10 seeds in " << elapsed << "s";
  detail = os.str();
  return median >= 0.9 && elapsed < 60.0;
}

bool c2_bt_oracle(std::string& detail) {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 300; ++trial) {
    int games = 1 + static_cast<int>(rng() % 10);
    double w1 = 0, w2 = 0;
    std::vector<MatchRecord> records;
    for (int g = 0; g < games; ++g) {
      Outcome o = static_cast<Outcome>(rng() % 3);
      records.push_back(rec("p", "q", o));
      if (o == Outcome::WinFirst) w1 += 1;
      else if (o == Outcome::WinSecond) w2 += 1;
      else { w1 += 0.5; w2 += 0.5; }
    }
    RatingTable t = fit_bt(records, 0.1);
    double gap = t.players.at("p").rating - t.players.at("q").rating;
    double want = oracle_gap(w1, w2, 0.1);
    if (std::abs(gap - want) >= 0.1) {
      detail = "gap off oracle by " + std::to_string(std::abs(gap - want));
      return false;
    }
  }
  // symmetric records settle exactly on the anchor
  RatingTable t = fit_bt({rec("a", "b", Outcome::WinFirst),
                          rec("a", "b", Outcome::WinSecond),
                          rec("a", "b", Outcome::Tie)},
                         0.1);
  if (std::abs(t.players.at("a").rating - 1000.0) > 1e-9 ||
      std::abs(t.players.at("b").rating - 1000.0) > 1e-9) {
    detail = "symmetric records not at the anchor";
    return false;
  }
  detail = "300 random record sets within 0.1 Elo of the 1-D oracle";
  return true;
}

bool c3_elo_conservation(std::string& detail) {
  auto [r1, r2] = elo_update(1000, 1000, Outcome::WinFirst, 32);
  if (r1 != 1016.0 || r2 != 984.0) {
    detail = "canonical update mismatch";
    return false;
  }
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> rating(200, 2600);
  std::uniform_real_distribution<double> kf(1, 64);
  for (int i = 0; i < 5000; ++i) {
    double a = rating(rng), b = rating(rng), k = kf(rng);
    auto [na, nb] = elo_update(a, b, static_cast<Outcome>(rng() % 3), k);
    if (std::abs((na + nb) - (a + b)) > 1e-9) {
      detail = "rating sum drifted";
      return false;
    }
  }
  detail = "sum conserved over 5000 random updates; (1016, 984) exact";
  return true;
}

bool c4_swiss_invariants(std::string& detail) {
  if (rounds_required(9) != 4 || rounds_required(10) != 4) {
    detail = "rounds_required formula mismatch";
    return false;
  }
  for (int n = 4; n <= 16; ++n) {
    for (int seed = 0; seed < 100; ++seed) {
      std::mt19937_64 rng(1000 * n + seed);
      std::vector<std::string> ids;
      for (int i = 0; i < n; ++i) ids.push_back("p" + std::to_string(i));
      std::set<PairKey> played;
      std::set<std::string> had_bye;
      std::map<std::string, int> matches;
      int rounds = rounds_required(n);
      for (int r = 1; r <= rounds; ++r) {
        std::shuffle(ids.begin(), ids.end(), rng);
        Pairing p = next_pairing(ids, r, played, had_bye);
        if (static_cast<int>(p.matches.size()) != n / 2) {
          detail = "wrong match count in a round";
          return false;
        }
        if (p.bye.has_value() != (n % 2 == 1)) {
          detail = "bye present iff the field is odd violated";
          return false;
        }
        for (const auto& [a, b] : p.matches) {
          if (!played.insert(pair_key(a, b)).second) {
            detail = "repeated pair " + a + " vs " + b;
            return false;
          }
          ++matches[a];
          ++matches[b];
        }
        if (p.bye) had_bye.insert(*p.bye);
      }
      for (const std::string& id : ids) {
        int want = rounds - (had_bye.count(id) ? 1 : 0);
        if (matches[id] != want) {
          detail = "bye-adjusted match count violated for " + id;
          return false;
        }
      }
    }
  }
  detail = "n in 4..16 x 100 seeds clean; rounds_required(9)=4, (10)=4";
  return true;
}

bool c5_protocol_invariants(std::string& detail) {
  LatentSkillConfig skills;
  skills.skill = {{"pa", 1.0}, {"pb", -1.0}, {"jj", 0.0}};
  skills.noise_sigma = 0.5;
  skills.seed = 5;
  ProviderProfile profile;
  profile.name = "sim";
  profile.kind = ProviderKind::LatentSkillSim;
  std::map<std::string, std::unique_ptr<Gateway>> gateways;
  for (const std::string& id : {"pa", "pb", "jj"})
    gateways[id] = std::make_unique<Gateway>(
        profile, std::make_shared<SimBackend>(id, skills), fs::path{},
        [](double) {});
  DebateEngine engine(
      [&](const std::string& id) -> Gateway& { return *gateways.at(id); });

  int battles = 0;
  for (const Category& cat : categories()) {
    for (std::int64_t seed = 0; seed < 4; ++seed) {
      Question q;
      q.id = "q-" + cat.name + "-" + std::to_string(seed);
      q.category = cat.name;
      q.text = "acceptance probe question for " + cat.name;
      Battle b = engine.run_battle("acc-" + q.id, q, "pa", "pb", seed,
                                   std::string("jj"));
      if (b.void_battle) {
        detail = "unexpected void battle";
        return false;
      }
      ++battles;

      auto plan = turn_plan(cat);
      if (b.turns.size() != 9 || plan.size() != 9) {
        detail = "schedule is not 9 turns";
        return false;
      }
      std::map<Seat, std::map<ActionKind, int>> counts;
      std::map<Seat, int> budget;
      std::vector<std::string> think_texts;
      for (size_t i = 0; i < 9; ++i) {
        const Turn& t = b.turns[i];
        if (t.spec.index != static_cast<int>(i) + 1 ||
            t.spec.speaker != plan[i].speaker ||
            t.spec.word_budget != plan[i].word_budget) {
          detail = "turn spec deviates from the plan";
          return false;
        }
        int tokens = 0;
        for (const Segment& s : t.segments) {
          if (s.kind == ActionKind::Think) {
            if (!s.text.empty()) think_texts.push_back(s.text);
            continue;
          }
          ++counts[t.spec.speaker][s.kind];
          tokens += approx_token_count(s.text);
        }
        if (tokens > token_cap(t.spec.word_budget)) {
          detail = "segment total above the token cap";
          return false;
        }
        budget[t.spec.speaker] += t.spec.word_budget;
      }
      for (Seat seat : {Seat::A, Seat::B}) {
        auto& c = counts[seat];
        if (c[ActionKind::Respond] != 3 || c[ActionKind::Criticize] != 2 ||
            c[ActionKind::Raise] != 2) {
          detail = "per-seat action multiset violated";
          return false;
        }
        if (budget[seat] != (cat.long_form ? 2000 : 1500)) {
          detail = "per-seat word budget violated";
          return false;
        }
      }
      std::string redacted = render_redacted(b.turns);
      std::string judged = render_for_judges(b, false);
      std::string initial = render_for_judges(b, true);
      for (const std::string& hidden : think_texts)
        for (const std::string* view : {&redacted, &judged, &initial})
          if (view->find(hidden) != std::string::npos) {
            detail = "THINK content leaked into a visible rendering";
            return false;
          }
    }
  }
  detail = std::to_string(battles) + " battles across all 8 categories clean";
  return true;
}

bool c6_judging_invariants(std::string& detail) {
  // two players share a family, so conflicts of both kinds occur
  Arena arena("c6", 6, 0.5, 0.5);
  arena.config.seed = 7;
  {
    Registry reg = Registry::load(arena.config.registry_path);
    Player twin;
    twin.id = "m9";
    twin.display_name = "m9";
    twin.family = "fam0";  // family-mate of m0
    twin.provider_binding = "sim";
    twin.mmlu_seed = 41.0;
    reg.register_player(twin);
    reg.save(arena.config.registry_path);
    json providers = load_json_file(arena.config.providers_path);
    providers["latent_skill"]["skill"]["m9"] = 0.25;
    write_file_atomic(arena.config.providers_path, providers.dump(2));
  }
  Orchestrator orch(arena.config);
  orch.run_tournament();
  Registry reg = Registry::load(arena.config.registry_path);

  int checked = 0;
  for (const json& e : Journal::replay(arena.run_dir() / "journal.jsonl")) {
    if (e.at("type") != "outcome" || !e.contains("record")) continue;
    MatchRecord r = MatchRecord::from_json(e.at("record"));
    for (const auto& judge : e.at("committee")) {
      std::string id = judge.get<std::string>();
      if (id == r.first || id == r.second ||
          reg.same_family(id, r.first) || reg.same_family(id, r.second)) {
        detail = "conflicted judge " + id + " on " + r.battle_id;
        return false;
      }
      ++checked;
    }
  }
  if (checked == 0) {
    detail = "no committees observed";
    return false;
  }

  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 1 + static_cast<int>(rng() % 5);
    std::vector<Judgment> js;
    int count[3] = {0, 0, 0};
    for (int i = 0; i < n; ++i) {
      Verdict v = static_cast<Verdict>(rng() % 3);
      ++count[static_cast<int>(v)];
      js.push_back(vote("j" + std::to_string(i), v));
    }
    Verdict want;
    if (count[0] > count[1] && count[0] > count[2]) want = Verdict::A;
    else if (count[1] > count[0] && count[1] > count[2]) want = Verdict::B;
    else want = Verdict::Tie;
    if (majority_vote(js) != want) {
      detail = "majority vote deviates from the brute-force tally";
      return false;
    }
  }
  std::vector<Judgment> split{vote("j1", Verdict::A), vote("j2", Verdict::A),
                              vote("j3", Verdict::B), vote("j4", Verdict::B),
                              vote("j5", Verdict::Tie)};
  if (majority_vote(split) != Verdict::Tie) {
    detail = "[A,A,B,B,Tie] did not resolve to Tie";
    return false;
  }
  detail = std::to_string(checked) +
           " committee seats conflict-free; 1000 tallies match";
  return true;
}

bool c7_statistics_oracles(std::string& detail) {
  RankVector x{{"a", 1}, {"b", 2}, {"c", 3}, {"d", 4}};
  RankVector y{{"a", 1}, {"b", 3}, {"c", 2}, {"d", 4}};
  if (std::abs(spearman(x, y) - 0.8) > 1e-12) {
    detail = "spearman([1,2,3,4],[1,3,2,4]) != 0.8";
    return false;
  }

  using V = Verdict;
  std::vector<V> a{V::A, V::A, V::B, V::B, V::Tie, V::A};
  std::vector<V> b{V::A, V::B, V::B, V::Tie, V::Tie, V::A};
  // direct-formula evaluation: kappa = (po - pe) / (1 - pe)
  double po = 0;
  double mine[3] = {0, 0, 0}, theirs[3] = {0, 0, 0};
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) ++po;
    ++mine[static_cast<int>(a[i])];
    ++theirs[static_cast<int>(b[i])];
  }
  po /= a.size();
  double pe = 0;
  for (int k = 0; k < 3; ++k)
    pe += (mine[k] / a.size()) * (theirs[k] / a.size());
  double want = (po - pe) / (1 - pe);
  if (std::abs(cohen_kappa(a, b) - want) > 1e-12) {
    detail = "cohen_kappa deviates from the direct formula";
    return false;
  }

  if (agreement_probability({{V::A, V::A, V::B}}) != 1.0 / 3.0) {
    detail = "agreement_probability({A,A,B}) != 1/3";
    return false;
  }
  detail = "spearman, kappa, and agreement match closed forms";
  return true;
}

bool c8_contamination(std::string& detail) {
  std::string planted =
      "Explain how the halting problem implies Rice's theorem and give a "
      "concrete undecidable semantic property with a short proof sketch.";
  std::vector<std::string> corpus{
      "intro to complexity", "benchmark answer key: " + planted + " end",
      "unrelated cooking recipe with garlic and thyme"};
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    if (!contamination_substring(planted, corpus, seed)) {
      detail = "verbatim question escaped the substring detector";
      return false;
    }

  std::string disjoint = "zebra quantum lighthouse ferments purple xylophone";
  if (contamination_substring(disjoint, corpus, 1) ||
      contamination_similarity(disjoint, corpus, bag_of_words_embedder())) {
    detail = "disjoint-vocabulary question was flagged";
    return false;
  }

  // cosine exactly at the 0.8 threshold must not flag (strict inequality)
  Embedder fake = [](const std::string& text) -> std::vector<double> {
    if (text == "q") return {4.0, 3.0};
    return {1.0, 0.0};  // cos = 4/5 exactly
  };
  if (contamination_similarity("q", {"snippet"}, fake, 0.8)) {
    detail = "cosine == 0.8 was flagged despite the strict threshold";
    return false;
  }
  detail = "substring and similarity detectors behave as specified";
  return true;
}

bool c9_durability(std::string& detail) {
  Arena arena("c9", 4, 1.2, 0.5);
  arena.config.seed = 42;
  std::string baseline;
  {
    Orchestrator orch(arena.config);
    orch.run_tournament();
    baseline = read_file(arena.run_dir() / "leaderboard.json");
  }
  // 4 players: 1 run_start + 2 pairings + 32 outcomes + 2 round_ends + run_end
  std::mt19937_64 rng(909);
  for (int i = 0; i < 5; ++i) {
    Arena interrupted("c9-int-" + std::to_string(i), 4, 1.2, 0.5);
    interrupted.config.seed = 42;
    int budget = 1 + static_cast<int>(rng() % 37);
    Orchestrator::Options stop;
    stop.stop_after_events = budget;
    bool stopped = false;
    try {
      Orchestrator orch(interrupted.config, stop);
      orch.run_tournament();
    } catch (const StopRequested&) {
      stopped = true;
    }
    if (!stopped) {
      detail = "budget " + std::to_string(budget) + " did not interrupt";
      return false;
    }
    Orchestrator::Options resume;
    resume.resume = true;
    Orchestrator orch(interrupted.config, resume);
    orch.run_tournament();
    if (read_file(interrupted.run_dir() / "leaderboard.json") != baseline) {
      detail = "leaderboard differs after resume at event " +
               std::to_string(budget);
      return false;
    }
  }

  // additions on a completed 9-player run
  Arena add("c9-add", 9, 0.8, 0.5);
  add.config.seed = 11;
  {
    Registry reg = Registry::load(add.config.registry_path);
    Player newcomer;
    newcomer.id = "zz-new";
    newcomer.display_name = "zz-new";
    newcomer.family = "fam-new";
    newcomer.provider_binding = "sim";
    newcomer.mmlu_seed = 47.0;
    newcomer.active = false;
    reg.register_player(newcomer);
    reg.save(add.config.registry_path);
    json providers = load_json_file(add.config.providers_path);
    providers["latent_skill"]["skill"]["zz-new"] = 3.0;
    write_file_atomic(add.config.providers_path, providers.dump(2));
  }
  {
    Orchestrator orch(add.config);
    orch.run_tournament();
  }
  std::string before = read_file(add.run_dir() / "journal.jsonl");
  {
    Registry reg = Registry::load(add.config.registry_path);
    reg.set_active("zz-new", true);
    reg.save(add.config.registry_path);
  }
  Orchestrator orch(add.config);
  orch.add_model("zz-new");
  std::string after = read_file(add.run_dir() / "journal.jsonl");
  if (after.compare(0, before.size(), before) != 0) {
    detail = "incumbent journal records were rewritten";
    return false;
  }
  int addition_matches = 0;
  for (const json& e : Journal::replay(add.run_dir() / "journal.jsonl"))
    if (e.at("type") == "addition_match") ++addition_matches;
  if (addition_matches != 4) {  // ceil(log2 10)
    detail = "expected 4 placement matches, saw " +
             std::to_string(addition_matches);
    return false;
  }
  detail = "5 interrupted runs byte-identical; 4 placement matches appended";
  return true;
}

bool c10_mechanism_direction(std::string& detail) {
  // (a) adopt-majority discussion raises inter-judge agreement
  Arena arena("c10", 6, 0.5, 1.0);
  arena.config.seed = 21;
  {
    Orchestrator orch(arena.config);
    orch.run_tournament();
  }
  std::map<std::string, std::vector<Verdict>> round0, round1;
  for (const json& j : read_jsonl(arena.run_dir() / "judgments.jsonl")) {
    if (!j.contains("judge_id")) continue;  // battle-level outcome line
    std::string v = j.at("verdict");
    if (v == "abstain") continue;
    auto& bucket = j.at("round") == 0 ? round0 : round1;
    bucket[j.at("battle_id")].push_back(verdict_from_name(v));
  }
  auto values = [](const std::map<std::string, std::vector<Verdict>>& m) {
    std::vector<std::vector<Verdict>> out;
    for (const auto& [id, vs] : m) out.push_back(vs);
    return out;
  };
  double before = agreement_probability(values(round0));
  double after = agreement_probability(values(round1));
  if (round1.empty() || after < before) {
    detail = "discussion did not raise agreement";
    return false;
  }

  // (b) full-debate judging tracks latent skill at least as well as the
  // initial-responses-only ablation on the same seeds
  double full_sum = 0, ablated_sum = 0;
  for (int s = 0; s < 3; ++s) {
    Arena full("c10-full-" + std::to_string(s), 6, 0.4, 1.0);
    full.config.seed = 500 + s;
    Orchestrator orch_full(full.config);
    full_sum += spearman_vs_skill(orch_full.run_tournament(), 6);

    Arena ablated("c10-nodebate-" + std::to_string(s), 6, 0.4, 1.0);
    ablated.config.seed = 500 + s;
    ablated.config.mode = "no-debate";
    Orchestrator orch_ablated(ablated.config);
    ablated_sum += spearman_vs_skill(orch_ablated.run_tournament(), 6);
  }
  std::ostringstream os;
  os << "agreement " << before << " -> " << after << "; Spearman full "
     << full_sum / 3 << " vs no-debate " << ablated_sum / 3;
  detail = os.str();
  return full_sum >= ablated_sum;
}

}  // namespace

int main() {
  criterion(1, "ranking recovery from latent skills", c1_ranking_recovery);
  criterion(2, "BT fit matches the brute-force oracle", c2_bt_oracle);
  criterion(3, "Elo conservation and canonical update", c3_elo_conservation);
  criterion(4, "Swiss pairing invariants", c4_swiss_invariants);
  criterion(5, "debate protocol invariants", c5_protocol_invariants);
  criterion(6, "judging invariants", c6_judging_invariants);
  criterion(7, "statistics oracles", c7_statistics_oracles);
  criterion(8, "contamination detectors", c8_contamination);
  criterion(9, "durability and model addition", c9_durability);
  criterion(10, "mechanism direction checks", c10_mechanism_direction);

  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 10 criteria passed\n");
  return 0;
}
