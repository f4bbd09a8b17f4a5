#include "arena/report.hpp"

#include <fstream>
#include <map>
#include <set>

namespace arena {

namespace {

struct JudgmentLine {
  std::string battle_id;
  std::string judge;
  int round = 0;
  std::optional<Verdict> verdict;
};

}  // namespace

json build_report(const std::filesystem::path& run_dir,
                  const std::optional<std::vector<std::string>>& reference) {
  std::filesystem::path jpath = run_dir / "judgments.jsonl";
  if (!std::filesystem::exists(jpath))
    throw not_found_error("no judgments file under " + run_dir.string());

  std::vector<JudgmentLine> lines;
  std::map<std::string, Verdict> outcomes;  // battle -> majority verdict
  {
    std::ifstream in(jpath);
    std::string raw;
    while (std::getline(in, raw)) {
      if (trim(raw).empty()) continue;
      json rec = parse_json(raw, "judgment line");
      if (rec.contains("judge_id")) {
        JudgmentLine line;
        line.battle_id = rec.at("battle_id").get<std::string>();
        line.judge = rec.at("judge_id").get<std::string>();
        line.round = rec.at("round").get<int>();
        std::string v = rec.at("verdict").get<std::string>();
        if (v != "abstain") line.verdict = verdict_from_name(v);
        lines.push_back(std::move(line));
      } else if (rec.contains("verdict")) {
        outcomes[rec.at("battle_id").get<std::string>()] =
            verdict_from_name(rec.at("verdict").get<std::string>());
      }
    }
  }

  json report;
  report["run_dir"] = run_dir.string();
  report["battles_judged"] = outcomes.size();

  // agreement probability per judging round
  int max_round = 0;
  for (const JudgmentLine& l : lines) max_round = std::max(max_round, l.round);
  json agreement = json::object();
  for (int r = 0; r <= max_round; ++r) {
    std::map<std::string, std::vector<Verdict>> per_battle;
    for (const JudgmentLine& l : lines)
      if (l.round == r && l.verdict) per_battle[l.battle_id].push_back(*l.verdict);
    std::vector<std::vector<Verdict>> grouped;
    for (auto& [id, vs] : per_battle) grouped.push_back(std::move(vs));
    try {
      int skipped = 0;
      double p = agreement_probability(grouped, &skipped);
      json entry;
      entry["probability"] = p;
      entry["battles_skipped"] = skipped;
      agreement["round_" + std::to_string(r)] = entry;
    } catch (const Error&) {
      agreement["round_" + std::to_string(r)] = nullptr;
    }
  }
  report["judge_agreement"] = agreement;

  // per-judge kappa against the committee majority, over the judge's
  // final-round verdicts
  std::map<std::string, std::map<std::string, Verdict>> final_by_judge;
  {
    std::map<std::pair<std::string, std::string>, JudgmentLine> last;
    for (const JudgmentLine& l : lines) {
      auto key = std::make_pair(l.judge, l.battle_id);
      auto it = last.find(key);
      if (it == last.end() || l.round > it->second.round) last[key] = l;
    }
    for (const auto& [key, l] : last)
      if (l.verdict) final_by_judge[key.first][key.second] = *l.verdict;
  }
  json per_judge = json::object();
  for (const auto& [judge, verdicts] : final_by_judge) {
    std::vector<Verdict> mine, majority;
    for (const auto& [battle, v] : verdicts) {
      auto it = outcomes.find(battle);
      if (it == outcomes.end()) continue;
      mine.push_back(v);
      majority.push_back(it->second);
    }
    json entry;
    entry["battles"] = mine.size();
    if (mine.empty()) {
      entry["kappa_vs_majority"] = nullptr;
    } else {
      try {
        entry["kappa_vs_majority"] = cohen_kappa(mine, majority);
      } catch (const Error&) {
        entry["kappa_vs_majority"] = nullptr;  // degenerate distribution
      }
    }
    per_judge[judge] = entry;
  }
  report["judges"] = per_judge;

  // leaderboard echo + optional rank correlation with a reference ordering
  std::filesystem::path lpath = run_dir / "leaderboard.json";
  if (std::filesystem::exists(lpath)) {
    json board = load_json_file(lpath);
    report["leaderboard"] = board;
    if (reference) {
      std::vector<std::string> order;
      for (const auto& row : board) order.push_back(row.at("player_id"));
      report["spearman_vs_reference"] =
          spearman(ranks_from_order(order), ranks_from_order(*reference));
    }
  }

  write_file_atomic(run_dir / "report.json", report.dump(2) + "\n");
  return report;
}

}  // namespace arena
