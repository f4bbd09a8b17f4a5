#include "arena/swiss.hpp"

#include <algorithm>
#include <cmath>

namespace arena {

json Pairing::to_json() const {
  json j;
  j["round"] = round;
  json ms = json::array();
  for (const auto& [a, b] : matches) ms.push_back(json::array({a, b}));
  j["matches"] = ms;
  if (bye) j["bye"] = *bye;
  return j;
}

Pairing Pairing::from_json(const json& j) {
  Pairing p;
  p.round = j.at("round").get<int>();
  for (const auto& m : j.at("matches"))
    p.matches.emplace_back(m[0].get<std::string>(), m[1].get<std::string>());
  if (j.contains("bye")) p.bye = j["bye"].get<std::string>();
  return p;
}

int rounds_required(int n) {
  if (n < 2) throw validation_error("a tournament needs at least 2 players");
  int r = 0;
  // smallest r with 2^r >= n
  while ((1ll << r) < n) ++r;
  return r;
}

PairKey pair_key(const std::string& a, const std::string& b) {
  return a < b ? PairKey{a, b} : PairKey{b, a};
}

namespace {

bool pair_rest(const std::vector<std::string>& order, std::vector<bool>& used,
               const std::set<PairKey>& played,
               std::vector<std::pair<std::string, std::string>>& out) {
  size_t first = order.size();
  for (size_t i = 0; i < order.size(); ++i) {
    if (!used[i]) { first = i; break; }
  }
  if (first == order.size()) return true;
  used[first] = true;

  // opponents by rank proximity
  std::vector<size_t> candidates;
  for (size_t i = first + 1; i < order.size(); ++i)
    if (!used[i]) candidates.push_back(i);
  std::sort(candidates.begin(), candidates.end(), [&](size_t x, size_t y) {
    return x < y;  // already rank-ordered below first
  });

  for (size_t cand : candidates) {
    if (played.count(pair_key(order[first], order[cand]))) continue;
    used[cand] = true;
    out.emplace_back(order[first], order[cand]);
    if (pair_rest(order, used, played, out)) return true;
    out.pop_back();
    used[cand] = false;
  }
  used[first] = false;
  return false;
}

}  // namespace

Pairing next_pairing(const std::vector<std::string>& standings, int round,
                     const std::set<PairKey>& played,
                     const std::set<std::string>& had_bye) {
  Pairing pairing;
  pairing.round = round;

  std::vector<std::string> order = standings;
  if (order.size() < 2)
    throw validation_error("cannot pair fewer than 2 players");

  if (order.size() % 2 == 1) {
    // lowest-ranked player without a previous bye sits out
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (!had_bye.count(*it)) {
        pairing.bye = *it;
        order.erase(std::next(it).base());
        break;
      }
    }
    if (!pairing.bye) {
      // everyone has had one; give a second bye to the lowest-ranked
      pairing.bye = order.back();
      order.pop_back();
    }
  }

  std::vector<bool> used(order.size(), false);
  if (!pair_rest(order, used, played, pairing.matches)) {
    std::string stuck;
    for (const auto& id : order) stuck += id + " ";
    throw validation_error("no repeat-free pairing exists for round " +
                           std::to_string(round) + " among: " + stuck);
  }
  return pairing;
}

std::string opponent_by_mmlu(const Registry& registry,
                             const std::string& newcomer,
                             const std::vector<std::string>& incumbents) {
  if (incumbents.empty())
    throw validation_error("no incumbents to pair against");
  double target = registry.get(newcomer).mmlu_seed;
  std::string best;
  double best_gap = 0;
  for (const std::string& id : incumbents) {
    if (id == newcomer) continue;
    double gap = std::abs(registry.get(id).mmlu_seed - target);
    if (best.empty() || gap < best_gap || (gap == best_gap && id < best)) {
      best = id;
      best_gap = gap;
    }
  }
  return best;
}

std::string opponent_by_rating(const RatingTable& table,
                               const std::string& newcomer,
                               const std::vector<std::string>& candidates) {
  if (candidates.empty())
    throw validation_error("no remaining opponents for " + newcomer);
  double target = table.players.count(newcomer)
                      ? table.players.at(newcomer).rating
                      : 1000.0;
  std::string best;
  double best_gap = 0;
  for (const std::string& id : candidates) {
    if (id == newcomer) continue;
    double rating =
        table.players.count(id) ? table.players.at(id).rating : 1000.0;
    double gap = std::abs(rating - target);
    if (best.empty() || gap < best_gap || (gap == best_gap && id < best)) {
      best = id;
      best_gap = gap;
    }
  }
  return best;
}

}  // namespace arena
