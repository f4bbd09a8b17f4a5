#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arena/rating.hpp"
#include "arena/registry.hpp"

namespace arena {

struct Pairing {
  int round = 1;
  std::vector<std::pair<std::string, std::string>> matches;
  std::optional<std::string> bye;

  json to_json() const;
  static Pairing from_json(const json& j);
};

// Swiss depth: ceil(log2 n) rounds.
int rounds_required(int n);

using PairKey = std::pair<std::string, std::string>;
PairKey pair_key(const std::string& a, const std::string& b);

// Pairs adjacent-ranked players without repeating any earlier pair, with
// backtracking when the greedy pass gets stuck. Odd field: the lowest-ranked
// player without a previous bye sits out.
Pairing next_pairing(const std::vector<std::string>& standings, int round,
                     const std::set<PairKey>& played,
                     const std::set<std::string>& had_bye);

// First opponent for a newcomer: closest MMLU seed, id tie-break.
std::string opponent_by_mmlu(const Registry& registry,
                             const std::string& newcomer,
                             const std::vector<std::string>& incumbents);

// Later opponents: closest current rating among not-yet-faced incumbents.
std::string opponent_by_rating(const RatingTable& table,
                               const std::string& newcomer,
                               const std::vector<std::string>& candidates);

}  // namespace arena
