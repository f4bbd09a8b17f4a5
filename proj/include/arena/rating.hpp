#pragma once

#include <map>
#include <string>
#include <vector>

#include "arena/util.hpp"

namespace arena {

enum class Outcome { WinFirst, WinSecond, Tie };

std::string outcome_name(Outcome o);
Outcome outcome_from_name(const std::string& name);

struct MatchRecord {
  std::string first;
  std::string second;
  std::string battle_id;
  Outcome outcome = Outcome::Tie;
  double weight = 1.0;

  json to_json() const;
  static MatchRecord from_json(const json& j);
};

// One online Elo step. Conserves the rating sum exactly.
std::pair<double, double> elo_update(double r_first, double r_second,
                                     Outcome outcome, double k_factor);

struct FitMeta {
  double lambda = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct PlayerRating {
  double rating = 1000.0;
  int games = 0;
  bool anchored_only = false;  // appeared in no record; pinned to the anchor
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool has_ci = false;
};

struct RatingTable {
  std::map<std::string, PlayerRating> players;
  std::string method;  // "online-elo" or "bt-mle"
  FitMeta fit_meta;

  std::vector<std::string> ranking() const;  // best first, id tie-break
  json to_leaderboard_json() const;
  std::string to_text_table() const;
};

// Bradley-Terry maximum likelihood on the Elo scale (base-10 logistic, 400
// scaling), ties as half a win for each side, L2 pull toward the 1000
// anchor, solved by damped Newton. Ratings are re-centered to mean 1000.
RatingTable fit_bt(const std::vector<MatchRecord>& records, double lambda,
                   const std::vector<std::string>& all_players = {});

// Sequential Elo over the records in order, from a 1000 start (or seeded
// standings when provided).
RatingTable online_elo(const std::vector<MatchRecord>& records,
                       double k_factor,
                       const std::map<std::string, double>& initial = {});

struct BootstrapResult {
  std::map<std::string, std::pair<double, double>> intervals;  // 2.5/97.5 pct
  int failed_resamples = 0;
};

BootstrapResult bootstrap_ci(const std::vector<MatchRecord>& records,
                             double lambda, int resamples, std::uint64_t seed,
                             const std::vector<std::string>& all_players = {});

}  // namespace arena
