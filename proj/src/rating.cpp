#include "arena/rating.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include <Eigen/Dense>

namespace arena {

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::WinFirst: return "win_first";
    case Outcome::WinSecond: return "win_second";
    case Outcome::Tie: return "tie";
  }
  return "tie";
}

Outcome outcome_from_name(const std::string& name) {
  if (name == "win_first") return Outcome::WinFirst;
  if (name == "win_second") return Outcome::WinSecond;
  if (name == "tie") return Outcome::Tie;
  throw validation_error("unknown outcome: " + name);
}

json MatchRecord::to_json() const {
  json j;
  j["first"] = first;
  j["second"] = second;
  j["battle_id"] = battle_id;
  j["outcome"] = outcome_name(outcome);
  j["weight"] = weight;
  return j;
}

MatchRecord MatchRecord::from_json(const json& j) {
  MatchRecord r;
  r.first = j.at("first").get<std::string>();
  r.second = j.at("second").get<std::string>();
  r.battle_id = j.value("battle_id", std::string());
  r.outcome = outcome_from_name(j.at("outcome").get<std::string>());
  r.weight = j.value("weight", 1.0);
  if (r.first == r.second)
    throw validation_error("match record pairs a player with itself");
  return r;
}

std::pair<double, double> elo_update(double r_first, double r_second,
                                     Outcome outcome, double k_factor) {
  if (k_factor <= 0) throw validation_error("k_factor must be > 0");
  double expected_first =
      1.0 / (1.0 + std::pow(10.0, (r_second - r_first) / 400.0));
  double score_first;
  switch (outcome) {
    case Outcome::WinFirst: score_first = 1.0; break;
    case Outcome::WinSecond: score_first = 0.0; break;
    default: score_first = 0.5; break;
  }
  double delta = k_factor * (score_first - expected_first);
  return {r_first + delta, r_second - delta};
}

std::vector<std::string> RatingTable::ranking() const {
  std::vector<std::string> ids;
  for (const auto& [id, _] : players) ids.push_back(id);
  std::sort(ids.begin(), ids.end(), [&](const std::string& x, const std::string& y) {
    double rx = players.at(x).rating, ry = players.at(y).rating;
    if (rx != ry) return rx > ry;
    return x < y;
  });
  return ids;
}

json RatingTable::to_leaderboard_json() const {
  json arr = json::array();
  for (const std::string& id : ranking()) {
    const PlayerRating& p = players.at(id);
    json e;
    e["player_id"] = id;
    e["rating"] = p.rating;
    if (p.has_ci) {
      e["ci_low"] = p.ci_low;
      e["ci_high"] = p.ci_high;
    }
    e["games"] = p.games;
    arr.push_back(e);
  }
  return arr;
}

std::string RatingTable::to_text_table() const {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-4s %-28s %8s %16s %6s\n", "#", "player",
                "rating", "95% CI", "games");
  out << line;
  int rank = 1;
  for (const std::string& id : ranking()) {
    const PlayerRating& p = players.at(id);
    char ci[32] = "-";
    if (p.has_ci)
      std::snprintf(ci, sizeof ci, "[%.0f, %.0f]", p.ci_low, p.ci_high);
    std::snprintf(line, sizeof line, "%-4d %-28s %8.1f %16s %6d\n", rank++,
                  id.c_str(), p.rating, ci, p.games);
    out << line;
  }
  return out.str();
}

namespace {

constexpr double kLn10 = 2.302585092994045684;

struct TermList {
  // one entry per directed "i beats j" half-observation
  std::vector<std::tuple<int, int, double>> wins;  // (winner, loser, weight)
};

}  // namespace

RatingTable fit_bt(const std::vector<MatchRecord>& records, double lambda,
                   const std::vector<std::string>& all_players) {
  if (lambda < 0) throw validation_error("lambda must be >= 0");

  std::vector<std::string> ids;
  std::set<std::string> seen;
  auto add_id = [&](const std::string& id) {
    if (seen.insert(id).second) ids.push_back(id);
  };
  for (const auto& r : records) {
    add_id(r.first);
    add_id(r.second);
  }
  std::set<std::string> in_records = seen;
  for (const auto& id : all_players) add_id(id);
  std::sort(ids.begin(), ids.end());

  RatingTable table;
  table.method = "bt-mle";
  table.fit_meta.lambda = lambda;

  const int n = static_cast<int>(ids.size());
  if (n == 0) return table;

  std::map<std::string, int> index;
  for (int i = 0; i < n; ++i) index[ids[i]] = i;

  TermList terms;
  std::vector<int> games(n, 0);
  for (const auto& r : records) {
    int i = index[r.first], j = index[r.second];
    ++games[i];
    ++games[j];
    switch (r.outcome) {
      case Outcome::WinFirst: terms.wins.emplace_back(i, j, r.weight); break;
      case Outcome::WinSecond: terms.wins.emplace_back(j, i, r.weight); break;
      case Outcome::Tie:
        terms.wins.emplace_back(i, j, 0.5 * r.weight);
        terms.wins.emplace_back(j, i, 0.5 * r.weight);
        break;
    }
  }

  // Work in s = (rating - 1000) / 400.  P(i beats j) = 1/(1 + 10^(s_j - s_i)).
  Eigen::VectorXd s = Eigen::VectorXd::Zero(n);

  auto nll = [&](const Eigen::VectorXd& v) {
    double acc = lambda * v.squaredNorm();
    for (const auto& [w, l, wt] : terms.wins) {
      double p = 1.0 / (1.0 + std::pow(10.0, v[l] - v[w]));
      acc -= wt * std::log(std::max(p, 1e-300));
    }
    return acc;
  };

  const int kMaxIter = 200;
  const double kTol = 1e-8;
  bool converged = false;
  int iter = 0;
  for (; iter < kMaxIter; ++iter) {
    Eigen::VectorXd grad = 2.0 * lambda * s;
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(n, n);
    hess.diagonal().setConstant(2.0 * lambda);
    for (const auto& [w, l, wt] : terms.wins) {
      double p = 1.0 / (1.0 + std::pow(10.0, s[l] - s[w]));
      double g = wt * kLn10 * (1.0 - p);
      grad[w] -= g;
      grad[l] += g;
      double h = wt * kLn10 * kLn10 * p * (1.0 - p);
      hess(w, w) += h;
      hess(l, l) += h;
      hess(w, l) -= h;
      hess(l, w) -= h;
    }
    if (grad.norm() < kTol) {
      converged = true;
      break;
    }
    // tiny ridge keeps the solve well-posed at lambda = 0
    hess.diagonal().array() += 1e-10;
    Eigen::VectorXd step = hess.ldlt().solve(-grad);
    double base = nll(s);
    double scale = 1.0;
    Eigen::VectorXd next = s + step;
    int halvings = 0;
    while (nll(next) > base && halvings < 60) {
      scale *= 0.5;
      next = s + scale * step;
      ++halvings;
    }
    if (next == s) {
      // the damped step underflowed below one ulp of s: the objective is flat
      // at machine precision, so this is the optimum as far as doubles can tell
      converged = true;
      break;
    }
    s = next;
  }
  table.fit_meta.iterations = iter;
  table.fit_meta.converged = converged;
  if (!converged) {
    // check once more; the last step may have landed on the optimum
    Eigen::VectorXd grad = 2.0 * lambda * s;
    for (const auto& [w, l, wt] : terms.wins) {
      double p = 1.0 / (1.0 + std::pow(10.0, s[l] - s[w]));
      double g = wt * kLn10 * (1.0 - p);
      grad[w] -= g;
      grad[l] += g;
    }
    if (grad.norm() < kTol) table.fit_meta.converged = converged = true;
  }
  if (!converged)
    throw Error(ErrorKind::Internal,
                "BT fit failed to converge in " + std::to_string(kMaxIter) +
                    " iterations");

  // back to the Elo scale, re-centered so the mean is exactly 1000
  Eigen::VectorXd ratings = 1000.0 + 400.0 * s.array();
  double mean = ratings.mean();
  ratings.array() += 1000.0 - mean;

  for (int i = 0; i < n; ++i) {
    PlayerRating pr;
    pr.rating = ratings[i];
    pr.games = games[i];
    pr.anchored_only = in_records.count(ids[i]) == 0;
    if (pr.anchored_only) pr.rating = 1000.0;
    table.players[ids[i]] = pr;
  }
  return table;
}

RatingTable online_elo(const std::vector<MatchRecord>& records,
                       double k_factor,
                       const std::map<std::string, double>& initial) {
  RatingTable table;
  table.method = "online-elo";
  auto rating_of = [&](const std::string& id) -> PlayerRating& {
    auto it = table.players.find(id);
    if (it == table.players.end()) {
      PlayerRating pr;
      auto init = initial.find(id);
      pr.rating = init == initial.end() ? 1000.0 : init->second;
      it = table.players.emplace(id, pr).first;
    }
    return it->second;
  };
  for (const auto& id_rating : initial) rating_of(id_rating.first);
  for (const auto& r : records) {
    PlayerRating& f = rating_of(r.first);
    PlayerRating& s = rating_of(r.second);
    auto [nf, ns] = elo_update(f.rating, s.rating, r.outcome, k_factor);
    f.rating = nf;
    s.rating = ns;
    ++f.games;
    ++s.games;
  }
  return table;
}

BootstrapResult bootstrap_ci(const std::vector<MatchRecord>& records,
                             double lambda, int resamples, std::uint64_t seed,
                             const std::vector<std::string>& all_players) {
  if (resamples < 100)
    throw validation_error("bootstrap requires at least 100 resamples");
  if (records.empty())
    throw validation_error("bootstrap requires at least one record");

  RatingTable point = fit_bt(records, lambda, all_players);

  std::map<std::string, std::vector<double>> samples;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<size_t> pick(0, records.size() - 1);

  BootstrapResult result;
  for (int b = 0; b < resamples; ++b) {
    std::vector<MatchRecord> resample;
    resample.reserve(records.size());
    for (size_t i = 0; i < records.size(); ++i)
      resample.push_back(records[pick(rng)]);
    try {
      RatingTable t = fit_bt(resample, lambda, all_players);
      for (const auto& [id, pr] : t.players) samples[id].push_back(pr.rating);
    } catch (const Error&) {
      ++result.failed_resamples;
    }
  }

  for (auto& [id, vals] : samples) {
    std::sort(vals.begin(), vals.end());
    auto quantile = [&](double q) {
      double pos = q * (vals.size() - 1);
      size_t lo = static_cast<size_t>(pos);
      size_t hi = std::min(lo + 1, vals.size() - 1);
      double frac = pos - lo;
      return vals[lo] * (1 - frac) + vals[hi] * frac;
    };
    double low = quantile(0.025);
    double high = quantile(0.975);
    // the interval always contains the point estimate
    double r = point.players.count(id) ? point.players.at(id).rating : 1000.0;
    result.intervals[id] = {std::min(low, r), std::max(high, r)};
  }
  return result;
}

}  // namespace arena
