#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "arena/judging.hpp"
#include "arena/util.hpp"

namespace arena {

// player id -> rank (1 = best); ties share the average rank.
using RankVector = std::map<std::string, double>;

// Average-rank vector from a best-first ordering.
RankVector ranks_from_order(const std::vector<std::string>& best_first);

// Average-rank vector from scores (higher = better).
RankVector ranks_from_scores(const std::map<std::string, double>& scores);

// Tie-corrected Spearman: Pearson correlation of the two rank vectors.
double spearman(const RankVector& x, const RankVector& y);

// Chance-corrected agreement over the 3-label verdict space.
double cohen_kappa(const std::vector<Verdict>& a, const std::vector<Verdict>& b);

// Mean over battles of the fraction of agreeing unordered judge pairs.
// Battles with fewer than two verdicts are skipped (skipped count returned
// via out-param when given).
double agreement_probability(const std::vector<std::vector<Verdict>>& battles,
                             int* skipped = nullptr);

// GPT-4-style substring check: three random 50-char windows of the question
// (the whole question when shorter), flagged when any window appears
// verbatim in any snippet.
bool contamination_substring(const std::string& question,
                             const std::vector<std::string>& snippets,
                             std::uint64_t seed);

using Embedder = std::function<std::vector<double>(const std::string&)>;

// Deterministic bag-of-words baseline embedder (hashed to a fixed dimension).
Embedder bag_of_words_embedder(size_t dim = 512);

double cosine_similarity(const std::vector<double>& a,
                         const std::vector<double>& b);

// Similarity check: flagged when cosine(embed(q), embed(s)) exceeds the
// threshold for any snippet (strictly greater).
bool contamination_similarity(const std::string& question,
                              const std::vector<std::string>& snippets,
                              const Embedder& embedder,
                              double threshold = 0.8);

// Offline search client: returns up to 10 snippets from a fixed corpus,
// ranked by naive token overlap with the query.
class SnippetCorpus {
 public:
  explicit SnippetCorpus(std::vector<std::string> snippets);
  static SnippetCorpus load(const std::filesystem::path& path);  // JSON array

  std::vector<std::string> search(const std::string& query,
                                  size_t limit = 10) const;

 private:
  std::vector<std::string> snippets_;
};

}  // namespace arena
