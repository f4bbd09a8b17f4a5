#include "arena/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace arena {

RankVector ranks_from_order(const std::vector<std::string>& best_first) {
  RankVector out;
  for (size_t i = 0; i < best_first.size(); ++i)
    out[best_first[i]] = static_cast<double>(i + 1);
  return out;
}

RankVector ranks_from_scores(const std::map<std::string, double>& scores) {
  std::vector<std::pair<std::string, double>> items(scores.begin(),
                                                    scores.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  RankVector out;
  size_t i = 0;
  while (i < items.size()) {
    size_t j = i;
    while (j < items.size() && items[j].second == items[i].second) ++j;
    double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (size_t k = i; k < j; ++k) out[items[k].first] = avg;
    i = j;
  }
  return out;
}

double spearman(const RankVector& x, const RankVector& y) {
  if (x.size() != y.size() || x.empty())
    throw validation_error("spearman requires equal non-empty player sets");
  std::vector<double> xs, ys;
  for (const auto& [id, rank] : x) {
    auto it = y.find(id);
    if (it == y.end())
      throw validation_error("spearman: player sets differ (" + id + ")");
    xs.push_back(rank);
    ys.push_back(it->second);
  }
  const size_t n = xs.size();
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) { mx += xs[i]; my += ys[i]; }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0 || syy == 0)
    throw validation_error("spearman undefined: a rank vector is constant");
  return sxy / std::sqrt(sxx * syy);
}

double cohen_kappa(const std::vector<Verdict>& a,
                   const std::vector<Verdict>& b) {
  if (a.size() != b.size() || a.empty())
    throw validation_error("kappa requires equal-length non-empty series");
  const size_t n = a.size();
  double po = 0;
  double count_a[3] = {0, 0, 0};
  double count_b[3] = {0, 0, 0};
  for (size_t i = 0; i < n; ++i) {
    if (a[i] == b[i]) ++po;
    ++count_a[static_cast<int>(a[i])];
    ++count_b[static_cast<int>(b[i])];
  }
  po /= n;
  double pe = 0;
  for (int k = 0; k < 3; ++k) pe += (count_a[k] / n) * (count_b[k] / n);
  if (po == 1.0) return 1.0;
  if (pe == 1.0)
    throw validation_error("kappa undefined: chance agreement is 1");
  return (po - pe) / (1.0 - pe);
}

double agreement_probability(const std::vector<std::vector<Verdict>>& battles,
                             int* skipped) {
  double sum = 0;
  int used = 0, skip = 0;
  for (const auto& verdicts : battles) {
    const size_t m = verdicts.size();
    if (m < 2) { ++skip; continue; }
    int agree = 0, pairs = 0;
    for (size_t i = 0; i < m; ++i)
      for (size_t j = i + 1; j < m; ++j) {
        ++pairs;
        if (verdicts[i] == verdicts[j]) ++agree;
      }
    sum += static_cast<double>(agree) / pairs;
    ++used;
  }
  if (skipped) *skipped = skip;
  if (used == 0)
    throw validation_error("agreement_probability: no battle with >= 2 votes");
  return sum / used;
}

bool contamination_substring(const std::string& question,
                             const std::vector<std::string>& snippets,
                             std::uint64_t seed) {
  if (snippets.empty()) return false;
  constexpr size_t kWindow = 50;
  std::vector<std::string> samples;
  if (question.size() < kWindow) {
    samples.push_back(question);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> start(0, question.size() - kWindow);
    for (int i = 0; i < 3; ++i)
      samples.push_back(question.substr(start(rng), kWindow));
  }
  for (const std::string& sample : samples) {
    if (sample.empty()) continue;
    for (const std::string& snippet : snippets)
      if (snippet.find(sample) != std::string::npos) return true;
  }
  return false;
}

Embedder bag_of_words_embedder(size_t dim) {
  return [dim](const std::string& text) {
    std::vector<double> v(dim, 0.0);
    std::istringstream in(to_lower(text));
    std::string word;
    while (in >> word) {
      // strip punctuation at the edges
      while (!word.empty() && !std::isalnum(static_cast<unsigned char>(word.front())))
        word.erase(word.begin());
      while (!word.empty() && !std::isalnum(static_cast<unsigned char>(word.back())))
        word.pop_back();
      if (word.empty()) continue;
      v[fnv1a(word) % dim] += 1.0;
    }
    return v;
  };
}

double cosine_similarity(const std::vector<double>& a,
                         const std::vector<double>& b) {
  if (a.size() != b.size())
    throw validation_error("cosine: dimension mismatch");
  double dot = 0, na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0)
    throw validation_error("cosine undefined for zero-norm embedding");
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

bool contamination_similarity(const std::string& question,
                              const std::vector<std::string>& snippets,
                              const Embedder& embedder, double threshold) {
  if (snippets.empty()) return false;
  std::vector<double> q = embedder(question);
  for (const std::string& s : snippets) {
    if (cosine_similarity(q, embedder(s)) > threshold) return true;
  }
  return false;
}

SnippetCorpus::SnippetCorpus(std::vector<std::string> snippets)
    : snippets_(std::move(snippets)) {}

SnippetCorpus SnippetCorpus::load(const std::filesystem::path& path) {
  json doc = load_json_file(path);
  std::vector<std::string> snippets;
  for (const auto& s : doc) snippets.push_back(s.get<std::string>());
  return SnippetCorpus(std::move(snippets));
}

std::vector<std::string> SnippetCorpus::search(const std::string& query,
                                               size_t limit) const {
  // token-overlap scoring, stable order on ties
  std::istringstream in(to_lower(query));
  std::vector<std::string> terms;
  std::string w;
  while (in >> w) terms.push_back(w);

  std::vector<std::pair<int, size_t>> scored;
  for (size_t i = 0; i < snippets_.size(); ++i) {
    std::string lower = to_lower(snippets_[i]);
    int score = 0;
    for (const std::string& t : terms)
      if (lower.find(t) != std::string::npos) ++score;
    if (score > 0) scored.emplace_back(score, i);
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<std::string> out;
  for (size_t i = 0; i < scored.size() && i < limit; ++i)
    out.push_back(snippets_[scored[i].second]);
  return out;
}

}  // namespace arena
