#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "arena/provider.hpp"
#include "arena/util.hpp"

namespace arena {

struct Category {
  std::string name;  // writing, roleplay, extraction, reasoning, math,
                     // coding, stem, humanities
  std::string domain;          // phrasing used inside the examiner prompt
  std::string domain_command;
  std::string domain_example;
  bool long_form = false;      // raises the 300-word budget to 400
};

// The fixed 8-category taxonomy.
const std::array<Category, 8>& categories();
const Category& category_by_name(const std::string& name);

struct Question {
  std::string id;
  std::string category;
  std::string text;
  std::string examiner;               // player id
  std::optional<std::string> created_for;  // pair id

  json to_json() const;
  static Question from_json(const json& j);
};

// Fills the examiner template for one category. The rendered prompt never
// mentions tournament participants.
std::string render_examiner_prompt(const Category& category, int count);

// Pulls "(k)." / "(k)" numbered lines out of raw model output, in order.
// Returns the questions found; found.size() < expected signals a shortfall
// the caller handles by re-prompting.
std::vector<std::string> parse_numbered_list(const std::string& raw,
                                             int expected);

class QuestionFactory {
 public:
  QuestionFactory(Gateway& examiner_gateway, std::string examiner_id,
                  double temperature = 0.7, int max_attempts = 3);

  // 8 x per_category questions, exact-duplicate free, uniform per category.
  std::vector<Question> generate_set(
      int per_category, const std::optional<std::string>& pair_id,
      std::int64_t seed);

 private:
  Gateway& gateway_;
  std::string examiner_id_;
  double temperature_;
  int max_attempts_;
};

void save_question_set(const std::filesystem::path& path,
                       const std::vector<Question>& questions);
std::vector<Question> load_question_set(const std::filesystem::path& path);

}  // namespace arena
