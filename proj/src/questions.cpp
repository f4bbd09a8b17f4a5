#include "arena/questions.hpp"

#include <regex>
#include <set>
#include <sstream>

namespace arena {

const std::array<Category, 8>& categories() {
  static const std::array<Category, 8> kCategories = {{
      {"writing", "writing",
       "It should be a user query that tasks the LLM to write something.",
       "Compose an engaging travel blog post about a recent trip to Hawaii, "
       "highlighting cultural experiences and must-see attractions.",
       true},
      {"roleplay", "roleplay",
       "It should propose a scenario where the chatbot mimics a specific "
       "role/person. Give all necessary instructions and requests for its "
       "response. Then, send a beginning request to complete.",
       "Pretend yourself to be Elon Musk in all the following conversations. "
       "Speak like Elon Musk as much as possible. Why do we need to go to "
       "Mars?",
       true},
      {"extraction", "extraction",
       "It should consist of two parts: question and context. The question "
       "should test the chatbot's ability to correctly understand and extract "
       "information from the given context. Draft and provide a new context "
       "yourself.",
       "Question: Evaluate the following movie reviews on a scale of 1 to 5, "
       "with 1 being very negative, 3 being neutral, and 5 being very "
       "positive: Context: This movie released on Nov. 18, 2019, was "
       "phenomenal. The cinematography, the acting, the plot - everything was "
       "top-notch. Never before have I been so disappointed with a movie. The "
       "plot was predictable and the characters were one-dimensional. In my "
       "opinion, this movie is the worst one to have been released in 2022. "
       "The movie was okay. There were some parts I enjoyed, but there were "
       "also parts that felt lackluster. This is a movie that was released in "
       "Feb 2018 and seems to be quite ordinary. Return the answer as a JSON "
       "array of integers.",
       false},
      {"reasoning", "reasoning",
       "It should be a specific question designed to test the LLM's reasoning "
       "skills.",
       "Imagine you are participating in a race with a group of people. If "
       "you have just overtaken the second person, what's your current "
       "position? Where is the person you just overtook?",
       false},
      {"math", "math",
       "It should be a specific question designed to test the LLM's math "
       "skills.",
       "The vertices of a triangle are at points (0, 0), (-1, 1), and (3, 3). "
       "What is the area of the triangle?",
       false},
      {"coding", "coding",
       "It should be a specific question designed to test the LLM's coding "
       "skills.",
       "Develop a Python program that reads all the text files under a "
       "directory and returns top-5 words with the most number of "
       "occurrences.",
       true},
      {"stem", "STEM knowledge",
       "It should be a specific question designed to test the LLM's STEM "
       "knowledge.",
       "In the field of quantum physics, what is superposition, and how does "
       "it relate to the phenomenon of quantum entanglement?",
       false},
      {"humanities", "humanities/social science knowledge",
       "It should be a specific question designed to test the LLM's "
       "humanities/social science knowledge.",
       "Provide insights into the correlation between economic indicators "
       "such as GDP, inflation, and unemployment rates. Explain how fiscal "
       "and monetary policies affect those indicators.",
       true},
  }};
  return kCategories;
}

const Category& category_by_name(const std::string& name) {
  for (const Category& c : categories())
    if (c.name == name) return c;
  throw not_found_error("unknown category: " + name);
}

json Question::to_json() const {
  json j;
  j["id"] = id;
  j["category"] = category;
  j["text"] = text;
  j["examiner"] = examiner;
  if (created_for) j["created_for"] = *created_for;
  return j;
}

Question Question::from_json(const json& j) {
  Question q;
  q.id = j.at("id").get<std::string>();
  q.category = j.at("category").get<std::string>();
  q.text = j.at("text").get<std::string>();
  q.examiner = j.value("examiner", std::string());
  if (j.contains("created_for")) q.created_for = j["created_for"].get<std::string>();
  return q;
}

std::string render_examiner_prompt(const Category& category, int count) {
  if (count < 1) throw validation_error("question count must be >= 1");
  std::ostringstream out;
  out << "You have been assigned the task of drafting a set of " << count
      << " different user queries to a chat assistant on " << category.domain
      << ". Please strictly follow these 6 rules for the question: \n"
      << "1. The question is likely for a user to ask in real life. Follow "
         "the format of the example query. "
      << category.domain_command
      << " 2. It can be answered by the chatbot itself without additional "
         "inputs. 3. You need to generate the queries as DIVERSIFED as "
         "possible. 4. DO NOT add other words other than the query itself. "
         "5. The question should be complicated and difficult, requiring "
         "in-depth understanding and analysis of the subject.\n"
      << "Each question in one line, add the serial number in parenthesis "
         "(e.g., \"(1).\", \"(2).\") before each question. \n"
      << "Example query: " << category.domain_example;
  return out.str();
}

std::vector<std::string> parse_numbered_list(const std::string& raw,
                                             int expected) {
  static const std::regex marker(R"(^\s*\((\d+)\)\.?\s*(.*)$)");
  std::vector<std::string> out;
  std::istringstream in(raw);
  std::string line;
  bool have_current = false;
  while (std::getline(in, line)) {
    std::smatch m;
    if (std::regex_match(line, m, marker)) {
      out.push_back(trim(m[2].str()));
      have_current = true;
    } else if (have_current && !trim(line).empty()) {
      // continuation (extraction contexts span lines); keep as one blob
      out.back() += "\n" + trim(line);
    }
  }
  // drop entries that were only a marker
  std::vector<std::string> filtered;
  for (auto& q : out)
    if (!trim(q).empty()) filtered.push_back(q);
  (void)expected;
  return filtered;
}

QuestionFactory::QuestionFactory(Gateway& examiner_gateway,
                                 std::string examiner_id, double temperature,
                                 int max_attempts)
    : gateway_(examiner_gateway),
      examiner_id_(std::move(examiner_id)),
      temperature_(temperature),
      max_attempts_(max_attempts) {}

std::vector<Question> QuestionFactory::generate_set(
    int per_category, const std::optional<std::string>& pair_id,
    std::int64_t seed) {
  if (per_category < 1)
    throw validation_error("per_category must be >= 1");
  std::vector<Question> out;
  std::set<std::string> seen_texts;

  for (const Category& cat : categories()) {
    std::vector<std::string> texts;
    int attempt = 0;
    while (static_cast<int>(texts.size()) < per_category) {
      if (attempt >= max_attempts_)
        throw provider_error("examiner could not produce " +
                             std::to_string(per_category) + " distinct " +
                             cat.name + " questions in " +
                             std::to_string(max_attempts_) + " attempts");
      int need = per_category - static_cast<int>(texts.size());
      ChatRequest req;
      req.messages.push_back({Role::User, render_examiner_prompt(cat, need)});
      req.max_tokens = 512 * need;
      req.temperature = temperature_;
      req.seed = static_cast<std::int64_t>(
          hash_combine(hash_combine(fnv1a(cat.name), seed), attempt));
      req.model_ref = examiner_id_;
      Completion c = gateway_.complete(req);
      auto parsed = parse_numbered_list(c.text, need);
      if (parsed.empty() && texts.empty() && attempt + 1 >= max_attempts_)
        throw provider_error("examiner output for " + cat.name +
                             " had no parseable questions");
      for (auto& t : parsed) {
        if (static_cast<int>(texts.size()) >= per_category) break;
        std::string trimmed = trim(t);
        if (trimmed.empty() || seen_texts.count(trimmed)) continue;
        seen_texts.insert(trimmed);
        texts.push_back(trimmed);
      }
      ++attempt;
    }
    for (const std::string& t : texts) {
      Question q;
      std::uint64_t h = fnv1a(t, fnv1a(cat.name));
      if (pair_id) h = fnv1a(*pair_id, h);
      char buf[32];
      std::snprintf(buf, sizeof buf, "q-%016llx",
                    static_cast<unsigned long long>(h));
      q.id = buf;
      q.category = cat.name;
      q.text = t;
      q.examiner = examiner_id_;
      q.created_for = pair_id;
      out.push_back(std::move(q));
    }
  }
  return out;
}

void save_question_set(const std::filesystem::path& path,
                       const std::vector<Question>& questions) {
  std::string body;
  for (const Question& q : questions) body += q.to_json().dump() + "\n";
  write_file_atomic(path, body);
}

std::vector<Question> load_question_set(const std::filesystem::path& path) {
  std::vector<Question> out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    out.push_back(Question::from_json(parse_json(line, path.string())));
  }
  return out;
}

}  // namespace arena
