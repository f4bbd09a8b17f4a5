#include "arena/tokens.hpp"

#include <cctype>

#include "arena/util.hpp"

namespace arena {

int token_cap(int words) {
  if (words < 1) throw validation_error("token_cap requires words >= 1");
  return (words * 4 + 2) / 3;  // ceil(words * 4/3)
}

int approx_token_count(std::string_view text) {
  int w = count_words(text);
  return (w * 4 + 2) / 3;
}

std::string truncate_to_token_cap(std::string_view text, int cap,
                                  bool& truncated) {
  truncated = false;
  if (approx_token_count(text) <= cap) return std::string(text);
  // max words w with ceil(4w/3) <= cap  <=>  w <= floor(3*cap/4)
  int max_words = (3 * cap) / 4;
  int seen = 0;
  size_t i = 0;
  bool in_word = false;
  for (; i < text.size(); ++i) {
    bool ws = std::isspace(static_cast<unsigned char>(text[i]));
    if (!ws && !in_word) {
      if (seen == max_words) break;
      ++seen;
    }
    in_word = !ws;
  }
  truncated = true;
  std::string out(text.substr(0, i));
  while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back())))
    out.pop_back();
  return out;
}

}  // namespace arena
