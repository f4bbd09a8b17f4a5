#pragma once

#include <string>
#include <string_view>

namespace arena {

// All length accounting uses the same approximation: one whitespace-delimited
// word counts as 4/3 tokens, rounded up.
int token_cap(int words);

int approx_token_count(std::string_view text);

// Keeps the longest word-prefix whose approximate token count fits the cap.
// Returns the (possibly shortened) text; sets truncated.
std::string truncate_to_token_cap(std::string_view text, int cap,
                                  bool& truncated);

}  // namespace arena
