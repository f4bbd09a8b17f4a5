#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace arena {

using json = nlohmann::ordered_json;

// Error taxonomy mapped onto CLI exit codes: validation -> 2, provider -> 3.
enum class ErrorKind {
  Validation,
  NotFound,
  Provider,
  Protocol,
  Config,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error validation_error(const std::string& msg) {
  return Error(ErrorKind::Validation, msg);
}
inline Error not_found_error(const std::string& msg) {
  return Error(ErrorKind::NotFound, msg);
}
inline Error provider_error(const std::string& msg) {
  return Error(ErrorKind::Provider, msg);
}
inline Error config_error(const std::string& msg) {
  return Error(ErrorKind::Config, msg);
}

// FNV-1a, used wherever a hash must be stable across processes and runs
// (std::hash makes no such promise).
inline std::uint64_t fnv1a(std::string_view data,
                           std::uint64_t seed = 0xcbf29ce484222325ull) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  // mix the integer through FNV over its bytes
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  return fnv1a(std::string_view(buf, 8), h);
}

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

// Whitespace-delimited word count; the unit all budgets are expressed in.
int count_words(std::string_view text);

// Reads a whole file; throws NotFound if missing.
std::string read_file(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);
void append_line(const std::filesystem::path& path, const std::string& line);

json parse_json(const std::string& text, const std::string& what);
json load_json_file(const std::filesystem::path& path);

}  // namespace arena
