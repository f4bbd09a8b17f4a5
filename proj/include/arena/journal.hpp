#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "arena/util.hpp"

namespace arena {

// Append-only JSONL event log with dense monotone sequence numbers, fsync'd
// per record. A partially written trailing record is detected and dropped on
// replay.
class Journal {
 public:
  explicit Journal(std::filesystem::path path);
  ~Journal();

  Journal(const Journal&) = delete;
  Journal& operator=(const Journal&) = delete;

  // Reads every complete record currently in the file.
  static std::vector<json> replay(const std::filesystem::path& path);

  // Appends {seq, type, ...payload}. Returns the sequence number used.
  int append(const std::string& type, json payload);

  int next_seq() const { return next_seq_; }

 private:
  std::filesystem::path path_;
  int fd_ = -1;
  int next_seq_ = 0;
};

}  // namespace arena
