#include "arena/journal.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <fstream>
#include <sstream>

namespace arena {

Journal::Journal(std::filesystem::path path) : path_(std::move(path)) {
  std::filesystem::create_directories(path_.parent_path());

  // Replay what is already there; truncate away a torn trailing record so
  // appends continue from a clean boundary.
  auto existing = replay(path_);
  next_seq_ = existing.empty() ? 0 : existing.back().at("seq").get<int>() + 1;

  std::string clean;
  for (const json& rec : existing) clean += rec.dump() + "\n";
  {
    std::string raw;
    if (std::filesystem::exists(path_)) raw = read_file(path_);
    if (raw != clean) write_file_atomic(path_, clean);
  }

  fd_ = ::open(path_.c_str(), O_WRONLY | O_APPEND | O_CREAT, 0644);
  if (fd_ < 0)
    throw Error(ErrorKind::Internal, "cannot open journal " + path_.string());
}

Journal::~Journal() {
  if (fd_ >= 0) ::close(fd_);
}

std::vector<json> Journal::replay(const std::filesystem::path& path) {
  std::vector<json> out;
  if (!std::filesystem::exists(path)) return out;
  std::string raw = read_file(path);
  size_t pos = 0;
  while (pos < raw.size()) {
    size_t nl = raw.find('\n', pos);
    if (nl == std::string::npos) break;  // no terminator: torn record, drop
    std::string line = raw.substr(pos, nl - pos);
    pos = nl + 1;
    if (trim(line).empty()) continue;
    json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.contains("seq") || !rec.contains("type"))
      break;  // corruption: everything from here on is suspect
    int seq = rec["seq"].get<int>();
    if (seq != static_cast<int>(out.size())) break;  // sequence gap
    out.push_back(std::move(rec));
  }
  return out;
}

int Journal::append(const std::string& type, json payload) {
  json rec;
  rec["seq"] = next_seq_;
  rec["type"] = type;
  for (auto it = payload.begin(); it != payload.end(); ++it)
    rec[it.key()] = it.value();
  std::string line = rec.dump() + "\n";
  ssize_t written = ::write(fd_, line.data(), line.size());
  if (written != static_cast<ssize_t>(line.size()))
    throw Error(ErrorKind::Internal, "short journal write");
  ::fsync(fd_);
  return next_seq_++;
}

}  // namespace arena
