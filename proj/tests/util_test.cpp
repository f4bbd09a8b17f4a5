#include "arena/util.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace arena;

TEST_CASE("fnv1a matches the published test vectors") {
  // reference values for 64-bit FNV-1a
  CHECK(fnv1a("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("fnv1a is stable across calls and seeds matter") {
  CHECK(fnv1a("swiss") == fnv1a("swiss"));
  CHECK(fnv1a("swiss", 1) != fnv1a("swiss", 2));
  CHECK(hash_combine(fnv1a("x"), 1) != hash_combine(fnv1a("x"), 2));
}

TEST_CASE("trim and to_lower") {
  CHECK(trim("  hi \n\t") == "hi");
  CHECK(trim("") == "");
  CHECK(trim(" \t ") == "");
  CHECK(to_lower("MiXeD") == "mixed");
}

TEST_CASE("count_words splits on any whitespace run") {
  CHECK(count_words("") == 0);
  CHECK(count_words("one") == 1);
  CHECK(count_words("  a\tb\nc  ") == 3);
}

TEST_CASE("atomic write then read round-trips") {
  auto dir = std::filesystem::temp_directory_path() / "util-test";
  std::filesystem::remove_all(dir);
  auto path = dir / "nested" / "file.txt";
  write_file_atomic(path, "payload\n");
  CHECK(read_file(path) == "payload\n");
  // no temp file left behind
  CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("read_file on a missing path is NotFound") {
  try {
    read_file("/definitely/not/here.txt");
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotFound);
  }
}

TEST_CASE("append_line adds one line per call") {
  auto dir = std::filesystem::temp_directory_path() / "util-test-append";
  std::filesystem::remove_all(dir);
  auto path = dir / "log.jsonl";
  append_line(path, "first");
  append_line(path, "second");
  CHECK(read_file(path) == "first\nsecond\n");
  std::filesystem::remove_all(dir);
}

TEST_CASE("parse_json rejects malformed input with context") {
  CHECK(parse_json("{\"k\":1}", "doc")["k"] == 1);
  try {
    parse_json("{broken", "doc");
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Validation);
    CHECK(std::string(e.what()).find("doc") != std::string::npos);
  }
}
