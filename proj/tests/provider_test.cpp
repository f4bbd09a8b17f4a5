#include "arena/provider.hpp"

#include <doctest.h>

#include <atomic>
#include <sstream>
#include <thread>

#include <httplib.h>

using namespace arena;

namespace {

ChatRequest simple_request(const std::string& text = "hello") {
  ChatRequest r;
  r.messages.push_back({Role::User, text});
  r.model_ref = "m";
  return r;
}

ProviderProfile scripted_profile(int max_attempts = 3) {
  ProviderProfile p;
  p.name = "test";
  p.kind = ProviderKind::Scripted;
  p.retry.max_attempts = max_attempts;
  p.retry.base_backoff_ms = 1;
  return p;
}

// Backend that fails transiently a fixed number of times, then succeeds.
class FlakyBackend : public ChatBackend {
 public:
  explicit FlakyBackend(int failures) : failures_(failures) {}
  Completion complete(const ChatRequest&) override {
    ++calls_;
    if (calls_ <= failures_) throw TransientError("simulated 503", 503);
    return {"recovered", 1, "stop"};
  }
  int calls() const { return calls_; }

 private:
  int failures_;
  int calls_ = 0;
};

class FatalBackend : public ChatBackend {
 public:
  Completion complete(const ChatRequest&) override {
    ++calls_;
    throw provider_error("401 unauthorized");
  }
  int calls_ = 0;
};

}  // namespace

TEST_CASE("request validation") {
  ChatRequest r = simple_request();
  CHECK_NOTHROW(r.validate());

  ChatRequest empty;
  CHECK_THROWS_AS(empty.validate(), Error);

  ChatRequest bad_tokens = simple_request();
  bad_tokens.max_tokens = 0;
  CHECK_THROWS_AS(bad_tokens.validate(), Error);

  ChatRequest late_system = simple_request();
  late_system.messages.push_back({Role::System, "sys"});
  CHECK_THROWS_AS(late_system.validate(), Error);
}

TEST_CASE("system prompt folding into the first user message") {
  ChatRequest r;
  r.messages.push_back({Role::System, "persona"});
  r.messages.push_back({Role::User, "question"});
  r.messages.push_back({Role::User, "second"});
  ChatRequest folded = fold_system_message(r);
  REQUIRE(folded.messages.size() == 2);
  CHECK(folded.messages[0].role == Role::User);
  CHECK(folded.messages[0].content == "persona\n\nquestion");
  CHECK(folded.messages[1].content == "second");

  SUBCASE("no system message is a no-op") {
    ChatRequest plain = simple_request();
    CHECK(fold_system_message(plain).messages.size() == 1);
  }
}

TEST_CASE("gateway retries transient failures with backoff") {
  auto backend = std::make_shared<FlakyBackend>(2);
  std::vector<double> sleeps;
  Gateway gw(scripted_profile(3), backend, {},
             [&](double s) { sleeps.push_back(s); });
  Completion c = gw.complete(simple_request());
  CHECK(c.text == "recovered");
  CHECK(backend->calls() == 3);
  REQUIRE(sleeps.size() == 2);
  // exponential base with jitter in [1, 2)
  CHECK(sleeps[0] >= 0.001);
  CHECK(sleeps[0] < 0.002);
  CHECK(sleeps[1] >= 0.002);
  CHECK(sleeps[1] < 0.004);
}

TEST_CASE("gateway gives up after max attempts") {
  auto backend = std::make_shared<FlakyBackend>(100);
  Gateway gw(scripted_profile(3), backend, {}, [](double) {});
  try {
    gw.complete(simple_request());
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Provider);
    CHECK(std::string(e.what()).find("3 attempts") != std::string::npos);
  }
  CHECK(backend->calls() == 3);
}

TEST_CASE("non-transient failures are not retried") {
  auto backend = std::make_shared<FatalBackend>();
  Gateway gw(scripted_profile(5), backend, {}, [](double) {});
  CHECK_THROWS_AS(gw.complete(simple_request()), Error);
  CHECK(backend->calls_ == 1);
}

TEST_CASE("request log records outcomes") {
  auto dir = std::filesystem::temp_directory_path() / "gateway-log-test";
  std::filesystem::remove_all(dir);
  auto log = dir / "requests.jsonl";
  {
    auto backend = std::make_shared<FlakyBackend>(1);
    Gateway gw(scripted_profile(3), backend, log, [](double) {});
    gw.complete(simple_request());
  }
  {
    auto backend = std::make_shared<FlakyBackend>(100);
    Gateway gw(scripted_profile(2), backend, log, [](double) {});
    CHECK_THROWS_AS(gw.complete(simple_request()), Error);
  }
  std::istringstream in(read_file(log));
  std::string line;
  std::vector<json> recs;
  while (std::getline(in, line)) recs.push_back(parse_json(line, "log"));
  REQUIRE(recs.size() == 2);
  CHECK(recs[0]["ok"] == true);
  CHECK(recs[0]["attempts"] == 2);
  CHECK(recs[1]["ok"] == false);
  CHECK(recs[1]["attempts"] == 2);
  CHECK(recs[1].contains("error"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("rate limiter enforces a sliding 60s window") {
  double now = 1000.0;
  std::vector<double> waits;
  RateLimiter limiter(
      2, [&]() { return now; },
      [&](double s) {
        waits.push_back(s);
        now += s;  // advancing time stands in for sleeping
      });
  limiter.acquire();
  now += 10;
  limiter.acquire();
  CHECK(waits.empty());

  limiter.acquire();  // third call within the window must wait
  REQUIRE(waits.size() == 1);
  CHECK(waits[0] == doctest::Approx(50.0));  // until the first slot expires

  now += 100;
  limiter.acquire();  // window long expired: no wait
  CHECK(waits.size() == 1);
}

TEST_CASE("zero limit means unlimited") {
  bool slept = false;
  RateLimiter limiter(0, []() { return 0.0; }, [&](double) { slept = true; });
  for (int i = 0; i < 100; ++i) limiter.acquire();
  CHECK_FALSE(slept);
}

TEST_CASE("scripted backend sequencing and rules") {
  ScriptedBackend backend({"one", "two"});
  backend.add_rule("magic", "rule hit");

  CHECK(backend.complete(simple_request()).text == "one");
  CHECK(backend.complete(simple_request("say the magic word")).text == "rule hit");
  CHECK(backend.complete(simple_request()).text == "two");
  CHECK(backend.complete(simple_request()).text == "two");  // loops on last

  ScriptedBackend strict({"only"}, true);
  CHECK(strict.complete(simple_request()).text == "only");
  CHECK_THROWS_AS(strict.complete(simple_request()), Error);
}

TEST_CASE("http backend against a local server") {
  httplib::Server server;
  std::atomic<int> hits{0};
  server.Post("/v1/chat/completions",
              [&](const httplib::Request& req, httplib::Response& res) {
                int n = ++hits;
                json body = json::parse(req.body);
                CHECK(body["model"] == "m");
                CHECK(req.get_header_value("Authorization") == "Bearer sekrit");
                if (n <= 2) {
                  res.status = 503;
                  res.set_content("overloaded", "text/plain");
                  return;
                }
                json out = {
                    {"choices",
                     {{{"message", {{"content", "served"}}}}}},
                    {"usage", {{"completion_tokens", 3}}}};
                res.set_content(out.dump(), "application/json");
              });
  server.Post("/v1/unauthorized",
              [&](const httplib::Request&, httplib::Response& res) {
                ++hits;
                res.status = 401;
                res.set_content("no", "text/plain");
              });

  int port = server.bind_to_any_port("127.0.0.1");
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  setenv("TEST_PROVIDER_KEY", "sekrit", 1);
  ProviderProfile profile;
  profile.name = "local";
  profile.kind = ProviderKind::HttpOpenAiCompatible;
  profile.endpoint =
      "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
  profile.auth_env = "TEST_PROVIDER_KEY";
  profile.retry.max_attempts = 3;
  profile.retry.base_backoff_ms = 1;

  SUBCASE("5xx responses are retried until success") {
    Gateway gw(profile, std::make_shared<HttpBackend>(profile), {},
               [](double) {});
    Completion c = gw.complete(simple_request());
    CHECK(c.text == "served");
    CHECK(c.token_count == 3);
    CHECK(hits == 3);
  }

  SUBCASE("401 fails immediately without retries") {
    ProviderProfile p2 = profile;
    p2.endpoint =
        "http://127.0.0.1:" + std::to_string(port) + "/v1/unauthorized";
    Gateway gw(p2, std::make_shared<HttpBackend>(p2), {}, [](double) {});
    try {
      gw.complete(simple_request());
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Provider);
    }
    CHECK(hits == 1);
  }

  server.stop();
  t.join();
}
