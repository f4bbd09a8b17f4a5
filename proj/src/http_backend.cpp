#include <cstdlib>

#include "arena/provider.hpp"
#include "arena/tokens.hpp"

#include <httplib.h>

namespace arena {

namespace {

struct ParsedUrl {
  std::string host_port;  // scheme://host:port
  std::string path;
};

ParsedUrl parse_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw config_error("endpoint is not a URL: " + url);
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

HttpBackend::HttpBackend(const ProviderProfile& profile)
    : endpoint_(profile.endpoint), auth_env_(profile.auth_env) {}

Completion HttpBackend::complete(const ChatRequest& request) {
  ParsedUrl url = parse_url(endpoint_);

  json body;
  body["model"] = request.model_ref;
  json msgs = json::array();
  for (const auto& m : request.messages) {
    json mj;
    mj["role"] = role_name(m.role);
    mj["content"] = m.content;
    msgs.push_back(mj);
  }
  body["messages"] = msgs;
  body["max_tokens"] = request.max_tokens;
  body["temperature"] = request.temperature;
  if (request.seed) body["seed"] = *request.seed;

  httplib::Client client(url.host_port);
  client.set_connection_timeout(30);
  client.set_read_timeout(120);

  httplib::Headers headers;
  if (!auth_env_.empty()) {
    const char* secret = std::getenv(auth_env_.c_str());
    if (secret) headers.emplace("Authorization", std::string("Bearer ") + secret);
  }

  auto res = client.Post(url.path, headers, body.dump(), "application/json");
  if (!res)
    throw TransientError("transport failure contacting " + endpoint_);
  if (res->status >= 500 || res->status == 429)
    throw TransientError("HTTP " + std::to_string(res->status), res->status);
  if (res->status != 200)
    throw provider_error("HTTP " + std::to_string(res->status) + " from " +
                         endpoint_);

  json reply = json::parse(res->body, nullptr, false);
  if (reply.is_discarded() || !reply.contains("choices") ||
      reply["choices"].empty())
    throw Error(ErrorKind::Protocol, "malformed completion body from " + endpoint_);
  const json& choice = reply["choices"][0];
  Completion out;
  out.text = choice.at("message").at("content").get<std::string>();
  out.finish_reason = choice.value("finish_reason", "stop");
  if (reply.contains("usage") && reply["usage"].contains("completion_tokens"))
    out.token_count = reply["usage"]["completion_tokens"].get<int>();
  else
    out.token_count = approx_token_count(out.text);
  return out;
}

}  // namespace arena
