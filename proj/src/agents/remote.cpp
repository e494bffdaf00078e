#include <cstdlib>
#include <fstream>
#include <sstream>

#include <httplib.h>

#include "star/agents/extractors.hpp"
#include "star/core/error.hpp"

#ifndef STAR_ASSET_DIR
#define STAR_ASSET_DIR "assets"
#endif

namespace star::agents {

std::optional<RemoteConfig> RemoteConfig::from_env() {
  const char* url = std::getenv("STAR_LLM_BASE_URL");
  if (url == nullptr || *url == '\0') return std::nullopt;
  RemoteConfig c;
  c.base_url = url;
  if (const char* k = std::getenv("STAR_LLM_API_KEY")) c.api_key = k;
  if (const char* m = std::getenv("STAR_LLM_MODEL")) c.model = m;
  return c;
}

std::string prompt_asset(std::string_view name) {
  std::vector<std::filesystem::path> roots;
  if (const char* dir = std::getenv("STAR_ASSET_DIR")) roots.emplace_back(dir);
  roots.emplace_back(STAR_ASSET_DIR);
  const std::string file = "prompts/" + std::string(name) + ".v1.txt";
  for (const auto& r : roots) {
    std::ifstream in(r / file);
    if (!in) continue;
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  throw LookupError("prompt asset '" + std::string(name) + "' not found");
}

RemoteExtractor::RemoteExtractor(RemoteConfig cfg) : cfg_(std::move(cfg)) {
  if (cfg_.base_url.rfind("http://", 0) != 0)
    throw ContractError("remote extractor supports plain http:// endpoints only");
}

std::string RemoteExtractor::chat(std::string_view system_prompt, std::string_view user_message) {
  // Split "http://host:port/prefix" into the client origin and path prefix.
  const auto slash = cfg_.base_url.find('/', 7);
  const std::string origin = cfg_.base_url.substr(0, slash);
  std::string prefix = slash == std::string::npos ? "" : cfg_.base_url.substr(slash);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();

  httplib::Client cli(origin);
  cli.set_connection_timeout(cfg_.timeout_seconds, 0);
  cli.set_read_timeout(cfg_.timeout_seconds, 0);
  httplib::Headers headers;
  if (!cfg_.api_key.empty()) headers.emplace("Authorization", "Bearer " + cfg_.api_key);

  Value body = {{"model", cfg_.model},
                {"temperature", 0},
                {"messages", Value::array({{{"role", "system"}, {"content", system_prompt}},
                                           {{"role", "user"}, {"content", user_message}}})}};
  auto res = cli.Post(prefix + "/chat/completions", headers, body.dump(), "application/json");
  if (!res) throw Error("chat request failed: " + httplib::to_string(res.error()));
  if (res->status != 200) throw Error("chat endpoint returned HTTP " + std::to_string(res->status));
  Value reply = Value::parse(res->body, nullptr, false);
  if (reply.is_discarded() || !reply.contains("choices") || reply["choices"].empty())
    throw Error("chat endpoint returned an unexpected body");
  const Value& msg = reply["choices"][0]["message"]["content"];
  if (!msg.is_string()) throw Error("chat reply has no text content");
  return msg.get<std::string>();
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string board_text(const Blackboard& bb) {
  Value v = Value::object();
  for (const auto& e : bb.entries()) v[e.key] = e.payload;
  return v.dump();
}

}  // namespace

std::optional<Value> RemoteExtractor::profile(const Query& q) {
  return extract_fenced_json(chat(prompt_asset("head"), q.text));
}

MenuSelection RemoteExtractor::select(Agent a, const Query& q, const Blackboard& bb, const ComputationMenu& menu) {
  std::string ops;
  for (const auto& n : menu.names()) ops += (ops.empty() ? "" : ", ") + n;
  const std::string user = "Operations: " + ops + "\nBlackboard: " + board_text(bb) + "\nQuery: " + q.text;
  auto v = extract_fenced_json(chat(prompt_asset(lower(name_of(a))), user));
  if (!v) throw ParseError("reply carries no structured record", 0);
  return selection_from_json(*v);
}

std::optional<std::string> RemoteExtractor::answer(Agent a, const Query& q, const Blackboard& bb,
                                                   const QueryProfile& profile) {
  const std::string user = "Profile: " + to_json(profile).dump() + "\nBlackboard: " + board_text(bb) +
                           "\nQuery: " + q.text;
  std::string reply = chat(prompt_asset(lower(name_of(a))), user);
  while (!reply.empty() && std::isspace(static_cast<unsigned char>(reply.back()))) reply.pop_back();
  if (reply.empty()) return std::nullopt;
  return reply;
}

}  // namespace star::agents
