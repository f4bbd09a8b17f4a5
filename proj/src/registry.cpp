#include "arena/registry.hpp"

#include <algorithm>

namespace arena {

json Player::to_json() const {
  json j;
  j["id"] = id;
  j["display_name"] = display_name;
  j["family"] = family;
  j["provider_binding"] = provider_binding;
  j["mmlu_seed"] = mmlu_seed;
  j["active"] = active;
  return j;
}

Player Player::from_json(const json& j) {
  Player p;
  p.id = j.at("id").get<std::string>();
  p.display_name = j.value("display_name", p.id);
  p.family = j.at("family").get<std::string>();
  p.provider_binding = j.value("provider_binding", std::string());
  p.mmlu_seed = j.at("mmlu_seed").get<double>();
  p.active = j.value("active", true);
  return p;
}

void Registry::register_player(const Player& p) {
  if (p.id.empty()) throw validation_error("player id must be non-empty");
  if (players_.count(p.id))
    throw validation_error("duplicate player id: " + p.id);
  if (trim(p.family).empty())
    throw validation_error("player " + p.id + " has empty family");
  if (p.active && (p.mmlu_seed < 0.0 || p.mmlu_seed > 100.0))
    throw validation_error("player " + p.id + " mmlu_seed out of [0,100]");
  players_[p.id] = p;
  insertion_order_.push_back(p.id);
}

void Registry::set_active(const std::string& id, bool active) {
  auto it = players_.find(id);
  if (it == players_.end()) throw not_found_error("unknown player: " + id);
  it->second.active = active;
}

const Player& Registry::get(const std::string& id) const {
  auto it = players_.find(id);
  if (it == players_.end()) throw not_found_error("unknown player: " + id);
  return it->second;
}

bool Registry::same_family(const std::string& a, const std::string& b) const {
  const Player& pa = get(a);
  const Player& pb = get(b);
  return to_lower(trim(pa.family)) == to_lower(trim(pb.family));
}

std::vector<Player> Registry::all() const {
  std::vector<Player> out;
  out.reserve(insertion_order_.size());
  for (const auto& id : insertion_order_) out.push_back(players_.at(id));
  return out;
}

std::vector<Player> Registry::active_players() const {
  std::vector<Player> out;
  for (const auto& id : insertion_order_) {
    const Player& p = players_.at(id);
    if (p.active) out.push_back(p);
  }
  return out;
}

std::string Registry::serialize() const {
  json arr = json::array();
  for (const Player& p : all()) arr.push_back(p.to_json());
  json doc;
  doc["players"] = arr;
  return doc.dump(2) + "\n";
}

Registry Registry::deserialize(const std::string& text) {
  json doc = parse_json(text, "registry");
  Registry r;
  for (const auto& pj : doc.at("players")) r.register_player(Player::from_json(pj));
  return r;
}

void Registry::save(const std::filesystem::path& path) const {
  write_file_atomic(path, serialize());
}

Registry Registry::load(const std::filesystem::path& path) {
  return deserialize(read_file(path));
}

}  // namespace arena
