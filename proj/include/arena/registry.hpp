#pragma once

#include <map>
#include <string>
#include <vector>

#include "arena/util.hpp"

namespace arena {

struct Player {
  std::string id;
  std::string display_name;
  std::string family;            // model lineage, used for judge exclusion
  std::string provider_binding;  // key into the provider config
  double mmlu_seed = 0.0;        // in [0, 100]; seeds initial standings
  bool active = true;

  json to_json() const;
  static Player from_json(const json& j);
};

// Read-mostly store of tournament participants. Handed-out Player values are
// copies; mutation goes through register_player / set_active only.
class Registry {
 public:
  void register_player(const Player& p);
  void set_active(const std::string& id, bool active);

  const Player& get(const std::string& id) const;
  bool contains(const std::string& id) const { return players_.count(id) > 0; }

  // Case-insensitive, trimmed family comparison.
  bool same_family(const std::string& a, const std::string& b) const;

  std::vector<Player> all() const;
  std::vector<Player> active_players() const;
  size_t size() const { return players_.size(); }

  // One JSON document, array of players, stable key order.
  std::string serialize() const;
  static Registry deserialize(const std::string& text);

  void save(const std::filesystem::path& path) const;
  static Registry load(const std::filesystem::path& path);

 private:
  std::map<std::string, Player> players_;  // ordered: stable serialization
  std::vector<std::string> insertion_order_;
};

}  // namespace arena
