#include "hetnet/snapshot.hpp"

#include <algorithm>

namespace hetnet {

bool Snapshot::is_reassoc(int user) const {
  return std::binary_search(reassoc.begin(), reassoc.end(), user);
}

std::vector<Link> Snapshot::ongoing_links() const {
  std::vector<Link> out;
  for (const Link& l : previous.links)
    if (!is_reassoc(l.user)) out.push_back(l);
  return out;
}

std::vector<int> Snapshot::ongoing_count() const {
  std::vector<int> n(config.stations.size(), 0);
  for (const Link& l : previous.links)
    if (!is_reassoc(l.user)) ++n[static_cast<std::size_t>(l.bs)];
  return n;
}

Vec2 predicted_position(const UserState& user, const NetworkConfig& config) {
  return config.area.clamp(user.position + user.velocity * config.slot_s());
}

}  // namespace hetnet
