#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hetnet/model.hpp"

namespace hetnet {

/// Everything a scheduler may look at when deciding slot `slot`: positions
/// and velocities after this slot's mobility step, the decision executed in
/// the previous slot, and the users allowed to change their link.
struct Snapshot {
  const NetworkConfig& config;
  std::span<const UserState> users;
  const Decision& previous;
  std::span<const int> reassoc;  // ascending user ids
  std::int64_t slot = 0;
  std::uint64_t seed = 0;

  bool is_reassoc(int user) const;
  /// Previous-slot links of users that keep them this slot.
  std::vector<Link> ongoing_links() const;
  /// Ongoing users per station.
  std::vector<int> ongoing_count() const;
};

/// Position after one slot at the current velocity, clamped to the area.
Vec2 predicted_position(const UserState& user, const NetworkConfig& config);

}  // namespace hetnet
