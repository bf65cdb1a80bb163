#include "hetnet/model.hpp"

#include <algorithm>
#include <cmath>

#include "hetnet/errors.hpp"

namespace hetnet {

const BaseStation& NetworkConfig::station(int id) const {
  if (id < 0 || id >= station_count())
    throw InvalidArgument("unknown base station id " + std::to_string(id));
  return stations[static_cast<std::size_t>(id)];
}

void NetworkConfig::validate() const {
  if (n_subslots < 2) throw InvalidArgument("n_subslots must be at least 2");
  if (area.degenerate()) throw InvalidArgument("area is degenerate");
  if (!(slot_duration_us > 0.0)) throw InvalidArgument("slot duration must be positive");
  if (pilot_time_us < 0.0) throw InvalidArgument("pilot time must be nonnegative");
  if (!(ple.lte_los > 0 && ple.lte_nlos > 0 && ple.mmw_los > 0 && ple.mmw_nlos > 0))
    throw InvalidArgument("path-loss exponents must be positive");
  if (obstacle_density < 0.0 || obstacle_mean_length_m < 0.0)
    throw InvalidArgument("obstacle parameters must be nonnegative");

  // Every station of one class shares the class's spectrum plan.
  const BaseStation* first[2] = {nullptr, nullptr};
  for (std::size_t i = 0; i < stations.size(); ++i) {
    const BaseStation& bs = stations[i];
    if (bs.id != static_cast<int>(i)) throw InvalidArgument("station ids must be dense indices");
    if (bs.subchannel_count < 1) throw InvalidArgument("station needs at least one subchannel");
    if (!(bs.subchannel_bandwidth_hz > 0.0) || !(bs.carrier_hz > 0.0))
      throw InvalidArgument("station carrier and bandwidth must be positive");
    if (bs.cls == BsClass::Macro) {
      if (bs.antenna.directivity != 1.0 || !bs.antenna.omnidirectional())
        throw InvalidArgument("macro stations are omnidirectional with unit gain");
    } else if (!(bs.antenna.main_beam_deg > 0.0 && bs.antenna.main_beam_deg < 360.0)) {
      throw InvalidArgument("pico main beam must lie in (0, 360) degrees");
    }
    const int k = bs.cls == BsClass::Macro ? 0 : 1;
    if (!first[k]) {
      first[k] = &bs;
    } else if (first[k]->carrier_hz != bs.carrier_hz ||
               first[k]->subchannel_bandwidth_hz != bs.subchannel_bandwidth_hz ||
               first[k]->subchannel_count != bs.subchannel_count) {
      throw InvalidArgument("stations of one class must share carrier and subchannel plan");
    }
  }
}

const Link* Decision::find(int user) const {
  auto it = std::lower_bound(links.begin(), links.end(), user,
                             [](const Link& l, int u) { return l.user < u; });
  return it != links.end() && it->user == user ? &*it : nullptr;
}

void Decision::sort_links() {
  std::stable_sort(links.begin(), links.end(),
                   [](const Link& a, const Link& b) { return a.user < b.user; });
}

}  // namespace hetnet
