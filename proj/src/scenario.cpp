#include "hetnet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hetnet/errors.hpp"
#include "hetnet/seeding.hpp"

namespace hetnet {

namespace {
constexpr std::uint64_t kPlacementTag = 0x706c6163;  // "plac"
constexpr std::uint64_t kUsersTag = 0x75736572;      // "user"
constexpr std::uint64_t kMobilityTag = 0x6d6f6269;   // "mobi"
}  // namespace

Antenna Scenario::pbs_antenna() const {
  return {db_to_linear(pbs_directivity_dbi), pbs_main_beam_deg, pbs_sector_deg};
}

Antenna Scenario::ue_antenna() const {
  return {db_to_linear(ue_directivity_dbi.value_or(pbs_directivity_dbi)),
          ue_main_beam_deg.value_or(pbs_main_beam_deg), ue_sector_deg.value_or(pbs_sector_deg)};
}

std::vector<int> apportion(int total, std::span<const double> weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvalidArgument("mix weights must be nonnegative");
    sum += w;
  }
  if (!(sum > 0.0)) throw InvalidArgument("mix weights must not all be zero");
  std::vector<int> count(weights.size());
  std::vector<double> rem(weights.size());
  int given = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double exact = total * weights[i] / sum;
    count[i] = static_cast<int>(std::floor(exact));
    rem[i] = exact - count[i];
    given += count[i];
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
  for (std::size_t i = 0; given < total; ++i, ++given) ++count[order[i % order.size()]];
  return count;
}

NetworkConfig make_network(const Scenario& s, std::uint64_t seed) {
  NetworkConfig cfg;
  cfg.area = s.area;
  cfg.n_subslots = s.n_subslots;
  cfg.slot_duration_us = s.slot_duration_us;
  cfg.pilot_time_us = s.pilot_time_us;
  cfg.obstacle_density = s.obstacle_density;
  cfg.obstacle_mean_length_m = s.obstacle_mean_length_m;
  cfg.noise_psd_dbm_hz = s.noise_psd_dbm_hz;
  cfg.ple = s.ple;
  cfg.levy = s.levy;
  cfg.rng_seed = seed;
  if (s.mbs_count < 0 || s.pbs_count < 0) throw InvalidArgument("station counts must be nonnegative");

  const double cy = (s.area.min_y + s.area.max_y) / 2.0;
  for (int i = 0; i < s.mbs_count; ++i) {
    BaseStation bs;
    bs.id = static_cast<int>(cfg.stations.size());
    bs.cls = BsClass::Macro;
    bs.position = {s.area.min_x + (i + 0.5) * s.area.width() / s.mbs_count, cy};
    bs.carrier_hz = s.mbs_carrier_hz;
    bs.subchannel_count = s.mbs_subchannel_count;
    bs.subchannel_bandwidth_hz = s.mbs_subchannel_bandwidth_hz;
    bs.tx_power_dbm = s.mbs_tx_power_dbm;
    cfg.stations.push_back(bs);
  }
  Rng rng(derive_seed({seed, kPlacementTag}));
  std::uniform_real_distribution<double> ux(s.area.min_x, s.area.max_x);
  std::uniform_real_distribution<double> uy(s.area.min_y, s.area.max_y);
  for (int i = 0; i < s.pbs_count; ++i) {
    BaseStation bs;
    bs.id = static_cast<int>(cfg.stations.size());
    bs.cls = BsClass::Pico;
    bs.position.x = ux(rng);
    bs.position.y = uy(rng);
    bs.carrier_hz = s.pbs_carrier_hz;
    bs.subchannel_count = s.pbs_subchannel_count;
    bs.subchannel_bandwidth_hz = s.pbs_subchannel_bandwidth_hz;
    bs.tx_power_dbm = s.pbs_tx_power_dbm;
    bs.antenna = s.pbs_antenna();
    cfg.stations.push_back(bs);
  }
  cfg.validate();
  return cfg;
}

Rng mobility_rng(std::uint64_t seed, int user) {
  return Rng(derive_seed({seed, kMobilityTag, static_cast<std::uint64_t>(user)}));
}

std::vector<UserState> make_population(const Scenario& s, const NetworkConfig& cfg,
                                       std::uint64_t seed) {
  if (s.users < 0) throw InvalidArgument("user count must be nonnegative");
  const std::vector<int> per_class = apportion(s.users, s.demand_mix);
  const Antenna ue = s.ue_antenna();
  if (!(ue.main_beam_deg > 0.0 && ue.sector_deg > 0.0))
    throw InvalidArgument("user beam and sector widths must be positive");

  Rng rng(derive_seed({seed, kUsersTag}));
  std::uniform_real_distribution<double> ux(cfg.area.min_x, cfg.area.max_x);
  std::uniform_real_distribution<double> uy(cfg.area.min_y, cfg.area.max_y);
  std::vector<UserState> users;
  users.reserve(static_cast<std::size_t>(s.users));
  for (std::size_t cls = 0; cls < per_class.size(); ++cls)
    for (int k = 0; k < per_class[cls]; ++k) {
      UserState u;
      u.id = static_cast<int>(users.size());
      u.position.x = ux(rng);
      u.position.y = uy(rng);
      u.demand = kDemandProfiles[cls];
      u.mmw_antenna = ue;
      u.tx_power_dbm = s.ue_tx_power_dbm;
      users.push_back(u);
    }
  return users;
}

}  // namespace hetnet
