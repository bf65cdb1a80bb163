#include "hetnet/omua.hpp"

#include <cmath>

#include "hetnet/errors.hpp"
#include "hetnet/radio.hpp"

namespace hetnet {

PseudoRates pseudo_rate(const PseudoRateInputs& in) {
  const double noise = in.bandwidth_hz * in.n0_w_per_hz;
  auto direction = [&](double power, double interference) {
    auto r = [&](double loss) {
      return std::log2(1.0 + power * in.gain / loss / (interference + noise));
    };
    const double los = in.p_los * in.bandwidth_hz / 2.0 * (r(in.loss_los_now) + r(in.loss_los_next));
    const double nlos =
        (1.0 - in.p_los) * in.bandwidth_hz / 2.0 * (r(in.loss_nlos_now) + r(in.loss_nlos_next));
    return (los + nlos) * in.overhead;
  };
  return {direction(in.user_power_w, in.interference_ul_w),
          direction(in.station_power_w, in.interference_dl_w)};
}

PseudoRateInputs pseudo_rate_inputs(const NetworkConfig& config, const BaseStation& bs,
                                    const UserState& user) {
  const Band band = bs.band();
  const double d_now = std::max(1.0, distance(bs.position, user.position));
  const double d_next = std::max(1.0, distance(bs.position, predicted_position(user, config)));
  PseudoRateInputs in;
  in.p_los = los_probability(d_now, config.obstacle_density, config.obstacle_mean_length_m);
  in.loss_los_now = path_loss(d_now, bs.carrier_hz, config.ple.los(band));
  in.loss_los_next = path_loss(d_next, bs.carrier_hz, config.ple.los(band));
  in.loss_nlos_now = path_loss(d_now, bs.carrier_hz, config.ple.nlos(band));
  in.loss_nlos_next = path_loss(d_next, bs.carrier_hz, config.ple.nlos(band));
  in.bandwidth_hz = bs.subchannel_bandwidth_hz;
  in.n0_w_per_hz = config.noise_w_per_hz();
  in.user_power_w = user.tx_power_w();
  in.station_power_w = bs.tx_power_w();
  in.gain = bs.cls == BsClass::Macro ? 1.0 : bs.antenna.directivity * user.mmw_antenna.directivity;
  in.overhead = alignment_overhead_factor(bs, user.mmw_antenna, config);
  return in;
}

namespace {

double mixed_inverse_loss(const NetworkConfig& config, Vec2 a, Vec2 b, double carrier, Band band) {
  const double d = std::max(1.0, distance(a, b));
  const double p = los_probability(d, config.obstacle_density, config.obstacle_mean_length_m);
  return p / path_loss(d, carrier, config.ple.los(band)) +
         (1.0 - p) / path_loss(d, carrier, config.ple.nlos(band));
}

// Main beam of an antenna at `from` steered at `peer`; omni antennas cover
// everything.
bool in_main_beam(const Antenna& a, Vec2 from, Vec2 peer, Vec2 target) {
  return a.omnidirectional() || angle_between_deg(peer - from, target - from) < a.main_beam_deg / 2.0;
}

}  // namespace

InterferenceEstimate potential_interference(const Snapshot& snap, const BaseStation& bs,
                                            const UserState& user) {
  const NetworkConfig& cfg = snap.config;
  const Band band = bs.band();
  const bool macro = bs.cls == BsClass::Macro;
  const Antenna omni;
  const Antenna& bs_ant = macro ? omni : bs.antenna;
  const Antenna& user_ant = macro ? omni : user.mmw_antenna;
  const double per_channel = 1.0 / (360.0 * bs.subchannel_count);

  InterferenceEstimate out;
  std::vector<char> station_seen(cfg.stations.size(), 0);
  auto add = [&](Vec2 src, const Antenna& src_ant, double power, Direction dir) {
    const Vec2 rx = dir == Direction::Uplink ? bs.position : user.position;
    const Vec2 peer = dir == Direction::Uplink ? user.position : bs.position;
    const Antenna& rx_ant = dir == Direction::Uplink ? bs_ant : user_ant;
    if (!in_main_beam(rx_ant, rx, peer, src)) return;
    const double beam = std::min(src_ant.main_beam_deg, 360.0);
    const double term = beam * power * src_ant.directivity * rx_ant.directivity * per_channel *
                        mixed_inverse_loss(cfg, src, rx, bs.carrier_hz, band);
    (dir == Direction::Uplink ? out.ul_w : out.dl_w) += term;
  };

  for (const Link& l : snap.previous.links) {
    if (l.bs == bs.id || l.user == user.id) continue;
    const BaseStation& other = cfg.station(l.bs);
    if (other.band() != band) continue;
    const UserState& iu = snap.users[static_cast<std::size_t>(l.user)];
    const Antenna& iu_ant = macro ? omni : iu.mmw_antenna;
    const Antenna& ib_ant = macro ? omni : other.antenna;

    add(iu.position, iu_ant, iu.tx_power_w(), Direction::Uplink);
    if (!macro) add(iu.position, iu_ant, iu.tx_power_w(), Direction::Downlink);
    if (!station_seen[static_cast<std::size_t>(l.bs)]) {
      station_seen[static_cast<std::size_t>(l.bs)] = 1;
      if (!macro) add(other.position, ib_ant, other.tx_power_w(), Direction::Uplink);
      add(other.position, ib_ant, other.tx_power_w(), Direction::Downlink);
    }
  }
  return out;
}

double connection_quality(const PseudoRates& rates, const Demand& demand) {
  if (!(demand.ul_bps > 0.0 && demand.dl_bps > 0.0)) throw DomainError("demands must be positive");
  return std::min(std::sqrt(rates.ul_bps / demand.ul_bps), std::sqrt(rates.dl_bps / demand.dl_bps));
}

PseudoRates estimate_rates(const Snapshot& snap, const BaseStation& bs, const UserState& user,
                           RateVariant variant) {
  PseudoRateInputs in = pseudo_rate_inputs(snap.config, bs, user);
  if (variant == RateVariant::Sinr) {
    const InterferenceEstimate i = potential_interference(snap, bs, user);
    in.interference_ul_w = i.ul_w;
    in.interference_dl_w = i.dl_w;
  }
  return pseudo_rate(in);
}

AssociationResult omua_associate(const Snapshot& snap, RateVariant variant) {
  const NetworkConfig& cfg = snap.config;
  AssociationResult out;
  out.station.assign(snap.users.size(), -1);
  for (const Link& l : snap.ongoing_links()) out.station[static_cast<std::size_t>(l.user)] = l.bs;

  const std::vector<int> ongoing = snap.ongoing_count();
  std::vector<int> seat_station;
  for (const BaseStation& bs : cfg.stations)
    for (int k = ongoing[static_cast<std::size_t>(bs.id)]; k < bs.subchannel_count; ++k)
      seat_station.push_back(bs.id);

  const int rows = static_cast<int>(snap.reassoc.size());
  if (rows == 0 || seat_station.empty()) return out;

  // One weight per (user, station); seats of a station share it.
  const int n_bs = cfg.station_count();
  std::vector<double> w(static_cast<std::size_t>(rows) * n_bs);
  for (int r = 0; r < rows; ++r) {
    const UserState& u = snap.users[static_cast<std::size_t>(snap.reassoc[r])];
    for (const BaseStation& bs : cfg.stations)
      w[static_cast<std::size_t>(r) * n_bs + bs.id] =
          connection_quality(estimate_rates(snap, bs, u, variant), u.demand);
  }

  WeightMatrix m(rows, static_cast<int>(seat_station.size()));
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < m.cols; ++c)
      m(r, c) = w[static_cast<std::size_t>(r) * n_bs + seat_station[static_cast<std::size_t>(c)]];

  const Matching match = optimal_matching(m);
  for (int r = 0; r < rows; ++r) {
    const int c = match.row_to_col[static_cast<std::size_t>(r)];
    if (c < 0 || !(m(r, c) > 0.0)) continue;
    out.station[static_cast<std::size_t>(snap.reassoc[r])] = seat_station[static_cast<std::size_t>(c)];
    out.total_weight += m(r, c);
  }
  return out;
}

}  // namespace hetnet
