#include "hetnet/radio.hpp"

#include <cmath>
#include <numbers>

#include "hetnet/errors.hpp"
#include "hetnet/seeding.hpp"

namespace hetnet {

double path_loss(double d_m, double f_hz, double exponent) {
  if (!(d_m > 0.0)) d_m = 1.0;
  return std::pow(4.0 * std::numbers::pi * d_m * f_hz / kSpeedOfLight, exponent);
}

double los_probability(double d_m, double obstacle_density, double obstacle_mean_length_m) {
  return std::exp(-2.0 * obstacle_density * obstacle_mean_length_m * std::max(d_m, 0.0) /
                  std::numbers::pi);
}

double beam_alignment_time_us(const BaseStation& bs, const Antenna& user_antenna,
                              double pilot_time_us) {
  if (bs.cls == BsClass::Macro) return 0.0;
  const Antenna& a = bs.antenna;
  if (!(a.main_beam_deg > 0.0) || !(user_antenna.main_beam_deg > 0.0) ||
      !(a.sector_deg > 0.0) || !(user_antenna.sector_deg > 0.0))
    throw DomainError("beam and sector widths must be positive");
  // Guard exact ratios such as 90/30 against representation error.
  auto sweeps = [](double sector, double beam) { return std::ceil(sector / beam - 1e-9); };
  return sweeps(a.sector_deg, a.main_beam_deg) *
         sweeps(user_antenna.sector_deg, user_antenna.main_beam_deg) * pilot_time_us;
}

double alignment_overhead_factor(const BaseStation& bs, const Antenna& user_antenna,
                                 const NetworkConfig& config) {
  const double t = beam_alignment_time_us(bs, user_antenna, config.pilot_time_us);
  return std::max(0.0, 1.0 - t / config.slot_duration_us);
}

double sinr(double received_w, double interference_w, double bandwidth_hz, double n0_w_per_hz) {
  if (!(bandwidth_hz > 0.0)) throw DomainError("bandwidth must be positive");
  return received_w / (interference_w + bandwidth_hz * n0_w_per_hz);
}

double instantaneous_rate(double sinr, double bandwidth_hz) {
  return bandwidth_hz * std::log2(1.0 + sinr);
}

double beam_gain(const Antenna& antenna, Vec2 from, Vec2 peer, Vec2 target) {
  if (antenna.omnidirectional()) return antenna.directivity;
  return angle_between_deg(peer - from, target - from) < antenna.main_beam_deg / 2.0
             ? antenna.directivity
             : 0.0;
}

// --- Scene ----------------------------------------------------------------

Vec2 Scene::position(EntityRef e) const {
  if (e.is_station()) return config.station(e.index).position;
  return users[static_cast<std::size_t>(e.index)].position;
}

double Scene::distance(EntityRef a, EntityRef b) const {
  return std::max(1.0, hetnet::distance(position(a), position(b)));
}

double Scene::tx_power_w(EntityRef e) const {
  if (e.is_station()) return config.station(e.index).tx_power_w();
  return users[static_cast<std::size_t>(e.index)].tx_power_w();
}

// --- LinkSampler ----------------------------------------------------------

namespace {

std::uint64_t entity_code(EntityRef e) {
  return (static_cast<std::uint64_t>(e.index) << 1) | (e.is_station() ? 0u : 1u);
}

}  // namespace

double band_carrier(const NetworkConfig& config, Band band) {
  for (const BaseStation& bs : config.stations)
    if (bs.band() == band) return bs.carrier_hz;
  throw InvalidArgument("no station operates in the requested band");
}

double LinkSampler::uniform(EntityRef a, EntityRef b) const {
  std::uint64_t lo = entity_code(a);
  std::uint64_t hi = entity_code(b);
  if (lo > hi) std::swap(lo, hi);
  std::uint64_t h = splitmix64(seed_);
  h = splitmix64(h ^ static_cast<std::uint64_t>(slot_));
  h = splitmix64(h ^ ((lo << 32) | (hi & 0xffffffffULL)));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

LinkSample LinkSampler::sample(const Scene& scene, EntityRef a, EntityRef b, Band band) const {
  const NetworkConfig& cfg = scene.config;
  LinkSample s;
  s.distance_m = scene.distance(a, b);
  s.los = uniform(a, b) <
          los_probability(s.distance_m, cfg.obstacle_density, cfg.obstacle_mean_length_m);
  s.path_loss_linear = path_loss(s.distance_m, band_carrier(cfg, band),
                                 s.los ? cfg.ple.los(band) : cfg.ple.nlos(band));
  return s;
}

// --- Channel models -------------------------------------------------------

double ChannelModel::mean_inverse_loss(EntityRef a, EntityRef b, Band band) const {
  const auto st = states(a, b, band);
  return st[0].probability * st[0].inverse_loss + st[1].probability * st[1].inverse_loss;
}

std::array<ChannelState, 2> RealizedChannel::states(EntityRef a, EntityRef b, Band band) const {
  const LinkSample s = sampler_.sample(scene_, a, b, band);
  return {ChannelState{1.0, 1.0 / s.path_loss_linear}, ChannelState{0.0, 0.0}};
}

std::array<ChannelState, 2> ExpectedChannel::states(EntityRef a, EntityRef b, Band band) const {
  const NetworkConfig& cfg = scene_.config;
  const double d = scene_.distance(a, b);
  const double carrier = band_carrier(cfg, band);
  const double p = los_probability(d, cfg.obstacle_density, cfg.obstacle_mean_length_m);
  return {ChannelState{p, 1.0 / path_loss(d, carrier, cfg.ple.los(band))},
          ChannelState{1.0 - p, 1.0 / path_loss(d, carrier, cfg.ple.nlos(band))}};
}

// --- GainContext ----------------------------------------------------------

GainContext::GainContext(const Scene& scene, const Decision& decision)
    : scene_(scene), user_link_(scene.users.size(), nullptr) {
  served_.reserve(scene.config.stations.size());
  for (const BaseStation& bs : scene.config.stations)
    served_.emplace_back(static_cast<std::size_t>(bs.subchannel_count), -1);
  for (const Link& l : decision.links) {
    user_link_.at(static_cast<std::size_t>(l.user)) = &l;
    auto& row = served_.at(static_cast<std::size_t>(l.bs));
    if (l.subchannel >= 0 && l.subchannel < static_cast<int>(row.size()))
      row[static_cast<std::size_t>(l.subchannel)] = l.user;
  }
}

bool GainContext::band_of(EntityRef e, Band& band) const {
  if (e.is_station()) {
    band = scene_.config.station(e.index).band();
    return true;
  }
  const Link* l = user_link_[static_cast<std::size_t>(e.index)];
  if (!l) return false;
  band = scene_.config.station(l->bs).band();
  return true;
}

double GainContext::gain(EntityRef tx, EntityRef rx, int subchannel) const {
  Band tb{}, rb{};
  if (!band_of(tx, tb) || !band_of(rx, rb) || tb != rb) return 0.0;
  const Vec2 from = scene_.position(tx);
  const Vec2 to = scene_.position(rx);

  if (tx.is_station()) {
    const BaseStation& bs = scene_.config.station(tx.index);
    if (subchannel < 0 || subchannel >= bs.subchannel_count) return 0.0;
    if (bs.cls == BsClass::Macro) return 1.0;
    const int peer = served_[static_cast<std::size_t>(tx.index)][static_cast<std::size_t>(subchannel)];
    if (peer < 0) return 0.0;
    return beam_gain(bs.antenna, from, scene_.position(EntityRef::user(peer)), to);
  }

  const Link* l = user_link_[static_cast<std::size_t>(tx.index)];
  if (l->subchannel != subchannel) return 0.0;
  const BaseStation& serving = scene_.config.station(l->bs);
  if (serving.cls == BsClass::Macro) return 1.0;
  const UserState& u = scene_.users[static_cast<std::size_t>(tx.index)];
  return beam_gain(u.mmw_antenna, from, serving.position, to);
}

// --- SlotEvaluator --------------------------------------------------------

SlotEvaluator::SlotEvaluator(const Scene& scene, const Decision& decision,
                             const ChannelModel& channel)
    : scene_(scene), decision_(decision), channel_(channel), gains_(scene, decision) {
  cochannel_.resize(2);
  for (const BaseStation& bs : scene.config.stations) {
    auto& per_band = cochannel_[bs.band() == Band::Sub6 ? 0 : 1];
    if (per_band.size() < static_cast<std::size_t>(bs.subchannel_count))
      per_band.resize(static_cast<std::size_t>(bs.subchannel_count));
  }
  for (const Link& l : decision.links) {
    const BaseStation& bs = scene.config.station(l.bs);
    cochannel_[bs.band() == Band::Sub6 ? 0 : 1].at(static_cast<std::size_t>(l.subchannel))
        .push_back(&l);
  }
}

double SlotEvaluator::interference(const Link& victim, Direction direction, int tau) const {
  const BaseStation& bs = scene_.config.station(victim.bs);
  const Band band = bs.band();
  const EntityRef rx =
      direction == Direction::Uplink ? EntityRef::station(victim.bs) : EntityRef::user(victim.user);
  double total = 0.0;
  for (const Link* other : cochannel_[band == Band::Sub6 ? 0 : 1][static_cast<std::size_t>(victim.subchannel)]) {
    if (other->user == victim.user || other->bs == victim.bs) continue;
    const int n_other = decision_.switch_points[static_cast<std::size_t>(other->bs)];
    const EntityRef tx = subslot_direction(n_other, tau) == Direction::Uplink
                             ? EntityRef::user(other->user)
                             : EntityRef::station(other->bs);
    const double g = gains_.gain(tx, rx, victim.subchannel) * gains_.gain(rx, tx, victim.subchannel);
    if (g == 0.0) continue;
    total += scene_.tx_power_w(tx) * g * channel_.mean_inverse_loss(tx, rx, band);
  }
  return total;
}

double SlotEvaluator::link_gain(const Link& link, Direction direction) const {
  const EntityRef b = EntityRef::station(link.bs);
  const EntityRef u = EntityRef::user(link.user);
  return direction == Direction::Uplink
             ? gains_.gain(u, b, link.subchannel) * gains_.gain(b, u, link.subchannel)
             : gains_.gain(b, u, link.subchannel) * gains_.gain(u, b, link.subchannel);
}

double SlotEvaluator::subslot_rate(const Link& link, int tau) const {
  const NetworkConfig& cfg = scene_.config;
  const BaseStation& bs = cfg.station(link.bs);
  const int n = decision_.switch_points[static_cast<std::size_t>(link.bs)];
  const Direction dir = subslot_direction(n, tau);
  const EntityRef b = EntityRef::station(link.bs);
  const EntityRef u = EntityRef::user(link.user);
  const double power = dir == Direction::Uplink ? scene_.tx_power_w(u) : bs.tx_power_w();
  const double g = link_gain(link, dir);
  if (g == 0.0) return 0.0;
  const double i = interference(link, dir, tau);
  double rate = 0.0;
  for (const ChannelState& s : channel_.states(b, u, bs.band())) {
    if (s.probability == 0.0) continue;
    rate += s.probability *
            instantaneous_rate(sinr(power * g * s.inverse_loss, i, bs.subchannel_bandwidth_hz,
                                    cfg.noise_w_per_hz()),
                               bs.subchannel_bandwidth_hz);
  }
  return rate;
}

PerceivedRates SlotEvaluator::perceived_rates(const Link& link) const {
  const NetworkConfig& cfg = scene_.config;
  const BaseStation& bs = cfg.station(link.bs);
  const UserState& user = scene_.users[static_cast<std::size_t>(link.user)];
  const double factor = alignment_overhead_factor(bs, user.mmw_antenna, cfg);
  if (factor <= 0.0) return {};
  const int n = decision_.switch_points[static_cast<std::size_t>(link.bs)];
  PerceivedRates r;
  for (int tau = 1; tau <= cfg.n_subslots; ++tau) {
    const double rate = subslot_rate(link, tau);
    (tau <= n ? r.ul_bps : r.dl_bps) += rate;
  }
  r.ul_bps *= factor / cfg.n_subslots;
  r.dl_bps *= factor / cfg.n_subslots;
  return r;
}

double subslot_interference(const Link& victim, Direction direction, int tau,
                            const Decision& decision, const ChannelModel& channel) {
  return SlotEvaluator(channel.scene(), decision, channel).interference(victim, direction, tau);
}

}  // namespace hetnet
