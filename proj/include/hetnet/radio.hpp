#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "hetnet/model.hpp"

namespace hetnet {

/// Free-space path loss (4 pi d f / c)^n as a linear factor. A non-positive
/// distance is treated as 1 m.
double path_loss(double d_m, double f_hz, double exponent);

/// exp(-2 lambda_o E_L d / pi).
double los_probability(double d_m, double obstacle_density, double obstacle_mean_length_m);

/// Beam-alignment time in microseconds: zero for macro stations, otherwise
/// ceil(sector_b / beam_b) * ceil(sector_u / beam_u) * pilot.
double beam_alignment_time_us(const BaseStation& bs, const Antenna& user_antenna,
                              double pilot_time_us);

/// 1 - T_align / T_s, floored at zero.
double alignment_overhead_factor(const BaseStation& bs, const Antenna& user_antenna,
                                 const NetworkConfig& config);

/// received / (interference + W N0)
double sinr(double received_w, double interference_w, double bandwidth_hz, double n0_w_per_hz);
/// W log2(1 + sinr)
double instantaneous_rate(double sinr, double bandwidth_hz);

/// Gain of `antenna` located at `from` and steered at `peer`, seen from
/// `target`: the directivity inside half the main beam, zero outside.
/// Omnidirectional antennas always return their directivity.
double beam_gain(const Antenna& antenna, Vec2 from, Vec2 peer, Vec2 target);

struct EntityRef {
  enum class Kind : std::uint8_t { Station, User };
  Kind kind = Kind::Station;
  int index = 0;

  static EntityRef station(int i) { return {Kind::Station, i}; }
  static EntityRef user(int i) { return {Kind::User, i}; }
  bool is_station() const { return kind == Kind::Station; }
  friend bool operator==(EntityRef, EntityRef) = default;
};

/// Carrier of the stations in `band`. Throws InvalidArgument if none exists.
double band_carrier(const NetworkConfig& config, Band band);

/// Positions of every entity at one instant.
struct Scene {
  const NetworkConfig& config;
  std::span<const UserState> users;

  Vec2 position(EntityRef e) const;
  /// Euclidean distance, floored at 1 m.
  double distance(EntityRef a, EntityRef b) const;
  double tx_power_w(EntityRef e) const;
};

/// Per-slot channel draw for one unordered entity pair.
struct LinkSample {
  bool los = false;
  double distance_m = 1.0;
  double path_loss_linear = 1.0;
};

/// Order-independent LOS draws: each unordered pair gets a uniform variate
/// from a counter-based hash of (seed, slot, pair), so both directions of a
/// link see the same state and evaluation order never matters.
class LinkSampler {
 public:
  LinkSampler(std::uint64_t seed, std::int64_t slot) : seed_(seed), slot_(slot) {}
  double uniform(EntityRef a, EntityRef b) const;
  LinkSample sample(const Scene& scene, EntityRef a, EntityRef b, Band band) const;

 private:
  std::uint64_t seed_;
  std::int64_t slot_;
};

struct ChannelState {
  double probability = 0.0;
  double inverse_loss = 0.0;  // 1 / L
};

/// What the rate evaluator knows about propagation between two entities:
/// either a realised draw (one state) or the LOS/NLOS mixture (two states).
class ChannelModel {
 public:
  explicit ChannelModel(const Scene& scene) : scene_(scene) {}
  virtual ~ChannelModel() = default;
  virtual std::array<ChannelState, 2> states(EntityRef a, EntityRef b, Band band) const = 0;
  double mean_inverse_loss(EntityRef a, EntityRef b, Band band) const;
  const Scene& scene() const { return scene_; }

 protected:
  const Scene& scene_;
};

class RealizedChannel final : public ChannelModel {
 public:
  RealizedChannel(const Scene& scene, LinkSampler sampler) : ChannelModel(scene), sampler_(sampler) {}
  std::array<ChannelState, 2> states(EntityRef a, EntityRef b, Band band) const override;

 private:
  LinkSampler sampler_;
};

class ExpectedChannel final : public ChannelModel {
 public:
  using ChannelModel::ChannelModel;
  std::array<ChannelState, 2> states(EntityRef a, EntityRef b, Band band) const override;
};

/// Beam directions implied by a decision. Every active pico link steers both
/// ends at each other; macro links are omnidirectional.
class GainContext {
 public:
  GainContext(const Scene& scene, const Decision& decision);

  /// Antenna gain of `tx` towards `rx` on `subchannel`. Sub-6 GHz pairs get 1.
  /// A mmWave entity contributes its directivity only if it is active on the
  /// subchannel and `rx` lies strictly inside half its main beam. Entities in
  /// different bands, or without an active link, get 0.
  double gain(EntityRef tx, EntityRef rx, int subchannel) const;

  /// Band an entity currently transmits in; false for unassociated users.
  bool band_of(EntityRef e, Band& band) const;

 private:
  const Scene& scene_;
  std::vector<std::vector<int>> served_;  // station -> subchannel -> user (-1 idle)
  std::vector<const Link*> user_link_;    // user -> link or nullptr
};

enum class Direction { Uplink, Downlink };

/// Uplink transmissions come first: subslots 1..N are uplink.
inline Direction subslot_direction(int switch_point, int tau) {
  return tau <= switch_point ? Direction::Uplink : Direction::Downlink;
}

struct PerceivedRates {
  double ul_bps = 0.0;
  double dl_bps = 0.0;
};

/// Subslot-level interference and rate evaluation for one decision.
class SlotEvaluator {
 public:
  SlotEvaluator(const Scene& scene, const Decision& decision, const ChannelModel& channel);

  /// Interference power at the receiver of `victim` in subslot `tau` (1-based)
  /// when it receives in `direction`. Co-channel links on other stations
  /// contribute their user while still in uplink, their station afterwards.
  double interference(const Link& victim, Direction direction, int tau) const;

  /// Instantaneous rate of `link` in subslot `tau`, averaged over the channel
  /// model's states.
  double subslot_rate(const Link& link, int tau) const;

  /// Subslot rates summed over each direction's subslots, divided by N_s and
  /// scaled by the beam-alignment overhead.
  PerceivedRates perceived_rates(const Link& link) const;

  const GainContext& gains() const { return gains_; }

 private:
  double link_gain(const Link& link, Direction direction) const;

  const Scene& scene_;
  const Decision& decision_;
  const ChannelModel& channel_;
  GainContext gains_;
  std::vector<std::vector<std::vector<const Link*>>> cochannel_;  // band -> subchannel -> links
};

/// Free-function form of SlotEvaluator::interference.
double subslot_interference(const Link& victim, Direction direction, int tau,
                            const Decision& decision, const ChannelModel& channel);

}  // namespace hetnet
