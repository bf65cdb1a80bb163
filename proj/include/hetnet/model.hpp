#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hetnet/geometry.hpp"
#include "hetnet/units.hpp"

namespace hetnet {

enum class BsClass { Macro, Pico };

/// Macro stations and their users share the sub-6 GHz band, pico stations and
/// their users the mmWave band. The two never interfere.
enum class Band { Sub6, MmWave };

/// Directional antenna. The omnidirectional antenna is (1, 360, 360).
struct Antenna {
  double directivity = 1.0;      // linear
  double main_beam_deg = 360.0;  // main lobe width
  double sector_deg = 360.0;     // beam search sector

  bool omnidirectional() const { return main_beam_deg >= 360.0; }
  friend bool operator==(const Antenna&, const Antenna&) = default;
};

struct BaseStation {
  int id = 0;
  BsClass cls = BsClass::Macro;
  Vec2 position;
  double carrier_hz = 1.9e9;
  int subchannel_count = 18;
  double subchannel_bandwidth_hz = 1.8e6;
  double tx_power_dbm = 43.0;  // per subchannel
  Antenna antenna;

  Band band() const { return cls == BsClass::Macro ? Band::Sub6 : Band::MmWave; }
  double tx_power_w() const { return dbm_to_watts(tx_power_dbm); }
};

struct PathLossExponents {
  double lte_los = 2.0;
  double lte_nlos = 3.37;
  double mmw_los = 2.55;
  double mmw_nlos = 5.76;

  double los(Band b) const { return b == Band::Sub6 ? lte_los : mmw_los; }
  double nlos(Band b) const { return b == Band::Sub6 ? lte_nlos : mmw_nlos; }
};

/// Truncated Levy walk parameters. The k/rho pairs select the flight-time law
/// below and above the flight cutoff.
struct LevyParams {
  double beta_f = 0.5;
  double beta_r = 0.5;
  double k_short = 30.55;
  double rho_short = 0.89;
  double k_long = 0.76;
  double rho_long = 0.28;
  double flight_cutoff_m = 500.0;
  double max_pause_s = 3600.0;
};

/// Immutable description of one network instance: stations, spectrum plan
/// and physics constants. Station ids are dense indices into `stations`.
struct NetworkConfig {
  Rect area{-1000.0, -500.0, 1000.0, 500.0};
  std::vector<BaseStation> stations;
  int n_subslots = 8;
  double slot_duration_us = 65535.0;
  double pilot_time_us = 20.0;
  double obstacle_density = 4.4e-4;  // per m^2
  double obstacle_mean_length_m = 55.0;
  double noise_psd_dbm_hz = -174.0;
  PathLossExponents ple;
  LevyParams levy;
  std::uint64_t rng_seed = 1;

  double slot_s() const { return us_to_s(slot_duration_us); }
  double noise_w_per_hz() const { return dbm_to_watts(noise_psd_dbm_hz); }

  /// Throws InvalidArgument for an unknown id.
  const BaseStation& station(int id) const;
  int station_count() const { return static_cast<int>(stations.size()); }

  /// Throws InvalidArgument naming the first broken invariant.
  void validate() const;
};

struct Demand {
  double ul_bps = 1e6;
  double dl_bps = 1e6;
  friend bool operator==(const Demand&, const Demand&) = default;
};

struct Flying {
  double remaining_s = 0.0;
  Vec2 heading{1.0, 0.0};  // unit vector
  double speed_mps = 0.0;
  friend bool operator==(const Flying&, const Flying&) = default;
};

struct Pausing {
  double remaining_s = 0.0;
  friend bool operator==(const Pausing&, const Pausing&) = default;
};

using MobilityPhase = std::variant<Flying, Pausing>;

struct Association {
  int bs = -1;
  int subchannel = -1;
  std::int64_t since_slot = 0;
  friend bool operator==(const Association&, const Association&) = default;
};

struct UserState {
  int id = 0;
  Vec2 position;
  Vec2 velocity;
  MobilityPhase phase = Pausing{};
  Demand demand;
  Antenna mmw_antenna;  // used on pico links; macro links are omnidirectional
  double tx_power_dbm = 30.0;
  std::optional<Association> assoc;
  bool satisfied_last_slot = false;

  double tx_power_w() const { return dbm_to_watts(tx_power_dbm); }
  /// Users asking for (re)association: unassociated, or unsatisfied last slot.
  bool requests_association() const { return !assoc || !satisfied_last_slot; }
};

/// One active connection: `user` served by `bs` on `subchannel`.
struct Link {
  int user = -1;
  int bs = -1;
  int subchannel = -1;
  friend bool operator==(const Link&, const Link&) = default;
};

/// A scheduler's output for one slot.
struct Decision {
  std::vector<Link> links;        // sorted by user id
  std::vector<int> switch_points; // indexed by station id
  std::int64_t slot_index = 0;

  const Link* find(int user) const;
  void sort_links();
};

struct UserRecord {
  double ul_bps = 0.0;
  double dl_bps = 0.0;
  bool satisfied = false;
};

struct SlotMetrics {
  std::int64_t slot = 0;
  double overall_rate_bps = 0.0;
  double effective_rate_bps = 0.0;
  int satisfied_count = 0;
  double decision_time_us = 0.0;
  std::vector<UserRecord> per_user;
};

}  // namespace hetnet
