#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hetnet/mobility.hpp"
#include "hetnet/model.hpp"

namespace hetnet {

/// Flat, file-friendly description of one experiment. Defaults reproduce the
/// desk-scale reference layout: two macros on the horizontal axis, twelve
/// picos and forty users scattered uniformly, Table-style radio parameters.
struct Scenario {
  int users = 40;
  int mbs_count = 2;
  int pbs_count = 12;
  Rect area{-1000.0, -500.0, 1000.0, 500.0};

  int n_subslots = 8;
  double slot_duration_us = 65535.0;
  double pilot_time_us = 20.0;
  double obstacle_density = 4.4e-4;
  double obstacle_mean_length_m = 55.0;
  double noise_psd_dbm_hz = -174.0;
  PathLossExponents ple;
  LevyParams levy;

  double mbs_carrier_hz = 1.9e9;
  double pbs_carrier_hz = 28e9;
  int mbs_subchannel_count = 18;
  int pbs_subchannel_count = 3;
  double mbs_subchannel_bandwidth_hz = 1.8e6;
  double pbs_subchannel_bandwidth_hz = 14.4e6;
  double mbs_tx_power_dbm = 43.0;
  double pbs_tx_power_dbm = 33.0;
  double ue_tx_power_dbm = 30.0;

  double pbs_directivity_dbi = 15.0;
  double pbs_main_beam_deg = 30.0;
  double pbs_sector_deg = 90.0;
  // User mmWave antenna; unset fields mirror the pico antenna.
  std::optional<double> ue_directivity_dbi;
  std::optional<double> ue_main_beam_deg;
  std::optional<double> ue_sector_deg;

  // Relative weights of the demand profiles in kDemandProfiles.
  std::array<double, 3> demand_mix{3.0, 4.0, 3.0};

  std::string algorithm = "omsc";
  int slots = 200;
  std::uint64_t rng_seed = 1;

  Antenna pbs_antenna() const;
  Antenna ue_antenna() const;
};

/// (uplink, downlink) demand of each user class, bits per second.
inline constexpr std::array<Demand, 3> kDemandProfiles{
    Demand{15e6, 1e6}, Demand{15e6, 15e6}, Demand{0.1e6, 15e6}};

/// Splits `total` into integer counts proportional to `weights` (largest
/// remainder, ties to the lower index). Throws InvalidArgument for negative
/// weights or a zero sum.
std::vector<int> apportion(int total, std::span<const double> weights);

/// Stations for `seed`: macros evenly spaced along the area's horizontal
/// centre line, picos uniform over the area. Validated before returning.
NetworkConfig make_network(const Scenario& scenario, std::uint64_t seed);

/// Users placed uniformly with demand classes apportioned exactly. Everyone
/// starts with an expired pause, so the first mobility step opens a flight.
std::vector<UserState> make_population(const Scenario& scenario, const NetworkConfig& config,
                                       std::uint64_t seed);

/// Per-user mobility stream, independent of every other random draw.
Rng mobility_rng(std::uint64_t seed, int user);

}  // namespace hetnet
