#pragma once

#include <vector>

#include "hetnet/assignment.hpp"
#include "hetnet/snapshot.hpp"

namespace hetnet {

enum class RateVariant { Snr, Sinr };

struct PseudoRates {
  double ul_bps = 0.0;
  double dl_bps = 0.0;
};

/// Inputs of the two-state, two-position pseudo-rate estimate for one
/// station/user pair. Losses are linear; the LOS probability is taken at the
/// current position only.
struct PseudoRateInputs {
  double p_los = 1.0;
  double loss_los_now = 1.0;
  double loss_los_next = 1.0;
  double loss_nlos_now = 1.0;
  double loss_nlos_next = 1.0;
  double bandwidth_hz = 1.0;
  double n0_w_per_hz = 0.0;
  double user_power_w = 0.0;
  double station_power_w = 0.0;
  double gain = 1.0;      // G_b * G_u
  double overhead = 1.0;  // 1 - T_align / T_s
  double interference_ul_w = 0.0;
  double interference_dl_w = 0.0;
};

PseudoRates pseudo_rate(const PseudoRateInputs& in);

/// Geometry-derived inputs for `user` at `bs`, with zero interference.
PseudoRateInputs pseudo_rate_inputs(const NetworkConfig& config, const BaseStation& bs,
                                    const UserState& user);

/// Estimated (uplink, downlink) interference for `user` served by `bs`.
/// Interferers are the entities active in the previous slot on the same band,
/// other than `bs`, its own users and `user`, that lie inside the receiver's
/// main beam. Each contributes theta P G G_rx / (360 |C_b|) times its
/// LOS/NLOS-averaged inverse loss. On the macro band uplink receivers only
/// see users and downlink receivers only see stations.
struct InterferenceEstimate {
  double ul_w = 0.0;
  double dl_w = 0.0;
};

InterferenceEstimate potential_interference(const Snapshot& snap, const BaseStation& bs,
                                   const UserState& user);

/// min(sqrt(ul / R_UL), sqrt(dl / R_DL)).
double connection_quality(const PseudoRates& rates, const Demand& demand);

/// Pseudo rates of `user` at `bs` under the chosen variant.
PseudoRates estimate_rates(const Snapshot& snap, const BaseStation& bs, const UserState& user,
                           RateVariant variant);

/// Station chosen for every user (-1 for unassociated), indexed by user id.
/// Users outside the reassociation set keep their previous station.
struct AssociationResult {
  std::vector<int> station;
  double total_weight = 0.0;
};

/// Optimal-matching association: reassociating users on the left, free seats
/// (|C_b| minus ongoing users of b) on the right, connection quality as edge
/// weight. Users matched to padding or to a zero-weight edge stay unassociated.
AssociationResult omua_associate(const Snapshot& snap, RateVariant variant);

}  // namespace hetnet
