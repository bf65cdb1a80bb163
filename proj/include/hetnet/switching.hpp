#pragma once

#include <span>
#include <vector>

#include "hetnet/model.hpp"
#include "hetnet/omua.hpp"

namespace hetnet {

enum class Rounding { HalfUp, Ceiling };

/// Switch point that equalises a user's uplink and downlink supply/demand
/// ratios: R_UL r_dl / (R_UL r_dl + R_DL r_ul) * N_s. Falls back to N_s / 2
/// when the denominator vanishes.
double user_ideal_switch(double r_ul, double r_dl, double demand_ul, double demand_dl, int n_s);

/// One associated user and its pseudo rates at its serving station.
struct SwitchInput {
  int bs = -1;
  PseudoRates rates;
  Demand demand;
};

/// Pico stations average their own users' ideal points; all macro stations
/// share the average over every macro user. Averages are rounded and clipped
/// to [1, N_s - 1]; stations without users get N_s / 2.
std::vector<int> select_switch_points(std::span<const SwitchInput> users, const NetworkConfig& config,
                                      Rounding rounding = Rounding::HalfUp);

/// N_s / 2 everywhere.
std::vector<int> midpoint_plan(const NetworkConfig& config);

}  // namespace hetnet
