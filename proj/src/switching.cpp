#include "hetnet/switching.hpp"

#include <algorithm>
#include <cmath>

namespace hetnet {

double user_ideal_switch(double r_ul, double r_dl, double demand_ul, double demand_dl, int n_s) {
  const double den = demand_ul * r_dl + demand_dl * r_ul;
  if (!(den > 0.0)) return n_s / 2.0;
  return demand_ul * r_dl / den * n_s;
}

namespace {

int finish(double value, int n_s, Rounding rounding) {
  const double r = rounding == Rounding::Ceiling ? std::ceil(value) : std::floor(value + 0.5);
  return static_cast<int>(std::clamp(r, 1.0, static_cast<double>(n_s - 1)));
}

}  // namespace

std::vector<int> select_switch_points(std::span<const SwitchInput> users, const NetworkConfig& config,
                                      Rounding rounding) {
  const int n_s = config.n_subslots;
  const std::size_t n_bs = config.stations.size();
  // Ideal points per pico station, plus one shared pool for all macros.
  // Sorting before summing makes the mean independent of user order.
  std::vector<std::vector<double>> pool(n_bs + 1);
  for (const SwitchInput& in : users) {
    const double ideal = user_ideal_switch(in.rates.ul_bps, in.rates.dl_bps, in.demand.ul_bps,
                                           in.demand.dl_bps, n_s);
    const bool macro = config.station(in.bs).cls == BsClass::Macro;
    pool[macro ? n_bs : static_cast<std::size_t>(in.bs)].push_back(ideal);
  }

  std::vector<int> plan(n_bs);
  for (const BaseStation& bs : config.stations) {
    auto& p = pool[bs.cls == BsClass::Macro ? n_bs : static_cast<std::size_t>(bs.id)];
    std::sort(p.begin(), p.end());
    double mean = n_s / 2.0;
    if (!p.empty()) {
      double total = 0.0;
      for (double x : p) total += x;
      mean = total / static_cast<double>(p.size());
    }
    plan[static_cast<std::size_t>(bs.id)] = finish(mean, n_s, rounding);
  }
  return plan;
}

std::vector<int> midpoint_plan(const NetworkConfig& config) {
  return std::vector<int>(config.stations.size(), std::max(1, config.n_subslots / 2));
}

}  // namespace hetnet
