#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hetnet/snapshot.hpp"

namespace hetnet {

/// Station per user id (-1 unassociated). Ongoing users keep their station.
using StationMap = std::vector<int>;

/// Station `bs` is available to `user` when its SNR-based connection quality
/// is at least 1 and it still has a free seat.
bool lcuas_available(const Snapshot& snap, const BaseStation& bs, const UserState& user);

/// Least-loaded association: users with the fewest available stations pick
/// first; each takes the available station with the fewest users (lowest id
/// on ties). Users with nothing available stay unassociated.
StationMap lcuas_associate(const Snapshot& snap);

/// Per-user upper-confidence-bound bandits over stations plus the controller's
/// record of the best association seen so far.
class BanditState {
 public:
  BanditState(int users, int stations, double exploration = 1.4142135623730951);

  int pulls(int user, int bs) const;
  double mean(int user, int bs) const;
  int total_pulls(int user) const;
  double exploration() const { return c_; }

  /// Unpulled arms first (lowest id), otherwise the largest
  /// mean + c sqrt(ln T / n); ties to the lowest id. -1 if no candidate.
  int choose(int user, std::span<const int> candidates) const;

  /// Incremental mean update with a reward clipped to [0, 1].
  void update(int user, int bs, double reward);

  const StationMap& best_scheme() const { return best_; }
  double best_objective() const { return best_objective_; }
  bool has_best() const { return has_best_; }
  void store_best(StationMap scheme, double objective);

 private:
  std::size_t at(int user, int bs) const;

  int users_, stations_;
  double c_;
  std::vector<int> n_;
  std::vector<double> mean_;
  StationMap best_;
  double best_objective_ = 0.0;
  bool has_best_ = false;
};

/// Scores a complete station map on the current snapshot (higher is better).
using ObjectiveFn = std::function<double(const StationMap&)>;

/// One controller round: every reassociating user proposes a station by UCB
/// (in id order, among stations available in the lcuas sense). The controller
/// scores the proposal and the stored best scheme, replayed onto today's
/// available stations, with `objective`; the better one becomes the new best
/// and is returned.
StationMap sdmab_associate(const Snapshot& snap, BanditState& bandit, const ObjectiveFn& objective);

/// Lowest-index subchannel of `bs` not in `occupied`. Throws InfeasibleError
/// when every subchannel is taken.
int first_idle_subchannel(const BaseStation& bs, std::span<const int> occupied);

/// Baseline decision: ongoing links unchanged, new users on the first idle
/// subchannel of their station (in user id order), switch points at N_s / 2.
Decision baseline_decision(const Snapshot& snap, const StationMap& stations);

/// Expected overall rate of `stations` under the baseline decision, using the
/// LOS/NLOS-averaged channel and full subslot interference.
double expected_overall_rate(const Snapshot& snap, const StationMap& stations);

}  // namespace hetnet
