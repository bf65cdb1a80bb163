#include "hetnet/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hetnet/errors.hpp"
#include "hetnet/omua.hpp"
#include "hetnet/radio.hpp"
#include "hetnet/switching.hpp"

namespace hetnet {

namespace {

StationMap ongoing_map(const Snapshot& snap) {
  StationMap m(snap.users.size(), -1);
  for (const Link& l : snap.ongoing_links()) m[static_cast<std::size_t>(l.user)] = l.bs;
  return m;
}

std::vector<int> free_seats(const Snapshot& snap) {
  std::vector<int> seats(snap.config.stations.size());
  const std::vector<int> ongoing = snap.ongoing_count();
  for (const BaseStation& bs : snap.config.stations)
    seats[static_cast<std::size_t>(bs.id)] = bs.subchannel_count - ongoing[static_cast<std::size_t>(bs.id)];
  return seats;
}

}  // namespace

bool lcuas_available(const Snapshot& snap, const BaseStation& bs, const UserState& user) {
  return connection_quality(estimate_rates(snap, bs, user, RateVariant::Snr), user.demand) >= 1.0;
}

StationMap lcuas_associate(const Snapshot& snap) {
  StationMap out = ongoing_map(snap);
  std::vector<int> seats = free_seats(snap);
  std::vector<int> load(snap.config.stations.size(), 0);
  for (int b : out)
    if (b >= 0) ++load[static_cast<std::size_t>(b)];

  struct Entry {
    int user;
    std::vector<int> options;
  };
  std::vector<Entry> queue;
  for (int u : snap.reassoc) {
    Entry e{u, {}};
    const UserState& user = snap.users[static_cast<std::size_t>(u)];
    for (const BaseStation& bs : snap.config.stations)
      if (seats[static_cast<std::size_t>(bs.id)] > 0 && lcuas_available(snap, bs, user))
        e.options.push_back(bs.id);
    queue.push_back(std::move(e));
  }
  std::stable_sort(queue.begin(), queue.end(),
                   [](const Entry& a, const Entry& b) { return a.options.size() < b.options.size(); });

  for (const Entry& e : queue) {
    int pick = -1;
    for (int b : e.options) {
      const auto i = static_cast<std::size_t>(b);
      if (seats[i] <= 0) continue;
      if (pick < 0 || load[i] < load[static_cast<std::size_t>(pick)]) pick = b;
    }
    if (pick < 0) continue;
    out[static_cast<std::size_t>(e.user)] = pick;
    --seats[static_cast<std::size_t>(pick)];
    ++load[static_cast<std::size_t>(pick)];
  }
  return out;
}

// --- Bandits ----------------------------------------------------------------

BanditState::BanditState(int users, int stations, double exploration)
    : users_(users),
      stations_(stations),
      c_(exploration),
      n_(static_cast<std::size_t>(users) * stations, 0),
      mean_(static_cast<std::size_t>(users) * stations, 0.0) {}

std::size_t BanditState::at(int user, int bs) const {
  if (user < 0 || user >= users_ || bs < 0 || bs >= stations_)
    throw InvalidArgument("bandit arm out of range");
  return static_cast<std::size_t>(user) * stations_ + bs;
}

int BanditState::pulls(int user, int bs) const { return n_[at(user, bs)]; }
double BanditState::mean(int user, int bs) const { return mean_[at(user, bs)]; }

int BanditState::total_pulls(int user) const {
  int t = 0;
  for (int b = 0; b < stations_; ++b) t += n_[at(user, b)];
  return t;
}

int BanditState::choose(int user, std::span<const int> candidates) const {
  for (int b : candidates)
    if (pulls(user, b) == 0) return b;  // candidates come in ascending id order
  const double log_t = std::log(std::max(1, total_pulls(user)));
  int best = -1;
  double best_score = 0.0;
  for (int b : candidates) {
    const double score = mean(user, b) + c_ * std::sqrt(log_t / pulls(user, b));
    if (best < 0 || score > best_score) {
      best = b;
      best_score = score;
    }
  }
  return best;
}

void BanditState::update(int user, int bs, double reward) {
  const std::size_t i = at(user, bs);
  reward = std::clamp(reward, 0.0, 1.0);
  ++n_[i];
  mean_[i] += (reward - mean_[i]) / n_[i];
}

void BanditState::store_best(StationMap scheme, double objective) {
  best_ = std::move(scheme);
  best_objective_ = objective;
  has_best_ = true;
}

StationMap sdmab_associate(const Snapshot& snap, BanditState& bandit, const ObjectiveFn& objective) {
  const StationMap base = ongoing_map(snap);

  StationMap proposal = base;
  std::vector<int> seats = free_seats(snap);
  std::vector<int> candidates;
  for (int u : snap.reassoc) {
    const UserState& user = snap.users[static_cast<std::size_t>(u)];
    candidates.clear();
    for (const BaseStation& bs : snap.config.stations)
      if (seats[static_cast<std::size_t>(bs.id)] > 0 && lcuas_available(snap, bs, user))
        candidates.push_back(bs.id);
    const int b = bandit.choose(u, candidates);
    if (b < 0) continue;
    proposal[static_cast<std::size_t>(u)] = b;
    --seats[static_cast<std::size_t>(b)];
  }
  const double proposal_value = objective(proposal);

  if (bandit.has_best()) {
    // Replay the stored scheme on today's seats: ongoing users stay put,
    // reassociating users take their recorded station while seats last.
    StationMap replay = base;
    seats = free_seats(snap);
    for (int u : snap.reassoc) {
      const int b = bandit.best_scheme()[static_cast<std::size_t>(u)];
      if (b < 0 || seats[static_cast<std::size_t>(b)] <= 0) continue;
      if (!lcuas_available(snap, snap.config.station(b), snap.users[static_cast<std::size_t>(u)]))
        continue;
      replay[static_cast<std::size_t>(u)] = b;
      --seats[static_cast<std::size_t>(b)];
    }
    const double replay_value = objective(replay);
    if (replay_value > proposal_value) {
      bandit.store_best(replay, replay_value);
      return replay;
    }
  }
  bandit.store_best(proposal, proposal_value);
  return proposal;
}

// --- Baseline channel and switching scheme ------------------------------------

int first_idle_subchannel(const BaseStation& bs, std::span<const int> occupied) {
  for (int c = 0; c < bs.subchannel_count; ++c)
    if (std::find(occupied.begin(), occupied.end(), c) == occupied.end()) return c;
  throw InfeasibleError("station " + std::to_string(bs.id) + " has no idle subchannel");
}

Decision baseline_decision(const Snapshot& snap, const StationMap& stations) {
  Decision d;
  d.slot_index = snap.slot;
  d.switch_points = midpoint_plan(snap.config);
  std::vector<std::vector<int>> occupied(snap.config.stations.size());
  for (const Link& l : snap.ongoing_links()) {
    d.links.push_back(l);
    occupied[static_cast<std::size_t>(l.bs)].push_back(l.subchannel);
  }
  for (int u : snap.reassoc) {
    const int b = stations[static_cast<std::size_t>(u)];
    if (b < 0) continue;
    auto& occ = occupied[static_cast<std::size_t>(b)];
    const int c = first_idle_subchannel(snap.config.station(b), occ);
    occ.push_back(c);
    d.links.push_back({u, b, c});
  }
  d.sort_links();
  return d;
}

double expected_overall_rate(const Snapshot& snap, const StationMap& stations) {
  const Decision d = baseline_decision(snap, stations);
  const Scene scene{snap.config, snap.users};
  const ExpectedChannel channel(scene);
  const SlotEvaluator eval(scene, d, channel);
  double total = 0.0;
  for (const Link& l : d.links) {
    const PerceivedRates r = eval.perceived_rates(l);
    total += r.ul_bps + r.dl_bps;
  }
  return total;
}

}  // namespace hetnet
