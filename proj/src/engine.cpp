#include "hetnet/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include "hetnet/radio.hpp"

namespace hetnet {

namespace {

std::string summarize(std::int64_t slot, const std::vector<Violation>& v) {
  std::string s = "slot " + std::to_string(slot) + ": invalid decision";
  for (const Violation& x : v) s += "; " + std::string(to_string(x.constraint)) + ": " + x.detail;
  return s;
}

template <class F>
double mean_of(const std::vector<SlotMetrics>& slots, F f) {
  if (slots.empty()) return 0.0;
  double s = 0.0;
  for (const SlotMetrics& m : slots) s += f(m);
  return s / static_cast<double>(slots.size());
}

}  // namespace

InvalidDecision::InvalidDecision(std::int64_t slot, std::vector<Violation> violations)
    : Error(summarize(slot, violations)), violations_(std::move(violations)) {}

double RunLog::mean_overall_bps() const {
  return mean_of(slots, [](const SlotMetrics& m) { return m.overall_rate_bps; });
}
double RunLog::mean_effective_bps() const {
  return mean_of(slots, [](const SlotMetrics& m) { return m.effective_rate_bps; });
}
double RunLog::mean_satisfied() const {
  return mean_of(slots, [](const SlotMetrics& m) { return static_cast<double>(m.satisfied_count); });
}
double RunLog::mean_decision_us() const {
  return mean_of(slots, [](const SlotMetrics& m) { return m.decision_time_us; });
}

Simulation::Simulation(const Scenario& scenario, Algorithm algorithm, std::uint64_t seed,
                       const SchedulerOptions& options)
    : Simulation(make_network(scenario, seed), {}, algorithm, seed, options) {
  users_ = make_population(scenario, config_, seed);
  scheduler_ = make_scheduler(algorithm, config_, static_cast<int>(users_.size()), options);
  for (const UserState& u : users_) mobility_.push_back(mobility_rng(seed, u.id));
}

Simulation::Simulation(NetworkConfig config, std::vector<UserState> users, Algorithm algorithm,
                       std::uint64_t seed, const SchedulerOptions& options)
    : config_(std::move(config)), users_(std::move(users)), seed_(seed) {
  config_.validate();
  for (std::size_t i = 0; i < users_.size(); ++i)
    if (users_[i].id != static_cast<int>(i)) throw InvalidArgument("user ids must be dense indices");
  scheduler_ = make_scheduler(algorithm, config_, static_cast<int>(users_.size()), options);
  mobility_.reserve(users_.size());
  for (const UserState& u : users_) mobility_.push_back(mobility_rng(seed, u.id));
  previous_.switch_points = midpoint_plan(config_);
  previous_.slot_index = -1;
  log_.algorithm = algorithm;
  log_.seed = seed;
}

const SlotMetrics& Simulation::step() {
  const std::int64_t t = slot_;
  const int n = static_cast<int>(users_.size());

  for (std::size_t i = 0; i < users_.size(); ++i)
    advance(users_[i], config_.slot_s(), mobility_[i], config_.area, config_.levy);

  std::vector<int> reassoc;
  for (const UserState& u : users_)
    if (u.requests_association()) reassoc.push_back(u.id);

  const Snapshot snap{config_, users_, previous_, reassoc, t, seed_};
  const auto t0 = std::chrono::steady_clock::now();
  ScheduleResult result = scheduler_->decide(snap);
  const auto t1 = std::chrono::steady_clock::now();
  Decision& decision = result.decision;
  decision.slot_index = t;
  decision.sort_links();

  std::vector<Violation> violations = validate_decision(decision, config_, previous_, reassoc, n);
  if (!violations.empty()) throw InvalidDecision(t, std::move(violations));
  for (const UserState& u : users_) {
    if (u.requests_association()) continue;
    const Link* before = previous_.find(u.id);
    const Link* now = decision.find(u.id);
    if (before && (!now || !(*now == *before))) ++log_.continuity_breaks;
  }

  // Channel realisation happens after the decision: schedulers only ever see
  // LOS statistics, never this slot's draw.
  const Scene scene{config_, users_};
  const RealizedChannel channel(scene, LinkSampler(seed_, t));
  const SlotEvaluator eval(scene, decision, channel);

  SlotMetrics m;
  m.slot = t;
  m.decision_time_us = std::chrono::duration<double, std::micro>(t1 - t0).count();
  m.per_user.assign(users_.size(), UserRecord{});
  for (const Link& l : decision.links) {
    const PerceivedRates r = eval.perceived_rates(l);
    const UserState& u = users_[static_cast<std::size_t>(l.user)];
    UserRecord& rec = m.per_user[static_cast<std::size_t>(l.user)];
    rec.ul_bps = r.ul_bps;
    rec.dl_bps = r.dl_bps;
    rec.satisfied = r.ul_bps >= u.demand.ul_bps && r.dl_bps >= u.demand.dl_bps;
    m.overall_rate_bps += r.ul_bps + r.dl_bps;
    if (rec.satisfied) {
      m.effective_rate_bps += r.ul_bps + r.dl_bps;
      ++m.satisfied_count;
    }
  }

  scheduler_->observe(snap, decision, m.per_user);

  // Unsatisfied users keep their subchannel for the rest of this slot and
  // ask for reassociation in the next one.
  for (UserState& u : users_) {
    const Link* l = decision.find(u.id);
    if (!l) {
      u.assoc.reset();
      u.satisfied_last_slot = false;
      continue;
    }
    const bool same = u.assoc && u.assoc->bs == l->bs && u.assoc->subchannel == l->subchannel;
    u.assoc = Association{l->bs, l->subchannel, same ? u.assoc->since_slot : t};
    u.satisfied_last_slot = m.per_user[static_cast<std::size_t>(u.id)].satisfied;
  }

  for (SpectralDiagnostics& d : result.spectral) log_.spectral.push_back(d);
  previous_ = std::move(decision);
  ++slot_;
  log_.slots.push_back(std::move(m));
  return log_.slots.back();
}

RunLog run(const Scenario& scenario, Algorithm algorithm, std::uint64_t seed, int slots,
           const SchedulerOptions& options) {
  Simulation sim(scenario, algorithm, seed, options);
  for (int i = 0; i < slots; ++i) sim.step();
  return sim.take_log();
}

std::vector<RunLog> run_batch(const Scenario& scenario, std::span<const RunRequest> requests,
                              int slots, const SchedulerOptions& options) {
  std::vector<RunLog> logs(requests.size());
  std::vector<std::exception_ptr> errors(requests.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < requests.size(); i = next++) {
      try {
        logs[i] = run(scenario, requests[i].algorithm, requests[i].seed, slots, options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_threads = std::min(hw, std::max<std::size_t>(1, requests.size()));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
  return logs;
}

}  // namespace hetnet
