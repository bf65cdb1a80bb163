#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "hetnet/errors.hpp"
#include "hetnet/scenario.hpp"
#include "hetnet/scheduler.hpp"
#include "hetnet/validate.hpp"

namespace hetnet {

/// A scheduler produced a decision that breaks a structural constraint.
class InvalidDecision : public Error {
 public:
  InvalidDecision(std::int64_t slot, std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

struct RunLog {
  Algorithm algorithm = Algorithm::Omsc;
  std::uint64_t seed = 0;
  std::vector<SlotMetrics> slots;
  std::vector<SpectralDiagnostics> spectral;
  /// Users whose link changed while they were not allowed to move. Always
  /// zero unless validation is bypassed; kept as an independent check.
  int continuity_breaks = 0;

  double mean_overall_bps() const;
  double mean_effective_bps() const;
  double mean_satisfied() const;
  double mean_decision_us() const;
};

/// One seeded simulation. Each step advances mobility by one slot, asks the
/// scheduler for a decision, validates it, draws the channel and records
/// rates and satisfaction.
class Simulation {
 public:
  Simulation(const Scenario& scenario, Algorithm algorithm, std::uint64_t seed,
             const SchedulerOptions& options = {});
  /// Explicit network and population. User ids must be 0..n-1 in order.
  Simulation(NetworkConfig config, std::vector<UserState> users, Algorithm algorithm,
             std::uint64_t seed, const SchedulerOptions& options = {});

  /// Runs one slot and returns its metrics. Throws InvalidDecision if the
  /// scheduler breaks a constraint.
  const SlotMetrics& step();

  std::int64_t slot() const { return slot_; }
  const NetworkConfig& config() const { return config_; }
  const std::vector<UserState>& users() const { return users_; }
  const Decision& last_decision() const { return previous_; }
  const RunLog& log() const { return log_; }
  RunLog take_log() { return std::move(log_); }

 private:
  NetworkConfig config_;
  std::vector<UserState> users_;
  std::vector<Rng> mobility_;
  std::unique_ptr<Scheduler> scheduler_;
  Decision previous_;
  std::int64_t slot_ = 0;
  std::uint64_t seed_;
  RunLog log_;
};

RunLog run(const Scenario& scenario, Algorithm algorithm, std::uint64_t seed, int slots,
           const SchedulerOptions& options = {});

struct RunRequest {
  Algorithm algorithm;
  std::uint64_t seed;
};

/// Runs every request on its own thread (bounded by hardware concurrency)
/// and returns the logs in request order.
std::vector<RunLog> run_batch(const Scenario& scenario, std::span<const RunRequest> requests,
                              int slots, const SchedulerOptions& options = {});

}  // namespace hetnet
