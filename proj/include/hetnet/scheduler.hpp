#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hetnet/scsa.hpp"
#include "hetnet/snapshot.hpp"
#include "hetnet/switching.hpp"

namespace hetnet {

enum class Algorithm { Omsc, OmscSinr, Lcuas, LcuasSc, Sdmab, SdmabSc };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::Omsc,    Algorithm::OmscSinr,
                                                Algorithm::Lcuas,   Algorithm::LcuasSc,
                                                Algorithm::Sdmab,   Algorithm::SdmabSc};

std::string_view to_string(Algorithm a);
/// Accepts the names produced by to_string ("omsc", "omsc-sinr", ...).
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct ScheduleResult {
  Decision decision;
  std::vector<SpectralDiagnostics> spectral;  // one per subchannel-clustering call
};

struct SchedulerOptions {
  Rounding rounding = Rounding::HalfUp;
  double ucb_exploration = 1.4142135623730951;
};

class Scheduler {
 public:
  virtual ~Scheduler() = default;
  virtual ScheduleResult decide(const Snapshot& snap) = 0;
  /// Feedback after the slot's rates are known. `records` is indexed by user.
  virtual void observe(const Snapshot& snap, const Decision& executed,
                       std::span<const UserRecord> records) {
    (void)snap;
    (void)executed;
    (void)records;
  }
};

std::unique_ptr<Scheduler> make_scheduler(Algorithm algo, const NetworkConfig& config, int users,
                                          const SchedulerOptions& options = {});

}  // namespace hetnet
