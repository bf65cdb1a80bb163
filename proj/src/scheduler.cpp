#include "hetnet/scheduler.hpp"

#include "hetnet/baselines.hpp"
#include "hetnet/omua.hpp"

namespace hetnet {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Omsc: return "omsc";
    case Algorithm::OmscSinr: return "omsc-sinr";
    case Algorithm::Lcuas: return "lcuas";
    case Algorithm::LcuasSc: return "lcuas-sc";
    case Algorithm::Sdmab: return "sdmab";
    case Algorithm::SdmabSc: return "sdmab-sc";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm a : kAllAlgorithms)
    if (to_string(a) == name) return a;
  return std::nullopt;
}

namespace {

ScheduleResult with_scsa(const Snapshot& snap, const StationMap& stations,
                         std::vector<int> switch_points) {
  ScheduleResult r;
  ScsaResult s = scsa_allocate(snap, stations, switch_points);
  r.decision.links = std::move(s.links);
  r.decision.switch_points = std::move(switch_points);
  r.decision.slot_index = snap.slot;
  r.spectral = std::move(s.diagnostics);
  return r;
}

class OmscScheduler final : public Scheduler {
 public:
  OmscScheduler(RateVariant variant, Rounding rounding) : variant_(variant), rounding_(rounding) {}

  ScheduleResult decide(const Snapshot& snap) override {
    const AssociationResult assoc = omua_associate(snap, variant_);
    std::vector<SwitchInput> inputs;
    for (std::size_t u = 0; u < assoc.station.size(); ++u) {
      const int b = assoc.station[u];
      if (b < 0) continue;
      const UserState& user = snap.users[u];
      inputs.push_back({b, estimate_rates(snap, snap.config.station(b), user, variant_), user.demand});
    }
    return with_scsa(snap, assoc.station, select_switch_points(inputs, snap.config, rounding_));
  }

 private:
  RateVariant variant_;
  Rounding rounding_;
};

class LcuasScheduler final : public Scheduler {
 public:
  explicit LcuasScheduler(bool scsa) : scsa_(scsa) {}

  ScheduleResult decide(const Snapshot& snap) override {
    const StationMap stations = lcuas_associate(snap);
    if (scsa_) return with_scsa(snap, stations, midpoint_plan(snap.config));
    return {baseline_decision(snap, stations), {}};
  }

 private:
  bool scsa_;
};

class SdmabScheduler final : public Scheduler {
 public:
  SdmabScheduler(bool scsa, int users, int stations, double c)
      : scsa_(scsa), bandit_(users, stations, c) {}

  ScheduleResult decide(const Snapshot& snap) override {
    const StationMap stations = sdmab_associate(
        snap, bandit_, [&](const StationMap& m) { return expected_overall_rate(snap, m); });
    if (scsa_) return with_scsa(snap, stations, midpoint_plan(snap.config));
    return {baseline_decision(snap, stations), {}};
  }

  // Only users that picked a station this slot pulled an arm.
  void observe(const Snapshot& snap, const Decision& executed,
               std::span<const UserRecord> records) override {
    for (int u : snap.reassoc) {
      const Link* l = executed.find(u);
      if (!l) continue;
      const UserState& user = snap.users[static_cast<std::size_t>(u)];
      const UserRecord& r = records[static_cast<std::size_t>(u)];
      bandit_.update(u, l->bs,
                     (r.ul_bps + r.dl_bps) / (user.demand.ul_bps + user.demand.dl_bps));
    }
  }

 private:
  bool scsa_;
  BanditState bandit_;
};

}  // namespace

std::unique_ptr<Scheduler> make_scheduler(Algorithm algo, const NetworkConfig& config, int users,
                                          const SchedulerOptions& options) {
  switch (algo) {
    case Algorithm::Omsc: return std::make_unique<OmscScheduler>(RateVariant::Snr, options.rounding);
    case Algorithm::OmscSinr:
      return std::make_unique<OmscScheduler>(RateVariant::Sinr, options.rounding);
    case Algorithm::Lcuas: return std::make_unique<LcuasScheduler>(false);
    case Algorithm::LcuasSc: return std::make_unique<LcuasScheduler>(true);
    case Algorithm::Sdmab:
    case Algorithm::SdmabSc:
      return std::make_unique<SdmabScheduler>(algo == Algorithm::SdmabSc, users,
                                              config.station_count(), options.ucb_exploration);
  }
  return nullptr;
}

}  // namespace hetnet
