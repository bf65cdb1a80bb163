// One PASS/FAIL line per acceptance criterion. Exit status is non-zero if any
// criterion fails. Optional argv: list of criterion numbers to run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "brute_force.hpp"
#include "fixtures.hpp"
#include "formula_table.hpp"
#include "hetnet/assignment.hpp"
#include "hetnet/engine.hpp"
#include "hetnet/scenario_file.hpp"
#include "hetnet/scsa.hpp"
#include "hetnet/validate.hpp"

using namespace hetnet;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// 1 -------------------------------------------------------------------------
Outcome matching_optimality() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> size(1, 7);
  std::uniform_real_distribution<double> entry(0.0, 10.0);
  int mismatches = 0;
  const auto t0 = Clock::now();
  for (int trial = 0; trial < 1000; ++trial) {
    WeightMatrix w(size(rng), size(rng));
    for (double& x : w.data) x = entry(rng);
    const Matching m = optimal_matching(w);
    if (m.total != fx::brute_force_matching(w)) ++mismatches;
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 5.0,
          std::to_string(mismatches) + "/1000 mismatches, " + fmt("%.2f s", secs)};
}

// 2 -------------------------------------------------------------------------
Outcome formula_fidelity(const std::string& python, const std::string& oracle) {
  const std::string cmd = "\"" + python + "\" \"" + oracle + "\"";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {false, "could not start oracle"};
  std::string out;
  char buf[4096];
  while (size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  if (pclose(pipe) != 0) return {false, "oracle script failed"};

  const nlohmann::json ref = nlohmann::json::parse(out);
  int checked = 0, bad = 0;
  double worst = 0.0;
  std::string worst_key;
  for (const auto& [key, value] : formula_table::compute()) {
    if (!formula_table::is_core_formula(key)) continue;
    if (!ref.contains(key)) return {false, "oracle lacks " + key};
    const double want = ref.at(key).get<double>();
    const double rel = std::abs(value - want) / std::abs(want);
    ++checked;
    if (rel > 1e-9) ++bad;
    if (rel >= worst) {
      worst = rel;
      worst_key = key;
    }
  }
  return {bad == 0 && checked >= 13, std::to_string(checked) + " values, worst rel err " +
                                         fmt("%.2e", worst) + " (" + worst_key + ")"};
}

// 3 and 4 -------------------------------------------------------------------
struct SoundnessResult {
  Outcome constraints;
  Outcome spectral;
};

SoundnessResult soundness() {
  const Scenario desk;
  long violations = 0, broken_continuity = 0, slots = 0;
  std::string first;
  RunLog omsc_log;
  for (Algorithm a : kAllAlgorithms) {
    try {
      Simulation sim(desk, a, 1);
      for (int t = 0; t < 200; ++t) {
        const Decision before = sim.last_decision();
        std::vector<int> reassoc;
        std::vector<char> locked(sim.users().size(), 0);
        for (const UserState& u : sim.users()) {
          if (u.requests_association()) reassoc.push_back(u.id);
          else locked[static_cast<std::size_t>(u.id)] = 1;
        }
        sim.step();
        const Decision& now = sim.last_decision();
        const auto v = validate_decision(now, sim.config(), before, reassoc,
                                         static_cast<int>(sim.users().size()));
        violations += static_cast<long>(v.size());
        if (!v.empty() && first.empty())
          first = std::string(to_string(a)) + ": " + v.front().detail;
        for (const Link& l : before.links) {
          if (!locked[static_cast<std::size_t>(l.user)]) continue;
          const Link* k = now.find(l.user);
          if (!k || k->bs != l.bs || k->subchannel != l.subchannel) ++broken_continuity;
        }
        ++slots;
      }
      if (a == Algorithm::Omsc) omsc_log = sim.take_log();
    } catch (const InvalidDecision& e) {
      ++violations;
      if (first.empty()) first = std::string(to_string(a)) + ": " + e.what();
    }
  }
  SoundnessResult r;
  r.constraints = {violations == 0 && broken_continuity == 0 && slots == 1200,
                   std::to_string(slots) + " slots, " + std::to_string(violations) + " violations, " +
                       std::to_string(broken_continuity) + " continuity breaks" +
                       (first.empty() ? "" : " [" + first + "]")};

  double row = 0.0, resid = 0.0, min_eig = 0.0;
  for (const SpectralDiagnostics& d : omsc_log.spectral) {
    row = std::max(row, d.max_row_sum);
    resid = std::max(resid, d.max_residual);
    min_eig = std::min(min_eig, d.min_eigenvalue);
  }
  const std::size_t calls = omsc_log.spectral.size();
  r.spectral = {calls > 0 && row < 1e-10 && resid < 1e-8 && min_eig >= -1e-9,
                std::to_string(calls) + " invocations, max |row sum| " + fmt("%.1e", row) +
                    ", max residual " + fmt("%.1e", resid) + ", min eigenvalue " + fmt("%.1e", min_eig)};
  return r;
}

// 5 -------------------------------------------------------------------------
// Random pico layouts pushed through the real graph builder, so conflicts
// have the shape the scheduler produces: same-station cliques plus
// channel-locked ongoing users (collapsed when they share a channel).
InterferenceGraph seeded_graph(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(-200.0, 200.0), u(0.0, 1.0);
  std::uniform_int_distribution<int> n_bs(2, 4), n_users(2, 9), sp(1, 7), ch(0, 2);
  std::vector<BaseStation> stations;
  const int bs_count = n_bs(rng);
  for (int b = 0; b < bs_count; ++b) stations.push_back(fx::pico(b, {coord(rng), coord(rng)}));
  const NetworkConfig config = fx::network(stations);

  std::vector<UserState> users;
  std::vector<Connection> conns;
  std::vector<std::vector<int>> taken(static_cast<std::size_t>(bs_count));
  const int n = n_users(rng);
  for (int i = 0; i < n; ++i) {
    UserState user = fx::user(i, {coord(rng), coord(rng)});
    // nearest station that still has a seat
    int best = -1;
    for (int b = 0; b < bs_count; ++b) {
      if (taken[static_cast<std::size_t>(b)].size() >= 3) continue;
      if (best < 0 || distance(user.position, stations[static_cast<std::size_t>(b)].position) <
                          distance(user.position, stations[static_cast<std::size_t>(best)].position))
        best = b;
    }
    users.push_back(user);
    if (best < 0) continue;
    Connection c{i, best, -1};
    auto& used = taken[static_cast<std::size_t>(best)];
    if (u(rng) < 0.3) {
      int channel = ch(rng);
      while (std::find(used.begin(), used.end(), channel) != used.end()) channel = (channel + 1) % 3;
      c.original_subchannel = channel;
      used.push_back(channel);
    } else {
      used.push_back(-1);
    }
    conns.push_back(c);
  }
  std::vector<int> switch_points;
  for (int b = 0; b < bs_count; ++b) switch_points.push_back(sp(rng));
  return build_band_graph(conns, switch_points, config, users).graph;
}

double exhaustive_optimum(const InterferenceGraph& g, int k) {
  std::vector<int> c(static_cast<std::size_t>(g.n), 0);
  double best = INFINITY;
  for (;;) {
    bool ok = true;
    for (int a = 0; a < g.n && ok; ++a)
      for (int b = a + 1; b < g.n && ok; ++b)
        if (g.conflicts(a, b) && c[static_cast<std::size_t>(a)] == c[static_cast<std::size_t>(b)]) ok = false;
    if (ok) best = std::min(best, retained_interference(g, c));
    int i = 0;
    while (i < g.n && ++c[static_cast<std::size_t>(i)] == k) c[static_cast<std::size_t>(i++)] = 0;
    if (i == g.n) break;
  }
  return best;
}

Outcome partition_quality() {
  std::mt19937_64 rng(7001);
  int within = 0, conflict_free = 0;
  double worst = 0.0, sum_got = 0.0, sum_opt = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const InterferenceGraph g = seeded_graph(rng);
    const int n = g.n;
    const int k = std::min(3, n);
    Rng part_rng(static_cast<std::uint64_t>(trial));
    std::vector<int> c;
    try {
      c = partition_graph(g, k, part_rng);
    } catch (const Error&) {
      continue;
    }
    bool clean = true;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (g.conflicts(a, b) && c[static_cast<std::size_t>(a)] == c[static_cast<std::size_t>(b)]) clean = false;
    conflict_free += clean;
    const double opt = exhaustive_optimum(g, k);
    const double got = retained_interference(g, c);
    sum_got += got;
    sum_opt += opt;
    if (got <= 1.5 * opt) ++within;
    else if (std::getenv("HETNET_ACCEPT_VERBOSE")) {
      std::vector<int> raw = spectral_cluster(laplacian(build_similarity(g)), k, part_rng);
      std::cerr << "case " << trial << " n=" << n << " opt=" << opt << " got=" << got << "\n";
      for (int a = 0; a < n; ++a) {
        std::cerr << "  v" << a << " pin=" << g.fixed_channel[static_cast<std::size_t>(a)]
                  << " final=" << c[static_cast<std::size_t>(a)] << " :";
        for (int b = 0; b < n; ++b) std::cerr << " " << (g.conflicts(a, b) ? std::string("X") : fmt("%.2e", g.w(a, b)));
        std::cerr << "\n";
      }
    }
    const double ratio = opt > 0.0 ? got / opt : (got > 0.0 ? INFINITY : 1.0);
    worst = std::max(worst, ratio);
  }
  return {within == 100 && conflict_free == 100,
          std::to_string(within) + "/100 within 1.5x, " + std::to_string(conflict_free) +
              "/100 conflict-free, worst ratio " + fmt("%.3f", worst) + ", pooled ratio " +
              fmt("%.3f", sum_got / sum_opt)};
}

// 6 -------------------------------------------------------------------------
std::map<Algorithm, RunLog> pooled(const Scenario& s, int seeds, int slots) {
  std::vector<RunRequest> reqs;
  for (Algorithm a : kAllAlgorithms)
    for (int seed = 1; seed <= seeds; ++seed) reqs.push_back({a, static_cast<std::uint64_t>(seed)});
  std::vector<RunLog> logs = run_batch(s, reqs, slots);
  std::map<Algorithm, RunLog> out;
  for (RunLog& l : logs) {
    RunLog& dst = out[l.algorithm];
    dst.algorithm = l.algorithm;
    dst.slots.insert(dst.slots.end(), l.slots.begin(), l.slots.end());
  }
  return out;
}

Outcome trend_reproduction() {
  const auto t0 = Clock::now();
  Scenario wide;
  Scenario narrow;
  set_scenario_value(narrow, "pbs_directivity_dbi", "24.5");
  set_scenario_value(narrow, "pbs_main_beam_deg", "10");
  const auto base = pooled(wide, 10, 500);
  const auto tight = pooled(narrow, 10, 500);

  const double omsc = base.at(Algorithm::Omsc).mean_overall_bps();
  const double sdmab_sc = base.at(Algorithm::SdmabSc).mean_overall_bps();
  const double lcuas = base.at(Algorithm::Lcuas).mean_overall_bps();
  const bool ordering = omsc >= sdmab_sc && sdmab_sc >= lcuas && omsc >= 1.05 * lcuas;

  bool narrower_better = true;
  std::string beams;
  for (Algorithm a : kAllAlgorithms) {
    const double w = base.at(a).mean_overall_bps(), n = tight.at(a).mean_overall_bps();
    if (!(n > w)) narrower_better = false;
    beams += " " + std::string(to_string(a)) + fmt(" x%.3f", n / w);
  }
  const double ratio = base.at(Algorithm::Omsc).mean_effective_bps() / omsc;

  std::ostringstream d;
  d << "omsc " << fmt("%.4g", omsc) << " >= sdmab-sc " << fmt("%.4g", sdmab_sc) << " >= lcuas "
    << fmt("%.4g", lcuas) << (ordering ? " ok" : " NO") << " (omsc/lcuas " << fmt("%.3f", omsc / lcuas)
    << "); narrow beams" << beams << (narrower_better ? " ok" : " NO") << "; omsc eff/overall "
    << fmt("%.3f", ratio) << "; " << fmt("%.0f s", seconds_since(t0));
  return {ordering && narrower_better && ratio >= 0.90, d.str()};
}

// 7 -------------------------------------------------------------------------
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism(const std::string& cli) {
  const fs::path root = fs::temp_directory_path() / "hetnet_acceptance_det";
  fs::remove_all(root);
  const std::string flags = " run --algo omsc,omsc-sinr,lcuas,lcuas-sc,sdmab,sdmab-sc --seeds 1,2 --slots 60";
  for (const char* tag : {"a", "b"}) {
    const std::string cmd = "\"" + cli + "\"" + flags + " --out \"" + (root / tag).string() + "\"";
    if (std::system(cmd.c_str()) != 0) return {false, "cli failed: " + cmd};
  }
  int files = 0, differ = 0;
  for (const auto& e : fs::recursive_directory_iterator(root / "a")) {
    if (!e.is_regular_file()) continue;
    const fs::path other = root / "b" / fs::relative(e.path(), root / "a");
    ++files;
    if (!fs::exists(other) || slurp(e.path()) != slurp(other)) ++differ;
  }
  fs::remove_all(root);
  return {files == 13 && differ == 0,
          std::to_string(files) + " files compared, " + std::to_string(differ) + " differ"};
}

// 8 -------------------------------------------------------------------------
Outcome decision_time() {
  std::map<Algorithm, double> at40, at80;
  for (int users : {40, 80}) {
    Scenario s;
    s.users = users;
    for (Algorithm a : kAllAlgorithms) {
      double sum = 0.0;
      for (std::uint64_t seed = 1; seed <= 3; ++seed) sum += run(s, a, seed, 100).mean_decision_us();
      (users == 40 ? at40 : at80)[a] = sum / 3.0;
    }
  }
  const double growth = at80[Algorithm::Omsc] / at40[Algorithm::Omsc];
  bool fastest = true;
  for (Algorithm a : kAllAlgorithms) {
    if (a == Algorithm::Lcuas) continue;
    if (at40[a] <= at40[Algorithm::Lcuas] || at80[a] <= at80[Algorithm::Lcuas]) fastest = false;
  }
  std::ostringstream d;
  d << "omsc " << fmt("%.0f", at40[Algorithm::Omsc]) << " -> " << fmt("%.0f", at80[Algorithm::Omsc])
    << " us (x" << fmt("%.2f", growth) << "); at 40 users:";
  for (Algorithm a : kAllAlgorithms) d << " " << to_string(a) << " " << fmt("%.0f", at40[a]);
  d << " us" << (fastest ? "" : " (lcuas not fastest)");
  return {growth <= 10.0 && fastest, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  auto wanted = [&](int c) { return only.empty() || only.count(c) > 0; };

  int failed = 0;
  auto report = [&](int c, const char* name, const Outcome& o) {
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c << " (" << name << "): " << o.detail
              << std::endl;
    failed += !o.pass;
  };
  auto guarded = [&](int c, const char* name, auto&& fn) {
    if (!wanted(c)) return;
    try {
      report(c, name, fn());
    } catch (const std::exception& e) {
      report(c, name, Outcome{false, std::string("threw: ") + e.what()});
    }
  };

  guarded(1, "matching optimality", matching_optimality);
  guarded(2, "formula fidelity", [] { return formula_fidelity(HETNET_PYTHON, HETNET_ORACLE); });
  if (wanted(3) || wanted(4)) {
    try {
      const SoundnessResult r = soundness();
      if (wanted(3)) report(3, "constraint soundness", r.constraints);
      if (wanted(4)) report(4, "laplacian and eigenpairs", r.spectral);
    } catch (const std::exception& e) {
      if (wanted(3)) report(3, "constraint soundness", {false, e.what()});
      if (wanted(4)) report(4, "laplacian and eigenpairs", {false, e.what()});
    }
  }
  guarded(5, "partition quality", partition_quality);
  guarded(6, "trend reproduction", trend_reproduction);
  guarded(7, "determinism", [] { return determinism(HETNET_CLI); });
  guarded(8, "decision time", decision_time);
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
