// Command-line front end. Talks to the simulator only through hetnet.h.

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hetnet/hetnet.h"

namespace fs = std::filesystem;

namespace {

struct ScenarioDeleter {
  void operator()(hetnet_scenario* s) const { hetnet_scenario_free(s); }
};
struct RunDeleter {
  void operator()(hetnet_run* r) const { hetnet_run_free(r); }
};
struct AggregateDeleter {
  void operator()(hetnet_aggregate* a) const { hetnet_aggregate_free(a); }
};
using ScenarioPtr = std::unique_ptr<hetnet_scenario, ScenarioDeleter>;
using RunPtr = std::unique_ptr<hetnet_run, RunDeleter>;
using AggregatePtr = std::unique_ptr<hetnet_aggregate, AggregateDeleter>;

// Status codes already match the documented exit codes for scenario (2) and
// infeasibility (3); everything else exits 1.
int exit_code(hetnet_status st) {
  switch (st) {
    case HETNET_OK: return 0;
    case HETNET_ERR_SCENARIO: return 2;
    case HETNET_ERR_INFEASIBLE: return 3;
    default: return 1;
  }
}

struct Failure {
  hetnet_status status;
  std::string message;
};

[[noreturn]] void throw_status(hetnet_status st, const std::string& context) {
  std::string msg = hetnet_last_error();
  throw Failure{st, context.empty() ? msg : context + ": " + msg};
}

void check(hetnet_status st, const std::string& context = {}) {
  if (st != HETNET_OK) throw_status(st, context);
}

std::string get_value(const hetnet_scenario* s, const char* key) {
  size_t needed = 0;
  check(hetnet_scenario_get(s, key, nullptr, 0, &needed));
  std::string v(needed, '\0');
  check(hetnet_scenario_get(s, key, v.data(), v.size(), nullptr));
  v.resize(needed - 1);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::uint64_t parse_seed(const std::string& text, const char* what) {
  try {
    size_t pos = 0;
    if (!text.empty() && text[0] == '-') throw std::invalid_argument("negative");
    const auto v = std::stoull(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw Failure{HETNET_ERR_ARGUMENT, std::string("invalid ") + what + " '" + text + "'"};
  }
}

struct RunOptions {
  std::string scenario_path;
  std::vector<std::string> algos;
  int slots = -1;
  std::vector<std::string> seeds;
  std::string out = "runs";
  std::string sweep;
  bool timing = false;
  unsigned jobs = 0;
};

struct Job {
  const hetnet_scenario* scenario;
  std::string algo;
  std::uint64_t seed;
  fs::path csv;
  RunPtr run;
  hetnet_status status = HETNET_OK;
  std::string error;
};

int run_command(const RunOptions& opt) {
  hetnet_scenario* raw = nullptr;
  if (opt.scenario_path.empty()) check(hetnet_scenario_default(&raw));
  else check(hetnet_scenario_load(opt.scenario_path.c_str(), &raw), opt.scenario_path);
  ScenarioPtr base(raw);

  std::vector<std::string> algos;
  for (const auto& a : opt.algos)
    for (const auto& part : split(a, ',')) algos.push_back(part);
  if (algos.empty()) algos.push_back(get_value(base.get(), "algorithm"));

  std::vector<std::uint64_t> seeds;
  for (const auto& s : opt.seeds)
    for (const auto& part : split(s, ',')) seeds.push_back(parse_seed(part, "seed"));
  if (seeds.empty()) {
    if (const char* env = std::getenv("HETNET_SEED"); env && *env)
      seeds.push_back(parse_seed(env, "HETNET_SEED"));
    else
      seeds.push_back(parse_seed(get_value(base.get(), "rng_seed"), "rng_seed"));
  }

  const int slots = opt.slots >= 0 ? opt.slots : std::stoi(get_value(base.get(), "slots"));

  // One scenario per sweep point; without a sweep the base scenario alone.
  std::vector<std::pair<std::string, ScenarioPtr>> points;
  if (opt.sweep.empty()) {
    points.emplace_back("", std::move(base));
  } else {
    const auto eq = opt.sweep.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Failure{HETNET_ERR_ARGUMENT, "--sweep expects key=v1,v2,..."};
    const std::string key = opt.sweep.substr(0, eq);
    const auto values = split(opt.sweep.substr(eq + 1), ',');
    if (values.empty()) throw Failure{HETNET_ERR_ARGUMENT, "--sweep has no values"};
    for (const auto& v : values) {
      hetnet_scenario* copy = nullptr;
      check(hetnet_scenario_clone(base.get(), &copy));
      ScenarioPtr p(copy);
      check(hetnet_scenario_set(p.get(), key.c_str(), v.c_str()), "--sweep " + key + "=" + v);
      points.emplace_back(key + "=" + v, std::move(p));
    }
  }

  // Validate algorithm names before spending time on runs.
  for (const auto& a : algos) {
    hetnet_run* probe = nullptr;
    const hetnet_status st = hetnet_run_create(points.front().second.get(), a.c_str(), 0, &probe);
    hetnet_run_free(probe);
    if (st != HETNET_OK) throw_status(st, "--algo");
  }

  const fs::path out_dir(opt.out);
  std::vector<Job> jobs;
  for (const auto& [label, scen] : points)
    for (const auto& a : algos)
      for (std::uint64_t s : seeds) {
        fs::path dir = label.empty() ? out_dir : out_dir / label;
        jobs.push_back(Job{scen.get(), a, s, dir / a / ("seed_" + std::to_string(s) + ".csv"), nullptr, HETNET_OK, {}});
      }

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      Job& job = jobs[i];
      hetnet_run* r = nullptr;
      hetnet_status st = hetnet_run_create(job.scenario, job.algo.c_str(), job.seed, &r);
      job.run.reset(r);
      if (st == HETNET_OK) st = hetnet_run_steps(job.run.get(), slots);
      if (st == HETNET_OK) st = hetnet_run_write_csv(job.run.get(), job.csv.string().c_str(), opt.timing);
      if (st != HETNET_OK) {
        job.status = st;
        job.error = job.algo + " seed " + std::to_string(job.seed) + ": " + hetnet_last_error();
      }
    }
  };
  unsigned n_threads = opt.jobs ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(std::max<size_t>(jobs.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  for (const Job& job : jobs)
    if (job.status != HETNET_OK) throw Failure{job.status, job.error};

  hetnet_aggregate* agg_raw = nullptr;
  check(hetnet_aggregate_create(&agg_raw));
  AggregatePtr agg(agg_raw);
  size_t at = 0;
  for (const auto& [label, scen] : points)
    for (size_t a = 0; a < algos.size(); ++a) {
      std::vector<const hetnet_run*> group;
      for (size_t s = 0; s < seeds.size(); ++s) group.push_back(jobs[at++].run.get());
      check(hetnet_aggregate_add(agg.get(), label.c_str(), group.data(), group.size(), opt.timing));
    }
  check(hetnet_aggregate_write(agg.get(), (out_dir / "aggregate.csv").string().c_str()));
  return 0;
}

int summarize_command(const std::vector<std::string>& dirs, const std::string& out) {
  std::vector<const char*> ptrs;
  for (const auto& d : dirs) ptrs.push_back(d.c_str());
  check(hetnet_summarize(ptrs.data(), ptrs.size(), out.empty() ? nullptr : out.c_str()));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-slotted HetNet association and resource allocation simulator"};
  app.set_version_flag("--version", std::string(hetnet_version()));
  app.require_subcommand(1);

  RunOptions ro;
  auto* run = app.add_subcommand("run", "Simulate one or more algorithms over seeds");
  run->add_option("--scenario", ro.scenario_path, "Scenario file (defaults when omitted)");
  run->add_option("--algo", ro.algos, "omsc, omsc-sinr, lcuas, lcuas-sc, sdmab, sdmab-sc (comma list)");
  run->add_option("--slots", ro.slots, "Slots per run (overrides the scenario)")->check(CLI::NonNegativeNumber);
  run->add_option("--seeds", ro.seeds, "Comma-separated seeds (overrides HETNET_SEED and the scenario)");
  run->add_option("--out", ro.out, "Output directory")->capture_default_str();
  run->add_option("--sweep", ro.sweep, "key=v1,v2,... one batch per value");
  run->add_flag("--timing", ro.timing, "Record decision_us (makes CSVs machine-dependent)");
  run->add_option("--jobs", ro.jobs, "Worker threads (default: hardware concurrency)");

  std::vector<std::string> dirs;
  std::string summary_out;
  auto* sum = app.add_subcommand("summarize", "Per-algorithm means and 95% intervals across runs");
  sum->add_option("dirs", dirs, "Run directories")->required();
  sum->add_option("--out", summary_out, "Output CSV (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_command(ro);
    return summarize_command(dirs, summary_out);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return exit_code(f.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
