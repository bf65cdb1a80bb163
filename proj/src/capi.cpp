#include "hetnet/hetnet.h"

#include <cstring>
#include <fstream>
#include <iostream>
#include <new>
#include <string>
#include <vector>

#include "hetnet/engine.hpp"
#include "hetnet/report.hpp"
#include "hetnet/scenario_file.hpp"

struct hetnet_scenario {
  hetnet::Scenario value;
};

struct hetnet_run {
  hetnet::Simulation sim;
  hetnet::RunHeader header;
};

struct hetnet_aggregate {
  std::vector<hetnet::AggregateRow> rows;
};

namespace {

thread_local std::string g_last_error;

hetnet_status fail(hetnet_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <class F>
hetnet_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return HETNET_OK;
  } catch (const hetnet::ScenarioError& e) {
    return fail(HETNET_ERR_SCENARIO, e.what());
  } catch (const hetnet::InfeasibleError& e) {
    return fail(HETNET_ERR_INFEASIBLE, e.what());
  } catch (const hetnet::InvalidDecision& e) {
    return fail(HETNET_ERR_INVALID_DECISION, e.what());
  } catch (const hetnet::InvalidArgument& e) {
    return fail(HETNET_ERR_ARGUMENT, e.what());
  } catch (const hetnet::DomainError& e) {
    return fail(HETNET_ERR_ARGUMENT, e.what());
  } catch (const std::ios_base::failure& e) {
    return fail(HETNET_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(HETNET_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HETNET_ERR_INTERNAL, e.what());
  }
}

#define REQUIRE_ARG(cond)                                              \
  do {                                                                 \
    if (!(cond)) return fail(HETNET_ERR_ARGUMENT, "null argument: " #cond); \
  } while (0)

}  // namespace

extern "C" {

const char* hetnet_last_error(void) { return g_last_error.c_str(); }

const char* hetnet_version(void) { return "0.1.0"; }

hetnet_status hetnet_scenario_default(hetnet_scenario** out) {
  REQUIRE_ARG(out);
  return guarded([&] { *out = new hetnet_scenario{}; });
}

hetnet_status hetnet_scenario_parse(const char* text, hetnet_scenario** out) {
  REQUIRE_ARG(text && out);
  return guarded([&] { *out = new hetnet_scenario{hetnet::parse_scenario(text)}; });
}

hetnet_status hetnet_scenario_load(const char* path, hetnet_scenario** out) {
  REQUIRE_ARG(path && out);
  return guarded([&] { *out = new hetnet_scenario{hetnet::load_scenario(path)}; });
}

hetnet_status hetnet_scenario_clone(const hetnet_scenario* s, hetnet_scenario** out) {
  REQUIRE_ARG(s && out);
  return guarded([&] { *out = new hetnet_scenario{s->value}; });
}

hetnet_status hetnet_scenario_set(hetnet_scenario* s, const char* key, const char* value) {
  REQUIRE_ARG(s && key && value);
  return guarded([&] {
    hetnet::Scenario next = s->value;
    hetnet::set_scenario_value(next, key, value);
    hetnet::validate_scenario(next);
    s->value = std::move(next);
  });
}

hetnet_status hetnet_scenario_get(const hetnet_scenario* s, const char* key, char* buf, size_t cap,
                                  size_t* needed) {
  REQUIRE_ARG(s && key && (buf || cap == 0));
  return guarded([&] {
    const std::string v = hetnet::get_scenario_value(s->value, key);
    if (needed) *needed = v.size() + 1;
    if (cap > 0) {
      const size_t n = std::min(cap - 1, v.size());
      std::memcpy(buf, v.data(), n);
      buf[n] = '\0';
    }
  });
}

hetnet_status hetnet_scenario_hash(const hetnet_scenario* s, uint64_t* out) {
  REQUIRE_ARG(s && out);
  return guarded([&] { *out = hetnet::scenario_hash(s->value); });
}

void hetnet_scenario_free(hetnet_scenario* s) { delete s; }

hetnet_status hetnet_run_create(const hetnet_scenario* s, const char* algorithm, uint64_t seed,
                                hetnet_run** out) {
  REQUIRE_ARG(s && algorithm && out);
  return guarded([&] {
    const auto algo = hetnet::parse_algorithm(algorithm);
    if (!algo) throw hetnet::InvalidArgument(std::string("unknown algorithm '") + algorithm + "'");
    hetnet::RunHeader header;
    header.scenario_hash = hetnet::hash_hex(hetnet::scenario_hash(s->value));
    header.algo = std::string(hetnet::to_string(*algo));
    header.seed = seed;
    *out = new hetnet_run{hetnet::Simulation(s->value, *algo, seed), std::move(header)};
  });
}

hetnet_status hetnet_run_step(hetnet_run* run, hetnet_slot_metrics* out) {
  REQUIRE_ARG(run);
  return guarded([&] {
    const hetnet::SlotMetrics& m = run->sim.step();
    run->header.slots += 1;
    if (out) *out = {m.slot, m.overall_rate_bps, m.effective_rate_bps, m.satisfied_count,
                     m.decision_time_us};
  });
}

hetnet_status hetnet_run_steps(hetnet_run* run, int32_t count) {
  REQUIRE_ARG(run && count >= 0);
  return guarded([&] {
    for (int32_t i = 0; i < count; ++i) {
      run->sim.step();
      run->header.slots += 1;
    }
  });
}

hetnet_status hetnet_run_slot_count(const hetnet_run* run, int64_t* out) {
  REQUIRE_ARG(run && out);
  *out = run->header.slots;
  return HETNET_OK;
}

hetnet_status hetnet_run_write_csv(const hetnet_run* run, const char* path, int timing) {
  REQUIRE_ARG(run && path);
  hetnet_status st = guarded(
      [&] { hetnet::write_run_csv(std::filesystem::path(path), run->header, run->sim.log(), timing != 0); });
  return st == HETNET_ERR_INTERNAL ? fail(HETNET_ERR_IO, g_last_error) : st;
}

void hetnet_run_free(hetnet_run* run) { delete run; }

hetnet_status hetnet_aggregate_create(hetnet_aggregate** out) {
  REQUIRE_ARG(out);
  return guarded([&] { *out = new hetnet_aggregate{}; });
}

hetnet_status hetnet_aggregate_add(hetnet_aggregate* agg, const char* sweep_label,
                                   const hetnet_run* const* runs, size_t count, int timing) {
  REQUIRE_ARG(agg && runs && count > 0);
  return guarded([&] {
    const hetnet::RunHeader& first = runs[0]->header;
    std::vector<hetnet::RunLog> logs;
    logs.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      const hetnet::RunHeader& h = runs[i]->header;
      if (h.scenario_hash != first.scenario_hash || h.algo != first.algo || h.slots != first.slots)
        throw hetnet::InvalidArgument("aggregate rows need runs of one scenario, algorithm and length");
      logs.push_back(runs[i]->sim.log());
    }
    agg->rows.push_back(
        hetnet::aggregate(sweep_label ? sweep_label : "", first, logs, timing != 0));
  });
}

hetnet_status hetnet_aggregate_write(const hetnet_aggregate* agg, const char* path) {
  REQUIRE_ARG(agg && path);
  return guarded([&] {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot write " + p.string());
    hetnet::write_aggregate_csv(out, agg->rows);
    if (!out) throw std::ios_base::failure("write failed for " + p.string());
  });
}

void hetnet_aggregate_free(hetnet_aggregate* agg) { delete agg; }

hetnet_status hetnet_summarize(const char* const* dirs, size_t count, const char* out_path) {
  REQUIRE_ARG(dirs && count > 0);
  return guarded([&] {
    std::vector<std::filesystem::path> paths;
    for (size_t i = 0; i < count; ++i) {
      if (!dirs[i]) throw hetnet::InvalidArgument("null directory");
      paths.emplace_back(dirs[i]);
    }
    const auto rows = hetnet::summarize(paths);
    if (!out_path) {
      hetnet::write_summary_csv(std::cout, rows);
      std::cout.flush();
      return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::ios_base::failure(std::string("cannot write ") + out_path);
    hetnet::write_summary_csv(out, rows);
  });
}

}  // extern "C"
