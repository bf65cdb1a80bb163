#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hetnet/report.hpp"

using namespace hetnet;
namespace fs = std::filesystem;

namespace {

RunLog fake_log(std::initializer_list<double> overall) {
  RunLog log;
  std::int64_t t = 0;
  for (double v : overall) {
    SlotMetrics m;
    m.slot = t++;
    m.overall_rate_bps = v;
    m.effective_rate_bps = v / 2;
    m.satisfied_count = static_cast<int>(v);
    m.decision_time_us = 10.0;
    log.slots.push_back(m);
  }
  return log;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hetnet_report_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write(const fs::path& dir, const std::string& algo, std::uint64_t seed, const RunLog& log,
           const std::string& hash = "00000000000000aa") {
  write_run_csv(dir / algo / ("seed_" + std::to_string(seed) + ".csv"),
                RunHeader{hash, algo, seed, static_cast<int>(log.slots.size())}, log, false);
}

}  // namespace

TEST_CASE("run CSV layout") {
  std::ostringstream out;
  write_run_csv(out, RunHeader{"00000000000000aa", "omsc", 3, 2}, fake_log({1234567.0, 2.0}), false);
  CHECK(out.str() ==
        "# scenario_hash=00000000000000aa algo=omsc seed=3 slots=2\n"
        "slot,overall_bps,effective_bps,satisfied,decision_us\n"
        "0,1.23457e+06,617284,1234567,\n"
        "1,2,1,2,\n");

  std::ostringstream timed;
  write_run_csv(timed, RunHeader{"x", "omsc", 3, 1}, fake_log({4.0}), true);
  CHECK(timed.str().find("0,4,2,4,10\n") != std::string::npos);

  std::ostringstream empty;
  write_run_csv(empty, RunHeader{"x", "omsc", 3, 0}, RunLog{}, false);
  CHECK(empty.str() == "# scenario_hash=x algo=omsc seed=3 slots=0\n"
                       "slot,overall_bps,effective_bps,satisfied,decision_us\n");
}

TEST_CASE("read back per-run means") {
  const fs::path dir = scratch("read");
  write(dir, "omsc", 1, fake_log({2.0, 4.0}));
  const RunMeans m = read_run_csv(dir / "omsc" / "seed_1.csv");
  CHECK(m.header.algo == "omsc");
  CHECK(m.header.seed == 1);
  CHECK(m.overall_bps == doctest::Approx(3.0));
  CHECK(m.effective_bps == doctest::Approx(1.5));
  CHECK(!m.decision_us.has_value());
}

TEST_CASE("student t interval") {
  double mean, lo, hi;
  mean_ci95({1.0, 2.0, 3.0}, mean, lo, hi);
  CHECK(mean == 2.0);
  // t(0.975, 2) = 4.302652729749464, sd = 1, n = 3.
  CHECK(hi - mean == doctest::Approx(4.302652729749464 / std::sqrt(3.0)).epsilon(1e-12));
  mean_ci95({5.0}, mean, lo, hi);
  CHECK(lo == 5.0);
  CHECK(hi == 5.0);
}

TEST_CASE("summary of a single run equals its own aggregate") {
  const fs::path dir = scratch("single");
  const RunLog log = fake_log({2.0, 4.0, 9.0});
  write(dir, "lcuas", 7, log);
  const auto rows = summarize({dir});
  const AggregateRow agg = aggregate("", RunHeader{"00000000000000aa", "lcuas", 7, 3}, {log}, false);
  REQUIRE(rows.size() == 3);  // no decision times recorded
  CHECK(rows[0].metric == "overall_bps");
  CHECK(rows[0].mean == doctest::Approx(agg.overall_bps));
  CHECK(rows[1].mean == doctest::Approx(agg.effective_bps));
  CHECK(rows[2].mean == doctest::Approx(agg.satisfied));
  CHECK(rows[0].ci_low == rows[0].mean);
  CHECK(rows[0].rank == 1);
}

TEST_CASE("two seeds average arithmetically and algorithms are ranked") {
  const fs::path dir = scratch("ranked");
  write(dir, "omsc", 1, fake_log({10.0}));
  write(dir, "omsc", 2, fake_log({20.0}));
  write(dir, "lcuas", 1, fake_log({5.0}));
  write(dir, "sdmab", 1, fake_log({7.0}));
  const auto rows = summarize({dir});
  for (const SummaryRow& r : rows) {
    if (r.metric != "overall_bps") continue;
    if (r.algo == "omsc") {
      CHECK(r.n == 2);
      CHECK(r.mean == 15.0);
      CHECK(r.rank == 1);
    }
    if (r.algo == "sdmab") CHECK(r.rank == 2);
    if (r.algo == "lcuas") CHECK(r.rank == 3);
  }
  std::ostringstream out;
  write_summary_csv(out, rows);
  CHECK(out.str().rfind("algo,metric,n,mean,ci95_low,ci95_high,rank\n", 0) == 0);
}

TEST_CASE("mixed scenarios are refused") {
  const fs::path dir = scratch("mixed");
  write(dir, "omsc", 1, fake_log({1.0}), "00000000000000aa");
  write(dir, "omsc", 2, fake_log({1.0}), "00000000000000bb");
  CHECK_THROWS_AS(summarize({dir}), Error);
  CHECK_THROWS_AS(summarize({scratch("none")}), Error);
}

TEST_CASE("aggregate CSV rows") {
  std::ostringstream out;
  AggregateRow r{"users=40", "omsc", "ab", 2, 10, 1.5e8, 1.2e8, 4.25, std::nullopt};
  write_aggregate_csv(out, {r});
  CHECK(out.str() == "sweep,algo,scenario_hash,seeds,slots,overall_bps,effective_bps,satisfied,decision_us\n"
                     "users=40,omsc,ab,2,10,1.5e+08,1.2e+08,4.25,\n");
}
