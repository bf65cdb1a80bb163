#include "hetnet/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>

namespace hetnet {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

namespace {

std::string header_line(const RunHeader& h) {
  return "# scenario_hash=" + h.scenario_hash + " algo=" + h.algo + " seed=" + std::to_string(h.seed) +
         " slots=" + std::to_string(h.slots);
}

RunHeader parse_header(const std::string& line, const std::filesystem::path& path) {
  if (line.rfind("# ", 0) != 0) throw Error(path.string() + ": missing run header");
  RunHeader h;
  std::istringstream in(line.substr(2));
  std::string tok;
  std::set<std::string> got;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    const std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
    try {
      if (k == "scenario_hash") h.scenario_hash = v;
      else if (k == "algo") h.algo = v;
      else if (k == "seed") h.seed = std::stoull(v);
      else if (k == "slots") h.slots = std::stoi(v);
      else continue;
    } catch (const std::exception&) {
      throw Error(path.string() + ": bad header field '" + tok + "'");
    }
    got.insert(k);
  }
  if (got.size() != 4) throw Error(path.string() + ": incomplete run header");
  return h;
}

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

}  // namespace

void write_run_csv(std::ostream& out, const RunHeader& header, const RunLog& log, bool timing) {
  out << header_line(header) << '\n' << kRunColumns << '\n';
  for (const SlotMetrics& m : log.slots) {
    out << m.slot << ',' << format_number(m.overall_rate_bps) << ','
        << format_number(m.effective_rate_bps) << ',' << m.satisfied_count << ',';
    if (timing) out << format_number(m.decision_time_us);
    out << '\n';
  }
}

void write_run_csv(const std::filesystem::path& path, const RunHeader& header, const RunLog& log,
                   bool timing) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_run_csv(out, header, log, timing);
  if (!out) throw Error("write failed for " + path.string());
}

RunMeans read_run_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw Error(path.string() + ": empty file");
  RunMeans r;
  r.header = parse_header(line, path);
  if (!std::getline(in, line) || line != kRunColumns)
    throw Error(path.string() + ": unexpected column header");

  double sums[4] = {0, 0, 0, 0};
  int rows = 0, timed = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (cells.size() != 5) throw Error(path.string() + ": malformed row '" + line + "'");
    try {
      sums[0] += std::stod(cells[1]);
      sums[1] += std::stod(cells[2]);
      sums[2] += std::stod(cells[3]);
      if (!cells[4].empty()) {
        sums[3] += std::stod(cells[4]);
        ++timed;
      }
    } catch (const std::exception&) {
      throw Error(path.string() + ": malformed row '" + line + "'");
    }
    ++rows;
  }
  if (rows > 0) {
    r.overall_bps = sums[0] / rows;
    r.effective_bps = sums[1] / rows;
    r.satisfied = sums[2] / rows;
    if (timed == rows) r.decision_us = sums[3] / rows;
  }
  return r;
}

AggregateRow aggregate(std::string sweep, const RunHeader& header, const std::vector<RunLog>& logs,
                       bool timing) {
  AggregateRow row;
  row.sweep = std::move(sweep);
  row.algo = header.algo;
  row.scenario_hash = header.scenario_hash;
  row.seeds = static_cast<int>(logs.size());
  row.slots = header.slots;
  if (logs.empty()) return row;
  double t = 0.0;
  for (const RunLog& l : logs) {
    row.overall_bps += l.mean_overall_bps();
    row.effective_bps += l.mean_effective_bps();
    row.satisfied += l.mean_satisfied();
    t += l.mean_decision_us();
  }
  const double n = static_cast<double>(logs.size());
  row.overall_bps /= n;
  row.effective_bps /= n;
  row.satisfied /= n;
  if (timing) row.decision_us = t / n;
  return row;
}

void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows) {
  out << "sweep,algo,scenario_hash,seeds,slots,overall_bps,effective_bps,satisfied,decision_us\n";
  for (const AggregateRow& r : rows)
    out << r.sweep << ',' << r.algo << ',' << r.scenario_hash << ',' << r.seeds << ',' << r.slots
        << ',' << format_number(r.overall_bps) << ',' << format_number(r.effective_bps) << ','
        << format_number(r.satisfied) << ',' << opt(r.decision_us) << '\n';
}

void mean_ci95(const std::vector<double>& xs, double& mean, double& low, double& high) {
  const auto n = xs.size();
  mean = low = high = 0.0;
  if (n == 0) return;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(n);
  low = high = mean;
  if (n < 2) return;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  const boost::math::students_t dist(static_cast<double>(n - 1));
  const double half = boost::math::quantile(dist, 0.975) * sd / std::sqrt(static_cast<double>(n));
  low = mean - half;
  high = mean + half;
}

std::vector<SummaryRow> summarize(const std::vector<std::filesystem::path>& dirs) {
  std::vector<std::filesystem::path> files;
  for (const auto& d : dirs) {
    if (!std::filesystem::is_directory(d)) throw Error("not a run directory: " + d.string());
    for (const auto& e : std::filesystem::recursive_directory_iterator(d)) {
      const std::string name = e.path().filename().string();
      if (e.is_regular_file() && name.rfind("seed_", 0) == 0 && e.path().extension() == ".csv")
        files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error("no run CSVs found");

  std::map<std::string, std::vector<RunMeans>> by_algo;
  std::string hash;
  for (const auto& f : files) {
    RunMeans r = read_run_csv(f);
    if (hash.empty()) hash = r.header.scenario_hash;
    else if (r.header.scenario_hash != hash)
      throw Error("refusing to aggregate runs from different scenarios (" + hash + " vs " +
                  r.header.scenario_hash + " in " + f.string() + ")");
    by_algo[r.header.algo].push_back(std::move(r));
  }

  struct Metric {
    const char* name;
    bool higher_is_better;
  };
  const Metric metrics[] = {
      {"overall_bps", true}, {"effective_bps", true}, {"satisfied", true}, {"decision_us", false}};

  std::vector<SummaryRow> rows;
  for (const Metric& m : metrics) {
    std::vector<SummaryRow> block;
    for (const auto& [algo, runs] : by_algo) {
      std::vector<double> xs;
      for (const RunMeans& r : runs) {
        const std::string_view name = m.name;
        if (name == "overall_bps") xs.push_back(r.overall_bps);
        else if (name == "effective_bps") xs.push_back(r.effective_bps);
        else if (name == "satisfied") xs.push_back(r.satisfied);
        else if (r.decision_us) xs.push_back(*r.decision_us);
      }
      if (xs.size() != runs.size()) continue;  // untimed runs have no decision time
      SummaryRow row;
      row.algo = algo;
      row.metric = m.name;
      row.n = static_cast<int>(xs.size());
      mean_ci95(xs, row.mean, row.ci_low, row.ci_high);
      block.push_back(row);
    }
    std::vector<std::size_t> order(block.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return m.higher_is_better ? block[a].mean > block[b].mean : block[a].mean < block[b].mean;
    });
    for (std::size_t r = 0; r < order.size(); ++r) block[order[r]].rank = static_cast<int>(r) + 1;
    rows.insert(rows.end(), block.begin(), block.end());
  }
  return rows;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "algo,metric,n,mean,ci95_low,ci95_high,rank\n";
  for (const SummaryRow& r : rows)
    out << r.algo << ',' << r.metric << ',' << r.n << ',' << format_number(r.mean) << ','
        << format_number(r.ci_low) << ',' << format_number(r.ci_high) << ',' << r.rank << '\n';
}

}  // namespace hetnet
