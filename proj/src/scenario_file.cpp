#include "hetnet/scenario_file.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "hetnet/errors.hpp"
#include "hetnet/scheduler.hpp"

namespace hetnet {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double to_double(std::string_view v) {
  const std::string s(v);
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(x))
    throw InvalidArgument("expected a finite number, got '" + s + "'");
  return x;
}

template <class Int>
Int to_int(std::string_view v) {
  Int x{};
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size())
    throw InvalidArgument("expected an integer, got '" + std::string(v) + "'");
  return x;
}

struct Field {
  const char* key;
  std::function<std::string(const Scenario&)> get;
  std::function<void(Scenario&, std::string_view)> set;
};

Field real(const char* key, double Scenario::*m) {
  return {key, [m](const Scenario& s) { return fmt(s.*m); },
          [m](Scenario& s, std::string_view v) { s.*m = to_double(v); }};
}

template <class Owner>
Field real(const char* key, Owner Scenario::*owner, double Owner::*m) {
  return {key, [=](const Scenario& s) { return fmt((s.*owner).*m); },
          [=](Scenario& s, std::string_view v) { (s.*owner).*m = to_double(v); }};
}

Field integer(const char* key, int Scenario::*m) {
  return {key, [m](const Scenario& s) { return std::to_string(s.*m); },
          [m](Scenario& s, std::string_view v) { s.*m = to_int<int>(v); }};
}

Field optional_real(const char* key, std::optional<double> Scenario::*m) {
  return {key, [m](const Scenario& s) { return s.*m ? fmt(*(s.*m)) : std::string("auto"); },
          [m](Scenario& s, std::string_view v) {
            if (v == "auto") s.*m = std::nullopt;
            else s.*m = to_double(v);
          }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> f = {
      integer("users", &Scenario::users),
      integer("mbs_count", &Scenario::mbs_count),
      integer("pbs_count", &Scenario::pbs_count),
      real("area_min_x_m", &Scenario::area, &Rect::min_x),
      real("area_min_y_m", &Scenario::area, &Rect::min_y),
      real("area_max_x_m", &Scenario::area, &Rect::max_x),
      real("area_max_y_m", &Scenario::area, &Rect::max_y),
      integer("n_subslots", &Scenario::n_subslots),
      real("slot_duration_us", &Scenario::slot_duration_us),
      real("pilot_time_us", &Scenario::pilot_time_us),
      real("obstacle_density", &Scenario::obstacle_density),
      real("obstacle_mean_length_m", &Scenario::obstacle_mean_length_m),
      real("noise_psd_dbm_hz", &Scenario::noise_psd_dbm_hz),
      real("ple_lte_los", &Scenario::ple, &PathLossExponents::lte_los),
      real("ple_lte_nlos", &Scenario::ple, &PathLossExponents::lte_nlos),
      real("ple_mmw_los", &Scenario::ple, &PathLossExponents::mmw_los),
      real("ple_mmw_nlos", &Scenario::ple, &PathLossExponents::mmw_nlos),
      real("levy_beta_f", &Scenario::levy, &LevyParams::beta_f),
      real("levy_beta_r", &Scenario::levy, &LevyParams::beta_r),
      real("levy_max_pause_s", &Scenario::levy, &LevyParams::max_pause_s),
      real("mbs_carrier_hz", &Scenario::mbs_carrier_hz),
      real("pbs_carrier_hz", &Scenario::pbs_carrier_hz),
      integer("mbs_subchannel_count", &Scenario::mbs_subchannel_count),
      integer("pbs_subchannel_count", &Scenario::pbs_subchannel_count),
      real("mbs_subchannel_bandwidth_hz", &Scenario::mbs_subchannel_bandwidth_hz),
      real("pbs_subchannel_bandwidth_hz", &Scenario::pbs_subchannel_bandwidth_hz),
      real("mbs_tx_power_dbm", &Scenario::mbs_tx_power_dbm),
      real("pbs_tx_power_dbm", &Scenario::pbs_tx_power_dbm),
      real("ue_tx_power_dbm", &Scenario::ue_tx_power_dbm),
      real("pbs_directivity_dbi", &Scenario::pbs_directivity_dbi),
      real("pbs_main_beam_deg", &Scenario::pbs_main_beam_deg),
      real("pbs_sector_deg", &Scenario::pbs_sector_deg),
      optional_real("ue_directivity_dbi", &Scenario::ue_directivity_dbi),
      optional_real("ue_main_beam_deg", &Scenario::ue_main_beam_deg),
      optional_real("ue_sector_deg", &Scenario::ue_sector_deg),
      {"demand_mix",
       [](const Scenario& s) {
         return fmt(s.demand_mix[0]) + ":" + fmt(s.demand_mix[1]) + ":" + fmt(s.demand_mix[2]);
       },
       [](Scenario& s, std::string_view v) {
         std::array<double, 3> mix{};
         std::size_t i = 0;
         for (;;) {
           const auto colon = v.find(':');
           if (i >= mix.size()) throw InvalidArgument("demand_mix takes three weights a:b:c");
           mix[i++] = to_double(trim(v.substr(0, colon)));
           if (colon == std::string_view::npos) break;
           v.remove_prefix(colon + 1);
         }
         if (i != mix.size()) throw InvalidArgument("demand_mix takes three weights a:b:c");
         apportion(1, mix);  // rejects negative or all-zero weights
         s.demand_mix = mix;
       }},
      {"algorithm", [](const Scenario& s) { return s.algorithm; },
       [](Scenario& s, std::string_view v) {
         if (!parse_algorithm(v)) throw InvalidArgument("unknown algorithm '" + std::string(v) + "'");
         s.algorithm = std::string(v);
       }},
      integer("slots", &Scenario::slots),
      {"rng_seed", [](const Scenario& s) { return std::to_string(s.rng_seed); },
       [](Scenario& s, std::string_view v) { s.rng_seed = to_int<std::uint64_t>(v); }},
  };
  return f;
}

const Field* find_field(std::string_view key) {
  for (const Field& f : fields())
    if (key == f.key) return &f;
  return nullptr;
}

// Range checks that do not need a network.
void check_ranges(const Scenario& s) {
  if (s.users < 0) throw InvalidArgument("users must be nonnegative");
  if (s.slots < 0) throw InvalidArgument("slots must be nonnegative");
  if (s.levy.beta_f <= 0.0 || s.levy.beta_f >= 2.0 || s.levy.beta_r <= 0.0 || s.levy.beta_r >= 2.0)
    throw InvalidArgument("levy exponents must lie in (0, 2)");
  if (!(s.levy.max_pause_s > 0.0)) throw InvalidArgument("levy_max_pause_s must be positive");
}

}  // namespace

std::vector<std::string> scenario_keys() {
  std::vector<std::string> k;
  for (const Field& f : fields()) k.emplace_back(f.key);
  return k;
}

void set_scenario_value(Scenario& s, std::string_view key, std::string_view value) {
  const Field* f = find_field(key);
  if (!f) throw ScenarioError(0, "unknown key '" + std::string(key) + "'");
  try {
    f->set(s, trim(value));
  } catch (const InvalidArgument& e) {
    throw ScenarioError(0, std::string(key) + ": " + e.what());
  }
}

namespace {

void check_whole(const Scenario& s) {
  check_ranges(s);
  make_network(s, s.rng_seed);
  const Antenna ue = s.ue_antenna();
  if (!(ue.main_beam_deg > 0.0 && ue.sector_deg > 0.0))
    throw InvalidArgument("user beam and sector widths must be positive");
}

}  // namespace

void validate_scenario(const Scenario& s) {
  try {
    check_whole(s);
  } catch (const InvalidArgument& e) {
    throw ScenarioError(0, e.what());
  }
}

std::string get_scenario_value(const Scenario& s, std::string_view key) {
  const Field* f = find_field(key);
  if (!f) throw ScenarioError(0, "unknown key '" + std::string(key) + "'");
  return f->get(s);
}

Scenario parse_scenario(std::string_view text) {
  struct Entry {
    int line;
    const Field* field;
    std::string value;
  };
  std::vector<Entry> entries;
  std::map<std::string, int, std::less<>> seen;
  Scenario s;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ScenarioError(line_no, "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const Field* f = find_field(key);
    if (!f) throw ScenarioError(line_no, "unknown key '" + std::string(key) + "'");
    if (auto [it, fresh] = seen.try_emplace(std::string(key), line_no); !fresh)
      throw ScenarioError(line_no, "key '" + std::string(key) + "' already set on line " +
                                       std::to_string(it->second));
    try {
      f->set(s, value);
    } catch (const InvalidArgument& e) {
      throw ScenarioError(line_no, std::string(key) + ": " + e.what());
    }
    entries.push_back({line_no, f, std::string(value)});
  }

  try {
    check_whole(s);
  } catch (const InvalidArgument& e) {
    // Blame the line after which the scenario never becomes valid again.
    Scenario partial;
    int blame = 0;
    bool ok = true;
    try {
      check_whole(partial);
    } catch (const InvalidArgument&) {
      ok = false;
    }
    for (const Entry& en : entries) {
      en.field->set(partial, en.value);
      bool now = true;
      try {
        check_whole(partial);
      } catch (const InvalidArgument&) {
        now = false;
      }
      if (ok && !now) blame = en.line;
      ok = now;
    }
    throw ScenarioError(blame, e.what());
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(0, "cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string canonical_text(const Scenario& s) {
  std::string out;
  for (const Field& f : fields()) out += std::string(f.key) + " = " + f.get(s) + "\n";
  return out;
}

std::uint64_t scenario_hash(const Scenario& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const Field& f : fields()) {
    const std::string_view key = f.key;
    if (key == "rng_seed" || key == "algorithm") continue;
    for (unsigned char c : std::string(key) + " = " + f.get(s) + "\n") {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

std::string hash_hex(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace hetnet
