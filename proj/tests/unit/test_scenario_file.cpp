#include <doctest.h>

#include "hetnet/errors.hpp"
#include "hetnet/scenario_file.hpp"

using namespace hetnet;

namespace {

int error_line(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("empty file gives the defaults") {
  CHECK(canonical_text(parse_scenario("")) == canonical_text(Scenario{}));
  const Scenario s = parse_scenario("# nothing here\n\n   \n");
  CHECK(s.users == 40);
  CHECK(s.pbs_subchannel_count == 3);
  CHECK(s.pbs_subchannel_bandwidth_hz == 14.4e6);
}

TEST_CASE("values, comments and auto fields") {
  const Scenario s = parse_scenario(
      "users = 60   # more people\n"
      "pbs_directivity_dbi=24.5\n"
      "pbs_main_beam_deg = 10\n"
      "ue_main_beam_deg = auto\n"
      "demand_mix = 1:0:1\n"
      "algorithm = lcuas-sc\n"
      "rng_seed = 18446744073709551615\n");
  CHECK(s.users == 60);
  CHECK(s.pbs_directivity_dbi == 24.5);
  CHECK(s.ue_antenna().main_beam_deg == 10.0);
  CHECK(s.demand_mix == std::array<double, 3>{1, 0, 1});
  CHECK(s.algorithm == "lcuas-sc");
  CHECK(s.rng_seed == 18446744073709551615ULL);
}

TEST_CASE("canonical text round trips") {
  Scenario s;
  s.users = 17;
  s.obstacle_density = 1.0 / 3.0;
  s.ue_sector_deg = 120.0;
  const std::string text = canonical_text(s);
  CHECK(canonical_text(parse_scenario(text)) == text);
  CHECK(scenario_keys().size() == 39);
}

TEST_CASE("errors carry line numbers") {
  CHECK(error_line("users = 4\nbogus = 1\n") == 2);
  CHECK(error_line("users = 4\n\nusers = 5\n") == 3);
  CHECK(error_line("users = four\n") == 1);
  CHECK(error_line("just words\n") == 1);
  CHECK(error_line("algorithm = magic\n") == 1);
  CHECK(error_line("demand_mix = 1:2\n") == 1);
  CHECK(error_line("# header\nlevy_beta_f = 2.5\n") == 2);
  CHECK(error_line("users = 4\npbs_main_beam_deg = 0\nslots = 3\n") == 2);
  // The area only becomes degenerate once both bounds are in.
  CHECK(error_line("area_min_x_m = 5000\nusers = 2\n") == 1);
  CHECK(error_line("area_max_x_m = 500\narea_min_x_m = 600\n") == 2);
  CHECK(error_line("users = 3\n") == -1);

  try {
    parse_scenario("users = 4\nbogus = 1\n");
  } catch (const ScenarioError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("set and get single keys") {
  Scenario s;
  set_scenario_value(s, "users", "60");
  CHECK(get_scenario_value(s, "users") == "60");
  CHECK(get_scenario_value(s, "ue_directivity_dbi") == "auto");
  CHECK_THROWS_AS(set_scenario_value(s, "nope", "1"), ScenarioError);
  CHECK_THROWS_AS(set_scenario_value(s, "users", "x"), ScenarioError);
  s.pbs_main_beam_deg = -1.0;
  CHECK_THROWS_AS(validate_scenario(s), ScenarioError);
}

TEST_CASE("hash ignores seed and algorithm only") {
  Scenario a;
  Scenario b = a;
  b.rng_seed = 99;
  b.algorithm = "sdmab";
  CHECK(scenario_hash(a) == scenario_hash(b));
  b.users = 41;
  CHECK(scenario_hash(a) != scenario_hash(b));
  CHECK(hash_hex(0x1fULL) == "000000000000001f");
  CHECK(hash_hex(scenario_hash(a)).size() == 16);
}
