#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "hetnet/errors.hpp"
#include "hetnet/radio.hpp"

using namespace hetnet;

namespace {

// Every pair sits in one fixed state.
class FixedChannel final : public ChannelModel {
 public:
  FixedChannel(const Scene& scene, bool los) : ChannelModel(scene), los_(los) {}
  std::array<ChannelState, 2> states(EntityRef a, EntityRef b, Band band) const override {
    const NetworkConfig& c = scene().config;
    const double d = scene().distance(a, b);
    const double exp = los_ ? c.ple.los(band) : c.ple.nlos(band);
    return {ChannelState{1.0, 1.0 / path_loss(d, band_carrier(c, band), exp)}, ChannelState{0.0, 0.0}};
  }

 private:
  bool los_;
};

Vec2 polar(Vec2 origin, double r, double deg) {
  const double a = deg * std::numbers::pi / 180.0;
  return {origin.x + r * std::cos(a), origin.y + r * std::sin(a)};
}

}  // namespace

TEST_CASE("path loss") {
  const double d_unit = kSpeedOfLight / (4.0 * std::numbers::pi * 1.9e9);
  CHECK(path_loss(d_unit, 1.9e9, 3.37) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(path_loss(100.0, 1.9e9, 2.0) == doctest::Approx(63425466.900873795).epsilon(1e-12));
  CHECK(linear_to_db(path_loss(100.0, 1.9e9, 2.0)) == doctest::Approx(78.02).epsilon(1e-3));
  CHECK(path_loss(100.0, 1.9e9, 3.37) > path_loss(100.0, 1.9e9, 2.0));
  // Zero distance is clamped to one metre.
  CHECK(path_loss(0.0, 1.9e9, 2.0) == path_loss(1.0, 1.9e9, 2.0));
}

TEST_CASE("LOS probability") {
  CHECK(los_probability(0.0, 4.4e-4, 55.0) == 1.0);
  CHECK(los_probability(100.0, 4.4e-4, 55.0) == doctest::Approx(0.21424825866335617).epsilon(1e-12));
  CHECK(los_probability(200.0, 4.4e-4, 55.0) < los_probability(100.0, 4.4e-4, 55.0));
}

TEST_CASE("beam alignment time and overhead") {
  const NetworkConfig c;
  const BaseStation m = fx::macro(0, {0, 0});
  CHECK(beam_alignment_time_us(m, fx::pico_antenna(), 20.0) == 0.0);
  CHECK(alignment_overhead_factor(m, fx::pico_antenna(), c) == 1.0);

  const BaseStation p = fx::pico(0, {0, 0});
  CHECK(beam_alignment_time_us(p, fx::pico_antenna(), 20.0) == doctest::Approx(180.0));
  CHECK(alignment_overhead_factor(p, fx::pico_antenna(), c) ==
        doctest::Approx(0.9972533760585947).epsilon(1e-12));

  const BaseStation narrow = fx::pico(0, {0, 0}, fx::pico_antenna(24.5, 10.0, 90.0));
  CHECK(beam_alignment_time_us(narrow, fx::pico_antenna(24.5, 10.0, 90.0), 20.0) ==
        doctest::Approx(1620.0));

  CHECK_THROWS_AS(beam_alignment_time_us(p, Antenna{1.0, 0.0, 90.0}, 20.0), DomainError);
}

TEST_CASE("SINR and Shannon rate") {
  const double n0 = dbm_to_watts(-174.0);
  CHECK(instantaneous_rate(1.0, 1.8e6) == doctest::Approx(1.8e6));
  CHECK(instantaneous_rate(0.0, 1.8e6) == 0.0);
  const double g = sinr(1.0 / 1e6, 0.0, 1.8e6, n0);
  CHECK(g == doctest::Approx(139549246.1949762).epsilon(1e-12));
  CHECK(instantaneous_rate(g, 1.8e6) == doctest::Approx(48701158.38150685).epsilon(1e-12));
  CHECK(sinr(1e-9, 1e-12, 1.8e6, n0) < sinr(1e-9, 0.0, 1.8e6, n0));
}

TEST_CASE("antenna gains") {
  // Pico 0 at the origin serves user 0 due east on channel 1.
  const NetworkConfig c = fx::network({fx::pico(0, {0, 0}), fx::macro(1, {1000, 0})});
  std::vector<UserState> users{fx::user(0, {100, 0}), fx::user(1, polar({0, 0}, 80, 10)),
                               fx::user(2, polar({0, 0}, 80, 20)), fx::user(3, {900, 0})};
  Decision d;
  d.links = {{0, 0, 1}, {1, 0, 0}, {2, 0, 2}, {3, 1, 1}};
  d.sort_links();
  const Scene scene{c, users};
  const GainContext g(scene, d);
  const double gb = db_to_linear(15.0);

  CHECK(g.gain(EntityRef::station(0), EntityRef::user(1), 1) == doctest::Approx(gb));
  CHECK(g.gain(EntityRef::station(0), EntityRef::user(2), 1) == 0.0);
  CHECK(g.gain(EntityRef::station(1), EntityRef::user(3), 1) == 1.0);
  // Different bands never couple.
  CHECK(g.gain(EntityRef::station(1), EntityRef::user(0), 1) == 0.0);
  // Idle subchannel radiates nothing.
  const Decision only_one{{{0, 0, 1}}, {4, 4}, 0};
  const GainContext g1(scene, only_one);
  CHECK(g1.gain(EntityRef::station(0), EntityRef::user(1), 0) == 0.0);

  for (int tx = 0; tx < 4; ++tx)
    for (int rx = 0; rx < 4; ++rx)
      for (int ch = 0; ch < 3; ++ch) {
        const double v = g.gain(EntityRef::user(tx), EntityRef::user(rx), ch);
        CHECK((v == 0.0 || v == 1.0 || v == doctest::Approx(gb)));
      }
}

TEST_CASE("subslot interference examples") {
  SUBCASE("lone link") {
    const NetworkConfig c = fx::network({fx::macro(0, {0, 0})});
    std::vector<UserState> users{fx::user(0, {100, 0})};
    const Decision d{{{0, 0, 0}}, {4}, 0};
    const Scene scene{c, users};
    const FixedChannel ch(scene, true);
    for (int tau = 1; tau <= 8; ++tau)
      CHECK(subslot_interference(d.links[0], subslot_direction(4, tau), tau, d, ch) == 0.0);
  }
  SUBCASE("pico uplinks outside each other's beams") {
    const NetworkConfig c = fx::network({fx::pico(0, {0, 0}), fx::pico(1, {0, 300})});
    std::vector<UserState> users{fx::user(0, {100, 0}), fx::user(1, {-100, 300})};
    Decision d{{{0, 0, 0}, {1, 1, 0}}, {4, 4}, 0};
    const Scene scene{c, users};
    const FixedChannel ch(scene, true);
    CHECK(subslot_interference(d.links[0], Direction::Uplink, 2, d, ch) == 0.0);
    CHECK(subslot_interference(d.links[1], Direction::Uplink, 2, d, ch) == 0.0);
  }
  SUBCASE("macro downlink victim hit by one uplink user") {
    const NetworkConfig c = fx::network({fx::macro(0, {0, 0}), fx::macro(1, {1000, 0})});
    std::vector<UserState> users{fx::user(0, {100, 0}), fx::user(1, {350, 0})};
    Decision d{{{0, 0, 0}, {1, 1, 0}}, {2, 6}, 0};
    const Scene scene{c, users};
    const FixedChannel nlos(scene, false);
    // tau = 4: user 0 is in downlink, user 1 still in uplink.
    const double i = subslot_interference(d.links[0], Direction::Downlink, 4, d, nlos);
    CHECK(i == doctest::Approx(3.2518303634377826e-15).epsilon(1e-9));
  }
}

TEST_CASE("perceived rates") {
  const NetworkConfig c = fx::network({fx::macro(0, {0, 0}), fx::pico(1, {1000, 1000})});
  std::vector<UserState> users{fx::user(0, {200, 0}), fx::user(1, {1000, 1040})};
  const Decision d{{{0, 0, 3}, {1, 1, 0}}, {4, 4}, 0};
  const Scene scene{c, users};
  const FixedChannel los(scene, true);
  const SlotEvaluator eval(scene, d, los);

  const double n0 = c.noise_w_per_hz();
  const double loss = path_loss(200.0, 1.9e9, 2.0);
  const double r_ul = instantaneous_rate(sinr(1.0 / loss, 0.0, 1.8e6, n0), 1.8e6);
  const double r_dl = instantaneous_rate(sinr(dbm_to_watts(43.0) / loss, 0.0, 1.8e6, n0), 1.8e6);
  const PerceivedRates m = eval.perceived_rates(d.links[0]);
  CHECK(m.ul_bps == doctest::Approx(r_ul / 2.0).epsilon(1e-12));
  CHECK(m.dl_bps == doctest::Approx(r_dl / 2.0).epsilon(1e-12));

  const double g = db_to_linear(15.0) * db_to_linear(15.0);
  const double ploss = path_loss(40.0, 28e9, 2.55);
  const double p_ul = instantaneous_rate(sinr(g / ploss, 0.0, 14.4e6, n0), 14.4e6);
  const PerceivedRates p = eval.perceived_rates(d.links[1]);
  CHECK(p.ul_bps == doctest::Approx(p_ul / 2.0 * (1.0 - 180.0 / 65535.0)).epsilon(1e-12));
}

TEST_CASE("LOS draws are reciprocal and reproducible") {
  const LinkSampler s(9, 4);
  const LinkSampler s2(9, 4);
  const LinkSampler other(9, 5);
  int differ = 0;
  for (int i = 0; i < 50; ++i) {
    const auto a = EntityRef::station(i % 7), b = EntityRef::user(i);
    CHECK(s.uniform(a, b) == s.uniform(b, a));
    CHECK(s.uniform(a, b) == s2.uniform(a, b));
    CHECK(s.uniform(a, b) >= 0.0);
    CHECK(s.uniform(a, b) < 1.0);
    differ += s.uniform(a, b) != other.uniform(a, b);
  }
  CHECK(differ > 40);
}

TEST_CASE("removing an interferer never lowers a rate") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> pos(-300.0, 300.0);
  std::uniform_int_distribution<int> sp(1, 7);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<BaseStation> st{fx::macro(0, {pos(rng), pos(rng)})};
    for (int b = 1; b <= 3; ++b) st.push_back(fx::pico(b, {pos(rng), pos(rng)}));
    const NetworkConfig c = fx::network(st);
    std::vector<UserState> users;
    Decision d;
    d.switch_points = {sp(rng), sp(rng), sp(rng), sp(rng)};
    int next_ch[4] = {0, 0, 0, 0};
    for (int u = 0; u < 8; ++u) {
      users.push_back(fx::user(u, {pos(rng), pos(rng)}));
      const int b = u % 4;
      d.links.push_back({u, b, next_ch[b]++ % (b == 0 ? 2 : 3)});
    }
    // Keep one user per (station, channel).
    d.links.erase(std::remove_if(d.links.begin(), d.links.end(),
                                 [](const Link& l) { return l.user >= 4 && l.bs != 0; }),
                  d.links.end());
    const Scene scene{c, users};
    const ExpectedChannel ch(scene);
    const int drop = trial % static_cast<int>(d.links.size());
    Decision fewer = d;
    fewer.links.erase(fewer.links.begin() + drop);
    const SlotEvaluator full(scene, d, ch);
    const SlotEvaluator reduced(scene, fewer, ch);
    for (const Link& l : fewer.links)
      for (int tau = 1; tau <= c.n_subslots; ++tau)
        CHECK(reduced.subslot_rate(l, tau) >= full.subslot_rate(l, tau) * (1.0 - 1e-12));
  }
}

TEST_CASE("perceived rates are bounded by the best subslot") {
  const NetworkConfig c = fx::network({fx::pico(0, {0, 0}), fx::pico(1, {60, 0})});
  std::vector<UserState> users{fx::user(0, {30, 5}), fx::user(1, {40, -5})};
  const Decision d{{{0, 0, 0}, {1, 1, 0}}, {2, 6}, 0};
  const Scene scene{c, users};
  const ExpectedChannel ch(scene);
  const SlotEvaluator eval(scene, d, ch);
  for (const Link& l : d.links) {
    double best = 0.0;
    for (int tau = 1; tau <= 8; ++tau) best = std::max(best, eval.subslot_rate(l, tau));
    const PerceivedRates r = eval.perceived_rates(l);
    CHECK(r.ul_bps >= 0.0);
    CHECK(r.dl_bps >= 0.0);
    CHECK(r.ul_bps + r.dl_bps <= (1.0 - 180.0 / 65535.0) * best * (1 + 1e-12));
  }
}
