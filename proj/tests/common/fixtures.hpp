#pragma once

#include <vector>

#include "hetnet/model.hpp"
#include "hetnet/snapshot.hpp"
#include "hetnet/units.hpp"

namespace fx {

using namespace hetnet;

inline Antenna pico_antenna(double dbi = 15.0, double beam = 30.0, double sector = 90.0) {
  return Antenna{db_to_linear(dbi), beam, sector};
}

inline BaseStation macro(int id, Vec2 pos) {
  BaseStation b;
  b.id = id;
  b.cls = BsClass::Macro;
  b.position = pos;
  return b;
}

inline BaseStation pico(int id, Vec2 pos, Antenna ant = pico_antenna()) {
  BaseStation b;
  b.id = id;
  b.cls = BsClass::Pico;
  b.position = pos;
  b.carrier_hz = 28e9;
  b.subchannel_count = 3;
  b.subchannel_bandwidth_hz = 14.4e6;
  b.tx_power_dbm = 33.0;
  b.antenna = ant;
  return b;
}

inline NetworkConfig network(std::vector<BaseStation> stations) {
  NetworkConfig c;
  c.area = Rect{-2000.0, -2000.0, 2000.0, 2000.0};
  c.stations = std::move(stations);
  c.validate();
  return c;
}

inline UserState user(int id, Vec2 pos, Demand d = {1e6, 1e6}) {
  UserState u;
  u.id = id;
  u.position = pos;
  u.phase = Pausing{1e6};
  u.demand = d;
  u.mmw_antenna = pico_antenna();
  return u;
}

/// Owns everything a Snapshot points at.
struct World {
  NetworkConfig config;
  std::vector<UserState> users;
  Decision previous;
  std::vector<int> reassoc;
  std::int64_t slot = 0;
  std::uint64_t seed = 7;

  World(NetworkConfig c, std::vector<UserState> u) : config(std::move(c)), users(std::move(u)) {
    previous.switch_points.assign(config.stations.size(), config.n_subslots / 2);
    previous.slot_index = -1;
    for (const UserState& x : users) reassoc.push_back(x.id);
  }

  /// Marks `links` as last slot's decision; those users become ongoing.
  void set_previous(std::vector<Link> links) {
    previous.links = std::move(links);
    previous.sort_links();
    reassoc.clear();
    for (UserState& x : users) {
      const Link* l = previous.find(x.id);
      if (l) {
        x.assoc = Association{l->bs, l->subchannel, 0};
        x.satisfied_last_slot = true;
      } else {
        reassoc.push_back(x.id);
      }
    }
  }

  Snapshot snap() const { return Snapshot{config, users, previous, reassoc, slot, seed}; }
};

}  // namespace fx
