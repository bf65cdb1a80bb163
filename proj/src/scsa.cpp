#include "hetnet/scsa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <Eigen/Eigenvalues>

#include "hetnet/errors.hpp"
#include "hetnet/radio.hpp"
#include "hetnet/seeding.hpp"

namespace hetnet {

void InterferenceGraph::set_weight(int a, int b, double value) {
  weight[static_cast<std::size_t>(a) * n + b] = value;
  weight[static_cast<std::size_t>(b) * n + a] = value;
}

void InterferenceGraph::set_conflict(int a, int b) {
  conflict[static_cast<std::size_t>(a) * n + b] = 1;
  conflict[static_cast<std::size_t>(b) * n + a] = 1;
}

Eigen::MatrixXd build_similarity(const InterferenceGraph& g) {
  std::vector<double> total(static_cast<std::size_t>(g.n), 0.0);
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      if (a != b && !g.conflicts(a, b)) total[static_cast<std::size_t>(a)] += g.w(a, b);

  auto ratio = [&](int a, int b) {
    const double t = total[static_cast<std::size_t>(a)];
    if (!(t > 0.0)) return 1.0;
    return std::clamp((t - g.w(a, b)) / t, 0.0, 1.0);
  };

  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(g.n, g.n);
  for (int a = 0; a < g.n; ++a)
    for (int b = a + 1; b < g.n; ++b) {
      if (g.conflicts(a, b)) continue;
      s(a, b) = s(b, a) = std::min(ratio(a, b), ratio(b, a));
    }
  return s;
}

Eigen::MatrixXd laplacian(const Eigen::MatrixXd& s) {
  Eigen::MatrixXd lap = -s;
  for (Eigen::Index i = 0; i < s.rows(); ++i) lap(i, i) += s.row(i).sum();
  return lap;
}

namespace {

double squared_distance(const Eigen::MatrixXd& pts, Eigen::Index row, const Eigen::VectorXd& c) {
  return (pts.row(row).transpose() - c).squaredNorm();
}

}  // namespace

std::vector<int> kmeans(const Eigen::MatrixXd& pts, int k, Rng& rng) {
  const auto n = static_cast<int>(pts.rows());
  std::vector<int> label(static_cast<std::size_t>(n), 0);
  if (n == 0 || k <= 1) return label;
  k = std::min(k, n);

  std::vector<Eigen::VectorXd> centre;
  std::uniform_int_distribution<int> pick(0, n - 1);
  centre.push_back(pts.row(pick(rng)).transpose());
  std::vector<double> nearest(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  while (static_cast<int>(centre.size()) < k) {
    int far = 0;
    double far_d = -1.0;
    for (int i = 0; i < n; ++i) {
      auto& d = nearest[static_cast<std::size_t>(i)];
      d = std::min(d, squared_distance(pts, i, centre.back()));
      if (d > far_d) {
        far_d = d;
        far = i;
      }
    }
    centre.push_back(pts.row(far).transpose());
  }

  for (int iter = 0; iter < 100; ++iter) {
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = squared_distance(pts, i, centre[0]);
      for (int c = 1; c < k; ++c) {
        const double d = squared_distance(pts, i, centre[static_cast<std::size_t>(c)]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      label[static_cast<std::size_t>(i)] = best;
    }
    double shift = 0.0;
    for (int c = 0; c < k; ++c) {
      Eigen::VectorXd sum = Eigen::VectorXd::Zero(pts.cols());
      int count = 0;
      for (int i = 0; i < n; ++i)
        if (label[static_cast<std::size_t>(i)] == c) {
          sum += pts.row(i).transpose();
          ++count;
        }
      if (count == 0) continue;  // empty clusters keep their centre
      sum /= count;
      shift = std::max(shift, (sum - centre[static_cast<std::size_t>(c)]).norm());
      centre[static_cast<std::size_t>(c)] = sum;
    }
    if (shift <= 1e-9) break;
  }
  return label;
}

std::vector<int> spectral_cluster(const Eigen::MatrixXd& lap, int k, Rng& rng,
                                  SpectralDiagnostics* diag) {
  const auto n = static_cast<int>(lap.rows());
  k = std::clamp(k, n > 0 ? 1 : 0, n);
  if (diag) *diag = SpectralDiagnostics{n, k, 0.0, 0.0, 0.0};
  if (n == 0) return {};

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
  if (es.info() != Eigen::Success)
    throw Error("eigensolver failed on a " + std::to_string(n) + "-vertex Laplacian");
  const Eigen::VectorXd& values = es.eigenvalues();
  Eigen::MatrixXd vectors = es.eigenvectors();

  // Fix each eigenvector's sign so its largest-magnitude entry is positive.
  for (int j = 0; j < n; ++j) {
    Eigen::Index arg = 0;
    vectors.col(j).cwiseAbs().maxCoeff(&arg);
    if (vectors(arg, j) < 0.0) vectors.col(j) *= -1.0;
  }

  // Ascending eigenvalues; runs of (numerically) equal values are ordered
  // lexicographically by eigenvector so the embedding does not depend on
  // solver internals.
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) order[static_cast<std::size_t>(j)] = j;
  const double tol = 1e-12 * std::max(1.0, values.cwiseAbs().maxCoeff());
  for (int start = 0; start < n;) {
    int end = start + 1;
    while (end < n && values(end) - values(start) <= tol) ++end;
    std::sort(order.begin() + start, order.begin() + end, [&](int a, int b) {
      for (int i = 0; i < n; ++i)
        if (vectors(i, a) != vectors(i, b)) return vectors(i, a) < vectors(i, b);
      return a < b;
    });
    start = end;
  }

  Eigen::MatrixXd embed(n, k);
  for (int j = 0; j < k; ++j) embed.col(j) = vectors.col(order[static_cast<std::size_t>(j)]);

  if (diag) {
    diag->max_row_sum = lap.rowwise().sum().cwiseAbs().maxCoeff();
    diag->min_eigenvalue = values.minCoeff();
    for (int j = 0; j < k; ++j) {
      const int c = order[static_cast<std::size_t>(j)];
      const double r = (lap * vectors.col(c) - values(c) * vectors.col(c)).norm();
      diag->max_residual = std::max(diag->max_residual, r);
    }
  }
  return kmeans(embed, k, rng);
}

// --- Conflict repair --------------------------------------------------------

namespace {

class Repair {
 public:
  Repair(std::vector<int>& cl, int k, const InterferenceGraph& g) : cl_(cl), k_(k), g_(g) {}

  void run() {
    pass(true);
    pass(false);
    for (int v = 0; v < g_.n; ++v)
      if (conflicted(v)) throw InfeasibleError("subchannel repair left a conflict in place");
  }

 private:
  bool pinned(int v) const { return g_.fixed_channel[static_cast<std::size_t>(v)] >= 0; }

  bool conflicted(int v) const { return blocked(v, cl_[static_cast<std::size_t>(v)]); }

  // Some other member of cluster c conflicts with v.
  bool blocked(int v, int c) const {
    for (int w = 0; w < g_.n; ++w)
      if (w != v && cl_[static_cast<std::size_t>(w)] == c && g_.conflicts(v, w)) return true;
    return false;
  }

  bool holds_other_pinned(int v, int c) const {
    for (int w = 0; w < g_.n; ++w)
      if (w != v && cl_[static_cast<std::size_t>(w)] == c && pinned(w)) return true;
    return false;
  }

  double cut_to(int v, int c) const {
    double s = 0.0;
    for (int w = 0; w < g_.n; ++w)
      if (w != v && cl_[static_cast<std::size_t>(w)] == c && !g_.conflicts(v, w)) s += g_.w(v, w);
    return s;
  }

  // Cheapest cluster other than v's own accepted by `ok`; -1 if none.
  template <class Ok>
  int target(int v, Ok ok) const {
    int best = -1;
    double best_cut = 0.0;
    for (int c = 0; c < k_; ++c) {
      if (c == cl_[static_cast<std::size_t>(v)] || !ok(c)) continue;
      const double cut = cut_to(v, c);
      if (best < 0 || cut < best_cut) {
        best = c;
        best_cut = cut;
      }
    }
    return best;
  }

  // Each move lowers (pinned-pinned conflicts, all conflicts)
  // lexicographically, so the loop ends.
  void pass(bool pinned_pass) {
    for (;;) {
      std::vector<int> size(static_cast<std::size_t>(k_), 0), low(static_cast<std::size_t>(k_), g_.n);
      for (int v = 0; v < g_.n; ++v) {
        const auto c = static_cast<std::size_t>(cl_[static_cast<std::size_t>(v)]);
        ++size[c];
        low[c] = std::min(low[c], v);
      }
      std::vector<int> clusters;
      for (int c = 0; c < k_; ++c)
        if (size[static_cast<std::size_t>(c)] > 1) clusters.push_back(c);
      std::sort(clusters.begin(), clusters.end(), [&](int a, int b) {
        const auto ia = static_cast<std::size_t>(a), ib = static_cast<std::size_t>(b);
        return size[ia] != size[ib] ? size[ia] > size[ib] : low[ia] < low[ib];
      });

      bool moved = false;
      for (int c : clusters) {
        int best_v = -1, best_t = -1;
        double best_gain = 0.0;
        for (int v = 0; v < g_.n; ++v) {
          if (cl_[static_cast<std::size_t>(v)] != c || pinned(v) != pinned_pass || !conflicted(v))
            continue;
          int t = target(v, [&](int x) { return !blocked(v, x); });
          if (t < 0 && pinned_pass && holds_other_pinned(v, c))
            t = target(v, [&](int x) { return !holds_other_pinned(v, x); });
          if (t < 0) continue;
          const double gain = cut_to(v, c) - cut_to(v, t);
          if (best_v < 0 || gain > best_gain) {
            best_v = v;
            best_t = t;
            best_gain = gain;
          }
        }
        if (best_v >= 0) {
          cl_[static_cast<std::size_t>(best_v)] = best_t;
          moved = true;
          break;
        }
      }
      if (!moved) return;
    }
  }

  std::vector<int>& cl_;
  int k_;
  const InterferenceGraph& g_;
};

}  // namespace

void repair_conflicts(std::vector<int>& clusters, int k, const InterferenceGraph& graph) {
  if (static_cast<int>(clusters.size()) != graph.n)
    throw InvalidArgument("cluster labels do not match the graph");
  for (int c : clusters)
    if (c < 0 || c >= k) throw InvalidArgument("cluster label out of range");
  Repair(clusters, k, graph).run();
}

double retained_interference(const InterferenceGraph& g, std::span<const int> clusters) {
  double s = 0.0;
  for (int a = 0; a < g.n; ++a)
    for (int b = a + 1; b < g.n; ++b)
      if (clusters[static_cast<std::size_t>(a)] == clusters[static_cast<std::size_t>(b)] &&
          !g.conflicts(a, b))
        s += g.w(a, b);
  return s;
}

std::vector<int> partition_graph(const InterferenceGraph& graph, int k_max, Rng& rng,
                                 SpectralDiagnostics* diag) {
  if (graph.n == 0) {
    if (diag) *diag = {};
    return {};
  }
  const int k = std::min(k_max, graph.n);
  std::vector<int> clusters = spectral_cluster(laplacian(build_similarity(graph)), k, rng, diag);
  repair_conflicts(clusters, k, graph);
  return clusters;
}

std::vector<int> assign_subchannels(std::span<const int> clusters, int k,
                                    const InterferenceGraph& graph, int channel_count) {
  std::vector<int> cluster_channel(static_cast<std::size_t>(k), -1);
  std::vector<char> used(static_cast<std::size_t>(channel_count), 0);
  for (int v = 0; v < graph.n; ++v) {
    const int ch = graph.fixed_channel[static_cast<std::size_t>(v)];
    if (ch < 0) continue;
    if (ch >= channel_count) throw InvalidArgument("pinned subchannel outside the plan");
    int& slot = cluster_channel[static_cast<std::size_t>(clusters[static_cast<std::size_t>(v)])];
    if (slot >= 0 && slot != ch)
      throw InfeasibleError("two pinned groups with different subchannels share a cluster");
    if (slot < 0 && used[static_cast<std::size_t>(ch)])
      throw InfeasibleError("one pinned subchannel spread over two clusters");
    slot = ch;
    used[static_cast<std::size_t>(ch)] = 1;
  }

  std::vector<char> occupied(static_cast<std::size_t>(k), 0);
  for (int c : clusters) occupied[static_cast<std::size_t>(c)] = 1;
  int next = 0;
  for (int c = 0; c < k; ++c) {
    if (!occupied[static_cast<std::size_t>(c)] || cluster_channel[static_cast<std::size_t>(c)] >= 0)
      continue;
    while (next < channel_count && used[static_cast<std::size_t>(next)]) ++next;
    if (next >= channel_count) throw InfeasibleError("more clusters than subchannels");
    cluster_channel[static_cast<std::size_t>(c)] = next;
    used[static_cast<std::size_t>(next)] = 1;
  }

  std::vector<int> out(static_cast<std::size_t>(graph.n));
  for (int v = 0; v < graph.n; ++v)
    out[static_cast<std::size_t>(v)] =
        cluster_channel[static_cast<std::size_t>(clusters[static_cast<std::size_t>(v)])];
  return out;
}

// --- Connection-level pipeline ---------------------------------------------

namespace {

// One end of a link with its beam steered at the other end.
struct Endpoint {
  Vec2 pos;
  Vec2 peer;
  Antenna antenna;
  double power_w = 0.0;
};

struct LinkEnds {
  Endpoint station;
  Endpoint user;
};

LinkEnds ends_of(const Connection& c, const NetworkConfig& cfg, std::span<const UserState> users) {
  const BaseStation& bs = cfg.station(c.bs);
  const UserState& u = users[static_cast<std::size_t>(c.user)];
  const bool macro = bs.cls == BsClass::Macro;
  return {{bs.position, u.position, macro ? Antenna{} : bs.antenna, bs.tx_power_w()},
          {u.position, bs.position, macro ? Antenna{} : u.mmw_antenna, u.tx_power_w()}};
}

double steered_gain(const Endpoint& from, const Endpoint& to) {
  return beam_gain(from.antenna, from.pos, from.peer, to.pos);
}

// Average interference caused by x at y.
double mean_interference(const Endpoint& x, const Endpoint& y, const NetworkConfig& cfg,
                         double carrier, Band band) {
  const double g = steered_gain(x, y) * steered_gain(y, x);
  if (g == 0.0) return 0.0;
  const double d = std::max(1.0, distance(x.pos, y.pos));
  const double p = los_probability(d, cfg.obstacle_density, cfg.obstacle_mean_length_m);
  return x.power_w * g *
         (p / path_loss(d, carrier, cfg.ple.los(band)) +
          (1.0 - p) / path_loss(d, carrier, cfg.ple.nlos(band)));
}

}  // namespace

double pairwise_interference(const Connection& a, const Connection& b,
                             std::span<const int> switch_points, const NetworkConfig& config,
                             std::span<const UserState> users) {
  const BaseStation& ba = config.station(a.bs);
  const BaseStation& bb = config.station(b.bs);
  if (ba.band() != bb.band()) return 0.0;
  const Band band = ba.band();
  const double carrier = ba.carrier_hz;
  const LinkEnds ea = ends_of(a, config, users);
  const LinkEnds eb = ends_of(b, config, users);
  const int ns = config.n_subslots;
  const int na = switch_points[static_cast<std::size_t>(a.bs)];
  const int nb = switch_points[static_cast<std::size_t>(b.bs)];
  auto i = [&](const Endpoint& x, const Endpoint& y) {
    return mean_interference(x, y, config, carrier, band);
  };

  const double both_dl = ns - std::max(na, nb);
  const double both_ul = std::min(na, nb);
  const double b_ahead = std::max(0, nb - na);  // a already downlink, b still uplink
  const double a_ahead = std::max(0, na - nb);
  const double terms[] = {
      both_dl * i(ea.station, eb.user), both_dl * i(eb.station, ea.user),
      both_ul * i(ea.user, eb.station), both_ul * i(eb.user, ea.station),
      b_ahead * i(ea.station, eb.station), a_ahead * i(eb.station, ea.station),
      a_ahead * i(ea.user, eb.user), b_ahead * i(eb.user, ea.user),
  };
  return *std::max_element(std::begin(terms), std::end(terms)) / ns;
}

BandGraph build_band_graph(std::span<const Connection> conns, std::span<const int> switch_points,
                           const NetworkConfig& config, std::span<const UserState> users) {
  // Vertices in order of first appearance; ongoing users sharing a
  // subchannel fold into one vertex.
  std::vector<int> vertex_of(conns.size());
  std::map<int, int> group;
  std::vector<std::vector<int>> members;
  std::vector<int> pinned;
  for (std::size_t i = 0; i < conns.size(); ++i) {
    const int ch = conns[i].original_subchannel;
    if (ch >= 0) {
      auto [it, fresh] = group.try_emplace(ch, static_cast<int>(members.size()));
      if (fresh) {
        members.emplace_back();
        pinned.push_back(ch);
      }
      vertex_of[i] = it->second;
    } else {
      vertex_of[i] = static_cast<int>(members.size());
      members.emplace_back();
      pinned.push_back(-1);
    }
    members[static_cast<std::size_t>(vertex_of[i])].push_back(static_cast<int>(i));
  }

  BandGraph out{InterferenceGraph(static_cast<int>(members.size())), std::move(members)};
  InterferenceGraph& g = out.graph;
  g.fixed_channel = std::move(pinned);
  for (std::size_t i = 0; i < conns.size(); ++i)
    for (std::size_t j = i + 1; j < conns.size(); ++j) {
      const int vi = vertex_of[i], vj = vertex_of[j];
      if (vi == vj) continue;
      const Connection& a = conns[i];
      const Connection& b = conns[j];
      const bool locked = a.original_subchannel >= 0 && b.original_subchannel >= 0 &&
                          a.original_subchannel != b.original_subchannel;
      if (a.bs == b.bs || locked) {
        g.set_conflict(vi, vj);
        continue;
      }
      g.set_weight(vi, vj, g.w(vi, vj) + pairwise_interference(a, b, switch_points, config, users));
    }
  return out;
}

ScsaResult scsa_allocate(const Snapshot& snap, std::span<const int> station_of_user,
                         std::span<const int> switch_points) {
  const NetworkConfig& cfg = snap.config;
  ScsaResult out;
  for (Band band : {Band::Sub6, Band::MmWave}) {
    std::vector<Connection> conns;
    int channels = 0;
    for (std::size_t u = 0; u < station_of_user.size(); ++u) {
      const int b = station_of_user[u];
      if (b < 0 || cfg.station(b).band() != band) continue;
      channels = cfg.station(b).subchannel_count;
      Connection c{static_cast<int>(u), b, -1};
      if (!snap.is_reassoc(c.user))
        if (const Link* prev = snap.previous.find(c.user); prev && prev->bs == b)
          c.original_subchannel = prev->subchannel;
      conns.push_back(c);
    }
    if (conns.empty()) continue;

    const BandGraph bg = build_band_graph(conns, switch_points, cfg, snap.users);
    Rng rng(derive_seed({snap.seed, static_cast<std::uint64_t>(snap.slot),
                         static_cast<std::uint64_t>(band), 0x5c5aULL}));
    SpectralDiagnostics diag;
    const std::vector<int> clusters = partition_graph(bg.graph, channels, rng, &diag);
    const int k = std::min(channels, bg.graph.n);
    const std::vector<int> channel = assign_subchannels(clusters, k, bg.graph, channels);
    out.diagnostics.push_back(diag);

    for (std::size_t v = 0; v < bg.members.size(); ++v)
      for (int i : bg.members[v]) {
        const Connection& c = conns[static_cast<std::size_t>(i)];
        out.links.push_back({c.user, c.bs, channel[v]});
      }
  }
  std::sort(out.links.begin(), out.links.end(),
            [](const Link& a, const Link& b) { return a.user < b.user; });
  return out;
}

}  // namespace hetnet
