#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hetnet/mobility.hpp"
#include "hetnet/snapshot.hpp"

namespace hetnet {

/// Symmetric weighted graph with conflict markers. A conflicting pair must
/// never share a cluster; its weight is ignored. `fixed_channel` pins a vertex
/// to a subchannel (collapsed ongoing users), -1 when free.
struct InterferenceGraph {
  int n = 0;
  std::vector<double> weight;  // n * n, zero diagonal
  std::vector<char> conflict;  // n * n
  std::vector<int> fixed_channel;

  explicit InterferenceGraph(int size = 0)
      : n(size),
        weight(static_cast<std::size_t>(size) * size, 0.0),
        conflict(static_cast<std::size_t>(size) * size, 0),
        fixed_channel(static_cast<std::size_t>(size), -1) {}

  double w(int a, int b) const { return weight[static_cast<std::size_t>(a) * n + b]; }
  bool conflicts(int a, int b) const { return conflict[static_cast<std::size_t>(a) * n + b] != 0; }
  void set_weight(int a, int b, double value);
  void set_conflict(int a, int b);
};

/// Pairwise similarity: 0 for conflicting pairs, otherwise the smaller of the
/// two leave-one-out interference ratios. A vertex without any interference
/// has ratio 1 towards everyone.
Eigen::MatrixXd build_similarity(const InterferenceGraph& graph);

/// D - S with D the diagonal of row sums.
Eigen::MatrixXd laplacian(const Eigen::MatrixXd& similarity);

struct SpectralDiagnostics {
  int vertices = 0;
  int clusters = 0;
  double max_row_sum = 0.0;      // max |row sum| of the Laplacian
  double max_residual = 0.0;     // max ||L v - lambda v|| over the kept pairs
  double min_eigenvalue = 0.0;
};

/// k-means on the rows of `points`: farthest-point seeding from a random first
/// centre, at most 100 Lloyd iterations, stop when no centre moves more than
/// 1e-9. Ties go to the lowest cluster index.
std::vector<int> kmeans(const Eigen::MatrixXd& points, int k, Rng& rng);

/// Embeds vertices with the eigenvectors of the k smallest Laplacian
/// eigenvalues and clusters the rows with k-means.
std::vector<int> spectral_cluster(const Eigen::MatrixXd& lap, int k, Rng& rng,
                                  SpectralDiagnostics* diag = nullptr);

/// Moves vertices until no cluster holds a conflicting pair. Pinned vertices
/// are settled first, then the rest; within a pass the largest offending
/// cluster is handled first and the vertex whose move adds the most cut
/// weight is moved to the conflict-free cluster it interferes with least.
/// Throws InfeasibleError if some conflicting vertex has nowhere to go.
void repair_conflicts(std::vector<int>& clusters, int k, const InterferenceGraph& graph);

/// Sum of weights of non-conflicting pairs sharing a cluster.
double retained_interference(const InterferenceGraph& graph, std::span<const int> clusters);

/// Similarity, Laplacian, spectral clustering with k = min(k_max, n), repair.
std::vector<int> partition_graph(const InterferenceGraph& graph, int k_max, Rng& rng,
                                 SpectralDiagnostics* diag = nullptr);

/// Subchannel per vertex: clusters holding a pinned vertex keep its channel,
/// the others take the unused channels in ascending order by cluster index.
std::vector<int> assign_subchannels(std::span<const int> clusters, int k,
                                    const InterferenceGraph& graph, int channel_count);

// --- Connection-level pipeline ---------------------------------------------

struct Connection {
  int user = -1;
  int bs = -1;
  int original_subchannel = -1;  // >= 0 for ongoing users
};

/// Interference between two connections if they shared a subchannel: the
/// largest of the co-link and cross-link terms weighted by the number of
/// subslots each applies to, divided by N_s. Uses LOS/NLOS-averaged losses
/// and the beam directions of both links.
double pairwise_interference(const Connection& a, const Connection& b,
                             std::span<const int> switch_points, const NetworkConfig& config,
                             std::span<const UserState> users);

/// Connection graph of one band after collapsing ongoing users that share a
/// subchannel into one vertex. `members[v]` lists connection indices.
struct BandGraph {
  InterferenceGraph graph;
  std::vector<std::vector<int>> members;
};

BandGraph build_band_graph(std::span<const Connection> connections,
                           std::span<const int> switch_points, const NetworkConfig& config,
                           std::span<const UserState> users);

struct ScsaResult {
  std::vector<Link> links;
  std::vector<SpectralDiagnostics> diagnostics;
};

/// Full subchannel allocation for every associated user. `station_of_user`
/// is indexed by user id (-1 unassociated); ongoing users are those outside
/// the reassociation set with a previous link, and keep its subchannel.
ScsaResult scsa_allocate(const Snapshot& snap, std::span<const int> station_of_user,
                         std::span<const int> switch_points);

}  // namespace hetnet
