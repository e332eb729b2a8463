#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperperc/dual.hpp"
#include "hyperperc/rng.hpp"
#include "hyperperc/tiling.hpp"

namespace hyperperc {

/// Fixed-length bitset over edge indices.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  bool test(std::size_t e) const { return (words_[e >> 6] >> (e & 63)) & 1u; }
  void set(std::size_t e, bool value = true) {
    std::uint64_t bit = std::uint64_t{1} << (e & 63);
    if (value) {
      words_[e >> 6] |= bit;
    } else {
      words_[e >> 6] &= ~bit;
    }
  }
  std::size_t count() const;
  std::span<const std::uint64_t> words() const { return words_; }
  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// One p-Bernoulli bond configuration on a graph identified by fingerprint.
struct PercolationSample {
  std::uint64_t graph_fingerprint = 0;
  double p = 0;
  std::uint64_t seed = 0;
  EdgeSet open;
};

/// Edge e is open iff EdgeMarks(seed).mark(e) < p.
PercolationSample sample(const TilingGraph& g, double p, std::uint64_t seed);

/// Connected components of the open subgraph, all vertices included.
/// Clusters are numbered densely, 0..count-1, in increasing order of their
/// id (the smallest vertex they contain).
struct ClusterDecomposition {
  std::uint64_t graph_fingerprint = 0;
  /// Vertex -> cluster id (smallest vertex index in the component).
  std::vector<VertexId> labels;
  /// Vertex -> dense cluster index.
  std::vector<std::uint32_t> index;
  /// Dense index -> id, size, outermost-layer vertex count.
  std::vector<VertexId> ids;
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> boundary_incidence;
  /// Members of cluster c: members[member_offset[c] .. member_offset[c+1]),
  /// ascending.
  std::vector<std::size_t> member_offset;
  std::vector<VertexId> members;
  /// The open set the decomposition was computed from.
  EdgeSet open;

  std::size_t count() const { return ids.size(); }
  std::span<const VertexId> cluster_members(std::uint32_t c) const {
    return {members.data() + member_offset[c], members.data() + member_offset[c + 1]};
  }
};

ClusterDecomposition clusters(const TilingGraph& g, const PercolationSample& s);

/// Dual configuration: dual edge e' is open iff its primal edge is closed.
/// The result has p' = 1 - p and the same seed.
PercolationSample dual_sample(const PercolationSample& s, const DualPatch& d);

/// Clusters with boundary_incidence >= tau.
std::size_t giant_candidate_count(const ClusterDecomposition& dec, std::size_t tau);

/// max(2, ceil(0.01 * |outermost layer|)).
std::size_t default_tau(const TilingGraph& g);

/// Up to 16 outermost-layer vertices nearest to the angles 2*pi*k/16
/// (distinct, ordered by k; ties go to the smaller index).
std::vector<VertexId> boundary_anchors(const TilingGraph& g);

struct SurvivalEstimate {
  std::size_t trials = 0;
  std::size_t hits = 0;
  double value = 0;
  double standard_error = 0;
};

/// Fraction of seeds whose root cluster reaches the outermost layer,
/// exploring the root cluster lazily (only edges touched are marked).
SurvivalEstimate survival_proxy(const TilingGraph& g, double p, std::span<const std::uint64_t> seeds);

/// Mark of edge e under a seed; the sweep opens e for every p > mark.
using MarkSource = std::function<double(std::uint64_t seed, EdgeId e)>;

struct SweepSpec {
  std::vector<double> p_grid;
  std::vector<std::uint64_t> seeds;
  /// Boundary-incidence threshold for giant candidates; 0 selects default_tau.
  std::size_t tau = 0;
  /// Defaults to EdgeMarks.
  MarkSource marks;
};

/// Statistics of one seed at one grid point.
struct SweepPoint {
  std::size_t largest = 0;
  std::size_t second = 0;
  /// Clusters with at least tau outermost-layer vertices.
  std::size_t giants = 0;
  bool root_to_boundary = false;
  /// Connected pairs among the boundary anchors.
  std::size_t pairs_connected = 0;
  bool unique_giant = false;
  /// Root-cluster vertices on the outermost and the next-to-outermost layer.
  std::size_t root_outer = 0;
  std::size_t root_penultimate = 0;
};

struct SweepResult {
  SchlafliSymbol symbol;
  int radius = 0;
  std::uint64_t graph_fingerprint = 0;
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  std::size_t outer_count = 0;
  std::size_t tau = 0;
  std::vector<VertexId> anchors;
  std::vector<double> p_grid;
  std::vector<std::uint64_t> seeds;
  /// traces[s][k]: seed s at p_grid[k].
  std::vector<std::vector<SweepPoint>> traces;

  std::size_t anchor_pairs() const { return anchors.size() * (anchors.size() - 1) / 2; }
  /// Mean over seeds of a statistic, one value per grid point.
  std::vector<double> mean(const std::function<double(const SweepPoint&)>& stat) const;
};

/// Monotone coupling sweep: each seed draws one mark per edge, edges are
/// inserted into a union-find in grid-interval order and the statistics are
/// recorded after each grid point. Throws InvalidSweepSpec for an empty,
/// unsorted or out-of-range grid or an empty seed list.
SweepResult sweep(const TilingGraph& g, const SweepSpec& spec);

struct CrossingEstimate {
  int radius = 0;
  double value = 0;
  /// Delete-a-block jackknife over seed blocks.
  double standard_error = 0;
};

struct ThresholdEstimate {
  std::vector<CrossingEstimate> crossings;
  double value = 0;
  double uncertainty = 0;
  /// "richardson" or "weighted-mean".
  std::string method;
  /// p_c only: level-1/2 crossing of the root-to-boundary probability per
  /// radius, when it exists.
  std::vector<std::optional<double>> half_crossings;
  /// p_u only: mean giant-candidate count per radius and grid point.
  std::vector<std::vector<double>> mean_giants;
};

/// First p where the curve reaches `level` going up the grid, linearly
/// interpolated; a run of grid points exactly at the level gives its
/// midpoint. Throws EstimatorDegenerate when the curve starts above the
/// level or never reaches it.
double upward_crossing(std::span<const double> grid, std::span<const double> curve, double level);

/// Same, scanning down from the top of the grid: the crossing above which
/// the curve stays at or above `level`.
double downward_crossing(std::span<const double> grid, std::span<const double> curve, double level);

/// Critical-point estimate from sweeps at >= 3 radii. Per radius, the
/// crossing is where the root cluster's mean outermost-layer count drops to
/// its mean next-to-outermost count (growth ratio 1), scanning down from
/// the top of the grid. On a binary tree the ratio is exactly 2p.
ThresholdEstimate estimate_pc(std::span<const SweepResult> results);

/// Uniqueness estimate from sweeps at >= 3 radii: per radius, the upper
/// crossing of P(exactly one giant candidate) through 1/2.
ThresholdEstimate estimate_pu(std::span<const SweepResult> results);

}  // namespace hyperperc
