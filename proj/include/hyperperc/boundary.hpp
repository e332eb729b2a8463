#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hyperperc/halfplane.hpp"
#include "hyperperc/percolation.hpp"
#include "hyperperc/tiling.hpp"

namespace hyperperc {

/// A component of (cluster minus the ball of radius r): the finite-scale
/// stand-in for one end of the cluster.
struct EndApproximation {
  std::uint32_t cluster = 0;
  int radius = 0;
  /// Ascending vertex ids, all on layers > radius.
  std::vector<VertexId> vertices;
  VertexId anchor = 0;
};

/// Components of the cluster's vertices on layers > r, connected through
/// open edges among those vertices, ordered by anchor. Requires
/// 0 <= r < radius of g (InvalidInput otherwise).
std::vector<EndApproximation> ends_at_radius(const ClusterDecomposition& dec, const TilingGraph& g,
                                             std::uint32_t cluster, int r);

/// Angles quantized to 2^48 ticks per turn so that arc arithmetic is exact.
inline constexpr std::int64_t kTicksPerTurn = std::int64_t{1} << 48;
std::int64_t angle_ticks(double theta);
double ticks_to_radians(std::int64_t ticks);

/// Minimal cover of a set of outermost-layer vertices by closed ideal arcs.
/// The set is split into runs of vertices consecutive in the angular order
/// of the whole outermost layer; at most two arcs are kept, dropping the two
/// largest gaps between runs.
struct ArcCover {
  /// 0 for an empty set, 1 for one run or the full circle, else 2.
  int arc_count = 0;
  /// Number of runs before capping.
  std::size_t runs = 0;
  /// Total measure of the kept arcs, in radians.
  double angular_diameter = 0;
  /// Kept arcs as (start, end) angles, counterclockwise.
  std::vector<std::pair<double, double>> arcs;
};

/// Angular order of the outermost layer, precomputed once per graph.
class OuterCircle {
 public:
  explicit OuterCircle(const TilingGraph& g);

  ArcCover cover(std::span<const VertexId> vertices) const;
  std::size_t size() const { return order_.size(); }

 private:
  int outer_layer_;
  /// Outermost vertices sorted by (tick, id).
  std::vector<VertexId> order_;
  std::vector<std::int64_t> ticks_;
  /// Vertex -> position in order_, or kNoIndex.
  std::vector<std::uint32_t> rank_;
};

/// One end chain: nested EndApproximations over the requested radii.
struct BoundaryArcEstimate {
  std::uint32_t cluster = 0;
  /// Radii actually spanned; a prefix of the requested list.
  std::vector<int> radii;
  /// Index of the chain's end in ends[k] of the matching NestingForest level.
  std::vector<std::size_t> ends;
  std::vector<ArcCover> arcs;
  /// True when the chain reaches the deepest radius with an end that still
  /// touches the outermost layer.
  bool live = false;

  double terminal_diameter() const { return arcs.back().angular_diameter; }
};

/// Ends of one cluster at increasing radii and their nesting.
struct NestingForest {
  std::vector<int> radii;
  /// ends[k]: ends at radii[k].
  std::vector<std::vector<EndApproximation>> ends;
  /// parent[k][i]: index in ends[k-1] of the end containing ends[k][i]
  /// (kNoIndex for k = 0).
  std::vector<std::vector<std::uint32_t>> parent;
};

NestingForest nesting_forest(const ClusterDecomposition& dec, const TilingGraph& g, std::uint32_t cluster,
                             std::span<const int> radii);

/// Live chains (one per deepest-radius end reaching the outermost layer,
/// traced back through its ancestors) followed by dead chains (one per end
/// that never reaches the outermost layer and has no descendant at the next
/// radius, or sits at the deepest radius, traced back from there). Radii
/// must be strictly ascending and below the patch radius.
std::vector<BoundaryArcEstimate> end_chains(const ClusterDecomposition& dec, const TilingGraph& g,
                                            std::uint32_t cluster, std::span<const int> radii,
                                            const OuterCircle& circle);
std::vector<BoundaryArcEstimate> end_chains(const ClusterDecomposition& dec, const TilingGraph& g,
                                            std::uint32_t cluster, std::span<const int> radii);

struct Quantiles {
  std::size_t count = 0;
  double median = 0;
  double p90 = 0;
};

/// Quantiles by linear interpolation between order statistics. Empty input
/// gives count 0 and zero values.
Quantiles quantiles(std::vector<double> values);

/// Terminal diameters of live chains of giant candidates, for one p.
struct OnePointStatistic {
  double p = 0;
  std::vector<int> radii;
  /// Live-chain diameters at each radius, pooled over samples: per_radius[k].
  std::vector<std::vector<double>> per_radius;
  std::vector<Quantiles> per_radius_quantiles;
  /// Quantiles of the diameters at the deepest radius.
  Quantiles terminal;
  std::size_t giant_candidates = 0;
  std::size_t live_chains = 0;
  std::size_t dead_chains = 0;
  /// Chains whose diameter increased somewhere along the chain.
  std::size_t monotonicity_violations = 0;

  /// Pools the chains of one sample's giant candidates.
  void add(std::span<const BoundaryArcEstimate> chains, std::size_t giants);
  /// Fills the quantile fields from the pooled values.
  void finish();
};

/// Chains of every cluster with boundary incidence >= tau, in cluster
/// index order.
std::vector<BoundaryArcEstimate> giant_chains(const ClusterDecomposition& dec, const TilingGraph& g,
                                              std::span<const int> radii, std::size_t tau, const OuterCircle& circle);

/// Pools the live chains of every giant candidate (boundary incidence
/// >= tau) across the given decompositions of one graph at one p.
OnePointStatistic one_point_end_statistic(const TilingGraph& g, std::span<const ClusterDecomposition> samples,
                                          double p, std::span<const int> radii, std::size_t tau);

struct LimitDirectionSet {
  /// Ascending ideal angles of outermost vertices in clusters of size >= sigma.
  std::vector<double> angles;
  /// Largest circular gap between consecutive angles; 2*pi when fewer than
  /// two angles exist.
  double largest_gap = kTwoPi;
};

LimitDirectionSet limit_direction_density(const ClusterDecomposition& dec, const TilingGraph& g, std::size_t sigma);

/// Clusters of size >= sigma with a vertex in the closed halfplane.
std::size_t halfplane_cluster_count(const ClusterDecomposition& dec, const TilingGraph& g, const Halfplane& h,
                                    std::size_t sigma);

}  // namespace hyperperc
