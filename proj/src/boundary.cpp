#include "hyperperc/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "hyperperc/tiling_ops.hpp"

namespace hyperperc {

namespace {

// Per-thread stamped scratch of graph size, so repeated calls on large
// graphs do not clear an O(n) array each time.
class Stamps {
 public:
  std::uint32_t next(std::size_t n) {
    if (mark_.size() < n) mark_.resize(n, 0);
    if (++stamp_ == 0) {
      std::fill(mark_.begin(), mark_.end(), 0);
      stamp_ = 1;
    }
    return stamp_;
  }
  std::uint32_t& operator[](std::size_t v) { return mark_[v]; }

 private:
  std::vector<std::uint32_t> mark_;
  std::uint32_t stamp_ = 0;
};

thread_local Stamps scratch;
thread_local std::vector<std::uint32_t> owner;

}  // namespace

std::vector<EndApproximation> ends_at_radius(const ClusterDecomposition& dec, const TilingGraph& g,
                                             std::uint32_t cluster, int r) {
  if (r < 0 || r >= g.radius()) throw Error(ErrorKind::InvalidInput, "end radius must lie in [0, patch radius)");
  if (cluster >= dec.count()) throw Error(ErrorKind::InvalidInput, "cluster index out of range");
  std::vector<EndApproximation> ends;
  const std::uint32_t stamp = scratch.next(g.vertex_count());
  std::vector<VertexId> queue;
  for (VertexId start : dec.cluster_members(cluster)) {
    if (g.layer(start) <= r || scratch[start] == stamp) continue;
    scratch[start] = stamp;
    queue.assign(1, start);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      VertexId v = queue[head];
      auto nb = g.neighbours(v);
      auto inc = g.incident_edges(v);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        VertexId w = nb[i];
        if (g.layer(w) <= r || scratch[w] == stamp || !dec.open.test(inc[i])) continue;
        scratch[w] = stamp;
        queue.push_back(w);
      }
    }
    std::sort(queue.begin(), queue.end());
    ends.push_back({cluster, r, queue, start});
  }
  return ends;
}

std::int64_t angle_ticks(double theta) {
  auto t = static_cast<std::int64_t>(std::llround(wrap_angle(theta) / kTwoPi * static_cast<double>(kTicksPerTurn)));
  return t % kTicksPerTurn;
}

double ticks_to_radians(std::int64_t ticks) { return static_cast<double>(ticks) / static_cast<double>(kTicksPerTurn) * kTwoPi; }

OuterCircle::OuterCircle(const TilingGraph& g) : outer_layer_(g.outer_layer()), rank_(g.vertex_count(), kNoIndex) {
  auto outer = g.outer_vertices();
  order_.assign(outer.begin(), outer.end());
  std::vector<std::int64_t> t(g.vertex_count(), 0);
  for (VertexId v : order_) t[v] = angle_ticks(g.angle(v));
  std::sort(order_.begin(), order_.end(), [&](VertexId a, VertexId b) { return t[a] != t[b] ? t[a] < t[b] : a < b; });
  ticks_.reserve(order_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) {
    ticks_.push_back(t[order_[i]]);
    rank_[order_[i]] = static_cast<std::uint32_t>(i);
  }
}

ArcCover OuterCircle::cover(std::span<const VertexId> vertices) const {
  ArcCover out;
  std::vector<std::uint32_t> ranks;
  for (VertexId v : vertices) {
    if (v < rank_.size() && rank_[v] != kNoIndex) ranks.push_back(rank_[v]);
  }
  std::sort(ranks.begin(), ranks.end());
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
  if (ranks.empty()) return out;
  const std::size_t n = order_.size();
  if (ranks.size() == n) {
    out.arc_count = 1;
    out.runs = 1;
    out.angular_diameter = kTwoPi;
    out.arcs = {{0.0, kTwoPi}};
    return out;
  }
  // Rotate so that ranks[0] starts a run (its predecessor is not selected).
  std::size_t first = 0;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    std::uint32_t prev = ranks[(i + ranks.size() - 1) % ranks.size()];
    if ((prev + 1) % n != ranks[i]) {
      first = i;
      break;
    }
  }
  struct Run {
    std::uint32_t start, end;
  };
  std::vector<Run> runs;
  for (std::size_t k = 0; k < ranks.size(); ++k) {
    std::uint32_t r = ranks[(first + k) % ranks.size()];
    if (!runs.empty() && (runs.back().end + 1) % n == r) {
      runs.back().end = r;
    } else {
      runs.push_back({r, r});
    }
  }
  out.runs = runs.size();
  auto span_ticks = [&](std::uint32_t from, std::uint32_t to) {
    std::int64_t d = ticks_[to] - ticks_[from];
    return d < 0 ? d + kTicksPerTurn : d;
  };
  // Gap i runs from the end of run i to the start of run i+1.
  std::vector<std::int64_t> gaps(runs.size());
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::int64_t gap = span_ticks(runs[i].end, runs[(i + 1) % runs.size()].start);
    if (runs.size() == 1 && runs[0].start == runs[0].end) gap = kTicksPerTurn;
    gaps[i] = gap;
  }
  if (runs.size() == 1) {
    out.arc_count = 1;
    out.angular_diameter = ticks_to_radians(kTicksPerTurn - gaps[0]);
    out.arcs = {{ticks_to_radians(ticks_[runs[0].start]), ticks_to_radians(ticks_[runs[0].end])}};
    return out;
  }
  std::size_t g1 = 0;
  for (std::size_t i = 1; i < gaps.size(); ++i) {
    if (gaps[i] > gaps[g1]) g1 = i;
  }
  std::size_t g2 = g1 == 0 ? 1 : 0;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    if (i != g1 && gaps[i] > gaps[g2]) g2 = i;
  }
  out.arc_count = 2;
  out.angular_diameter = ticks_to_radians(kTicksPerTurn - gaps[g1] - gaps[g2]);
  // Each kept arc starts after one dropped gap and ends before the other.
  const std::size_t m = runs.size();
  for (auto [after, before] : {std::pair{g1, g2}, std::pair{g2, g1}}) {
    std::uint32_t s = runs[(after + 1) % m].start;
    std::uint32_t e = runs[before].end;
    out.arcs.emplace_back(ticks_to_radians(ticks_[s]), ticks_to_radians(ticks_[e]));
  }
  std::sort(out.arcs.begin(), out.arcs.end());
  return out;
}

NestingForest nesting_forest(const ClusterDecomposition& dec, const TilingGraph& g, std::uint32_t cluster,
                             std::span<const int> radii) {
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (k > 0 && radii[k] <= radii[k - 1]) throw Error(ErrorKind::InvalidInput, "chain radii must be strictly ascending");
  }
  NestingForest forest;
  forest.radii.assign(radii.begin(), radii.end());
  for (std::size_t k = 0; k < radii.size(); ++k) {
    forest.ends.push_back(ends_at_radius(dec, g, cluster, radii[k]));
    std::vector<std::uint32_t> parent(forest.ends[k].size(), kNoIndex);
    if (k > 0) {
      // Every child anchor lies in exactly one end of the level above, so
      // entries written for that level are the only ones read.
      const auto& up = forest.ends[k - 1];
      if (owner.size() < g.vertex_count()) owner.resize(g.vertex_count());
      for (std::size_t j = 0; j < up.size(); ++j) {
        for (VertexId v : up[j].vertices) owner[v] = static_cast<std::uint32_t>(j);
      }
      for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = owner[forest.ends[k][i].anchor];
    }
    forest.parent.push_back(std::move(parent));
  }
  return forest;
}

std::vector<BoundaryArcEstimate> end_chains(const ClusterDecomposition& dec, const TilingGraph& g,
                                            std::uint32_t cluster, std::span<const int> radii,
                                            const OuterCircle& circle) {
  std::vector<BoundaryArcEstimate> live, dead;
  if (radii.empty()) return live;
  NestingForest forest = nesting_forest(dec, g, cluster, radii);
  const std::size_t depth = radii.size();
  // Ancestors are shared by many chains; cover each end once.
  std::vector<std::vector<std::optional<ArcCover>>> covers(depth);
  for (std::size_t k = 0; k < depth; ++k) covers[k].resize(forest.ends[k].size());
  auto cover_of = [&](std::size_t k, std::size_t i) -> const ArcCover& {
    if (!covers[k][i]) covers[k][i] = circle.cover(forest.ends[k][i].vertices);
    return *covers[k][i];
  };
  auto trace = [&](std::size_t level, std::size_t index) {
    BoundaryArcEstimate chain;
    chain.cluster = cluster;
    chain.radii.assign(radii.begin(), radii.begin() + static_cast<std::ptrdiff_t>(level) + 1);
    chain.ends.assign(level + 1, 0);
    chain.arcs.resize(level + 1);
    std::size_t i = index;
    for (std::size_t k = level + 1; k-- > 0;) {
      chain.ends[k] = i;
      chain.arcs[k] = cover_of(k, i);
      if (k > 0) i = forest.parent[k][i];
    }
    return chain;
  };
  for (std::size_t k = 0; k < depth; ++k) {
    std::vector<char> has_child(forest.ends[k].size(), 0);
    if (k + 1 < depth) {
      for (std::uint32_t p : forest.parent[k + 1]) has_child[p] = 1;
    }
    for (std::size_t i = 0; i < forest.ends[k].size(); ++i) {
      if (k + 1 < depth && has_child[i]) continue;
      BoundaryArcEstimate chain = trace(k, i);
      chain.live = k + 1 == depth && chain.arcs.back().arc_count > 0;
      (chain.live ? live : dead).push_back(std::move(chain));
    }
  }
  live.insert(live.end(), std::make_move_iterator(dead.begin()), std::make_move_iterator(dead.end()));
  return live;
}

std::vector<BoundaryArcEstimate> end_chains(const ClusterDecomposition& dec, const TilingGraph& g,
                                            std::uint32_t cluster, std::span<const int> radii) {
  return end_chains(dec, g, cluster, radii, OuterCircle(g));
}

Quantiles quantiles(std::vector<double> values) {
  Quantiles q;
  q.count = values.size();
  if (values.empty()) return q;
  std::sort(values.begin(), values.end());
  auto at = [&](double f) {
    double pos = f * static_cast<double>(values.size() - 1);
    auto lo = static_cast<std::size_t>(std::floor(pos));
    std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  q.median = at(0.5);
  q.p90 = at(0.9);
  return q;
}

std::vector<BoundaryArcEstimate> giant_chains(const ClusterDecomposition& dec, const TilingGraph& g,
                                              std::span<const int> radii, std::size_t tau, const OuterCircle& circle) {
  std::vector<BoundaryArcEstimate> out;
  for (std::uint32_t c = 0; c < dec.count(); ++c) {
    if (dec.boundary_incidence[c] < tau) continue;
    auto chains = end_chains(dec, g, c, radii, circle);
    out.insert(out.end(), std::make_move_iterator(chains.begin()), std::make_move_iterator(chains.end()));
  }
  return out;
}

void OnePointStatistic::add(std::span<const BoundaryArcEstimate> chains, std::size_t giants) {
  giant_candidates += giants;
  if (per_radius.size() != radii.size()) per_radius.resize(radii.size());
  for (const BoundaryArcEstimate& chain : chains) {
    for (std::size_t k = 1; k < chain.arcs.size(); ++k) {
      if (chain.arcs[k].angular_diameter > chain.arcs[k - 1].angular_diameter) {
        ++monotonicity_violations;
        break;
      }
    }
    if (!chain.live) {
      ++dead_chains;
      continue;
    }
    ++live_chains;
    for (std::size_t k = 0; k < chain.arcs.size(); ++k) per_radius[k].push_back(chain.arcs[k].angular_diameter);
  }
}

void OnePointStatistic::finish() {
  per_radius_quantiles.clear();
  for (const auto& values : per_radius) per_radius_quantiles.push_back(quantiles(values));
  terminal = per_radius_quantiles.empty() ? Quantiles{} : per_radius_quantiles.back();
}

OnePointStatistic one_point_end_statistic(const TilingGraph& g, std::span<const ClusterDecomposition> samples,
                                          double p, std::span<const int> radii, std::size_t tau) {
  OnePointStatistic stat;
  stat.p = p;
  stat.radii.assign(radii.begin(), radii.end());
  stat.per_radius.assign(radii.size(), {});
  const OuterCircle circle(g);
  for (const ClusterDecomposition& dec : samples) {
    stat.add(giant_chains(dec, g, radii, tau, circle), giant_candidate_count(dec, tau));
  }
  stat.finish();
  return stat;
}

LimitDirectionSet limit_direction_density(const ClusterDecomposition& dec, const TilingGraph& g, std::size_t sigma) {
  if (sigma < 1) throw Error(ErrorKind::InvalidInput, "size floor must be >= 1");
  LimitDirectionSet set;
  for (VertexId v : g.outer_vertices()) {
    if (dec.sizes[dec.index[v]] >= sigma) set.angles.push_back(g.angle(v));
  }
  std::sort(set.angles.begin(), set.angles.end());
  if (set.angles.size() >= 2) {
    double gap = set.angles.front() + kTwoPi - set.angles.back();
    for (std::size_t i = 1; i < set.angles.size(); ++i) gap = std::max(gap, set.angles[i] - set.angles[i - 1]);
    set.largest_gap = gap;
  }
  return set;
}

std::size_t halfplane_cluster_count(const ClusterDecomposition& dec, const TilingGraph& g, const Halfplane& h,
                                    std::size_t sigma) {
  std::vector<std::uint32_t> hit;
  for (VertexId v : halfplane_vertices(g, h)) {
    std::uint32_t c = dec.index[v];
    if (dec.sizes[c] >= sigma) hit.push_back(c);
  }
  std::sort(hit.begin(), hit.end());
  return static_cast<std::size_t>(std::unique(hit.begin(), hit.end()) - hit.begin());
}

}  // namespace hyperperc
