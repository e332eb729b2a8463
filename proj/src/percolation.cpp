#include "hyperperc/percolation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "hyperperc/union_find.hpp"

namespace hyperperc {

std::size_t EdgeSet::count() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

PercolationSample sample(const TilingGraph& g, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidInput, "p must lie in [0, 1]");
  PercolationSample s{g.fingerprint(), p, seed, EdgeSet(g.edge_count())};
  const EdgeMarks marks(seed);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (marks.open(e, p)) s.open.set(e);
  }
  return s;
}

ClusterDecomposition clusters(const TilingGraph& g, const PercolationSample& s) {
  if (s.open.size() != g.edge_count()) throw Error(ErrorKind::InvalidInput, "sample does not match graph");
  const std::size_t n = g.vertex_count();
  UnionFind uf(n);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (s.open.test(e)) uf.unite(g.edge(e).u, g.edge(e).v);
  }
  ClusterDecomposition dec;
  dec.graph_fingerprint = g.fingerprint();
  dec.open = s.open;
  dec.labels.resize(n);
  dec.index.resize(n);
  // Vertices are visited in increasing order, so the first member seen of
  // each root is its smallest vertex.
  std::vector<std::uint32_t> root_index(n, kNoIndex);
  for (VertexId v = 0; v < n; ++v) {
    std::uint32_t r = uf.find(v);
    if (root_index[r] == kNoIndex) {
      root_index[r] = static_cast<std::uint32_t>(dec.ids.size());
      dec.ids.push_back(v);
      dec.sizes.push_back(0);
      dec.boundary_incidence.push_back(0);
    }
    std::uint32_t c = root_index[r];
    dec.index[v] = c;
    dec.labels[v] = dec.ids[c];
    ++dec.sizes[c];
    if (g.layer(v) == g.outer_layer()) ++dec.boundary_incidence[c];
  }
  dec.member_offset.assign(dec.count() + 1, 0);
  for (std::size_t c = 0; c < dec.count(); ++c) dec.member_offset[c + 1] = dec.member_offset[c] + dec.sizes[c];
  dec.members.resize(n);
  std::vector<std::size_t> fill(dec.member_offset.begin(), dec.member_offset.end() - 1);
  for (VertexId v = 0; v < n; ++v) dec.members[fill[dec.index[v]]++] = v;
  return dec;
}

PercolationSample dual_sample(const PercolationSample& s, const DualPatch& d) {
  if (s.open.size() != d.primal_to_dual.size()) throw Error(ErrorKind::InvalidInput, "dual patch does not match sample");
  PercolationSample out{d.graph.fingerprint(), 1.0 - s.p, s.seed, EdgeSet(d.graph.edge_count())};
  for (EdgeId de = 0; de < d.dual_to_primal.size(); ++de) {
    if (!s.open.test(d.dual_to_primal[de])) out.open.set(de);
  }
  return out;
}

std::size_t giant_candidate_count(const ClusterDecomposition& dec, std::size_t tau) {
  return static_cast<std::size_t>(std::count_if(dec.boundary_incidence.begin(), dec.boundary_incidence.end(),
                                                [tau](std::size_t b) { return b >= tau; }));
}

std::size_t default_tau(const TilingGraph& g) {
  std::size_t outer = g.outer_vertices().size();
  return std::max<std::size_t>(2, (outer + 99) / 100);
}

std::vector<VertexId> boundary_anchors(const TilingGraph& g) {
  std::vector<VertexId> anchors;
  auto outer = g.outer_vertices();
  if (outer.empty()) return anchors;
  for (int k = 0; k < 16; ++k) {
    double target = kTwoPi * k / 16;
    VertexId best = kNoIndex;
    double best_d = 10.0;
    for (VertexId v : outer) {
      if (std::find(anchors.begin(), anchors.end(), v) != anchors.end()) continue;
      double d = angular_distance(g.angle(v), target);
      if (d < best_d) {
        best_d = d;
        best = v;
      }
    }
    if (best == kNoIndex) break;
    anchors.push_back(best);
  }
  return anchors;
}

SurvivalEstimate survival_proxy(const TilingGraph& g, double p, std::span<const std::uint64_t> seeds) {
  SurvivalEstimate est;
  if (g.vertex_count() == 0) return est;
  std::vector<std::uint32_t> seen(g.vertex_count(), 0);
  std::uint32_t stamp = 0;
  std::vector<VertexId> queue;
  for (std::uint64_t seed : seeds) {
    const EdgeMarks marks(seed);
    ++stamp;
    queue.assign(1, 0);
    seen[0] = stamp;
    bool hit = g.layer(0) == g.outer_layer();
    for (std::size_t head = 0; head < queue.size() && !hit; ++head) {
      VertexId v = queue[head];
      auto nb = g.neighbours(v);
      auto inc = g.incident_edges(v);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if (seen[nb[i]] == stamp || !marks.open(inc[i], p)) continue;
        if (g.layer(nb[i]) == g.outer_layer()) {
          hit = true;
          break;
        }
        seen[nb[i]] = stamp;
        queue.push_back(nb[i]);
      }
    }
    ++est.trials;
    est.hits += hit;
  }
  if (est.trials > 0) {
    est.value = static_cast<double>(est.hits) / static_cast<double>(est.trials);
    est.standard_error = std::sqrt(est.value * (1 - est.value) / static_cast<double>(est.trials));
  }
  return est;
}

std::vector<double> SweepResult::mean(const std::function<double(const SweepPoint&)>& stat) const {
  std::vector<double> out(p_grid.size(), 0.0);
  for (const auto& trace : traces) {
    for (std::size_t k = 0; k < trace.size(); ++k) out[k] += stat(trace[k]);
  }
  if (!traces.empty()) {
    for (double& x : out) x /= static_cast<double>(traces.size());
  }
  return out;
}

namespace {

// Multiset of cluster sizes; per-block totals let second() skip empty
// stretches of the size axis.
class SizeHistogram {
 public:
  static constexpr std::size_t kBlock = 1024;

  explicit SizeHistogram(std::size_t n) : count_(n + 1, 0), block_(n / kBlock + 1, 0) {
    count_[1] = n;
    block_[0] = n;
    largest_ = n > 0 ? 1 : 0;
  }

  void merge(std::size_t a, std::size_t b) {
    remove(a);
    remove(b);
    add(a + b);
    largest_ = std::max(largest_, a + b);
  }

  std::size_t largest() const { return largest_; }

  std::size_t second() const {
    if (largest_ == 0) return 0;
    if (count_[largest_] >= 2) return largest_;
    std::size_t b = largest_ / kBlock;
    for (std::size_t x = largest_; x-- > b * kBlock;) {
      if (count_[x] > 0) return x;
    }
    while (b-- > 0) {
      if (block_[b] == 0) continue;
      for (std::size_t x = b * kBlock + kBlock; x-- > b * kBlock;) {
        if (count_[x] > 0) return x;
      }
    }
    return 0;
  }

 private:
  void remove(std::size_t x) {
    --count_[x];
    --block_[x / kBlock];
  }
  void add(std::size_t x) {
    ++count_[x];
    ++block_[x / kBlock];
  }

  std::vector<std::size_t> count_;
  std::vector<std::size_t> block_;
  std::size_t largest_;
};

void validate_spec(const SweepSpec& spec) {
  if (spec.p_grid.empty()) throw Error(ErrorKind::InvalidSweepSpec, "empty p grid");
  if (spec.seeds.empty()) throw Error(ErrorKind::InvalidSweepSpec, "empty seed list");
  for (std::size_t k = 0; k < spec.p_grid.size(); ++k) {
    double p = spec.p_grid[k];
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidSweepSpec, "grid value outside [0, 1]");
    if (k > 0 && !(p > spec.p_grid[k - 1])) throw Error(ErrorKind::InvalidSweepSpec, "p grid must be strictly ascending");
  }
}

}  // namespace

SweepResult sweep(const TilingGraph& g, const SweepSpec& spec) {
  validate_spec(spec);
  SweepResult res;
  res.symbol = g.symbol();
  res.radius = g.radius();
  res.graph_fingerprint = g.fingerprint();
  res.vertex_count = g.vertex_count();
  res.edge_count = g.edge_count();
  res.outer_count = g.outer_vertices().size();
  res.tau = spec.tau > 0 ? spec.tau : default_tau(g);
  res.anchors = boundary_anchors(g);
  res.p_grid = spec.p_grid;
  res.seeds = spec.seeds;

  const std::size_t n = g.vertex_count();
  const std::size_t m = g.edge_count();
  const std::size_t grid = spec.p_grid.size();
  const int outer = g.outer_layer();
  const std::size_t tau = res.tau;

  std::vector<std::uint32_t> bucket_of(m);
  std::vector<std::size_t> bucket_start(grid + 2);
  std::vector<EdgeId> order(m);
  std::vector<std::uint32_t> outer_count(n), pen_count(n);
  std::vector<std::uint32_t> anchor_root(res.anchors.size());

  for (std::uint64_t seed : spec.seeds) {
    // Bucket k holds the edges first open at p_grid[k]; bucket `grid`
    // those never opened on this grid.
    std::fill(bucket_start.begin(), bucket_start.end(), 0);
    const EdgeMarks prng(seed);
    for (EdgeId e = 0; e < m; ++e) {
      double mark = spec.marks ? spec.marks(seed, e) : prng.mark(e);
      auto k = std::upper_bound(spec.p_grid.begin(), spec.p_grid.end(), mark) - spec.p_grid.begin();
      bucket_of[e] = static_cast<std::uint32_t>(k);
      ++bucket_start[k + 1];
    }
    for (std::size_t k = 0; k <= grid; ++k) bucket_start[k + 1] += bucket_start[k];
    {
      std::vector<std::size_t> fill(bucket_start.begin(), bucket_start.end() - 1);
      for (EdgeId e = 0; e < m; ++e) order[fill[bucket_of[e]]++] = e;
    }

    UnionFind uf(n);
    SizeHistogram hist(n);
    std::size_t giants = 0;
    for (VertexId v = 0; v < n; ++v) {
      outer_count[v] = g.layer(v) == outer;
      pen_count[v] = g.layer(v) == outer - 1;
      giants += outer_count[v] >= tau;
    }

    std::vector<SweepPoint> trace(grid);
    for (std::size_t k = 0; k < grid; ++k) {
      for (std::size_t i = bucket_start[k]; i < bucket_start[k + 1]; ++i) {
        const Edge& e = g.edge(order[i]);
        std::uint32_t a = uf.find(e.u), b = uf.find(e.v);
        if (a == b) continue;
        std::size_t sa = uf.size_of_root(a), sb = uf.size_of_root(b);
        std::size_t ba = outer_count[a], bb = outer_count[b];
        std::uint32_t gone;
        std::uint32_t root = uf.unite(a, b, &gone);
        hist.merge(sa, sb);
        giants -= (ba >= tau) + (bb >= tau);
        outer_count[root] = static_cast<std::uint32_t>(ba + bb);
        pen_count[root] += pen_count[gone];
        giants += (ba + bb) >= tau;
      }
      SweepPoint& pt = trace[k];
      pt.largest = hist.largest();
      pt.second = hist.second();
      pt.giants = giants;
      pt.unique_giant = giants == 1;
      if (n > 0) {
        std::uint32_t r0 = uf.find(0);
        pt.root_outer = outer_count[r0];
        pt.root_penultimate = pen_count[r0];
        pt.root_to_boundary = pt.root_outer > 0;
      }
      for (std::size_t i = 0; i < res.anchors.size(); ++i) anchor_root[i] = uf.find(res.anchors[i]);
      for (std::size_t i = 0; i < anchor_root.size(); ++i) {
        for (std::size_t j = i + 1; j < anchor_root.size(); ++j) pt.pairs_connected += anchor_root[i] == anchor_root[j];
      }
    }
    res.traces.push_back(std::move(trace));
  }
  return res;
}

double upward_crossing(std::span<const double> grid, std::span<const double> curve, double level) {
  if (grid.empty() || grid.size() != curve.size()) throw Error(ErrorKind::EstimatorDegenerate, "empty curve");
  if (curve[0] > level) throw Error(ErrorKind::EstimatorDegenerate, "curve starts above the crossing level");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (curve[i] < level) continue;
    if (curve[i] == level) {
      std::size_t j = i;
      while (j + 1 < grid.size() && curve[j + 1] == level) ++j;
      return (grid[i] + grid[j]) / 2;
    }
    double t = (level - curve[i - 1]) / (curve[i] - curve[i - 1]);
    return grid[i - 1] + t * (grid[i] - grid[i - 1]);
  }
  throw Error(ErrorKind::EstimatorDegenerate, "curve never reaches the crossing level");
}

double downward_crossing(std::span<const double> grid, std::span<const double> curve, double level) {
  if (grid.empty() || grid.size() != curve.size()) throw Error(ErrorKind::EstimatorDegenerate, "empty curve");
  const std::size_t top = grid.size() - 1;
  if (curve[top] < level) throw Error(ErrorKind::EstimatorDegenerate, "curve ends below the crossing level");
  for (std::size_t i = top + 1; i-- > 0;) {
    if (curve[i] > level) continue;
    if (curve[i] == level) {
      std::size_t j = i;
      while (j > 0 && curve[j - 1] == level) --j;
      return (grid[i] + grid[j]) / 2;
    }
    double t = (level - curve[i]) / (curve[i + 1] - curve[i]);
    return grid[i] + t * (grid[i + 1] - grid[i]);
  }
  throw Error(ErrorKind::EstimatorDegenerate, "curve never drops below the crossing level");
}

namespace {

using CurveFn = std::function<std::vector<double>(const SweepResult&, std::span<const std::size_t>)>;
using CrossFn = std::function<double(std::span<const double>, std::span<const double>)>;

std::vector<double> root_growth_curve(const SweepResult& r, std::span<const std::size_t> use) {
  const std::size_t grid = r.p_grid.size();
  std::vector<double> outer(grid, 0.0), pen(grid, 0.0);
  for (std::size_t s : use) {
    for (std::size_t k = 0; k < grid; ++k) {
      outer[k] += static_cast<double>(r.traces[s][k].root_outer);
      pen[k] += static_cast<double>(r.traces[s][k].root_penultimate);
    }
  }
  std::vector<double> ratio(grid, 0.0);
  for (std::size_t k = 0; k < grid; ++k) ratio[k] = pen[k] > 0 ? outer[k] / pen[k] : 0.0;
  return ratio;
}

std::vector<double> unique_curve(const SweepResult& r, std::span<const std::size_t> use) {
  std::vector<double> out(r.p_grid.size(), 0.0);
  for (std::size_t s : use) {
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += r.traces[s][k].unique_giant;
  }
  for (double& x : out) x /= static_cast<double>(use.size());
  return out;
}

CrossingEstimate crossing_with_error(const SweepResult& r, const CurveFn& curve, const CrossFn& cross) {
  const std::size_t seeds = r.traces.size();
  std::vector<std::size_t> all(seeds);
  std::iota(all.begin(), all.end(), 0);
  CrossingEstimate est;
  est.radius = r.radius;
  est.value = cross(r.p_grid, curve(r, all));
  const std::size_t blocks = std::min<std::size_t>(10, seeds);
  if (blocks < 2) return est;
  std::vector<double> leave_out;
  for (std::size_t b = 0; b < blocks; ++b) {
    std::vector<std::size_t> use;
    for (std::size_t s = 0; s < seeds; ++s) {
      if (s % blocks != b) use.push_back(s);
    }
    try {
      leave_out.push_back(cross(r.p_grid, curve(r, use)));
    } catch (const Error&) {
      // Degenerate subsamples are left out of the jackknife.
    }
  }
  if (leave_out.size() >= 2) {
    double mean = std::accumulate(leave_out.begin(), leave_out.end(), 0.0) / static_cast<double>(leave_out.size());
    double ss = 0;
    for (double x : leave_out) ss += (x - mean) * (x - mean);
    double nb = static_cast<double>(leave_out.size());
    est.standard_error = std::sqrt((nb - 1) / nb * ss);
  }
  return est;
}

void extrapolate(ThresholdEstimate& est) {
  const auto& c = est.crossings;
  const CrossingEstimate& a = c[c.size() - 2];
  const CrossingEstimate& b = c.back();
  double lo = c.front().value, hi = c.front().value;
  for (const auto& x : c) {
    lo = std::min(lo, x.value);
    hi = std::max(hi, x.value);
  }
  double combined = std::hypot(a.standard_error, b.standard_error);
  // A c / R drift moves every crossing the same way; a zigzag is noise.
  bool monotone = true;
  const double step = b.value - a.value;
  for (std::size_t i = 1; i < c.size(); ++i) monotone = monotone && (c[i].value - c[i - 1].value) * step > 0;
  if (monotone && std::fabs(step) > 2 * combined && b.radius != a.radius) {
    // Two-point Richardson step under x(R) = x_inf + c / R.
    double ra = a.radius, rb = b.radius;
    est.value = (rb * b.value - ra * a.value) / (rb - ra);
    double se = std::hypot(rb * b.standard_error, ra * a.standard_error) / (rb - ra);
    est.uncertainty = std::max(std::fabs(est.value - b.value), se);
    est.method = "richardson";
    return;
  }
  bool weighted = std::all_of(c.begin(), c.end(), [](const auto& x) { return x.standard_error > 0; });
  double sw = 0, sx = 0;
  for (const auto& x : c) {
    double w = weighted ? 1.0 / (x.standard_error * x.standard_error) : 1.0;
    sw += w;
    sx += w * x.value;
  }
  est.value = sx / sw;
  double se = weighted ? std::sqrt(1.0 / sw) : 0.0;
  est.uncertainty = std::max(se, (hi - lo) / 2);
  est.method = "weighted-mean";
}

void check_results(std::span<const SweepResult> results) {
  if (results.size() < 3) throw Error(ErrorKind::EstimatorDegenerate, "need sweeps at three or more radii");
  for (std::size_t i = 1; i < results.size(); ++i) {
    if (results[i].radius <= results[i - 1].radius) {
      throw Error(ErrorKind::EstimatorDegenerate, "sweeps must be ordered by increasing radius");
    }
  }
}

}  // namespace

ThresholdEstimate estimate_pc(std::span<const SweepResult> results) {
  check_results(results);
  ThresholdEstimate est;
  // Scanned from the top: the ratio of two small means is spiky where the
  // root cluster rarely reaches the outer layers.
  CrossFn down1 = [](std::span<const double> grid, std::span<const double> curve) {
    return downward_crossing(grid, curve, 1.0);
  };
  for (const SweepResult& r : results) {
    est.crossings.push_back(crossing_with_error(r, root_growth_curve, down1));
    auto reach = r.mean([](const SweepPoint& pt) { return pt.root_to_boundary ? 1.0 : 0.0; });
    try {
      est.half_crossings.emplace_back(upward_crossing(r.p_grid, reach, 0.5));
    } catch (const Error&) {
      est.half_crossings.emplace_back(std::nullopt);
    }
  }
  extrapolate(est);
  return est;
}

ThresholdEstimate estimate_pu(std::span<const SweepResult> results) {
  check_results(results);
  ThresholdEstimate est;
  CrossFn down = [](std::span<const double> grid, std::span<const double> curve) {
    return downward_crossing(grid, curve, 0.5);
  };
  for (const SweepResult& r : results) {
    est.crossings.push_back(crossing_with_error(r, unique_curve, down));
    est.mean_giants.push_back(r.mean([](const SweepPoint& pt) { return static_cast<double>(pt.giants); }));
  }
  extrapolate(est);
  return est;
}

}  // namespace hyperperc
