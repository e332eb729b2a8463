#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "hyperperc/binary_tree.hpp"
#include "hyperperc/dual.hpp"
#include "hyperperc/percolation.hpp"
#include "hyperperc/union_find.hpp"
#include "oracles.hpp"

using namespace hyperperc;

namespace {

using EdgeList = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

EdgeList open_edges(const TilingGraph& g, const EdgeSet& open) {
  EdgeList out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (open.test(e)) out.push_back({g.edge(e).u, g.edge(e).v});
  }
  return out;
}

// Statistics of one configuration from a DFS labelling.
SweepPoint oracle_point(const TilingGraph& g, const EdgeSet& open, std::size_t tau, std::span<const VertexId> anchors) {
  auto label = oracle::dfs_labels(g.vertex_count(), open_edges(g, open));
  std::vector<std::size_t> size(g.vertex_count(), 0), outer(g.vertex_count(), 0), pen(g.vertex_count(), 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    ++size[label[v]];
    outer[label[v]] += g.layer(v) == g.outer_layer();
    pen[label[v]] += g.layer(v) == g.outer_layer() - 1;
  }
  std::vector<std::size_t> sorted = size;
  std::sort(sorted.rbegin(), sorted.rend());
  SweepPoint pt;
  pt.largest = sorted[0];
  pt.second = sorted.size() > 1 ? sorted[1] : 0;
  for (std::size_t c = 0; c < g.vertex_count(); ++c) pt.giants += size[c] > 0 && outer[c] >= tau;
  pt.unique_giant = pt.giants == 1;
  pt.root_outer = outer[label[0]];
  pt.root_penultimate = pen[label[0]];
  pt.root_to_boundary = pt.root_outer > 0;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    for (std::size_t j = i + 1; j < anchors.size(); ++j) pt.pairs_connected += label[anchors[i]] == label[anchors[j]];
  }
  return pt;
}

void check_same(const SweepPoint& a, const SweepPoint& b) {
  CHECK(a.largest == b.largest);
  CHECK(a.second == b.second);
  CHECK(a.giants == b.giants);
  CHECK(a.unique_giant == b.unique_giant);
  CHECK(a.root_to_boundary == b.root_to_boundary);
  CHECK(a.root_outer == b.root_outer);
  CHECK(a.root_penultimate == b.root_penultimate);
  CHECK(a.pairs_connected == b.pairs_connected);
}

double binomial_band(double p, double n) { return 4 * std::sqrt(p * (1 - p) / n); }

// Stratified marks for a single-edge graph: seed s has mark (s + 1/2) / n.
MarkSource stratified(std::size_t n) {
  return [n](std::uint64_t seed, EdgeId) { return (static_cast<double>(seed) + 0.5) / static_cast<double>(n); };
}

}  // namespace

TEST_CASE("edge marks") {
  EdgeMarks a(42), b(42), c(43);
  for (std::uint64_t e = 0; e < 1000; ++e) {
    CHECK(a.mark(e) == b.mark(e));
    CHECK(a.mark(e) >= 0.0);
    CHECK(a.mark(e) < 1.0);
  }
  int differ = 0;
  for (std::uint64_t e = 0; e < 100; ++e) differ += a.mark(e) != c.mark(e);
  CHECK(differ == 100);
  CHECK(!a.open(0, 0.0));
  CHECK(a.open(0, 1.0));
  // Reference value of the SplitMix64 output function.
  CHECK(splitmix64_mix(0x9e3779b97f4a7c15ull) == 0xe220a8397b1dcdafull);
}

TEST_CASE("trivial samples") {
  TilingGraph g = generate_tiling({5, 5}, 4);
  PercolationSample s0 = sample(g, 0.0, 1);
  PercolationSample s1 = sample(g, 1.0, 1);
  CHECK(s0.open.size() == g.edge_count());
  CHECK(s0.open.count() == 0);
  CHECK(s1.open.count() == g.edge_count());
  CHECK(s0.graph_fingerprint == g.fingerprint());

  ClusterDecomposition d0 = clusters(g, s0);
  ClusterDecomposition d1 = clusters(g, s1);
  CHECK(d0.count() == g.vertex_count());
  for (std::size_t c = 0; c < d0.count(); ++c) CHECK(d0.sizes[c] == 1);
  CHECK(d1.count() == 1);
  CHECK(d1.sizes[0] == g.vertex_count());
  CHECK(d1.boundary_incidence[0] == g.outer_vertices().size());

  CHECK_THROWS_AS(sample(g, -0.1, 1), Error);
  CHECK_THROWS_AS(sample(g, 1.5, 1), Error);
}

TEST_CASE("samples are reproducible and coupled in p") {
  TilingGraph g = generate_tiling({5, 5}, 5);
  CHECK(sample(g, 0.4, 9).open == sample(g, 0.4, 9).open);
  CHECK(!(sample(g, 0.4, 9).open == sample(g, 0.4, 10).open));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EdgeSet lo = sample(g, 0.3, seed).open, hi = sample(g, 0.6, seed).open;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (lo.test(e)) REQUIRE(hi.test(e));
    }
  }
}

TEST_CASE("open fraction on a large patch") {
  TilingGraph g = generate_tiling({5, 5}, 9);
  REQUIRE(g.edge_count() >= 100000);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    double frac = static_cast<double>(sample(g, 0.5, seed).open.count()) / static_cast<double>(g.edge_count());
    CHECK(std::fabs(frac - 0.5) < binomial_band(0.5, static_cast<double>(g.edge_count())));
  }
}

TEST_CASE("per-edge open frequency") {
  TilingGraph g = generate_tiling({5, 5}, 3);
  const int n = 4000;
  for (double p : {0.1, 0.5, 0.9}) {
    CAPTURE(p);
    std::vector<int> hits(g.edge_count(), 0);
    for (int s = 0; s < n; ++s) {
      EdgeSet open = sample(g, p, static_cast<std::uint64_t>(s)).open;
      for (EdgeId e = 0; e < g.edge_count(); ++e) hits[e] += open.test(e);
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) CHECK(std::fabs(hits[e] / double(n) - p) < binomial_band(p, n));
  }
}

TEST_CASE("clusters of a hand-built graph") {
  // Two squares joined by a bridge, with a pendant pair.
  std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {3, 4}, {4, 5}, {5, 6}, {6, 4}, {6, 7}};
  TilingGraph g = TilingGraph::from_edges(8, edges);
  PercolationSample s;
  s.graph_fingerprint = g.fingerprint();
  s.open = EdgeSet(g.edge_count());
  // Open 0-1, 1-2, 4-5, 6-7 only.
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    Edge x = g.edge(e);
    auto key = std::pair{std::min(x.u, x.v), std::max(x.u, x.v)};
    if (key == std::pair{0u, 1u} || key == std::pair{1u, 2u} || key == std::pair{4u, 5u} || key == std::pair{6u, 7u}) {
      s.open.set(e);
    }
  }
  ClusterDecomposition d = clusters(g, s);
  std::vector<VertexId> expected{0, 0, 0, 3, 4, 4, 6, 6};
  CHECK(d.labels == expected);
  auto dfs = oracle::dfs_labels(8, open_edges(g, s.open));
  CHECK(d.labels == std::vector<VertexId>(dfs.begin(), dfs.end()));
  CHECK(d.count() == 4);
  CHECK(d.ids == std::vector<VertexId>{0, 3, 4, 6});
  CHECK(d.sizes == std::vector<std::size_t>{3, 1, 2, 2});
  auto members = d.cluster_members(2);
  CHECK(std::vector<VertexId>(members.begin(), members.end()) == std::vector<VertexId>{4, 5});
}

TEST_CASE("clusters agree with DFS on random samples") {
  std::vector<TilingGraph> graphs{generate_tiling({5, 5}, 3), generate_tiling({7, 3}, 6), generate_tiling({3, 7}, 3),
                                  generate_tiling({4, 5}, 4)};
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 1000; ++k) {
    const TilingGraph& g = graphs[k % graphs.size()];
    PercolationSample s = sample(g, u(rng), rng());
    ClusterDecomposition d = clusters(g, s);
    auto label = oracle::dfs_labels(g.vertex_count(), open_edges(g, s.open));
    std::size_t total = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      REQUIRE(d.labels[v] == label[v]);
      REQUIRE(d.ids[d.index[v]] == label[v]);
    }
    for (std::size_t c = 0; c < d.count(); ++c) {
      total += d.sizes[c];
      auto m = d.cluster_members(static_cast<std::uint32_t>(c));
      REQUIRE(m.size() == d.sizes[c]);
      REQUIRE(std::is_sorted(m.begin(), m.end()));
      REQUIRE(m.front() == d.ids[c]);
      std::size_t outer = 0;
      for (VertexId v : m) outer += g.layer(v) == g.outer_layer();
      REQUIRE(outer == d.boundary_incidence[c]);
    }
    REQUIRE(total == g.vertex_count());
  }
}

TEST_CASE("dual samples") {
  TilingGraph g = generate_tiling({5, 5}, 4);
  DualPatch dual = dual_graph(g);
  PercolationSample one = dual_sample(sample(g, 1.0, 3), dual);
  PercolationSample zero = dual_sample(sample(g, 0.0, 3), dual);
  CHECK(one.open.count() == 0);
  CHECK(zero.open.count() == dual.graph.edge_count());
  CHECK(zero.p == 1.0);
  CHECK(zero.graph_fingerprint == dual.graph.fingerprint());

  const int n = 4000;
  std::vector<int> hits(dual.graph.edge_count(), 0);
  for (int s = 0; s < n; ++s) {
    PercolationSample primal = sample(g, 0.3, static_cast<std::uint64_t>(s));
    PercolationSample d = dual_sample(primal, dual);
    CHECK(d.p == doctest::Approx(0.7));
    for (EdgeId e = 0; e < dual.graph.edge_count(); ++e) hits[e] += d.open.test(e);
    if (s < 100) {
      // The dual of the dual, on edges with both bijections defined.
      DualPatch dd = dual_graph(dual.graph);
      PercolationSample back = dual_sample(d, dd);
      for (EdgeId de = 0; de < dual.graph.edge_count(); ++de) {
        EdgeId dde = dd.primal_to_dual[de];
        if (dde == kNoIndex) continue;
        REQUIRE(back.open.test(dde) == primal.open.test(dual.dual_to_primal[de]));
      }
    }
  }
  for (int h : hits) CHECK(std::fabs(h / double(n) - 0.7) < binomial_band(0.7, n));
}

TEST_CASE("sweep rejects bad specs") {
  TilingGraph g = generate_tiling({5, 5}, 2);
  auto kind = [&](SweepSpec spec) {
    try {
      sweep(g, spec);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Io;
  };
  CHECK(kind({{}, {1}, 0, {}}) == ErrorKind::InvalidSweepSpec);
  CHECK(kind({{0.5}, {}, 0, {}}) == ErrorKind::InvalidSweepSpec);
  CHECK(kind({{0.5, 0.2}, {1}, 0, {}}) == ErrorKind::InvalidSweepSpec);
  CHECK(kind({{0.5, 0.5}, {1}, 0, {}}) == ErrorKind::InvalidSweepSpec);
  CHECK(kind({{-0.1, 0.5}, {1}, 0, {}}) == ErrorKind::InvalidSweepSpec);
  CHECK(kind({{0.5, 1.1}, {1}, 0, {}}) == ErrorKind::InvalidSweepSpec);
}

TEST_CASE("sweep on the trivial grid") {
  TilingGraph g = generate_tiling({5, 5}, 4);
  SweepResult r = sweep(g, {{0.0, 1.0}, {5}, 0, {}});
  REQUIRE(r.traces.size() == 1);
  const SweepPoint& lo = r.traces[0][0];
  const SweepPoint& hi = r.traces[0][1];
  CHECK(lo.largest == 1);
  CHECK(lo.second == 1);
  CHECK(lo.giants == 0);
  CHECK(!lo.root_to_boundary);
  CHECK(lo.pairs_connected == 0);
  CHECK(hi.largest == g.vertex_count());
  CHECK(hi.second == 0);
  CHECK(hi.giants == 1);
  CHECK(hi.unique_giant);
  CHECK(hi.root_to_boundary);
  CHECK(hi.pairs_connected == r.anchor_pairs());
  CHECK(r.anchors.size() == 16);
  CHECK(r.tau == default_tau(g));
  CHECK(default_tau(g) == 3);  // ceil(0.01 * 245)
  CHECK(default_tau(generate_tiling({5, 5}, 1)) == 2);
}

TEST_CASE("sweep statistics equal per-sample statistics") {
  TilingGraph g = generate_tiling({5, 5}, 5);
  std::vector<double> grid;
  for (int k = 0; k <= 20; ++k) grid.push_back(k / 20.0);
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7};
  SweepResult r = sweep(g, {grid, seeds, 0, {}});
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    for (std::size_t k = 0; k < grid.size(); ++k) {
      PercolationSample smp = sample(g, grid[k], seeds[s]);
      check_same(r.traces[s][k], oracle_point(g, smp.open, r.tau, r.anchors));
      if (k > 0) {
        const SweepPoint &a = r.traces[s][k - 1], &b = r.traces[s][k];
        CHECK(a.largest <= b.largest);
        CHECK(a.pairs_connected <= b.pairs_connected);
        CHECK(a.root_outer <= b.root_outer);
        CHECK(int(a.root_to_boundary) <= int(b.root_to_boundary));
      }
    }
  }
}

TEST_CASE("sweep expectations equal exhaustive enumeration over 12 edges") {
  // Edges 0..11 (around the root) are free; the rest are fixed, every third
  // one open, so the free edges interact with larger clusters.
  TilingGraph g = generate_tiling({5, 5}, 2);
  REQUIRE(g.edge_count() > 12);
  const int free_edges = 12;
  auto fixed_open = [](EdgeId e) { return e % 3 == 0; };

  for (double p : {0.5, 0.3}) {
    CAPTURE(p);
    // Seed = subset bitmask; a free edge in the subset gets mark p/2 (open
    // at p), otherwise (1+p)/2 (closed at p).
    MarkSource marks = [p, &fixed_open](std::uint64_t subset, EdgeId e) {
      if (e < free_edges) return (subset >> e) & 1 ? p / 2 : (1 + p) / 2;
      return fixed_open(e) ? 0.0 : 1.0;
    };
    std::vector<std::uint64_t> seeds(1u << free_edges);
    std::iota(seeds.begin(), seeds.end(), 0);
    SweepResult r = sweep(g, {{p}, seeds, 2, marks});

    // Enumeration with binomial weights.
    double e_largest = 0, e_second = 0, e_giants = 0, e_reach = 0, e_pairs = 0, e_unique = 0;
    double s_largest = 0, s_second = 0, s_giants = 0, s_reach = 0, s_pairs = 0, s_unique = 0;
    for (std::uint64_t subset = 0; subset < seeds.size(); ++subset) {
      EdgeSet open(g.edge_count());
      int k = 0;
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        bool o = e < free_edges ? ((subset >> e) & 1) != 0 : fixed_open(e);
        open.set(e, o);
        k += e < free_edges && o;
      }
      double w = std::pow(p, k) * std::pow(1 - p, free_edges - k);
      SweepPoint pt = oracle_point(g, open, 2, r.anchors);
      e_largest += w * pt.largest;
      e_second += w * pt.second;
      e_giants += w * pt.giants;
      e_reach += w * pt.root_to_boundary;
      e_pairs += w * pt.pairs_connected;
      e_unique += w * pt.unique_giant;
      const SweepPoint& sp = r.traces[subset][0];
      s_largest += w * sp.largest;
      s_second += w * sp.second;
      s_giants += w * sp.giants;
      s_reach += w * sp.root_to_boundary;
      s_pairs += w * sp.pairs_connected;
      s_unique += w * sp.unique_giant;
    }
    CHECK(std::fabs(s_largest - e_largest) < 1e-12);
    CHECK(std::fabs(s_second - e_second) < 1e-12);
    CHECK(std::fabs(s_giants - e_giants) < 1e-12);
    CHECK(std::fabs(s_reach - e_reach) < 1e-12);
    CHECK(std::fabs(s_pairs - e_pairs) < 1e-12);
    CHECK(std::fabs(s_unique - e_unique) < 1e-12);
    if (p == 0.5) {
      // At p = 1/2 every subset weighs the same, so the plain seed mean is
      // already the expectation.
      auto mean = r.mean([](const SweepPoint& pt) { return double(pt.largest); });
      CHECK(std::fabs(mean[0] - e_largest) < 1e-12);
    }
  }
}

TEST_CASE("crossing helpers") {
  std::vector<double> grid{0, 0.25, 0.5, 0.75, 1};
  std::vector<double> up{0, 0.2, 0.4, 0.8, 1};
  CHECK(upward_crossing(grid, up, 0.5) == doctest::Approx(0.5 + 0.25 * 0.25));
  CHECK(downward_crossing(grid, up, 0.5) == doctest::Approx(0.5 + 0.25 * 0.25));
  std::vector<double> flat{0, 0.5, 0.5, 0.5, 1};
  CHECK(upward_crossing(grid, flat, 0.5) == 0.5);
  CHECK(downward_crossing(grid, flat, 0.5) == 0.5);
  std::vector<double> high{0.6, 0.7, 0.8, 0.9, 1};
  CHECK_THROWS_AS(upward_crossing(grid, high, 0.5), Error);
  std::vector<double> low{0, 0.1, 0.2, 0.3, 0.4};
  CHECK_THROWS_AS(upward_crossing(grid, low, 0.5), Error);
  CHECK_THROWS_AS(downward_crossing(grid, low, 0.5), Error);
}

TEST_CASE("single edge crosses one half at p = 1/2") {
  std::vector<Edge> edges{{0, 1}};
  TilingGraph k2 = TilingGraph::from_edges(2, edges);
  std::vector<double> grid;
  for (int k = 0; k <= 100; ++k) grid.push_back(k / 100.0);
  const std::size_t n = 1000;
  std::vector<std::uint64_t> seeds(n);
  std::iota(seeds.begin(), seeds.end(), 0);
  SweepResult r = sweep(k2, {grid, seeds, 1, stratified(n)});
  auto reach = r.mean([](const SweepPoint& pt) { return pt.root_to_boundary ? 1.0 : 0.0; });
  CHECK(reach[50] == 0.5);
  CHECK(upward_crossing(grid, reach, 0.5) == 0.5);

  // estimate_pc also reports this crossing for every radius it is given.
  std::vector<SweepResult> rs{r, r, r};
  rs[0].radius = 1;
  rs[1].radius = 2;
  rs[2].radius = 3;
  ThresholdEstimate est = estimate_pc(rs);
  REQUIRE(est.half_crossings.size() == 3);
  for (const auto& h : est.half_crossings) CHECK(h == 0.5);
}

TEST_CASE("estimators need three increasing radii") {
  TilingGraph g = generate_tiling({5, 5}, 3);
  SweepResult r = sweep(g, {{0.0, 0.5, 1.0}, {1, 2}, 0, {}});
  std::vector<SweepResult> two{r, r};
  CHECK_THROWS_AS(estimate_pc(two), Error);
  std::vector<SweepResult> same{r, r, r};
  try {
    estimate_pu(same);
    FAIL("expected EstimatorDegenerate");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EstimatorDegenerate);
  }
}

TEST_CASE("uniqueness at the ends of the grid") {
  std::vector<double> grid;
  for (int k = 0; k <= 20; ++k) grid.push_back(k / 20.0);
  std::vector<std::uint64_t> seeds(20);
  std::iota(seeds.begin(), seeds.end(), 0);
  std::vector<SweepResult> rs;
  for (int radius : {3, 4, 5}) rs.push_back(sweep(generate_tiling({5, 5}, radius), {grid, seeds, 0, {}}));
  for (const SweepResult& r : rs) {
    for (const auto& trace : r.traces) {
      CHECK(trace.front().giants == 0);
      CHECK(trace.back().giants == 1);
      CHECK(trace.back().unique_giant);
    }
  }
  ThresholdEstimate pu = estimate_pu(rs);
  REQUIRE(pu.mean_giants.size() == 3);
  for (const auto& mg : pu.mean_giants) {
    CHECK(mg.front() == 0.0);
    CHECK(mg.back() == 1.0);
  }
  CHECK(pu.value > 0.0);
  CHECK(pu.value < 1.0);
  CHECK(pu.crossings.size() == 3);
  CHECK((pu.method == "richardson" || pu.method == "weighted-mean"));

  ThresholdEstimate pc = estimate_pc(rs);
  CHECK(pc.value > 0.0);
  CHECK(pc.value < 1.0);
  CHECK(pc.uncertainty >= 0.0);
}

TEST_CASE("extrapolation follows a one-way drift and averages a zigzag") {
  // Identical seeds (zero jackknife error); the growth ratio p / x crosses
  // 1 exactly at x on a grid containing x.
  std::vector<double> grid;
  for (int k = 0; k <= 100; ++k) grid.push_back(k / 100.0);
  auto synthetic = [&](int radius, double x) {
    SweepResult r;
    r.radius = radius;
    r.p_grid = grid;
    std::vector<SweepPoint> trace(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
      trace[k].root_penultimate = 100000;
      trace[k].root_outer = static_cast<std::size_t>(std::llround(100000 * grid[k] / x));
    }
    r.traces.assign(5, trace);
    r.seeds = {0, 1, 2, 3, 4};
    return r;
  };
  std::vector<SweepResult> drift{synthetic(6, 0.30), synthetic(8, 0.28), synthetic(10, 0.27)};
  ThresholdEstimate a = estimate_pc(drift);
  CHECK(a.method == "richardson");
  CHECK(a.value == doctest::Approx((10 * 0.27 - 8 * 0.28) / 2).epsilon(1e-9));

  std::vector<SweepResult> zigzag{synthetic(6, 0.30), synthetic(8, 0.26), synthetic(10, 0.28)};
  ThresholdEstimate b = estimate_pc(zigzag);
  CHECK(b.method == "weighted-mean");
  CHECK(b.value == doctest::Approx(0.28).epsilon(1e-9));
  CHECK(b.uncertainty == doctest::Approx(0.02).epsilon(1e-9));
}

TEST_CASE("growth ratio on a binary tree is 2p") {
  TilingGraph tree = complete_binary_tree(8);
  std::vector<double> grid{0.4, 0.5, 0.7};
  std::vector<std::uint64_t> seeds(4000);
  std::iota(seeds.begin(), seeds.end(), 0);
  SweepResult r = sweep(tree, {grid, seeds, 0, {}});
  auto outer = r.mean([](const SweepPoint& pt) { return double(pt.root_outer); });
  auto pen = r.mean([](const SweepPoint& pt) { return double(pt.root_penultimate); });
  // Exact in expectation: E[outer] = 2p E[pen]. Loose band for 4000 seeds.
  for (std::size_t k = 0; k < grid.size(); ++k) CHECK(outer[k] / pen[k] == doctest::Approx(2 * grid[k]).epsilon(0.1));
}

TEST_CASE("survival proxy") {
  TilingGraph tree = complete_binary_tree(10);
  std::vector<std::uint64_t> seeds(200);
  std::iota(seeds.begin(), seeds.end(), 0);
  CHECK(survival_proxy(tree, 0.0, seeds).hits == 0);
  CHECK(survival_proxy(tree, 1.0, seeds).hits == 200);

  TilingGraph g = generate_tiling({5, 5}, 4);
  for (double p : {0.2, 0.4, 0.6}) {
    SurvivalEstimate est = survival_proxy(g, p, seeds);
    std::size_t expected = 0;
    for (auto s : seeds) {
      ClusterDecomposition d = clusters(g, sample(g, p, s));
      expected += d.boundary_incidence[d.index[0]] > 0;
    }
    CHECK(est.trials == 200);
    CHECK(est.hits == expected);
    CHECK(est.value == doctest::Approx(expected / 200.0));
  }
}

TEST_CASE("boundary anchors") {
  TilingGraph g = generate_tiling({5, 5}, 5);
  auto anchors = boundary_anchors(g);
  REQUIRE(anchors.size() == 16);
  std::set<VertexId> distinct(anchors.begin(), anchors.end());
  CHECK(distinct.size() == 16);
  for (std::size_t k = 0; k < anchors.size(); ++k) {
    CHECK(g.layer(anchors[k]) == g.outer_layer());
    CHECK(angular_distance(g.angle(anchors[k]), kTwoPi * k / 16) < 0.05);
  }
}

TEST_CASE("union-find") {
  UnionFind uf(6);
  std::uint32_t gone;
  std::uint32_t r = uf.unite(0, 1, &gone);
  CHECK(uf.size_of_root(r) == 2);
  CHECK(gone != r);
  uf.unite(2, 3);
  uf.unite(1, 3);
  CHECK(uf.find(0) == uf.find(2));
  CHECK(uf.size_of_root(uf.find(0)) == 4);
  CHECK(uf.unite(0, 3, &gone) == gone);
  CHECK(uf.find(4) != uf.find(5));
}
