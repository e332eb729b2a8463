#include <doctest.h>

#include <algorithm>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "hyperperc/binary_tree.hpp"
#include "hyperperc/boundary.hpp"
#include "hyperperc/dual.hpp"
#include "hyperperc/tiling_ops.hpp"
#include "oracles.hpp"

using namespace hyperperc;

namespace {

PercolationSample with_open(const TilingGraph& g, const std::vector<std::pair<VertexId, VertexId>>& pairs) {
  PercolationSample s;
  s.graph_fingerprint = g.fingerprint();
  s.open = EdgeSet(g.edge_count());
  for (auto [u, v] : pairs) {
    EdgeId e = g.find_edge(u, v);
    REQUIRE(e != kNoIndex);
    s.open.set(e);
  }
  return s;
}

// Greedy outward path from v to the outermost layer along first forward
// neighbours.
std::vector<VertexId> outward_path(const TilingGraph& g, VertexId v) {
  std::vector<VertexId> path{v};
  while (g.layer(path.back()) < g.outer_layer()) {
    for (VertexId w : g.neighbours(path.back())) {
      if (g.layer(w) == g.layer(path.back()) + 1) {
        path.push_back(w);
        break;
      }
    }
  }
  return path;
}

void check_forest(const NestingForest& f) {
  for (std::size_t k = 1; k < f.radii.size(); ++k) {
    for (std::size_t i = 0; i < f.ends[k].size(); ++i) {
      std::uint32_t p = f.parent[k][i];
      REQUIRE(p != kNoIndex);
      const auto& up = f.ends[k - 1][p].vertices;
      for (VertexId v : f.ends[k][i].vertices) REQUIRE(std::binary_search(up.begin(), up.end(), v));
    }
  }
}

void check_chain(const BoundaryArcEstimate& c) {
  REQUIRE(!c.arcs.empty());
  for (std::size_t k = 1; k < c.arcs.size(); ++k) REQUIRE(c.arcs[k].angular_diameter <= c.arcs[k - 1].angular_diameter);
  if (c.live) {
    for (const ArcCover& a : c.arcs) REQUIRE(a.arc_count >= 1);
  }
  for (const ArcCover& a : c.arcs) {
    REQUIRE(a.arc_count <= 2);
    REQUIRE(a.arcs.size() == static_cast<std::size_t>(a.arc_count));
    REQUIRE(a.angular_diameter >= 0);
    REQUIRE(a.angular_diameter <= kTwoPi);
  }
}

}  // namespace

TEST_CASE("p = 1 has a single end below the outermost shell") {
  TilingGraph g = generate_tiling({5, 5}, 6);
  ClusterDecomposition d = clusters(g, sample(g, 1.0, 0));
  // At r = R-1 only the outermost layer is left and it falls apart into
  // fragments; every smaller r leaves one connected shell.
  for (int r = 0; r + 2 <= g.radius(); ++r) {
    auto ends = ends_at_radius(d, g, 0, r);
    REQUIRE(ends.size() == 1);
    CHECK(ends[0].radius == r);
    CHECK(ends[0].anchor == ends[0].vertices.front());
    CHECK(g.layer(ends[0].anchor) == r + 1);
  }
  CHECK_THROWS_AS(ends_at_radius(d, g, 0, g.radius()), Error);
  CHECK_THROWS_AS(ends_at_radius(d, g, 0, -1), Error);

  std::vector<int> radii{0, 1, 2, 3, 4};
  auto chains = end_chains(d, g, 0, radii);
  REQUIRE(chains.size() == 1);
  CHECK(chains[0].live);
  for (const ArcCover& a : chains[0].arcs) {
    CHECK(a.arc_count == 1);
    CHECK(a.angular_diameter == kTwoPi);
  }
}

TEST_CASE("cluster inside the ball has no ends") {
  TilingGraph g = generate_tiling({5, 5}, 4);
  ClusterDecomposition d = clusters(g, with_open(g, {{0, g.neighbours(0)[0]}}));
  CHECK(ends_at_radius(d, g, 0, 1).empty());
  CHECK(ends_at_radius(d, g, 0, 0).size() == 1);
}

TEST_CASE("a single ray") {
  TilingGraph g = generate_tiling({5, 5}, 6);
  auto path = outward_path(g, 0);
  REQUIRE(path.size() == 7);
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) pairs.push_back({path[i], path[i + 1]});
  ClusterDecomposition d = clusters(g, with_open(g, pairs));
  for (int r = 0; r < g.radius(); ++r) {
    auto ends = ends_at_radius(d, g, 0, r);
    REQUIRE(ends.size() == 1);
    CHECK(ends[0].vertices.size() == static_cast<std::size_t>(g.radius() - r));
  }
  std::vector<int> radii{0, 1, 2, 3, 4, 5};
  auto chains = end_chains(d, g, 0, radii);
  REQUIRE(chains.size() == 1);
  CHECK(chains[0].live);
  CHECK(chains[0].radii == radii);
  for (const ArcCover& a : chains[0].arcs) {
    CHECK(a.arc_count == 1);
    CHECK(a.runs == 1);
    CHECK(a.angular_diameter == 0.0);
    CHECK(angular_distance(a.arcs[0].first, g.angle(path.back())) < 1e-12);
  }
}

TEST_CASE("two branches split past the fork") {
  // Root -> a -> b on layers 1 and 2, then two disjoint rays from b taken
  // from an embedded binary tree so they never meet.
  TilingGraph g = generate_tiling({5, 5}, 6);
  EmbeddedTree t = embed_binary_tree(g, 6);
  auto ray = [&](std::size_t node) {
    std::vector<VertexId> out{t.branch[node]};
    while (2 * node + 1 < t.branch.size()) {
      node = 2 * node + 1;
      out.push_back(t.branch[node]);
    }
    return out;
  };
  VertexId a = t.branch[1], b = t.branch[3];
  auto left = ray(7), right = ray(8);
  std::vector<std::pair<VertexId, VertexId>> pairs{{0, a}, {a, b}, {b, left[0]}, {b, right[0]}};
  for (const auto* r : {&left, &right}) {
    for (std::size_t i = 0; i + 1 < r->size(); ++i) pairs.push_back({(*r)[i], (*r)[i + 1]});
  }
  ClusterDecomposition d = clusters(g, with_open(g, pairs));
  std::vector<int> radii{0, 1, 2, 3, 4};
  NestingForest f = nesting_forest(d, g, 0, radii);
  check_forest(f);

  // Hand enumeration: one end while b survives, then the two rays.
  std::vector<std::size_t> counts;
  for (const auto& level : f.ends) counts.push_back(level.size());
  CHECK(counts == std::vector<std::size_t>{1, 1, 2, 2, 2});
  std::set<VertexId> whole{a, b};
  whole.insert(left.begin(), left.end());
  whole.insert(right.begin(), right.end());
  whole.erase(a);
  CHECK(std::set<VertexId>(f.ends[1][0].vertices.begin(), f.ends[1][0].vertices.end()) == whole);
  std::set<std::set<VertexId>> branches;
  for (const auto& e : f.ends[2]) branches.insert(std::set<VertexId>(e.vertices.begin(), e.vertices.end()));
  CHECK(branches == std::set<std::set<VertexId>>{std::set<VertexId>(left.begin(), left.end()),
                                                 std::set<VertexId>(right.begin(), right.end())});
  CHECK(f.parent[2] == std::vector<std::uint32_t>{0, 0});

  auto chains = end_chains(d, g, 0, radii);
  REQUIRE(chains.size() == 2);
  for (const auto& c : chains) {
    CHECK(c.live);
    check_chain(c);
    // Both leaves before the fork, one after.
    CHECK(c.arcs[0].arc_count == 2);
    CHECK(c.arcs[1].arc_count == 2);
    CHECK(c.arcs[2].arc_count == 1);
    CHECK(c.terminal_diameter() == 0.0);
  }
}

TEST_CASE("ends agree with DFS on the restricted subgraph") {
  TilingGraph g = generate_tiling({5, 5}, 6);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    double p = 0.35 + 0.02 * static_cast<double>(seed % 10);
    ClusterDecomposition d = clusters(g, sample(g, p, seed));
    for (int r : {0, 2, 4}) {
      // Open edges with both ends beyond r.
      std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& x = g.edge(e);
        if (d.open.test(e) && g.layer(x.u) > r && g.layer(x.v) > r) edges.push_back({x.u, x.v});
      }
      auto label = oracle::dfs_labels(g.vertex_count(), edges);
      for (std::uint32_t c = 0; c < d.count(); ++c) {
        std::map<std::uint32_t, std::vector<VertexId>> groups;
        for (VertexId v : d.cluster_members(c)) {
          if (g.layer(v) > r) groups[label[v]].push_back(v);
        }
        auto ends = ends_at_radius(d, g, c, r);
        REQUIRE(ends.size() == groups.size());
        std::size_t i = 0;
        for (const auto& [root, vs] : groups) {
          REQUIRE(ends[i].anchor == root);
          REQUIRE(ends[i].vertices == vs);
          REQUIRE(ends[i].cluster == c);
          ++i;
        }
      }
    }
  }
}

TEST_CASE("chains are nested and their arcs shrink") {
  TilingGraph g = generate_tiling({5, 5}, 8);
  OuterCircle circle(g);
  std::vector<int> radii{2, 3, 4, 5, 6};
  std::size_t live = 0, dead = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (double p : {0.35, 0.45, 0.6, 0.8}) {
      ClusterDecomposition d = clusters(g, sample(g, p, seed));
      for (std::uint32_t c = 0; c < d.count(); ++c) {
        if (d.boundary_incidence[c] < 2) continue;
        check_forest(nesting_forest(d, g, c, radii));
        auto chains = end_chains(d, g, c, radii, circle);
        bool seen_dead = false;
        for (const auto& chain : chains) {
          check_chain(chain);
          // Live chains first.
          if (!chain.live) seen_dead = true;
          REQUIRE(!(seen_dead && chain.live));
          (chain.live ? live : dead) += 1;
          if (chain.live) REQUIRE(chain.radii == radii);
        }
      }
    }
  }
  CHECK(live > 0);
  CHECK(dead > 0);
}

TEST_CASE("arc covers") {
  TilingGraph g = generate_tiling({5, 5}, 5);
  OuterCircle circle(g);
  auto outer = g.outer_vertices();
  CHECK(circle.size() == outer.size());
  CHECK(circle.cover({}).arc_count == 0);
  CHECK(circle.cover({}).angular_diameter == 0.0);
  std::vector<VertexId> inner{0, 1, 2};
  CHECK(circle.cover(inner).arc_count == 0);
  ArcCover all = circle.cover(std::vector<VertexId>(outer.begin(), outer.end()));
  CHECK(all.arc_count == 1);
  CHECK(all.angular_diameter == kTwoPi);
  std::vector<VertexId> one{outer[7]};
  CHECK(circle.cover(one).angular_diameter == 0.0);

  // Subsets never have a larger diameter.
  std::mt19937_64 rng(5);
  std::bernoulli_distribution coin(0.5);
  for (int k = 0; k < 500; ++k) {
    std::vector<VertexId> big, small;
    std::bernoulli_distribution take(0.02 + 0.3 * (k % 10) / 10.0);
    for (VertexId v : outer) {
      if (!take(rng)) continue;
      big.push_back(v);
      if (coin(rng)) small.push_back(v);
    }
    ArcCover cb = circle.cover(big), cs = circle.cover(small);
    REQUIRE(cs.angular_diameter <= cb.angular_diameter);
    REQUIRE(cb.arc_count == (big.empty() ? 0 : cb.runs == 1 ? 1 : 2));
  }

  CHECK(angle_ticks(0.0) == 0);
  CHECK(angle_ticks(kTwoPi) == 0);
  CHECK(angle_ticks(std::numbers::pi) == kTicksPerTurn / 2);
  CHECK(ticks_to_radians(kTicksPerTurn / 4) == doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("quantiles") {
  Quantiles q = quantiles({4, 1, 3, 2});
  CHECK(q.count == 4);
  CHECK(q.median == 2.5);
  CHECK(q.p90 == doctest::Approx(3.7));
  CHECK(quantiles({}).count == 0);
  CHECK(quantiles({7}).median == 7);
}

TEST_CASE("one-point statistic at the ends of the range") {
  TilingGraph g = generate_tiling({5, 5}, 7);
  std::vector<int> radii{2, 3, 4, 5};
  std::vector<ClusterDecomposition> full{clusters(g, sample(g, 1.0, 0))};
  OnePointStatistic s1 = one_point_end_statistic(g, full, 1.0, radii, default_tau(g));
  CHECK(s1.giant_candidates == 1);
  CHECK(s1.live_chains == 1);
  CHECK(s1.dead_chains == 0);
  CHECK(s1.terminal.count == 1);
  CHECK(s1.terminal.median == kTwoPi);
  CHECK(s1.monotonicity_violations == 0);

  std::vector<ClusterDecomposition> empty{clusters(g, sample(g, 0.0, 0))};
  OnePointStatistic s0 = one_point_end_statistic(g, empty, 0.0, radii, default_tau(g));
  CHECK(s0.giant_candidates == 0);
  CHECK(s0.live_chains == 0);
  CHECK(s0.terminal.count == 0);
}

TEST_CASE("limit directions") {
  TilingGraph g = generate_tiling({5, 5}, 5);
  LimitDirectionSet full = limit_direction_density(clusters(g, sample(g, 1.0, 0)), g, 50);
  std::vector<double> angles;
  for (VertexId v : g.outer_vertices()) angles.push_back(g.angle(v));
  std::sort(angles.begin(), angles.end());
  double gap = angles.front() + kTwoPi - angles.back();
  for (std::size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
  CHECK(full.angles == angles);
  CHECK(full.largest_gap == gap);

  LimitDirectionSet none = limit_direction_density(clusters(g, sample(g, 0.0, 0)), g, 2);
  CHECK(none.angles.empty());
  CHECK(none.largest_gap == kTwoPi);
  CHECK_THROWS_AS(limit_direction_density(clusters(g, sample(g, 0.0, 0)), g, 0), Error);
}

TEST_CASE("halfplane cluster counts") {
  TilingGraph g = generate_tiling({5, 5}, 5);
  for (Halfplane h : {Halfplane(0, std::numbers::pi), Halfplane(1.0, 1.6), Halfplane(4.0, 2.0)}) {
    CHECK(halfplane_cluster_count(clusters(g, sample(g, 1.0, 0)), g, h, 50) == 1);
    CHECK(halfplane_cluster_count(clusters(g, sample(g, 0.0, 0)), g, h, 1) == halfplane_vertices(g, h).size());
    CHECK(halfplane_cluster_count(clusters(g, sample(g, 0.0, 0)), g, h, 2) == 0);
  }
}

TEST_CASE("dual samples give well-formed boundary output") {
  TilingGraph g = generate_tiling({5, 5}, 7);
  DualPatch dual = dual_graph(g);
  const TilingGraph& dg = dual.graph;
  REQUIRE(dg.radius() >= 5);
  OuterCircle circle(dg);
  std::vector<int> radii{1, 2, 3};
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    PercolationSample ds = dual_sample(sample(g, 0.5, seed), dual);
    ClusterDecomposition d = clusters(dg, ds);
    std::size_t total = 0;
    for (std::size_t s : d.sizes) total += s;
    CHECK(total == dg.vertex_count());
    for (const auto& chain : giant_chains(d, dg, radii, default_tau(dg), circle)) check_chain(chain);
    LimitDirectionSet lim = limit_direction_density(d, dg, 10);
    for (double a : lim.angles) CHECK((a >= 0 && a < kTwoPi));
  }
}

TEST_CASE("boundary analyses are deterministic") {
  TilingGraph g = generate_tiling({5, 5}, 7);
  std::vector<int> radii{2, 3, 4, 5};
  auto run = [&] {
    std::vector<ClusterDecomposition> ds;
    for (std::uint64_t s = 0; s < 4; ++s) ds.push_back(clusters(g, sample(g, 0.5, s)));
    return one_point_end_statistic(g, ds, 0.5, radii, 3);
  };
  OnePointStatistic a = run(), b = run();
  CHECK(a.per_radius == b.per_radius);
  CHECK(a.live_chains == b.live_chains);
  CHECK(a.dead_chains == b.dead_chains);
  CHECK(a.giant_candidates == b.giant_candidates);
}
