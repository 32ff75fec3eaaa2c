#include <doctest.h>

#include <cmath>
#include <numeric>

#include "blockgraph/algorithms.hpp"
#include "blockgraph/errors.hpp"
#include "blockgraph/io.hpp"
#include "blockgraph/oracle.hpp"
#include "support.hpp"

using namespace blockgraph;
using namespace blockgraph::algorithms;

namespace {

std::vector<std::int64_t> oracle_depths(const Graph& g, VertexId s) {
  auto d = oracle::bfs(g, s);
  for (auto& x : d) {
    if (x == oracle::kUnreachable) x = -1;
  }
  return d;
}

double l1(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

}  // namespace

TEST_CASE("registry") {
  for (auto name : {"pagerank", "sv", "cc", "bfs", "tc"}) CHECK(is_registered(name));
  CHECK_FALSE(is_registered("sssp"));
  CHECK(registered_names().size() == 5);
}

TEST_CASE("pagerank examples") {
  for (Mode mode : test::kModes) {
    const auto k3 = pagerank(test::k3(), test::grid_of(test::k3(), 2), test::config(mode));
    for (double r : k3.rank) CHECK(r == doctest::Approx(1.0 / 3));
    CHECK(k3.iterations <= 2);

    const Graph two = test::two_k2();
    for (double r : pagerank(two, test::grid_of(two, 2), test::config(mode)).rank) CHECK(r == doctest::Approx(0.25));
  }

  const Graph skew = Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {3, 4}});
  const auto ours = pagerank(skew, test::grid_of(skew, 2), test::config(Mode::collaborative));
  CHECK(l1(ours.rank, oracle::pagerank(skew, 0.85, ours.iterations)) <= 1e-6);
}

TEST_CASE("pagerank follows the oracle at every iteration and conserves mass") {
  const Graph g = Graph::from_edges(60, [] {
    auto edges = generate::erdos_renyi(50, 0.08, 3).edges();
    edges.push_back({50, 51});
    return edges;
  }());
  const auto history = oracle::pagerank_history(g, 0.85, 20);
  PageRankOptions options;
  options.tolerance = 0;
  std::size_t observed = 0;
  options.observer = [&](std::size_t iteration, std::span<const double> rank) {
    const std::vector<double> r(rank.begin(), rank.end());
    CHECK(l1(r, history[iteration - 1]) <= 1e-6);
    CHECK(std::accumulate(r.begin(), r.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
    ++observed;
  };
  const auto result = pagerank(g, test::grid_of(g, 3), test::config(Mode::collaborative), options);
  CHECK(result.iterations == 20);
  CHECK(observed == 20);
}

TEST_CASE("sv examples") {
  for (Mode mode : test::kModes) {
    CHECK(sv_components(test::k3(), test::grid_of(test::k3(), 2), test::config(mode)).labels ==
          std::vector<VertexId>{0, 0, 0});
    const auto two = sv_components(test::two_k2(), test::grid_of(test::two_k2(), 2), test::config(mode));
    CHECK(two.labels == std::vector<VertexId>{0, 0, 2, 2});
    CHECK(two.components == 2);
  }
}

TEST_CASE("sv and afforest match union-find on random graphs") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const VertexId n = 20 + static_cast<VertexId>(seed * 7 % 180);
    const Graph g = generate::erdos_renyi(n, 1.5 / static_cast<double>(n), seed);
    const auto expect = oracle::components(g);
    const BlockGrid grid = test::grid_of(g, 1 + static_cast<PartId>(seed % 5));
    const Mode mode = test::kModes[seed % 3];
    CAPTURE(seed);
    const auto sv = sv_components(g, grid, test::config(mode));
    CHECK(sv.labels == expect);
    CHECK(sv.hook_rounds <= static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n)))) + 1);
    CHECK(afforest_components(g, grid, test::config(mode)).labels == expect);
  }
}

TEST_CASE("afforest examples") {
  const Graph p5 = generate::path(5);
  for (Mode mode : test::kModes) {
    CHECK(afforest_components(p5, test::grid_of(p5, 2), test::config(mode)).components == 1);
  }

  std::vector<Edge> edges;
  for (VertexId a = 0; a < 20; ++a) {
    for (VertexId b = a + 1; b < 20; ++b) edges.push_back({a, b});
  }
  const Graph clique = Graph::from_edges(25, edges);
  const auto r = afforest_components(clique, test::grid_of(clique, 3), test::config(Mode::collaborative));
  CHECK(r.components == 6);
  CHECK(r.skipped_component == 0);
  CHECK(r.finish_vertices == 5);
  CHECK(r.labels == oracle::components(clique));
}

TEST_CASE("afforest switches executors between phases") {
  const Graph g = generate::rmat(8, 8, 4);
  const auto r = afforest_components(g, test::grid_of(g, 3), test::config(Mode::collaborative));
  const auto& modes = r.stats.mode_per_iteration;
  REQUIRE(modes.size() >= 2);
  CHECK(modes.front() == Mode::device_only);
  CHECK(modes.back() == Mode::host_only);
  CHECK(r.labels == oracle::components(g));
}

TEST_CASE("bfs examples") {
  for (Mode mode : test::kModes) {
    const auto path = bfs(test::p4(), test::grid_of(test::p4(), 2), test::config(mode), 0);
    CHECK(path.parent == std::vector<VertexId>{0, 0, 1, 2});
    CHECK(path.depth == std::vector<std::int64_t>{0, 1, 2, 3});
    CHECK(path.levels == 4);

    const Graph star = generate::star(6);
    const auto s = bfs(star, test::grid_of(star, 2), test::config(mode), 6);
    for (VertexId leaf = 0; leaf < 6; ++leaf) {
      CHECK(s.parent[static_cast<std::size_t>(leaf)] == 6);
      CHECK(s.depth[static_cast<std::size_t>(leaf)] == 1);
    }
  }
  CHECK_THROWS_AS(bfs(test::p4(), test::grid_of(test::p4(), 1), test::config(Mode::host_only), 4), RangeError);
}

TEST_CASE("bfs matches serial distances on random connected graphs") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const VertexId n = 10 + static_cast<VertexId>(seed * 13 % 190);
    auto edges = generate::erdos_renyi(n, 3.0 / static_cast<double>(n), seed).edges();
    for (VertexId v = 1; v < n; ++v) edges.push_back({v - 1, v});
    const Graph g = Graph::from_edges(n, edges);
    const VertexId s = static_cast<VertexId>(seed % static_cast<std::uint64_t>(n));
    const Mode mode = test::kModes[seed % 3];
    const auto r = bfs(g, test::grid_of(g, 1 + static_cast<PartId>(seed % 5)), test::config(mode), s);
    CAPTURE(seed);
    CHECK(r.depth == oracle_depths(g, s));
    CHECK(test::valid_bfs_tree(g, s, r.parent, r.depth));
  }
}

TEST_CASE("bfs direction switching keeps the tree valid") {
  const Graph g = generate::rmat(10, 16, 6);
  const auto expect = oracle_depths(g, 0);
  BfsOptions eager{.alpha = 1e9, .beta = 1e-9};
  BfsOptions never{.alpha = 1e-9, .beta = 1e9};
  for (const BfsOptions& options : {BfsOptions{}, eager, never}) {
    const auto r = bfs(g, test::grid_of(g, 3), test::config(Mode::collaborative), 0, options);
    CHECK(r.depth == expect);
    CHECK(test::valid_bfs_tree(g, 0, r.parent, r.depth));
  }
  const auto r = bfs(g, test::grid_of(g, 3), test::config(Mode::collaborative), 0, eager);
  CHECK(std::find(r.directions.begin(), r.directions.end(), Direction::bottom_up) != r.directions.end());
}

TEST_CASE("triangle count examples") {
  for (Mode mode : test::kModes) {
    CHECK(count_triangles(test::k3(), 2, test::config(mode)).triangles == 1);
    CHECK(count_triangles(test::k4(), 2, test::config(mode)).triangles == 4);
    CHECK(count_triangles(test::p4(), 2, test::config(mode)).triangles == 0);
  }
  CHECK_THROWS_AS(triangle_count(test::grid_of(test::k3(), 1), test::config(Mode::host_only)), ContractError);
}

TEST_CASE("triangle count matches brute force for every p") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const VertexId n = 10 + static_cast<VertexId>(seed * 11 % 190);
    const Graph g = generate::erdos_renyi(n, 8.0 / static_cast<double>(n), seed);
    const auto expect = oracle::triangles(g);
    for (PartId p : {1, 2, 3, 5}) {
      CAPTURE(seed);
      CAPTURE(p);
      CHECK(count_triangles(g, p, test::config(test::kModes[seed % 3])).triangles == expect);
    }
  }
}

TEST_CASE("triangle block lists have the (i,j),(i,x),(j,x) shape") {
  const Graph g = io::degree_relabel(generate::rmat(8, 8, 3)).graph;
  const BlockGrid grid = upper_triangular_view(test::grid_of(g, 4));
  for (const BlockList& list : triangle_block_lists(grid)) {
    REQUIRE(list.size() == 3);
    const Block& k = list[0];
    const Block& l = list[1];
    const Block& m = list[2];
    CHECK_FALSE(k.empty());
    CHECK(k.row() <= k.col());
    CHECK(l.row() == k.row());
    CHECK(m.row() == k.col());
    CHECK(l.col() == m.col());
    CHECK(l.col() >= k.col());
    CHECK_FALSE((l.empty() && m.empty()));
  }
}

TEST_CASE("results do not depend on worker counts") {
  const Graph g = generate::rmat(9, 8, 12);
  const BlockGrid grid = test::grid_of(g, 4);
  const auto base = test::config(Mode::collaborative, 1, 2);
  const auto tc = count_triangles(g, 4, base).triangles;
  const auto cc = afforest_components(g, grid, base).labels;
  const auto depth = bfs(g, grid, base, 0).depth;
  const auto rank = pagerank(g, grid, base).rank;
  for (unsigned workers : {2U, 8U}) {
    const auto c = test::config(Mode::collaborative, workers, 2);
    CHECK(count_triangles(g, 4, c).triangles == tc);
    CHECK(afforest_components(g, grid, c).labels == cc);
    CHECK(bfs(g, grid, c, 0).depth == depth);
    const auto other = pagerank(g, grid, c).rank;
    double worst = 0;
    for (std::size_t i = 0; i < rank.size(); ++i) worst = std::max(worst, std::abs(rank[i] - other[i]));
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("count_components") {
  const std::vector<VertexId> labels{0, 0, 2, 2, 4};
  CHECK(count_components(labels) == 3);
}
