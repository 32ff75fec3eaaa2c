#include <doctest.h>

#include <numeric>
#include <thread>

#include "blockgraph/attributes.hpp"
#include "blockgraph/dispatch.hpp"
#include "blockgraph/errors.hpp"
#include "blockgraph/level_queue.hpp"
#include "support.hpp"

using namespace blockgraph;
using blockgraph::test::k3;

TEST_CASE("graph construction sorts, dedupes and symmetrizes") {
  const Graph g = Graph::from_edges(4, {{2, 1}, {0, 1}, {0, 1}, {3, 3}});
  CHECK(g.num_vertices() == 4);
  CHECK(g.num_edges() == 4);
  CHECK(std::vector<VertexId>(g.neighbors(1).begin(), g.neighbors(1).end()) == std::vector<VertexId>{0, 2});
  CHECK(g.degree(3) == 0);
  CHECK_NOTHROW(g.validate());

  const Graph directed = Graph::from_edges(3, {{0, 1}, {0, 1}, {1, 1}},
                                           {.symmetrize = false, .dedupe = false, .drop_self_loops = false});
  CHECK(directed.num_edges() == 3);
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 2}}), RangeError);
}

TEST_CASE("vertices maps local ids to global intervals") {
  const Graph g = generate::path(6);
  const BlockGrid grid = build_blocks(g, CutVector({0, 3, 6}));
  const Block& b = grid.at(1, 0);
  CHECK(b.vertices(Side::source) == Interval{3, 6});
  CHECK(b.global_source(0) == 3);
  CHECK(b.global_source(2) == 5);
  CHECK(b.vertices(Side::destination) == Interval{0, 3});
  CHECK(b.global_destination(2) == 2);

  const BlockGrid whole = build_blocks(generate::path(4), CutVector({0, 4}));
  const Block& b0 = whole.at(0, 0);
  CHECK(b0.sources() == Interval{0, 4});
  for (LocalId u = 0; u < 4; ++u) CHECK(b0.global_source(u) == u);
}

TEST_CASE("edges lists local neighbors within a block") {
  const BlockGrid one = build_blocks(k3(), CutVector({0, 3}));
  const auto e0 = one.at(0, 0).edges(0);
  CHECK(std::vector<LocalId>(e0.begin(), e0.end()) == std::vector<LocalId>{1, 2});

  const BlockGrid two = build_blocks(k3(), CutVector({0, 2, 3}));
  const Block& b01 = two.at(0, 1);
  const auto e = b01.edges(0);
  REQUIRE(e.size() == 1);
  CHECK(e[0] == 0);
  CHECK(b01.global_destination(e[0]) == 2);

  const Graph isolated = Graph::from_edges(3, {{0, 1}});
  CHECK(build_blocks(isolated, CutVector({0, 3})).at(0, 0).edges(2).empty());
}

TEST_CASE("coo and ccoo views agree with csr") {
  const BlockGrid grid = build_blocks(generate::complete(5), CutVector({0, 2, 5}));
  for (const Block& b : grid.blocks()) {
    const auto coo = b.to_coo();
    CHECK(static_cast<EdgeId>(coo.size()) == b.edge_count());
    const Ccoo c = b.to_ccoo();
    std::vector<CooEdge> expanded;
    for (std::size_t r = 0; r < c.sources.size(); ++r) {
      for (auto k = c.run_offsets[r]; k < c.run_offsets[r + 1]; ++k) {
        expanded.push_back({c.sources[r], c.destinations[static_cast<std::size_t>(k)]});
      }
    }
    CHECK(expanded == coo);
  }
}

TEST_CASE("atomic_add and cas") {
  int cell = 5;
  atomic_add(cell, 3);
  CHECK(cell == 8);

  long a = -1;
  CHECK(cas(a, -1L, 7L));
  CHECK(a == 7);
  long b = 4;
  CHECK_FALSE(cas(b, -1L, 7L));
  CHECK(b == 4);

  double d = 1.5;
  atomic_add(d, 0.25);
  CHECK(d == 1.75);

  long m = 10;
  atomic_min(m, 3L);
  atomic_min(m, 8L);
  CHECK(m == 3);
}

TEST_CASE("concurrent cas has exactly one winner") {
  for (int round = 0; round < 50; ++round) {
    long cell = -1;
    std::atomic<int> winners{0};
    std::vector<std::jthread> threads;
    for (long t = 0; t < 8; ++t) {
      threads.emplace_back([&, t] {
        if (cas(cell, -1L, t)) ++winners;
      });
    }
    threads.clear();
    CHECK(winners == 1);
    CHECK(cell >= 0);
  }
}

TEST_CASE("get_interval examples") {
  CHECK(get_interval(0, 1, 5) == IndexRange{0, 5});
  CHECK(get_interval(0, 4, 8) == IndexRange{0, 2});
  CHECK(get_interval(3, 4, 10) == IndexRange{7, 10});
}

TEST_CASE("get_interval tiles the range") {
  for (std::size_t n = 1; n <= 10000; n = n < 64 ? n + 1 : n * 3 + 1) {
    for (std::size_t t = 1; t <= n; t = t < 40 ? t + 1 : t * 2 + 3) {
      std::size_t expect = 0;
      for (std::size_t i = 0; i < t; ++i) {
        const auto r = get_interval(i, t, n);
        REQUIRE(r.lo == expect);
        REQUIRE(r.hi >= r.lo);
        expect = r.hi;
      }
      REQUIRE(expect == n);
    }
  }
  CHECK(get_interval(9999, 10000, 10000) == IndexRange{9999, 10000});
}

TEST_CASE("parallel_for and parallel_reduce, host and device flavors") {
  for (unsigned width : {1U, 4U}) {
    CAPTURE(width);
    CHECK(reduce_device<int>(width, 4, [](std::size_t) { return 1; }) == 4);
    CHECK(reduce_device<std::size_t>(width, 10, [](std::size_t i) { return i; }) == 45);
    std::vector<std::size_t> out(3);
    for_device(width, 3, [&](std::size_t i) { out[i] = i * i; });
    CHECK(out == std::vector<std::size_t>{0, 1, 4});

    std::vector<int> hits(1000, 0);
    for_device(width, hits.size(), [&](std::size_t i) { atomic_add(hits[i], 1); });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  }
  CHECK(reduce_host<int>(4, [](std::size_t) { return 1; }) == 4);
  CHECK(reduce_host<std::size_t>(10, [](std::size_t i) { return i; }) == 45);
  CHECK(reduce_device<int>(4, 0, [](std::size_t) { return 1; }, 7) == 7);
  CHECK_THROWS_AS(for_device(4, 100, [](std::size_t i) {
                    if (i == 42) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}

TEST_CASE("attribute store") {
  AttributeStore store(4, 6);
  auto rank = store.add_vertex<double>("rank", 0.25);
  auto flags = store.add_edge<int>("flag");
  store.add_global<long>("count", 3);
  CHECK(rank.size() == 4);
  CHECK(flags.size() == 6);
  CHECK(store.global<long>("count") == 3);
  store.vertex<double>("rank")[2] = 1.0;
  const auto view = store.view<double>("rank", Interval{1, 3});
  REQUIRE(view.size() == 2);
  CHECK(view[1] == 1.0);
  CHECK(store.contains("rank"));
  CHECK_FALSE(store.contains("missing"));
  CHECK(store.array_bytes() == 4 * sizeof(double) + 6 * sizeof(int));
  CHECK_THROWS_AS(store.vertex<int>("rank"), ContractError);
  CHECK_THROWS_AS(store.edge<double>("rank"), ContractError);
  CHECK_THROWS_AS(store.global<long>("nope"), ContractError);
}

TEST_CASE("level queue keeps each vertex once per level") {
  LevelQueue q({0, 3, 6});
  const std::vector<VertexId> start{4};
  q.reset(start);
  CHECK(q.frontier_size() == 1);
  CHECK(q.in_frontier(4));
  CHECK(q.frontier(1).size() == 1);
  q.push(5);
  q.push(1);
  q.push(0, 2);
  CHECK(q.advance() == 3);
  CHECK_FALSE(q.in_frontier(4));
  CHECK(std::vector<VertexId>(q.frontier(0).begin(), q.frontier(0).end()) == std::vector<VertexId>{1, 2});
  CHECK(q.part_of(5) == 1);
  CHECK(q.advance() == 0);
}

TEST_CASE("edge cover: block edges re-expand to the graph") {
  const Graph g = generate::erdos_renyi(60, 0.1, 7);
  for (PartId p : {1, 2, 3, 5, 8}) {
    const BlockGrid grid = test::grid_of(g, p);
    std::vector<Edge> expanded;
    EdgeId total = 0;
    for (const Block& b : grid.blocks()) {
      total += b.edge_count();
      for (const auto& e : b.to_coo()) expanded.push_back({b.global_source(e.src), b.global_destination(e.dst)});
    }
    std::sort(expanded.begin(), expanded.end());
    CHECK(total == g.num_edges());
    CHECK(expanded == g.edges());
  }
}
