#include <algorithm>
#include <cmath>

#include "blockgraph/algorithms.hpp"

namespace blockgraph::algorithms {

PageRankResult pagerank(const Graph& graph, const BlockGrid& grid, const RunConfig& config,
                        const PageRankOptions& options) {
  const VertexId n = graph.num_vertices();
  PageRankResult result;
  if (n == 0) return result;

  const double d = options.damping;
  AttributeStore store(n, graph.num_edges());
  store.add_vertex<double>("rank", 1.0 / static_cast<double>(n));
  store.add_vertex<double>("next", 0.0);
  std::size_t iterations = 0;
  double delta = 0.0;

  AlgorithmSpec spec;
  spec.name = "pagerank";
  // Push each source's share along its block edges.
  spec.host_kernel = [&graph, d](TaskContext& ctx) {
    const Block& b = ctx.block(0);
    auto rank = ctx.attributes().view<double>("rank", b.sources());
    auto next = ctx.attributes().view<double>("next", b.destinations());
    ctx.parallel_for(static_cast<std::size_t>(b.sources().size()), [&](std::size_t x) {
      const auto u = static_cast<LocalId>(x);
      auto out = b.edges(u);
      if (out.empty()) return;
      const double share = d * rank[x] / static_cast<double>(graph.degree(b.global_source(u)));
      for (LocalId y : out) atomic_add(next[y], share);
    });
  };
  spec.device_kernel = spec.host_kernel;
  spec.generic_predicate = [](const BlockList& list, const ComposeContext&) { return !list[0].empty(); };

  spec.before_iteration = [&graph, n, d](IterationContext& ctx) {
    auto rank = ctx.attributes().vertex<double>("rank");
    auto next = ctx.attributes().vertex<double>("next");
    double dangling = 0.0;
    for (VertexId v = 0; v < n; ++v) {
      if (graph.degree(v) == 0) dangling += rank[static_cast<std::size_t>(v)];
    }
    const double base = (1.0 - d) / static_cast<double>(n) + d * dangling / static_cast<double>(n);
    std::fill(next.begin(), next.end(), base);
  };

  spec.after_iteration = [&](IterationContext& ctx) {
    auto rank = ctx.attributes().vertex<double>("rank");
    auto next = ctx.attributes().vertex<double>("next");
    delta = 0.0;
    for (std::size_t v = 0; v < rank.size(); ++v) delta += std::abs(next[v] - rank[v]);
    std::copy(next.begin(), next.end(), rank.begin());
    ++iterations;
    if (options.observer) options.observer(iterations, rank);
    return delta > options.tolerance && iterations < options.max_iterations;
  };

  auto run_result = run(spec, grid, config, std::move(store));
  auto rank = run_result.attributes.vertex<double>("rank");
  result.rank.assign(rank.begin(), rank.end());
  result.iterations = iterations;
  result.last_delta = delta;
  result.stats = std::move(run_result.stats);
  return result;
}

}  // namespace blockgraph::algorithms
