#include <algorithm>
#include <string>

#include "blockgraph/algorithms.hpp"
#include "blockgraph/errors.hpp"
#include "blockgraph/level_queue.hpp"

namespace blockgraph::algorithms {
namespace {

struct LevelCounts {
  std::uint64_t pushed = 0;
  std::uint64_t traversed = 0;
  friend LevelCounts operator+(LevelCounts a, LevelCounts b) {
    return {a.pushed + b.pushed, a.traversed + b.traversed};
  }
};

// Expands the frontier of the block's source part into its destination part.
LevelCounts top_down(TaskContext& ctx, const Block& b, LevelQueue& queue, std::int64_t level) {
  auto parent = ctx.attributes().view<VertexId>("parent", b.destinations());
  auto depth = ctx.attributes().view<std::int64_t>("depth", b.destinations());
  auto frontier = queue.frontier(b.row());
  return ctx.parallel_reduce<LevelCounts>(frontier.size(), [&](std::size_t i) {
    LevelCounts counts;
    const VertexId u = frontier[i];
    for (LocalId y : b.edges(b.local_source(u))) {
      ++counts.traversed;
      if (atomic_load(parent[y]) != kNoVertex) continue;
      if (cas(parent[y], kNoVertex, u)) {
        depth[y] = level + 1;
        queue.push(b.col(), b.global_destination(y));
        ++counts.pushed;
      }
    }
    return counts;
  });
}

// Unvisited sources of the block look for a parent in the destination part's frontier.
LevelCounts bottom_up(TaskContext& ctx, const Block& b, LevelQueue& queue, std::int64_t level) {
  auto parent = ctx.attributes().view<VertexId>("parent", b.sources());
  auto depth = ctx.attributes().view<std::int64_t>("depth", b.sources());
  return ctx.parallel_reduce<LevelCounts>(static_cast<std::size_t>(b.sources().size()), [&](std::size_t x) {
    LevelCounts counts;
    if (atomic_load(parent[x]) != kNoVertex) return counts;
    for (LocalId y : b.edges(static_cast<LocalId>(x))) {
      ++counts.traversed;
      const VertexId v = b.global_destination(y);
      if (queue.in_frontier(v) && cas(parent[x], kNoVertex, v)) {
        depth[x] = level + 1;
        queue.push(b.row(), b.global_source(static_cast<LocalId>(x)));
        ++counts.pushed;
        break;
      }
    }
    return counts;
  });
}

}  // namespace

BfsResult bfs(const Graph& graph, const BlockGrid& grid, const RunConfig& config, VertexId source,
              const BfsOptions& options) {
  const VertexId n = graph.num_vertices();
  if (source < 0 || source >= n) {
    throw RangeError("BFS source " + std::to_string(source) + " outside [0, " + std::to_string(n) + ")");
  }

  AttributeStore store(n, graph.num_edges());
  auto parent = store.add_vertex<VertexId>("parent", kNoVertex);
  auto depth = store.add_vertex<std::int64_t>("depth", -1);
  auto& queue = store.add_global<LevelQueue>("queue", LevelQueue(grid.cuts().values()));
  store.add_global<std::uint64_t>("pushed", 0);
  store.add_global<std::uint64_t>("traversed", 0);
  store.add_global<Direction>("direction", Direction::top_down);
  store.add_global<std::int64_t>("level", 0);

  parent[static_cast<std::size_t>(source)] = source;
  depth[static_cast<std::size_t>(source)] = 0;
  const VertexId seed[] = {source};
  queue.reset(seed);

  // Edges incident to vertices not yet visited.
  EdgeId unexplored = graph.num_edges() - graph.degree(source);
  std::vector<Direction> directions;

  AlgorithmSpec spec;
  spec.name = "bfs";
  spec.host_kernel = [](TaskContext& ctx) {
    auto& attrs = ctx.attributes();
    auto& q = attrs.global<LevelQueue>("queue");
    const std::int64_t level = attrs.global<std::int64_t>("level");
    const Block& b = ctx.block(0);
    const LevelCounts counts = attrs.global<Direction>("direction") == Direction::top_down
                                   ? top_down(ctx, b, q, level)
                                   : bottom_up(ctx, b, q, level);
    atomic_add(attrs.global<std::uint64_t>("pushed"), counts.pushed);
    atomic_add(attrs.global<std::uint64_t>("traversed"), counts.traversed);
  };
  spec.device_kernel = spec.host_kernel;

  // Only blocks whose relevant queue is non-empty take part in a level.
  spec.generic_predicate = [](const BlockList& list, const ComposeContext& ctx) {
    const Block& b = list[0];
    if (b.empty()) return false;
    const auto& q = ctx.attributes.global<LevelQueue>("queue");
    const bool top = ctx.attributes.global<Direction>("direction") == Direction::top_down;
    return !q.frontier(top ? b.row() : b.col()).empty();
  };

  spec.before_iteration = [&](IterationContext& ctx) {
    auto& attrs = ctx.attributes();
    attrs.global<std::uint64_t>("pushed") = 0;
    auto& direction = attrs.global<Direction>("direction");
    const auto& q = attrs.global<LevelQueue>("queue");
    EdgeId frontier_edges = 0;
    for (PartId j = 0; j < q.parts(); ++j) {
      for (VertexId v : q.frontier(j)) frontier_edges += graph.degree(v);
    }
    const auto frontier_vertices = static_cast<double>(q.frontier_size());
    if (direction == Direction::top_down) {
      if (static_cast<double>(frontier_edges) > static_cast<double>(unexplored) / options.alpha) {
        direction = Direction::bottom_up;
      }
    } else if (frontier_vertices < static_cast<double>(n) / options.beta) {
      direction = Direction::top_down;
    }
    directions.push_back(direction);
  };

  spec.after_iteration = [&](IterationContext& ctx) {
    auto& attrs = ctx.attributes();
    auto& q = attrs.global<LevelQueue>("queue");
    q.advance();
    for (PartId j = 0; j < q.parts(); ++j) {
      for (VertexId v : q.frontier(j)) unexplored -= graph.degree(v);
    }
    ++attrs.global<std::int64_t>("level");
    return attrs.global<std::uint64_t>("pushed") > 0;
  };

  auto run_result = run(spec, grid, config, std::move(store));
  BfsResult result;
  auto final_parent = run_result.attributes.vertex<VertexId>("parent");
  auto final_depth = run_result.attributes.vertex<std::int64_t>("depth");
  result.parent.assign(final_parent.begin(), final_parent.end());
  result.depth.assign(final_depth.begin(), final_depth.end());
  result.levels = static_cast<std::size_t>(*std::max_element(result.depth.begin(), result.depth.end()) + 1);
  result.directions = std::move(directions);
  result.edges_traversed = run_result.attributes.global<std::uint64_t>("traversed");
  result.stats = std::move(run_result.stats);
  return result;
}

}  // namespace blockgraph::algorithms
