#include <string>

#include "blockgraph/algorithms.hpp"
#include "blockgraph/errors.hpp"
#include "blockgraph/io.hpp"

namespace blockgraph::algorithms {
namespace {

std::uint64_t intersect(std::span<const LocalId> a, std::span<const LocalId> b) {
  std::uint64_t common = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return common;
}

}  // namespace

std::vector<BlockList> triangle_block_lists(const BlockGrid& grid) {
  const PartId p = grid.parts();
  std::vector<BlockList> lists;
  for (PartId i = 0; i < p; ++i) {
    for (PartId j = i; j < p; ++j) {
      const Block& k = grid.at(i, j);
      if (k.empty()) continue;
      for (PartId x = j; x < p; ++x) {
        const Block& l = grid.at(i, x);
        const Block& m = grid.at(j, x);
        if (l.empty() && m.empty()) continue;
        lists.emplace_back(std::vector<const Block*>{&k, &l, &m});
      }
    }
  }
  return lists;
}

TriangleResult triangle_count(const BlockGrid& grid, const RunConfig& config) {
  if (!grid.upper_triangular()) {
    throw ContractError("triangle counting needs an upper-triangular grid (see upper_triangular_view)");
  }
  AttributeStore store(grid.num_vertices(), grid.num_edges());
  store.add_global<std::uint64_t>("triangles", 0);

  AlgorithmSpec spec;
  spec.name = "tc";
  spec.list_size = 3;
  // For (u, v) in B_k, u's partial list in B_l meets v's partial list in B_m
  // over the shared destination part.
  spec.host_kernel = [](TaskContext& ctx) {
    const Block& bk = ctx.block(0);
    const Block& bl = ctx.block(1);
    const Block& bm = ctx.block(2);
    const auto count = ctx.parallel_reduce<std::uint64_t>(
        static_cast<std::size_t>(bk.sources().size()), [&](std::size_t x) {
          const auto u = static_cast<LocalId>(x);
          auto nu = bl.edges(u);
          if (nu.empty()) return std::uint64_t{0};
          std::uint64_t found = 0;
          for (LocalId v : bk.edges(u)) found += intersect(nu, bm.edges(v));
          return found;
        });
    if (count > 0) atomic_add(ctx.attributes().global<std::uint64_t>("triangles"), count);
  };
  spec.device_kernel = spec.host_kernel;
  spec.custom_composer = [](const ComposeContext& ctx) { return triangle_block_lists(ctx.grid); };
  spec.after_iteration = [](IterationContext&) { return false; };

  auto run_result = run(spec, grid, config, std::move(store));
  return {run_result.attributes.global<std::uint64_t>("triangles"), std::move(run_result.stats)};
}

TriangleResult count_triangles(const Graph& graph, PartId p, const RunConfig& config) {
  const auto relabeled = io::degree_relabel(graph);
  const auto grid = build_blocks(relabeled.graph, symmetric_cuts(relabeled.graph, p));
  return triangle_count(upper_triangular_view(grid), config);
}

}  // namespace blockgraph::algorithms
