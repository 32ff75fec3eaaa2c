#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_map>

#include "blockgraph/algorithms.hpp"

namespace blockgraph::algorithms {
namespace {

// Pointer-jumps every vertex of this task's slice of the parent array to its root.
void compress_slice(TaskContext& ctx, std::span<VertexId> parent) {
  const auto [lo, hi] = ctx.interval(parent.size());
  ctx.parallel_for(hi - lo, [&, lo = lo](std::size_t k) {
    auto& cell = parent[lo + k];
    for (;;) {
      const VertexId up = atomic_load(cell);
      const VertexId upper = atomic_load(parent[static_cast<std::size_t>(up)]);
      if (up == upper) break;
      atomic_store(cell, upper);
    }
  });
}

// Joins the trees of u and v, hooking the larger root under the smaller.
void link(VertexId u, VertexId v, std::span<VertexId> comp) {
  auto at = [&](VertexId x) -> VertexId& { return comp[static_cast<std::size_t>(x)]; };
  VertexId p1 = atomic_load(at(u));
  VertexId p2 = atomic_load(at(v));
  while (p1 != p2) {
    const VertexId high = std::max(p1, p2);
    const VertexId low = std::min(p1, p2);
    const VertexId p_high = atomic_load(at(high));
    if (p_high == low) break;
    if (p_high == high && cas(at(high), high, low)) break;
    p1 = atomic_load(at(atomic_load(at(high))));
    p2 = atomic_load(at(low));
  }
}

ComponentsResult finish(RunResult run_result) {
  ComponentsResult result;
  auto labels = run_result.attributes.global_array<VertexId>("comp");
  result.labels.assign(labels.begin(), labels.end());
  result.components = count_components(result.labels);
  result.stats = std::move(run_result.stats);
  return result;
}

AttributeStore identity_forest(const Graph& graph) {
  AttributeStore store(graph.num_vertices(), graph.num_edges());
  auto comp = store.add_global_array<VertexId>("comp", static_cast<std::size_t>(graph.num_vertices()));
  std::iota(comp.begin(), comp.end(), VertexId{0});
  return store;
}

}  // namespace

std::size_t count_components(std::span<const VertexId> labels) {
  std::vector<VertexId> sorted(labels.begin(), labels.end());
  std::sort(sorted.begin(), sorted.end());
  return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

ComponentsResult sv_components(const Graph& graph, const BlockGrid& grid, const RunConfig& config) {
  AttributeStore store = identity_forest(graph);
  store.add_global<std::uint64_t>("hooks", 0);
  std::size_t hook_rounds = 0;

  AlgorithmSpec spec;
  spec.name = "sv";
  // Even iterations hook, odd iterations link.
  spec.host_kernel = [](TaskContext& ctx) {
    auto comp = ctx.attributes().global_array<VertexId>("comp");
    if (ctx.iteration() % 2 == 1) {
      compress_slice(ctx, comp);
      return;
    }
    const Block& b = ctx.block(0);
    const auto hooks = ctx.parallel_reduce<std::uint64_t>(
        static_cast<std::size_t>(b.sources().size()), [&](std::size_t x) {
          std::uint64_t h = 0;
          const auto u = static_cast<std::size_t>(b.global_source(static_cast<LocalId>(x)));
          for (LocalId y : b.edges(static_cast<LocalId>(x))) {
            const auto v = static_cast<std::size_t>(b.global_destination(y));
            const VertexId cu = atomic_load(comp[u]);
            const VertexId cv = atomic_load(comp[v]);
            const VertexId r1 = std::max(cu, cv);
            const VertexId r2 = std::min(cu, cv);
            if (r1 == r2) continue;
            auto& root = comp[static_cast<std::size_t>(r1)];
            if (atomic_load(root) == r1 && cas(root, r1, r2)) ++h;
          }
          return h;
        });
    if (hooks > 0) atomic_add(ctx.attributes().global<std::uint64_t>("hooks"), hooks);
  };
  spec.device_kernel = spec.host_kernel;
  spec.generic_predicate = [](const BlockList&, const ComposeContext&) { return true; };
  spec.before_iteration = [](IterationContext& ctx) {
    if (ctx.iteration() % 2 == 0) ctx.attributes().global<std::uint64_t>("hooks") = 0;
  };
  spec.after_iteration = [&hook_rounds](IterationContext& ctx) {
    if (ctx.iteration() % 2 == 1) return true;
    ++hook_rounds;
    return ctx.attributes().global<std::uint64_t>("hooks") > 0;
  };

  auto result = finish(run(spec, grid, config, std::move(store)));
  result.hook_rounds = hook_rounds;
  return result;
}

ComponentsResult afforest_components(const Graph& graph, const BlockGrid& grid, const RunConfig& config,
                                     const AfforestOptions& options) {
  const VertexId n = graph.num_vertices();
  const std::size_t rounds = options.neighbor_rounds;
  // Iterations [0, 2*rounds): link neighbor r, compress. Then the finishing
  // link over the remaining neighbors and a last compress.
  const std::size_t finish_link = 2 * rounds;
  const std::size_t last = finish_link + 1;

  AttributeStore store = identity_forest(graph);
  store.add_global<VertexId>("skip", kNoVertex);
  store.add_global<std::uint64_t>("finish_vertices", 0);

  AlgorithmSpec spec;
  spec.name = "cc";
  spec.host_kernel = [=](TaskContext& ctx) {
    auto comp = ctx.attributes().global_array<VertexId>("comp");
    const std::size_t it = ctx.iteration();
    if (it % 2 == 1) {
      compress_slice(ctx, comp);
      return;
    }
    const Block& b = ctx.block(0);
    const auto height = static_cast<std::size_t>(b.sources().size());
    if (it < finish_link) {
      const std::size_t r = it / 2;
      ctx.parallel_for(height, [&](std::size_t x) {
        auto out = b.edges(static_cast<LocalId>(x));
        if (r < out.size()) link(b.global_source(static_cast<LocalId>(x)), b.global_destination(out[r]), comp);
      });
      return;
    }
    const VertexId skip = ctx.attributes().global<VertexId>("skip");
    const auto visited = ctx.parallel_reduce<std::uint64_t>(height, [&](std::size_t x) -> std::uint64_t {
      const VertexId u = b.global_source(static_cast<LocalId>(x));
      if (atomic_load(comp[static_cast<std::size_t>(u)]) == skip) return 0;
      auto out = b.edges(static_cast<LocalId>(x));
      for (std::size_t i = rounds; i < out.size(); ++i) link(u, b.global_destination(out[i]), comp);
      return 1;
    });
    // Each source row appears once per column; count it in column 0 only.
    if (b.col() == 0) atomic_add(ctx.attributes().global<std::uint64_t>("finish_vertices"), visited);
  };
  spec.device_kernel = spec.host_kernel;
  spec.generic_predicate = [](const BlockList&, const ComposeContext&) { return true; };

  spec.before_iteration = [=, &config](IterationContext& ctx) {
    const std::size_t it = ctx.iteration();
    // Sampling and linking run device-side, finishing runs host-side, when
    // the configured mode leaves the choice to the framework.
    if (ctx.mode() == Mode::collaborative) {
      if (it < finish_link && config.device_lanes > 0) ctx.set_mode(Mode::device_only);
      if (it >= finish_link && config.host_workers > 0) ctx.set_mode(Mode::host_only);
    }
    if (it != finish_link || n == 0) return;
    auto comp = ctx.attributes().global_array<VertexId>("comp");
    std::mt19937_64 rng(config.seed);
    std::uniform_int_distribution<VertexId> pick(0, n - 1);
    std::unordered_map<VertexId, std::size_t> counts;
    for (std::size_t i = 0; i < options.sample_size; ++i) ++counts[comp[static_cast<std::size_t>(pick(rng))]];
    VertexId modal = kNoVertex;
    std::size_t best = 0;
    for (const auto& [label, count] : counts) {
      if (count > best || (count == best && label < modal)) {
        modal = label;
        best = count;
      }
    }
    ctx.attributes().global<VertexId>("skip") = modal;
  };
  spec.after_iteration = [=](IterationContext& ctx) { return ctx.iteration() < last; };

  auto run_result = run(spec, grid, config, std::move(store));
  const auto finish_vertices = run_result.attributes.global<std::uint64_t>("finish_vertices");
  const auto skip = run_result.attributes.global<VertexId>("skip");
  auto result = finish(std::move(run_result));
  result.finish_vertices = finish_vertices;
  result.skipped_component = skip;
  return result;
}

}  // namespace blockgraph::algorithms
