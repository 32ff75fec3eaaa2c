#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "blockgraph/graph.hpp"
#include "blockgraph/partition.hpp"
#include "blockgraph/runtime.hpp"

namespace blockgraph::algorithms {

// ---- PageRank ---------------------------------------------------------------

struct PageRankOptions {
  double damping = 0.85;
  double tolerance = 1e-4;
  std::size_t max_iterations = 20;
  // Called after every iteration with the 1-based iteration number.
  std::function<void(std::size_t, std::span<const double>)> observer;
};

struct PageRankResult {
  std::vector<double> rank;
  std::size_t iterations = 0;
  double last_delta = 0.0;
  RunStats stats;
};

PageRankResult pagerank(const Graph& graph, const BlockGrid& grid, const RunConfig& config,
                        const PageRankOptions& options = {});

// ---- Connected components ---------------------------------------------------

struct ComponentsResult {
  // Every vertex labelled with the smallest vertex ID of its component.
  std::vector<VertexId> labels;
  std::size_t components = 0;
  // Shiloach-Vishkin: hooking rounds including the final one without hooks.
  std::size_t hook_rounds = 0;
  // Afforest: (block, source) pairs visited in the finishing phase.
  std::size_t finish_vertices = 0;
  VertexId skipped_component = kNoVertex;
  RunStats stats;
};

ComponentsResult sv_components(const Graph& graph, const BlockGrid& grid, const RunConfig& config);

struct AfforestOptions {
  std::size_t neighbor_rounds = 2;
  std::size_t sample_size = 1024;
};

ComponentsResult afforest_components(const Graph& graph, const BlockGrid& grid, const RunConfig& config,
                                     const AfforestOptions& options = {});

// ---- BFS --------------------------------------------------------------------

enum class Direction { top_down, bottom_up };

struct BfsOptions {
  double alpha = 14.0;
  double beta = 24.0;
};

struct BfsResult {
  std::vector<VertexId> parent;  // kNoVertex when unreached; parent[s] == s
  std::vector<std::int64_t> depth;  // -1 when unreached
  std::size_t levels = 0;          // depth of the deepest reached vertex + 1
  std::vector<Direction> directions;
  std::uint64_t edges_traversed = 0;
  RunStats stats;
};

BfsResult bfs(const Graph& graph, const BlockGrid& grid, const RunConfig& config, VertexId source,
              const BfsOptions& options = {});

// ---- Triangle counting ------------------------------------------------------

struct TriangleResult {
  std::uint64_t triangles = 0;
  RunStats stats;
};

// grid must come from upper_triangular_view.
TriangleResult triangle_count(const BlockGrid& grid, const RunConfig& config);

// Relabels by degree, partitions with p parts and counts.
TriangleResult count_triangles(const Graph& graph, PartId p, const RunConfig& config);

// Three-block lists <(i,j), (i,x), (j,x)> for every non-empty (i,j), j <= x.
std::vector<BlockList> triangle_block_lists(const BlockGrid& grid);

// ---- Helpers ----------------------------------------------------------------

std::size_t count_components(std::span<const VertexId> labels);

// Names accepted by the CLI: pagerank, sv, cc, bfs, tc.
bool is_registered(std::string_view name);
std::vector<std::string_view> registered_names();

}  // namespace blockgraph::algorithms
