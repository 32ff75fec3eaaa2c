#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "blockgraph/block.hpp"
#include "blockgraph/graph.hpp"

namespace blockgraph {

// p+1 shared row/column boundaries: cuts[0] = 0, cuts[p] = n, non-decreasing,
// strictly increasing when p <= n.
class CutVector {
 public:
  CutVector() : cuts_{0, 0} {}
  explicit CutVector(std::vector<VertexId> cuts);

  PartId parts() const noexcept { return static_cast<PartId>(cuts_.size()) - 1; }
  VertexId operator[](std::size_t i) const noexcept { return cuts_[i]; }
  Interval part(PartId j) const noexcept { return {cuts_[j], cuts_[j + 1]}; }
  // Part holding vertex v (never an empty part).
  PartId part_of(VertexId v) const noexcept;
  const std::vector<VertexId>& values() const noexcept { return cuts_; }
  friend bool operator==(const CutVector&, const CutVector&) = default;

 private:
  std::vector<VertexId> cuts_;
};

// p x p conformal tiling of a graph; block (r, c) has id r*p + c.
class BlockGrid {
 public:
  BlockGrid() = default;
  BlockGrid(CutVector cuts, std::vector<Block> blocks, VertexId num_vertices, bool upper_triangular);

  PartId parts() const noexcept { return cuts_.parts(); }
  const CutVector& cuts() const noexcept { return cuts_; }
  VertexId num_vertices() const noexcept { return num_vertices_; }
  EdgeId num_edges() const noexcept { return num_edges_; }
  bool upper_triangular() const noexcept { return upper_triangular_; }

  std::size_t size() const noexcept { return blocks_.size(); }
  const Block& block(BlockId id) const noexcept { return blocks_[static_cast<std::size_t>(id)]; }
  const Block& at(PartId row, PartId col) const noexcept { return block(row * parts() + col); }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }

 private:
  CutVector cuts_;
  std::vector<Block> blocks_;
  VertexId num_vertices_ = 0;
  EdgeId num_edges_ = 0;
  bool upper_triangular_ = false;
};

// Balanced prefix of total degree: cut j is the smallest index whose degree
// prefix reaches j*W/p, nudged to keep parts non-empty when p <= n.
CutVector symmetric_cuts(const Graph& graph, PartId p);

// Contiguous p-way split minimising the largest per-part out-degree sum.
CutVector optimal_1d_cuts(const Graph& graph, PartId p);

// Largest per-part out-degree sum under the given cuts.
EdgeId bottleneck(const Graph& graph, const CutVector& cuts);

BlockGrid build_blocks(const Graph& graph, const CutVector& cuts);

// Keeps only edges (u, v) with u < v.
BlockGrid upper_triangular_view(const BlockGrid& grid);

// Default parts per dimension for a worker count: ceil(sqrt(2 * workers)) in [1, 64].
PartId default_parts(unsigned host_workers);

struct PartitionStats {
  struct Entry {
    BlockId id;
    PartId row;
    PartId col;
    VertexId sources;
    VertexId destinations;
    EdgeId edges;
  };
  std::vector<Entry> blocks;
  EdgeId max_edges = 0;
  // max |E_i| * p^2 / m; 0 for an edgeless grid.
  double imbalance = 0.0;
};

PartitionStats partition_stats(const BlockGrid& grid);

}  // namespace blockgraph
