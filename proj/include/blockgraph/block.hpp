#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "blockgraph/types.hpp"

namespace blockgraph {

// Half-open range of global vertex IDs.
struct Interval {
  VertexId begin = 0;
  VertexId end = 0;

  VertexId size() const noexcept { return end - begin; }
  bool empty() const noexcept { return begin == end; }
  bool contains(VertexId v) const noexcept { return v >= begin && v < end; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class Side { source, destination };

struct CooEdge {
  LocalId src;
  LocalId dst;
  friend bool operator==(const CooEdge&, const CooEdge&) = default;
};

// COO with the source column run-length compressed: sources[i] owns
// destinations [run_offsets[i], run_offsets[i+1]).
struct Ccoo {
  std::vector<LocalId> sources;
  std::vector<EdgeId> run_offsets;
  std::vector<LocalId> destinations;
};

// One tile of the adjacency matrix: the edges from source interval S to
// destination interval D, stored as CSR over local IDs. Local ID x on the
// source side is global ID S.begin + x (same for D).
class Block {
 public:
  Block() = default;
  Block(BlockId id, PartId row, PartId col, Interval sources, Interval destinations,
        std::vector<EdgeId> offsets, std::vector<LocalId> targets);

  BlockId id() const noexcept { return id_; }
  PartId row() const noexcept { return row_; }
  PartId col() const noexcept { return col_; }

  const Interval& vertices(Side side) const noexcept {
    return side == Side::source ? sources_ : destinations_;
  }
  const Interval& sources() const noexcept { return sources_; }
  const Interval& destinations() const noexcept { return destinations_; }

  // Ascending local destination IDs of local source u within this block.
  std::span<const LocalId> edges(LocalId u) const noexcept {
    assert(static_cast<VertexId>(u) < sources_.size());
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  EdgeId degree(LocalId u) const noexcept { return offsets_[u + 1] - offsets_[u]; }

  EdgeId edge_count() const noexcept { return static_cast<EdgeId>(targets_.size()); }
  bool empty() const noexcept { return targets_.empty(); }

  VertexId global_source(LocalId u) const noexcept { return sources_.begin + u; }
  VertexId global_destination(LocalId v) const noexcept { return destinations_.begin + v; }
  LocalId local_source(VertexId u) const noexcept { return static_cast<LocalId>(u - sources_.begin); }
  LocalId local_destination(VertexId v) const noexcept {
    return static_cast<LocalId>(v - destinations_.begin);
  }

  const std::vector<EdgeId>& offsets() const noexcept { return offsets_; }
  const std::vector<LocalId>& targets() const noexcept { return targets_; }

  // Bytes a copy of this block's CSR arrays occupies.
  std::size_t footprint_bytes() const noexcept {
    return offsets_.size() * sizeof(EdgeId) + targets_.size() * sizeof(LocalId);
  }

  std::vector<CooEdge> to_coo() const;
  Ccoo to_ccoo() const;

 private:
  BlockId id_ = 0;
  PartId row_ = 0;
  PartId col_ = 0;
  Interval sources_;
  Interval destinations_;
  std::vector<EdgeId> offsets_{0};
  std::vector<LocalId> targets_;
};

// Ordered list of block references: the input of one kernel invocation.
class BlockList {
 public:
  BlockList() = default;
  BlockList(std::vector<const Block*> blocks, std::size_t id = 0)
      : blocks_(std::move(blocks)), id_(id) {}

  const Block& operator[](std::size_t i) const noexcept { return *blocks_[i]; }
  std::size_t size() const noexcept { return blocks_.size(); }
  bool empty() const noexcept { return blocks_.empty(); }
  std::span<const Block* const> blocks() const noexcept { return blocks_; }

  std::size_t id() const noexcept { return id_; }
  void set_id(std::size_t id) noexcept { id_ = id; }
  double weight() const noexcept { return weight_; }
  void set_weight(double w) noexcept { weight_ = w; }

  EdgeId edge_count() const noexcept;
  std::size_t footprint_bytes() const noexcept;

 private:
  std::vector<const Block*> blocks_;
  std::size_t id_ = 0;
  double weight_ = 0.0;
};

}  // namespace blockgraph
