#include "blockgraph/block.hpp"

#include <algorithm>
#include <string>

#include "blockgraph/errors.hpp"

namespace blockgraph {

Block::Block(BlockId id, PartId row, PartId col, Interval sources, Interval destinations,
             std::vector<EdgeId> offsets, std::vector<LocalId> targets)
    : id_(id),
      row_(row),
      col_(col),
      sources_(sources),
      destinations_(destinations),
      offsets_(std::move(offsets)),
      targets_(std::move(targets)) {
  if (offsets_.size() != static_cast<std::size_t>(sources_.size()) + 1 ||
      offsets_.back() != static_cast<EdgeId>(targets_.size())) {
    throw ContractError("block " + std::to_string(id_) + ": CSR arrays do not match its source interval");
  }
}

std::vector<CooEdge> Block::to_coo() const {
  std::vector<CooEdge> out;
  out.reserve(targets_.size());
  for (LocalId u = 0; u < static_cast<LocalId>(sources_.size()); ++u) {
    for (LocalId v : edges(u)) out.push_back({u, v});
  }
  return out;
}

Ccoo Block::to_ccoo() const {
  Ccoo out;
  out.run_offsets.push_back(0);
  for (LocalId u = 0; u < static_cast<LocalId>(sources_.size()); ++u) {
    auto row = edges(u);
    if (row.empty()) continue;
    out.sources.push_back(u);
    out.destinations.insert(out.destinations.end(), row.begin(), row.end());
    out.run_offsets.push_back(static_cast<EdgeId>(out.destinations.size()));
  }
  return out;
}

EdgeId BlockList::edge_count() const noexcept {
  EdgeId total = 0;
  for (const Block* b : blocks_) total += b->edge_count();
  return total;
}

std::size_t BlockList::footprint_bytes() const noexcept {
  std::vector<BlockId> seen;
  std::size_t total = 0;
  for (const Block* b : blocks_) {
    if (std::find(seen.begin(), seen.end(), b->id()) != seen.end()) continue;
    seen.push_back(b->id());
    total += b->footprint_bytes();
  }
  return total;
}

}  // namespace blockgraph
