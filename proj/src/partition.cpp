#include "blockgraph/partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "blockgraph/errors.hpp"

namespace blockgraph {

CutVector::CutVector(std::vector<VertexId> cuts) : cuts_(std::move(cuts)) {
  if (cuts_.size() < 2 || cuts_.front() != 0) throw ContractError("cut vector must start at 0 and have p+1 entries");
  const auto p = static_cast<VertexId>(cuts_.size()) - 1;
  const VertexId n = cuts_.back();
  for (std::size_t j = 1; j < cuts_.size(); ++j) {
    const bool ok = p <= n ? cuts_[j] > cuts_[j - 1] : cuts_[j] >= cuts_[j - 1];
    if (!ok) throw ContractError("cut vector not increasing at index " + std::to_string(j));
  }
}

PartId CutVector::part_of(VertexId v) const noexcept {
  auto it = std::upper_bound(cuts_.begin(), cuts_.end(), v);
  return static_cast<PartId>(it - cuts_.begin()) - 1;
}

BlockGrid::BlockGrid(CutVector cuts, std::vector<Block> blocks, VertexId num_vertices, bool upper_triangular)
    : cuts_(std::move(cuts)),
      blocks_(std::move(blocks)),
      num_vertices_(num_vertices),
      upper_triangular_(upper_triangular) {
  const auto p = static_cast<std::size_t>(cuts_.parts());
  if (blocks_.size() != p * p) throw ContractError("grid needs p^2 blocks");
  for (const auto& b : blocks_) num_edges_ += b.edge_count();
}

namespace {

void check_parts(PartId p) {
  if (p < 1) throw ConfigError("number of parts must be at least 1, got " + std::to_string(p));
}

// Makes raw boundaries a valid cut vector: strictly increasing when p <= n.
std::vector<VertexId> repair(std::vector<VertexId> cuts, VertexId n) {
  const auto p = static_cast<VertexId>(cuts.size()) - 1;
  cuts.front() = 0;
  cuts.back() = n;
  for (VertexId j = 1; j < p; ++j) {
    auto& c = cuts[static_cast<std::size_t>(j)];
    const VertexId prev = cuts[static_cast<std::size_t>(j - 1)];
    if (p <= n) {
      c = std::clamp(c, prev + 1, n - (p - j));
    } else {
      c = std::clamp(c, prev, n);
    }
  }
  return cuts;
}

// Fewest contiguous parts with out-degree sum <= limit, or p+1 once it exceeds p.
PartId parts_needed(const Graph& graph, EdgeId limit, PartId p) {
  PartId parts = 1;
  EdgeId load = 0;
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    const EdgeId d = graph.degree(v);
    if (d > limit) return p + 1;
    if (load + d > limit) {
      if (++parts > p) return parts;
      load = 0;
    }
    load += d;
  }
  return parts;
}

}  // namespace

CutVector symmetric_cuts(const Graph& graph, PartId p) {
  check_parts(p);
  const VertexId n = graph.num_vertices();
  const EdgeId total = graph.num_edges();
  std::vector<VertexId> cuts(static_cast<std::size_t>(p) + 1, 0);
  VertexId c = 0;
  EdgeId prefix = 0;  // degree sum of vertices [0, c)
  for (PartId j = 1; j < p; ++j) {
    // smallest c with prefix(c) * p >= j * total
    while (c < n && prefix * p < EdgeId{j} * total) {
      prefix += graph.degree(c);
      ++c;
    }
    cuts[static_cast<std::size_t>(j)] = c;
  }
  cuts.back() = n;
  return CutVector(repair(std::move(cuts), n));
}

CutVector optimal_1d_cuts(const Graph& graph, PartId p) {
  check_parts(p);
  const VertexId n = graph.num_vertices();
  EdgeId lo = 0;
  for (VertexId v = 0; v < n; ++v) lo = std::max(lo, graph.degree(v));
  EdgeId hi = std::max(lo, graph.num_edges());
  while (lo < hi) {
    const EdgeId mid = lo + (hi - lo) / 2;
    if (parts_needed(graph, mid, p) <= p) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const EdgeId limit = lo;

  // Greedy fill under the optimal bottleneck, leaving one vertex for every
  // remaining part while p <= n.
  std::vector<VertexId> cuts{0};
  VertexId v = 0;
  for (PartId j = 0; j + 1 < p; ++j) {
    const VertexId parts_after = p - j - 1;
    EdgeId load = 0;
    VertexId end = v;
    while (end < n && load + graph.degree(end) <= limit) {
      if (p <= n && n - (end + 1) < parts_after) break;
      load += graph.degree(end);
      ++end;
    }
    if (p <= n && end == v) ++end;
    cuts.push_back(end);
    v = end;
  }
  cuts.push_back(n);
  return CutVector(std::move(cuts));
}

EdgeId bottleneck(const Graph& graph, const CutVector& cuts) {
  EdgeId worst = 0;
  for (PartId j = 0; j < cuts.parts(); ++j) {
    const auto part = cuts.part(j);
    worst = std::max(worst, graph.offsets()[static_cast<std::size_t>(part.end)] -
                                graph.offsets()[static_cast<std::size_t>(part.begin)]);
  }
  return worst;
}

BlockGrid build_blocks(const Graph& graph, const CutVector& cuts) {
  if (cuts[static_cast<std::size_t>(cuts.parts())] != graph.num_vertices()) {
    throw ContractError("cut vector does not end at the vertex count");
  }
  const PartId p = cuts.parts();
  for (PartId j = 0; j < p; ++j) {
    if (cuts.part(j).size() > VertexId{1} << 32) throw RangeError("part exceeds the local ID range");
  }
  std::vector<Block> blocks(static_cast<std::size_t>(p) * static_cast<std::size_t>(p));

  auto build_row = [&](PartId r) {
    const Interval rows = cuts.part(r);
    const auto height = static_cast<std::size_t>(rows.size());
    std::vector<std::vector<EdgeId>> offsets(static_cast<std::size_t>(p), std::vector<EdgeId>(height + 1, 0));
    // Count then fill; each row's neighbors are sorted, so columns come in order.
    for (std::size_t x = 0; x < height; ++x) {
      auto row = graph.neighbors(rows.begin + static_cast<VertexId>(x));
      PartId c = 0;
      for (VertexId v : row) {
        while (v >= cuts[static_cast<std::size_t>(c) + 1]) ++c;
        ++offsets[static_cast<std::size_t>(c)][x + 1];
      }
    }
    std::vector<std::vector<LocalId>> targets(static_cast<std::size_t>(p));
    for (PartId c = 0; c < p; ++c) {
      auto& off = offsets[static_cast<std::size_t>(c)];
      for (std::size_t x = 0; x < height; ++x) off[x + 1] += off[x];
      targets[static_cast<std::size_t>(c)].resize(static_cast<std::size_t>(off.back()));
    }
    std::vector<std::vector<EdgeId>> cursor(static_cast<std::size_t>(p));
    for (PartId c = 0; c < p; ++c) cursor[static_cast<std::size_t>(c)] = offsets[static_cast<std::size_t>(c)];
    for (std::size_t x = 0; x < height; ++x) {
      auto row = graph.neighbors(rows.begin + static_cast<VertexId>(x));
      PartId c = 0;
      for (VertexId v : row) {
        while (v >= cuts[static_cast<std::size_t>(c) + 1]) ++c;
        auto& at = cursor[static_cast<std::size_t>(c)][x];
        targets[static_cast<std::size_t>(c)][static_cast<std::size_t>(at++)] =
            static_cast<LocalId>(v - cuts[static_cast<std::size_t>(c)]);
      }
    }
    for (PartId c = 0; c < p; ++c) {
      const BlockId id = r * p + c;
      blocks[static_cast<std::size_t>(id)] =
          Block(id, r, c, rows, cuts.part(c), std::move(offsets[static_cast<std::size_t>(c)]),
                std::move(targets[static_cast<std::size_t>(c)]));
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), static_cast<unsigned>(p)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (PartId r = static_cast<PartId>(t); r < p; r += static_cast<PartId>(threads)) build_row(r);
      });
    }
  }
  return BlockGrid(cuts, std::move(blocks), graph.num_vertices(), false);
}

BlockGrid upper_triangular_view(const BlockGrid& grid) {
  const PartId p = grid.parts();
  std::vector<Block> blocks;
  blocks.reserve(grid.size());
  for (const Block& b : grid.blocks()) {
    const auto height = static_cast<std::size_t>(b.sources().size());
    std::vector<EdgeId> offsets(height + 1, 0);
    std::vector<LocalId> targets;
    if (b.row() <= b.col()) {
      for (std::size_t x = 0; x < height; ++x) {
        const VertexId u = b.global_source(static_cast<LocalId>(x));
        for (LocalId v : b.edges(static_cast<LocalId>(x))) {
          if (b.global_destination(v) > u) targets.push_back(v);
        }
        offsets[x + 1] = static_cast<EdgeId>(targets.size());
      }
    }
    blocks.emplace_back(b.id(), b.row(), b.col(), b.sources(), b.destinations(), std::move(offsets),
                        std::move(targets));
  }
  (void)p;
  return BlockGrid(grid.cuts(), std::move(blocks), grid.num_vertices(), true);
}

PartId default_parts(unsigned host_workers) {
  const auto p = static_cast<PartId>(std::ceil(std::sqrt(2.0 * host_workers)));
  return std::clamp<PartId>(p, 1, 64);
}

PartitionStats partition_stats(const BlockGrid& grid) {
  PartitionStats stats;
  for (const Block& b : grid.blocks()) {
    stats.blocks.push_back({b.id(), b.row(), b.col(), b.sources().size(), b.destinations().size(), b.edge_count()});
    stats.max_edges = std::max(stats.max_edges, b.edge_count());
  }
  if (grid.num_edges() > 0) {
    const double p = grid.parts();
    stats.imbalance = static_cast<double>(stats.max_edges) * p * p / static_cast<double>(grid.num_edges());
  }
  return stats;
}

}  // namespace blockgraph
