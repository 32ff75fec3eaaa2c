#pragma once

#include <cstdint>

namespace blockgraph {

using VertexId = std::int64_t;
using EdgeId = std::int64_t;
// Vertex IDs inside a block, relative to the block's interval start.
using LocalId = std::uint32_t;
using PartId = std::int32_t;
using BlockId = std::int32_t;

inline constexpr VertexId kNoVertex = -1;

}  // namespace blockgraph
