#pragma once

#include <atomic>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "blockgraph/types.hpp"

namespace blockgraph {

// Level-synchronous frontier keyed by vertex part. Q(S_i) of block (r, c) is
// frontier(r) and Q(D_i) is frontier(c). Pushes during a level go to the next
// frontier of the vertex's part through a lock-free cursor and become visible
// after advance().
class LevelQueue {
 public:
  LevelQueue() = default;
  LevelQueue(std::vector<VertexId> cuts);

  PartId parts() const noexcept { return static_cast<PartId>(cuts_.size()) - 1; }

  std::span<const VertexId> frontier(PartId part) const noexcept {
    const auto& level = current_[static_cast<std::size_t>(part)];
    return {level.data(), level.size()};
  }
  bool in_frontier(VertexId v) const noexcept { return member_[static_cast<std::size_t>(v)] != 0; }
  std::size_t frontier_size() const noexcept { return frontier_size_; }

  // Thread-safe. Each vertex may be pushed at most once per level.
  void push(PartId part, VertexId v);
  void push(VertexId v);

  // Seeds the current frontier directly (level 0).
  void reset(std::span<const VertexId> vertices);

  // Next frontier becomes current, each part sorted ascending. Returns the
  // new frontier size.
  std::size_t advance();

  PartId part_of(VertexId v) const noexcept;

 private:
  struct NextBuffer {
    std::unique_ptr<VertexId[]> slots;
    std::size_t capacity = 0;
    std::atomic<std::size_t> count{0};
  };

  std::vector<VertexId> cuts_{0};
  std::vector<std::vector<VertexId>> current_;
  std::vector<std::unique_ptr<NextBuffer>> next_;
  std::vector<unsigned char> member_;
  std::size_t frontier_size_ = 0;
};

}  // namespace blockgraph
