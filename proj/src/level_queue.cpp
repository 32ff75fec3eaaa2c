#include "blockgraph/level_queue.hpp"

#include <algorithm>
#include <stdexcept>

namespace blockgraph {

LevelQueue::LevelQueue(std::vector<VertexId> cuts) : cuts_(std::move(cuts)) {
  const auto p = static_cast<std::size_t>(parts());
  current_.resize(p);
  next_.reserve(p);
  for (std::size_t j = 0; j < p; ++j) {
    auto buffer = std::make_unique<NextBuffer>();
    buffer->capacity = static_cast<std::size_t>(cuts_[j + 1] - cuts_[j]);
    buffer->slots = std::make_unique<VertexId[]>(buffer->capacity);
    next_.push_back(std::move(buffer));
  }
  member_.assign(static_cast<std::size_t>(cuts_.back()), 0);
}

PartId LevelQueue::part_of(VertexId v) const noexcept {
  auto it = std::upper_bound(cuts_.begin(), cuts_.end(), v);
  return static_cast<PartId>(it - cuts_.begin()) - 1;
}

void LevelQueue::push(PartId part, VertexId v) {
  auto& buffer = *next_[static_cast<std::size_t>(part)];
  const std::size_t slot = buffer.count.fetch_add(1, std::memory_order_relaxed);
  if (slot >= buffer.capacity) throw std::logic_error("level queue overflow: vertex pushed twice in one level");
  buffer.slots[slot] = v;
}

void LevelQueue::push(VertexId v) { push(part_of(v), v); }

void LevelQueue::reset(std::span<const VertexId> vertices) {
  for (auto& level : current_) {
    for (VertexId v : level) member_[static_cast<std::size_t>(v)] = 0;
    level.clear();
  }
  for (VertexId v : vertices) {
    current_[static_cast<std::size_t>(part_of(v))].push_back(v);
    member_[static_cast<std::size_t>(v)] = 1;
  }
  for (auto& level : current_) std::sort(level.begin(), level.end());
  for (auto& buffer : next_) buffer->count.store(0);
  frontier_size_ = vertices.size();
}

std::size_t LevelQueue::advance() {
  frontier_size_ = 0;
  for (std::size_t j = 0; j < current_.size(); ++j) {
    auto& level = current_[j];
    for (VertexId v : level) member_[static_cast<std::size_t>(v)] = 0;
    auto& buffer = *next_[j];
    const std::size_t count = std::min(buffer.count.exchange(0), buffer.capacity);
    level.assign(buffer.slots.get(), buffer.slots.get() + count);
    std::sort(level.begin(), level.end());
    for (VertexId v : level) member_[static_cast<std::size_t>(v)] = 1;
    frontier_size_ += level.size();
  }
  return frontier_size_;
}

}  // namespace blockgraph
