#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <typeinfo>
#include <utility>
#include <vector>

#include "blockgraph/block.hpp"
#include "blockgraph/errors.hpp"
#include "blockgraph/types.hpp"

namespace blockgraph {

// Named vertex, edge and global attributes of one algorithm run. Arrays are
// stored by pointer, so spans handed out stay valid when the store moves.
// Kernels must not add attributes while a run is dispatching.
class AttributeStore {
 public:
  AttributeStore() = default;
  AttributeStore(VertexId num_vertices, EdgeId num_edges)
      : num_vertices_(num_vertices), num_edges_(num_edges) {}

  VertexId num_vertices() const noexcept { return num_vertices_; }
  EdgeId num_edges() const noexcept { return num_edges_; }

  template <class T>
  std::span<T> add_vertex(std::string name, T init = T{}) {
    return add_array<T>(Scope::vertex, std::move(name), static_cast<std::size_t>(num_vertices_), init);
  }
  template <class T>
  std::span<T> add_edge(std::string name, T init = T{}) {
    return add_array<T>(Scope::edge, std::move(name), static_cast<std::size_t>(num_edges_), init);
  }
  template <class T>
  std::span<T> add_global_array(std::string name, std::size_t size, T init = T{}) {
    return add_array<T>(Scope::global, std::move(name), size, init);
  }
  // Global scalar or object (queues, counters).
  template <class T>
  T& add_global(std::string name, T value) {
    auto slot = std::make_unique<ValueSlot<T>>(std::move(value));
    T& ref = slot->value;
    insert(std::move(name), Scope::global, std::move(slot));
    return ref;
  }

  template <class T>
  std::span<T> vertex(std::string_view name) {
    return array<T>(name, Scope::vertex);
  }
  template <class T>
  std::span<T> edge(std::string_view name) {
    return array<T>(name, Scope::edge);
  }
  template <class T>
  std::span<T> global_array(std::string_view name) {
    return array<T>(name, Scope::global);
  }
  template <class T>
  T& global(std::string_view name) {
    return typed<ValueSlot<T>>(name, Scope::global).value;
  }
  template <class T>
  const T& global(std::string_view name) const {
    return const_cast<AttributeStore*>(this)->global<T>(name);
  }
  template <class T>
  std::span<const T> vertex(std::string_view name) const {
    return const_cast<AttributeStore*>(this)->vertex<T>(name);
  }

  // Vertex attribute restricted to a block interval: index x addresses the
  // vertex interval.begin + x. Writes land in the global array.
  template <class T>
  std::span<T> view(std::string_view name, const Interval& interval) {
    return vertex<T>(name).subspan(static_cast<std::size_t>(interval.begin),
                                   static_cast<std::size_t>(interval.size()));
  }

  bool contains(std::string_view name) const { return slots_.find(name) != slots_.end(); }

  // Total bytes held in vertex, edge and global arrays.
  std::size_t array_bytes() const noexcept;

 private:
  enum class Scope { vertex, edge, global };

  struct Slot {
    virtual ~Slot() = default;
    virtual std::size_t bytes() const noexcept = 0;
    Scope scope = Scope::global;
  };
  template <class T>
  struct ArraySlot final : Slot {
    std::vector<T> data;
    std::size_t bytes() const noexcept override { return data.size() * sizeof(T); }
  };
  template <class T>
  struct ValueSlot final : Slot {
    explicit ValueSlot(T v) : value(std::move(v)) {}
    T value;
    std::size_t bytes() const noexcept override { return 0; }
  };

  template <class T>
  std::span<T> add_array(Scope scope, std::string name, std::size_t size, const T& init) {
    auto slot = std::make_unique<ArraySlot<T>>();
    slot->data.assign(size, init);
    std::span<T> out(slot->data);
    insert(std::move(name), scope, std::move(slot));
    return out;
  }

  template <class T>
  std::span<T> array(std::string_view name, Scope scope) {
    return typed<ArraySlot<T>>(name, scope).data;
  }

  template <class S>
  S& typed(std::string_view name, Scope scope) {
    auto it = slots_.find(name);
    if (it == slots_.end()) throw ContractError("unknown attribute '" + std::string(name) + "'");
    auto* slot = dynamic_cast<S*>(it->second.get());
    if (slot == nullptr || slot->scope != scope) {
      throw ContractError("attribute '" + std::string(name) + "' has a different type or scope");
    }
    return *slot;
  }

  void insert(std::string name, Scope scope, std::unique_ptr<Slot> slot);

  VertexId num_vertices_ = 0;
  EdgeId num_edges_ = 0;
  std::map<std::string, std::unique_ptr<Slot>, std::less<>> slots_;
};

}  // namespace blockgraph
