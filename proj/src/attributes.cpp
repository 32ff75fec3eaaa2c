#include "blockgraph/attributes.hpp"

namespace blockgraph {

void AttributeStore::insert(std::string name, Scope scope, std::unique_ptr<Slot> slot) {
  if (slots_.contains(name)) throw ContractError("attribute '" + name + "' already defined");
  slot->scope = scope;
  slots_.emplace(std::move(name), std::move(slot));
}

std::size_t AttributeStore::array_bytes() const noexcept {
  std::size_t total = 0;
  for (const auto& [name, slot] : slots_) total += slot->bytes();
  return total;
}

}  // namespace blockgraph
