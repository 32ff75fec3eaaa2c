#include "blockgraph/algorithm.hpp"

#include "blockgraph/errors.hpp"

namespace blockgraph {

void AlgorithmSpec::validate() const {
  const std::string label = name.empty() ? "algorithm" : "algorithm '" + name + "'";
  if (!host_kernel && !device_kernel) throw ConfigError(label + " defines neither a host nor a device kernel");
  if (static_cast<bool>(generic_predicate) == static_cast<bool>(custom_composer)) {
    throw ConfigError(label + " must define exactly one of the generic predicate and the custom composer");
  }
  if (!after_iteration) throw ConfigError(label + " has no termination hook");
  if (list_size == 0) throw ConfigError(label + " has block-list size 0");
}

}  // namespace blockgraph
