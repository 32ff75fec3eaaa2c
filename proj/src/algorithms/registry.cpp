#include <algorithm>
#include <array>

#include "blockgraph/algorithms.hpp"

namespace blockgraph::algorithms {
namespace {
constexpr std::array<std::string_view, 5> kNames{"pagerank", "sv", "cc", "bfs", "tc"};
}

bool is_registered(std::string_view name) { return std::find(kNames.begin(), kNames.end(), name) != kNames.end(); }

std::vector<std::string_view> registered_names() { return {kNames.begin(), kNames.end()}; }

}  // namespace blockgraph::algorithms
