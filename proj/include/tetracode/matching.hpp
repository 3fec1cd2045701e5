#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace tetracode {

struct WeightedEdge {
  int u = 0;
  int v = 0;
  std::int64_t weight = 0;
};

struct Matching {
  /// Matched node pairs with first < second, sorted.
  std::vector<std::pair<int, int>> pairs;
  std::int64_t total_weight = 0;
};

/// Minimum-weight perfect matching on an arbitrary graph (Edmonds blossom,
/// O(n^3)). Weights must be non-negative. Returns nullopt when the graph has
/// no perfect matching; throws ContractError on an odd node count.
std::optional<Matching> min_weight_perfect_matching(int node_count, const std::vector<WeightedEdge>& edges);

/// Maximum-weight matching; with `max_cardinality` only maximum-cardinality
/// matchings are considered. Returns mate[v] or -1.
std::vector<int> max_weight_matching(int node_count, const std::vector<WeightedEdge>& edges, bool max_cardinality);

}  // namespace tetracode
