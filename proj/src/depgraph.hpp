#pragma once

#include <cstddef>
#include <vector>

namespace mucalc::detail {

// Dependency graph over prefixed formulas. var[u] is the index of the
// variable node u carries (-1 for other formulas).
struct DepGraph {
  const std::vector<std::vector<int>>* out = nullptr;
  std::vector<int> var;
};

// True when some least variable x has a ->x cycle through an x-node, or (if
// kappa is finite) a ->x path with more than kappa x-nodes. Edges leaving a
// node of a variable above x do not count for x.
bool lfp_closed(const DepGraph& g, const std::vector<bool>& least,
                const std::vector<std::vector<bool>>& above, std::size_t kappa);

inline constexpr std::size_t kCyclesOnly = static_cast<std::size_t>(-1);

}  // namespace mucalc::detail
