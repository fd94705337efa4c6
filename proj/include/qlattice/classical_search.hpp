#pragma once

#include "qlattice/problems.hpp"

#include <cstdint>
#include <optional>

namespace qlattice {

struct BacktrackReport {
  /// Sets visited, counting the empty root and pruned nogoods.
  std::uint64_t cost = 0;
  bool found = false;
  std::optional<ItemSet> solution;
};

/// Chronological backtracking from the empty set. Each node is extended by
/// items larger than its maximum, in ascending order; nogood nodes are pruned
/// and the search stops at the first good set of size L.
[[nodiscard]] BacktrackReport backtrack_cost(const Problem &p);

} // namespace qlattice
