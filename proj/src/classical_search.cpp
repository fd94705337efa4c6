#include "qlattice/classical_search.hpp"

namespace qlattice {

namespace {

struct Search {
  const Problem &problem;
  std::uint64_t cost = 0;
  std::uint32_t found_bits = 0;

  // Returns true once a solution is found. `bits` has already been counted.
  bool expand(std::uint32_t bits, int next, int level) {
    if (level == problem.solution_level()) {
      found_bits = bits;
      return true;
    }
    for (int item = next; item < problem.items(); ++item) {
      const std::uint32_t child = bits | (1u << item);
      ++cost;
      if (problem.is_nogood(child))
        continue;
      if (expand(child, item + 1, level + 1))
        return true;
    }
    return false;
  }
};

} // namespace

BacktrackReport backtrack_cost(const Problem &p) {
  Search search{p};
  BacktrackReport report;
  search.cost = 1; // the empty root
  if (!p.is_nogood(0) && search.expand(0, 0, 0)) {
    report.found = true;
    report.solution = ItemSet(p.items(), search.found_bits);
  }
  report.cost = search.cost;
  return report;
}

} // namespace qlattice
