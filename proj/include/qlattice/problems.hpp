#pragma once

// Search problems on the lattice of item sets. A problem lists nogoods; a set
// is nogood iff it contains one of them, and a solution is a good set at the
// solution level L.

#include "qlattice/lattice.hpp"
#include "qlattice/random.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qlattice {

enum class ProblemOrigin { explicit_list, random_csp, random_3sat };

enum class Classification { good, nogood };

class Problem {
public:
  Problem() = default;
  /// Validates the nogoods (cardinality in [1, L], pairwise distinct) and
  /// builds the classification index.
  Problem(int n, int solution_level, std::vector<ItemSet> nogoods,
          ProblemOrigin origin = ProblemOrigin::explicit_list);

  [[nodiscard]] int items() const { return n_; }
  [[nodiscard]] int solution_level() const { return level_; }
  [[nodiscard]] const std::vector<ItemSet> &nogoods() const { return nogoods_; }
  [[nodiscard]] ProblemOrigin origin() const { return origin_; }

  /// For 3-SAT instances: variable count (items are 2n assignments).
  [[nodiscard]] int variables() const { return variables_; }
  void set_variables(int n) { variables_ = n; }

  /// Number of nogoods of cardinality 2.
  [[nodiscard]] int pair_nogood_count() const;

  [[nodiscard]] bool is_nogood(std::uint32_t bits) const {
    if ((bits & singles_) != 0)
      return true;
    for (std::uint32_t b = bits & has_pair_; b != 0; b &= b - 1)
      if ((pair_adj_[std::countr_zero(b)] & bits) != 0)
        return true;
    for (std::uint32_t m : larger_)
      if ((bits & m) == m)
        return true;
    return false;
  }

private:
  int n_ = 0;
  int level_ = 0;
  std::vector<ItemSet> nogoods_;
  ProblemOrigin origin_ = ProblemOrigin::explicit_list;
  int variables_ = 0;

  std::uint32_t singles_ = 0;
  std::uint32_t has_pair_ = 0;
  std::array<std::uint32_t, kMaxItems> pair_adj_{};
  std::vector<std::uint32_t> larger_;
};

[[nodiscard]] Classification classify(const ItemSet &s, const Problem &p);

/// m distinct 2-set nogoods drawn uniformly from the 2-sets not contained in
/// `solution`, which is therefore a solution. L = |solution|.
[[nodiscard]] Problem generate_random_csp(int n, int m, const ItemSet &solution,
                                          RandomStream &stream);

/// m distinct 2-set nogoods drawn uniformly from all C(N,2) pairs.
[[nodiscard]] Problem generate_unforced_csp(int n, int solution_level, int m,
                                            RandomStream &stream);

/// Random 3-SAT over n variables with c distinct clauses. Item 2v-1 means
/// "variable v true", item 2v means "variable v false". The n necessary
/// nogoods {2v-1, 2v} come first, then one 3-set nogood per clause (the
/// assignments that falsify it), each over three distinct variables.
[[nodiscard]] Problem generate_random_3sat(int n, int c, RandomStream &stream);

/// Number of 3-sets of assignments touching three distinct variables.
[[nodiscard]] std::uint64_t sat_clause_pool_size(int variables);

/// Renames item j to perm[j-1] (perm is a permutation of 1..N). Solution
/// counts and the quantum dynamics are unchanged; ordered searches are not.
[[nodiscard]] Problem permute_items(const Problem &p, const std::vector<int> &perm);

/// Uniformly random permutation of 1..n.
[[nodiscard]] std::vector<int> random_permutation(int n, RandomStream &stream);

/// Number of good sets at level L (backtracking with nogood pruning).
[[nodiscard]] std::uint64_t count_solutions(const Problem &p);
[[nodiscard]] bool is_soluble(const Problem &p);

/// Problem file: "N=<int> L=<int>", then one nogood per line as "{i,j,...}".
/// Lines starting with '#' are comments.
[[nodiscard]] Problem read_problem(std::istream &in);
[[nodiscard]] Problem read_problem_file(const std::string &path);
void write_problem(std::ostream &out, const Problem &p);

} // namespace qlattice
