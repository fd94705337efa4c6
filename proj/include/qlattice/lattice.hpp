#pragma once

// Subset-lattice combinatorics: item sets as bit masks, colexicographic
// ranking within a level, and the overlap counts used by the level maps.

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace qlattice {

/// Largest item count supported by the simulator.
inline constexpr int kMaxItems = 24;

/// Exact binomial coefficient C(n, k). Zero when k < 0 or k > n.
/// Throws std::overflow_error if the value does not fit in 64 bits.
[[nodiscard]] std::uint64_t binom(int n, int k);

/// Multiplies two counts, throwing std::overflow_error on wraparound.
[[nodiscard]] std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
[[nodiscard]] std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);

/// A subset of the items {1, ..., N}. Item j is stored in bit j-1.
class ItemSet {
public:
  constexpr ItemSet() = default;
  ItemSet(int n, std::uint32_t bits);

  static ItemSet from_items(int n, std::initializer_list<int> items);
  static ItemSet from_items(int n, const std::vector<int> &items);
  static ItemSet empty(int n) { return ItemSet(n, 0); }
  /// The set {1, ..., k}.
  static ItemSet first_items(int n, int k);

  [[nodiscard]] constexpr int universe() const { return n_; }
  [[nodiscard]] constexpr std::uint32_t bits() const { return bits_; }
  [[nodiscard]] constexpr int level() const { return std::popcount(bits_); }
  [[nodiscard]] constexpr bool contains(int item) const {
    return item >= 1 && item <= n_ && ((bits_ >> (item - 1)) & 1u) != 0;
  }
  [[nodiscard]] constexpr bool is_subset_of(const ItemSet &other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  [[nodiscard]] ItemSet with(int item) const;
  [[nodiscard]] ItemSet without(int item) const;
  /// Items in ascending order, 1-based.
  [[nodiscard]] std::vector<int> items() const;
  /// "{1,3,4}"
  [[nodiscard]] std::string to_string() const;

  friend constexpr bool operator==(const ItemSet &, const ItemSet &) = default;
  friend constexpr auto operator<=>(const ItemSet &, const ItemSet &) = default;

private:
  int n_ = 0;
  std::uint32_t bits_ = 0;
};

/// Parses "{1,3,4}" (whitespace tolerated, "{}" is the empty set).
[[nodiscard]] ItemSet parse_item_set(std::string_view text, int n);

/// Cardinality of the intersection.
[[nodiscard]] int overlap(const ItemSet &a, const ItemSet &b);

/// Level i of the lattice over N items, holding C(N, i) sets.
struct LevelIndex {
  int n = 0;
  int level = 0;

  LevelIndex() = default;
  LevelIndex(int n_items, int lvl);
  [[nodiscard]] std::uint64_t size() const { return binom(n, level); }
  friend bool operator==(const LevelIndex &, const LevelIndex &) = default;
};

/// Colexicographic index of s among the sets of its cardinality.
[[nodiscard]] std::uint64_t rank(const ItemSet &s);
/// Inverse of rank. Throws std::out_of_range if r >= C(N, i).
[[nodiscard]] ItemSet unrank(const LevelIndex &level, std::uint64_t r);

/// Colex rank of a raw mask. No validation.
[[nodiscard]] std::uint64_t colex_rank(std::uint32_t bits);

/// All masks of the level in rank order.
[[nodiscard]] std::vector<std::uint32_t> level_masks(int n, int level);

/// Number of (i+1)-sets r with |r ∩ α| = k for a fixed i-set α.
[[nodiscard]] std::uint64_t n_k(int n, int i, int k);

/// Number of (i+1)-sets r with |r ∩ α| = k and |r ∩ β| = j, for fixed
/// i-sets α, β with |α ∩ β| = p.
[[nodiscard]] std::uint64_t n_pjk(int n, int i, int p, int j, int k);

/// Rank tables for one level, used by the recursive map evaluation.
/// subset_ranks[s * level + q] is the rank (at level - 1) of masks[s] with
/// its q-th smallest item removed.
struct LevelTable {
  int n = 0;
  int level = 0;
  std::vector<std::uint32_t> masks;
  std::vector<std::uint32_t> subset_ranks;

  [[nodiscard]] std::size_t size() const { return masks.size(); }
};

[[nodiscard]] LevelTable build_level_table(int n, int level);

/// Process-wide cache of level tables. Thread safe; tables are immutable
/// once published.
[[nodiscard]] std::shared_ptr<const LevelTable> level_table(int n, int level);

} // namespace qlattice
