#pragma once

// Reproducible random streams.
//
// Seeding rule: a stream is identified by a 64-bit master seed and a path of
// indices (e.g. point, instance, purpose). Its engine seed is obtained by
// folding the path into the master seed with SplitMix64:
//
//   s = splitmix64(master)
//   for each index x in the path: s = splitmix64(s ^ splitmix64(x + 1))
//
// and the engine is std::mt19937_64 seeded with s. Integer and real variates
// are produced from raw 64-bit engine outputs by the fixed mappings below, not
// by the <random> distributions, whose output is implementation defined.

#include <cstdint>
#include <initializer_list>
#include <random>

namespace qlattice {

[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x);

/// Seed for the stream at `path` under `master`.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master,
                                        std::initializer_list<std::uint64_t> path);

class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  static RandomStream derived(std::uint64_t master,
                              std::initializer_list<std::uint64_t> path) {
    return RandomStream(derive_seed(master, path));
  }

  /// Independent child stream; does not advance this stream.
  [[nodiscard]] RandomStream child(std::uint64_t index) const {
    return RandomStream(derive_seed(seed_, {index}));
  }

  [[nodiscard]] std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, bound). Rejection sampling, no modulo bias.
  std::uint64_t uniform_index(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

} // namespace qlattice
