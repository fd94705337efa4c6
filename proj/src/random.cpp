#include "qlattice/random.hpp"

#include <stdexcept>

namespace qlattice {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = splitmix64(master);
  for (std::uint64_t x : path)
    s = splitmix64(s ^ splitmix64(x + 1));
  return s;
}

std::uint64_t RandomStream::uniform_index(std::uint64_t bound) {
  if (bound == 0)
    throw std::invalid_argument("uniform_index: empty range");
  // Largest multiple of bound that fits; values at or above it are rejected.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = 0;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % bound;
}

} // namespace qlattice
