#include "qlattice/lattice.hpp"

#include <array>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace qlattice {

namespace {

constexpr int kTableRows = 65;

using BinomTable = std::array<std::array<std::uint64_t, kTableRows>, kTableRows>;

// Pascal's triangle; every entry with n <= 64 fits in 64 bits.
const BinomTable &binom_table() {
  static const BinomTable table = [] {
    BinomTable t{};
    for (int n = 0; n < kTableRows; ++n) {
      t[n][0] = 1;
      for (int k = 1; k <= n; ++k)
        t[n][k] = t[n - 1][k - 1] + (k < n ? t[n - 1][k] : 0);
    }
    return t;
  }();
  return table;
}

// Small binomials as used by the rank arithmetic (n, k <= kMaxItems).
struct SmallBinom {
  std::array<std::array<std::uint32_t, kMaxItems + 2>, kMaxItems + 1> v{};
  SmallBinom() {
    const auto &t = binom_table();
    for (int n = 0; n <= kMaxItems; ++n)
      for (int k = 0; k <= kMaxItems + 1; ++k)
        v[n][k] = k <= n ? static_cast<std::uint32_t>(t[n][k]) : 0u;
  }
};

const SmallBinom &small_binom() {
  static const SmallBinom sb;
  return sb;
}

void check_universe(int n) {
  if (n < 0 || n > kMaxItems)
    throw std::invalid_argument("item count must be in [0, " +
                                std::to_string(kMaxItems) + "], got " +
                                std::to_string(n));
}

} // namespace

std::uint64_t binom(int n, int k) {
  if (n < 0)
    throw std::invalid_argument("binom: n must be nonnegative");
  if (k < 0 || k > n)
    return 0;
  if (n < kTableRows)
    return binom_table()[n][k];
  if (k > n - k)
    k = n - k;
  unsigned __int128 r = 1;
  for (int t = 1; t <= k; ++t) {
    r = r * static_cast<unsigned>(n - k + t) / static_cast<unsigned>(t);
    if (r > std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("binom(" + std::to_string(n) + ", " +
                                std::to_string(k) + ") overflows 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out))
    throw std::overflow_error("count product overflows 64 bits");
  return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out))
    throw std::overflow_error("count sum overflows 64 bits");
  return out;
}

ItemSet::ItemSet(int n, std::uint32_t bits) : n_(n), bits_(bits) {
  check_universe(n);
  if (n < 32 && (bits >> n) != 0)
    throw std::invalid_argument("item set has bits beyond item " +
                                std::to_string(n));
}

ItemSet ItemSet::from_items(int n, std::initializer_list<int> items) {
  return from_items(n, std::vector<int>(items));
}

ItemSet ItemSet::from_items(int n, const std::vector<int> &items) {
  check_universe(n);
  std::uint32_t bits = 0;
  for (int item : items) {
    if (item < 1 || item > n)
      throw std::invalid_argument("item " + std::to_string(item) +
                                  " outside 1.." + std::to_string(n));
    bits |= 1u << (item - 1);
  }
  return ItemSet(n, bits);
}

ItemSet ItemSet::first_items(int n, int k) {
  if (k < 0 || k > n)
    throw std::invalid_argument("first_items: k outside [0, n]");
  return ItemSet(n, k == 0 ? 0u : (k >= 32 ? ~0u : ((1u << k) - 1u)));
}

ItemSet ItemSet::with(int item) const {
  if (item < 1 || item > n_)
    throw std::invalid_argument("item outside universe");
  return ItemSet(n_, bits_ | (1u << (item - 1)));
}

ItemSet ItemSet::without(int item) const {
  if (item < 1 || item > n_)
    throw std::invalid_argument("item outside universe");
  return ItemSet(n_, bits_ & ~(1u << (item - 1)));
}

std::vector<int> ItemSet::items() const {
  std::vector<int> out;
  out.reserve(level());
  for (std::uint32_t b = bits_; b != 0; b &= b - 1)
    out.push_back(std::countr_zero(b) + 1);
  return out;
}

std::string ItemSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int item : items()) {
    if (!first)
      out += ',';
    out += std::to_string(item);
    first = false;
  }
  out += '}';
  return out;
}

ItemSet parse_item_set(std::string_view text, int n) {
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!text.empty() && is_space(text.front()))
    text.remove_prefix(1);
  while (!text.empty() && is_space(text.back()))
    text.remove_suffix(1);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw std::invalid_argument("malformed item set: '" + std::string(text) +
                                "'");
  text = text.substr(1, text.size() - 2);
  std::vector<int> items;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(
        pos, comma == std::string_view::npos ? std::string_view::npos
                                             : comma - pos);
    std::string t;
    for (char c : tok)
      if (!is_space(c))
        t += c;
    if (t.empty()) {
      if (comma == std::string_view::npos && items.empty() && pos == 0)
        break;
      throw std::invalid_argument("empty item in set");
    }
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(t, &used);
    } catch (const std::exception &) {
      throw std::invalid_argument("bad item '" + t + "'");
    }
    if (used != t.size())
      throw std::invalid_argument("bad item '" + t + "'");
    items.push_back(value);
    if (comma == std::string_view::npos)
      break;
    pos = comma + 1;
  }
  ItemSet s = ItemSet::from_items(n, items);
  if (static_cast<std::size_t>(s.level()) != items.size())
    throw std::invalid_argument("duplicate item in set");
  return s;
}

int overlap(const ItemSet &a, const ItemSet &b) {
  if (a.universe() != b.universe())
    throw std::invalid_argument("overlap: sets over different universes");
  return std::popcount(a.bits() & b.bits());
}

LevelIndex::LevelIndex(int n_items, int lvl) : n(n_items), level(lvl) {
  check_universe(n_items);
  if (lvl < 0 || lvl > n_items)
    throw std::invalid_argument("level outside [0, N]");
}

std::uint64_t colex_rank(std::uint32_t bits) {
  const auto &sb = small_binom();
  std::uint64_t r = 0;
  int m = 1;
  for (std::uint32_t b = bits; b != 0; b &= b - 1, ++m)
    r += sb.v[std::countr_zero(b)][m];
  return r;
}

std::uint64_t rank(const ItemSet &s) { return colex_rank(s.bits()); }

ItemSet unrank(const LevelIndex &level, std::uint64_t r) {
  if (r >= level.size())
    throw std::out_of_range("unrank: rank " + std::to_string(r) +
                            " outside level of size " +
                            std::to_string(level.size()));
  std::uint32_t bits = 0;
  int c = level.n - 1;
  for (int m = level.level; m >= 1; --m) {
    while (binom(c, m) > r)
      --c;
    bits |= 1u << c;
    r -= binom(c, m);
    --c;
  }
  return ItemSet(level.n, bits);
}

std::vector<std::uint32_t> level_masks(int n, int level) {
  LevelIndex idx(n, level);
  std::vector<std::uint32_t> out;
  out.reserve(idx.size());
  if (level == 0) {
    out.push_back(0);
    return out;
  }
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t x = (std::uint64_t{1} << level) - 1;
  while (x < limit) {
    out.push_back(static_cast<std::uint32_t>(x));
    // Gosper's hack: next larger integer with the same popcount.
    std::uint64_t c = x & (~x + 1);
    std::uint64_t r = x + c;
    x = (((r ^ x) >> 2) / c) | r;
  }
  return out;
}

std::uint64_t n_k(int n, int i, int k) {
  return checked_mul(binom(i, k), binom(n - i, i + 1 - k));
}

std::uint64_t n_pjk(int n, int i, int p, int j, int k) {
  const int rest = n - 2 * i + p;
  if (rest < 0 || i - p < 0)
    return 0;
  std::uint64_t total = 0;
  for (int x = 0; x <= p; ++x) {
    std::uint64_t term = checked_mul(
        checked_mul(binom(i - p, k - x), binom(p, x)),
        checked_mul(binom(i - p, j - x), binom(rest, i + 1 - j - k + x)));
    total = checked_add(total, term);
  }
  return total;
}

LevelTable build_level_table(int n, int level) {
  LevelTable t;
  t.n = n;
  t.level = level;
  t.masks = level_masks(n, level);
  if (level == 0)
    return t;
  const auto &sb = small_binom();
  t.subset_ranks.resize(t.masks.size() * static_cast<std::size_t>(level));
  std::array<int, kMaxItems> elems{};
  std::array<std::uint32_t, kMaxItems + 1> prefix{};
  std::array<std::uint32_t, kMaxItems + 1> suffix{};
  for (std::size_t s = 0; s < t.masks.size(); ++s) {
    int m = 0;
    for (std::uint32_t b = t.masks[s]; b != 0; b &= b - 1)
      elems[m++] = std::countr_zero(b);
    // Removing position q shifts later items down one place.
    prefix[0] = 0;
    for (int q = 0; q < level; ++q)
      prefix[q + 1] = prefix[q] + sb.v[elems[q]][q + 1];
    suffix[level] = 0;
    for (int q = level - 1; q >= 0; --q)
      suffix[q] = suffix[q + 1] + sb.v[elems[q]][q];
    std::uint32_t *out = &t.subset_ranks[s * level];
    for (int q = 0; q < level; ++q)
      out[q] = prefix[q] + suffix[q + 1];
  }
  return t;
}

std::shared_ptr<const LevelTable> level_table(int n, int level) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const LevelTable>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find({n, level});
    if (it != cache.end())
      return it->second;
  }
  auto table = std::make_shared<const LevelTable>(build_level_table(n, level));
  std::lock_guard lock(mu);
  auto [it, inserted] = cache.emplace(std::pair{n, level}, std::move(table));
  return it->second;
}

} // namespace qlattice
