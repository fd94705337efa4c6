#include "qlattice/problems.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qlattice {

namespace {

// Partial Fisher-Yates: the first m entries of pool become a uniform sample
// without replacement.
template <class T>
void sample_prefix(std::vector<T> &pool, std::size_t m, RandomStream &stream) {
  for (std::size_t t = 0; t < m; ++t) {
    const std::size_t j = t + stream.uniform_index(pool.size() - t);
    std::swap(pool[t], pool[j]);
  }
}

std::vector<ItemSet> sorted_by_rank(int n, std::vector<std::uint32_t> masks) {
  std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    const int la = std::popcount(a), lb = std::popcount(b);
    if (la != lb)
      return la < lb;
    return colex_rank(a) < colex_rank(b);
  });
  std::vector<ItemSet> out;
  out.reserve(masks.size());
  for (std::uint32_t m : masks)
    out.emplace_back(n, m);
  return out;
}

template <class Visit>
bool enumerate_solutions(const Problem &p, std::uint32_t current, int next,
                         int level, Visit &visit) {
  const int n = p.items();
  const int target = p.solution_level();
  if (level == target)
    return visit(current);
  for (int item = next; item < n && n - item >= target - level; ++item) {
    const std::uint32_t ext = current | (1u << item);
    if (p.is_nogood(ext))
      continue;
    if (!enumerate_solutions(p, ext, item + 1, level + 1, visit))
      return false;
  }
  return true;
}

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

} // namespace

Problem::Problem(int n, int solution_level, std::vector<ItemSet> nogoods,
                 ProblemOrigin origin)
    : n_(n), level_(solution_level), nogoods_(std::move(nogoods)),
      origin_(origin) {
  if (n < 1 || n > kMaxItems)
    throw std::invalid_argument("problem: N must be in [1, " +
                                std::to_string(kMaxItems) + "]");
  if (solution_level < 0 || solution_level > n)
    throw std::invalid_argument("problem: L must be in [0, N]");
  std::set<std::uint32_t> seen;
  for (const auto &s : nogoods_) {
    if (s.universe() != n)
      throw std::invalid_argument("problem: nogood " + s.to_string() +
                                  " is over a different item count");
    if (s.level() < 1 || s.level() > solution_level)
      throw std::invalid_argument("problem: nogood " + s.to_string() +
                                  " must have cardinality in [1, L]");
    if (!seen.insert(s.bits()).second)
      throw std::invalid_argument("problem: duplicate nogood " + s.to_string());
    const std::uint32_t b = s.bits();
    switch (s.level()) {
    case 1:
      singles_ |= b;
      break;
    case 2: {
      const int lo = std::countr_zero(b);
      const int hi = 31 - std::countl_zero(b);
      pair_adj_[lo] |= 1u << hi;
      pair_adj_[hi] |= 1u << lo;
      has_pair_ |= b;
      break;
    }
    default:
      larger_.push_back(b);
    }
  }
}

int Problem::pair_nogood_count() const {
  return static_cast<int>(std::count_if(nogoods_.begin(), nogoods_.end(),
                                        [](const ItemSet &s) { return s.level() == 2; }));
}

Classification classify(const ItemSet &s, const Problem &p) {
  if (s.universe() != p.items())
    throw std::invalid_argument("classify: set over a different item count");
  return p.is_nogood(s.bits()) ? Classification::nogood : Classification::good;
}

Problem generate_random_csp(int n, int m, const ItemSet &solution,
                            RandomStream &stream) {
  if (solution.universe() != n)
    throw std::invalid_argument("generate_random_csp: solution universe mismatch");
  if (m < 0)
    throw std::invalid_argument("generate_random_csp: m must be nonnegative");
  std::vector<std::uint32_t> pool;
  for (std::uint32_t pair : level_masks(n, 2))
    if ((pair & ~solution.bits()) != 0)
      pool.push_back(pair);
  if (static_cast<std::size_t>(m) > pool.size())
    throw std::invalid_argument(
        "generate_random_csp: m=" + std::to_string(m) + " exceeds the " +
        std::to_string(pool.size()) + " pairs outside the prespecified solution");
  sample_prefix(pool, static_cast<std::size_t>(m), stream);
  pool.resize(static_cast<std::size_t>(m));
  return Problem(n, solution.level(), sorted_by_rank(n, std::move(pool)),
                 ProblemOrigin::random_csp);
}

Problem generate_unforced_csp(int n, int solution_level, int m,
                              RandomStream &stream) {
  if (m < 0)
    throw std::invalid_argument("generate_unforced_csp: m must be nonnegative");
  std::vector<std::uint32_t> pool = level_masks(n, 2);
  if (static_cast<std::size_t>(m) > pool.size())
    throw std::invalid_argument("generate_unforced_csp: m exceeds C(N,2)");
  sample_prefix(pool, static_cast<std::size_t>(m), stream);
  pool.resize(static_cast<std::size_t>(m));
  return Problem(n, solution_level, sorted_by_rank(n, std::move(pool)),
                 ProblemOrigin::random_csp);
}

std::uint64_t sat_clause_pool_size(int variables) {
  return checked_mul(binom(variables, 3), 8);
}

Problem generate_random_3sat(int n, int c, RandomStream &stream) {
  if (n < 2 || 2 * n > kMaxItems)
    throw std::invalid_argument("generate_random_3sat: need 2 <= n <= " +
                                std::to_string(kMaxItems / 2));
  if (c < 0 || static_cast<std::uint64_t>(c) > sat_clause_pool_size(n))
    throw std::invalid_argument("generate_random_3sat: c=" + std::to_string(c) +
                                " exceeds the " +
                                std::to_string(sat_clause_pool_size(n)) +
                                " distinct clauses");
  const int items = 2 * n;
  // Pool order: variable triples in colex order, then sign pattern 0..7.
  std::vector<std::uint32_t> pool;
  pool.reserve(sat_clause_pool_size(n));
  for (std::uint32_t triple : n >= 3 ? level_masks(n, 3) : std::vector<std::uint32_t>{}) {
    int vars[3];
    int t = 0;
    for (std::uint32_t b = triple; b != 0; b &= b - 1)
      vars[t++] = std::countr_zero(b);
    for (unsigned pattern = 0; pattern < 8; ++pattern) {
      std::uint32_t mask = 0;
      for (int q = 0; q < 3; ++q) {
        // bit set: the nogood contains "variable false"
        const int item = 2 * vars[q] + static_cast<int>((pattern >> q) & 1u);
        mask |= 1u << item;
      }
      pool.push_back(mask);
    }
  }
  sample_prefix(pool, static_cast<std::size_t>(c), stream);
  pool.resize(static_cast<std::size_t>(c));

  std::vector<ItemSet> nogoods;
  nogoods.reserve(n + c);
  for (int v = 0; v < n; ++v)
    nogoods.emplace_back(items, 3u << (2 * v));
  for (const auto &s : sorted_by_rank(items, std::move(pool)))
    nogoods.push_back(s);
  Problem p(items, n, std::move(nogoods), ProblemOrigin::random_3sat);
  p.set_variables(n);
  return p;
}

Problem permute_items(const Problem &p, const std::vector<int> &perm) {
  const int n = p.items();
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("permute_items: permutation has the wrong length");
  std::uint32_t seen = 0;
  for (int v : perm) {
    if (v < 1 || v > n || ((seen >> (v - 1)) & 1u) != 0)
      throw std::invalid_argument("permute_items: not a permutation of 1..N");
    seen |= 1u << (v - 1);
  }
  std::vector<ItemSet> renamed;
  renamed.reserve(p.nogoods().size());
  for (const auto &g : p.nogoods()) {
    std::uint32_t bits = 0;
    for (int item : g.items())
      bits |= 1u << (perm[item - 1] - 1);
    renamed.emplace_back(n, bits);
  }
  Problem out(n, p.solution_level(), std::move(renamed), p.origin());
  out.set_variables(p.variables());
  return out;
}

std::vector<int> random_permutation(int n, RandomStream &stream) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    perm[j] = j + 1;
  for (int j = n - 1; j > 0; --j)
    std::swap(perm[j], perm[stream.uniform_index(static_cast<std::uint64_t>(j) + 1)]);
  return perm;
}

std::uint64_t count_solutions(const Problem &p) {
  std::uint64_t count = 0;
  auto visit = [&](std::uint32_t) {
    ++count;
    return true;
  };
  if (!p.is_nogood(0))
    enumerate_solutions(p, 0, 0, 0, visit);
  return count;
}

bool is_soluble(const Problem &p) {
  bool found = false;
  auto visit = [&](std::uint32_t) {
    found = true;
    return false;
  };
  if (!p.is_nogood(0))
    enumerate_solutions(p, 0, 0, 0, visit);
  return found;
}

Problem read_problem(std::istream &in) {
  std::string line;
  int n = -1, l = -1;
  std::vector<ItemSet> nogoods;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#')
      continue;
    if (n < 0) {
      char extra = 0;
      if (std::sscanf(t.c_str(), "N=%d L=%d %c", &n, &l, &extra) != 2)
        throw std::invalid_argument("problem file line " + std::to_string(lineno) +
                                    ": expected 'N=<int> L=<int>'");
      continue;
    }
    try {
      nogoods.push_back(parse_item_set(t, n));
    } catch (const std::invalid_argument &e) {
      throw std::invalid_argument("problem file line " + std::to_string(lineno) +
                                  ": " + e.what());
    }
  }
  if (n < 0)
    throw std::invalid_argument("problem file: missing 'N=<int> L=<int>' header");
  return Problem(n, l, std::move(nogoods));
}

Problem read_problem_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open problem file '" + path + "'");
  return read_problem(in);
}

void write_problem(std::ostream &out, const Problem &p) {
  out << "N=" << p.items() << " L=" << p.solution_level() << '\n';
  for (const auto &s : p.nogoods())
    out << s.to_string() << '\n';
}

} // namespace qlattice
