#include "qlattice/theory.hpp"

#include "qlattice/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qlattice::theory {

namespace {

void check_b(double b) {
  if (!(b >= 2))
    throw std::invalid_argument("values per variable b must be >= 2");
}

} // namespace

double entropy_h(double x) {
  if (!(x >= 0 && x <= 1))
    throw std::domain_error("entropy_h: argument outside [0, 1]");
  if (x == 0 || x == 1)
    return 0;
  return -x * std::log(x) - (1 - x) * std::log1p(-x);
}

double rho_L(int n, int l, int m) {
  const auto pairs = binom(n, 2);
  const auto inside = binom(l, 2);
  if (m < 0 || static_cast<std::uint64_t>(m) > pairs - inside)
    throw std::invalid_argument("rho_L: m=" + std::to_string(m) +
                                " outside [0, C(N,2)-C(L,2)]");
  // prod_{q<m} (P - Q - q) / (P - q)
  double rho = 1;
  const double p = static_cast<double>(pairs);
  const double q = static_cast<double>(inside);
  for (int t = 0; t < m; ++t)
    rho *= (p - q - t) / (p - t);
  return rho;
}

double ln_nsoln_asymptotic(const EnsembleParams &params) {
  check_b(params.b);
  const double b = params.b;
  return params.n * (entropy_h(1 / b) + params.beta * std::log1p(-1 / (b * b)));
}

double beta_crit(double b) {
  check_b(b);
  return -entropy_h(1 / b) / std::log1p(-1 / (b * b));
}

double beta_poly(double b) {
  check_b(b);
  const double v = (1 - b * b) / (2 * b) * std::log(1 / (b - 1));
  return v == 0 ? 0.0 : v; // no negative zero at b = 2
}

} // namespace qlattice::theory
