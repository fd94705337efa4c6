#pragma once

// Ensemble predictions for random problems with binary nogoods.
// All logarithms are natural.

namespace qlattice::theory {

struct EnsembleParams {
  double b = 2;    // values per variable, >= 2
  double beta = 0; // nogood density m/N, >= 0
  int n = 0;       // item count
};

/// -x ln x - (1-x) ln(1-x); 0 at the endpoints.
[[nodiscard]] double entropy_h(double x);

/// Probability that a fixed level-L set is a solution when m pairs are drawn
/// without replacement from all C(N,2):
/// C(C(N,2)-C(L,2), m) / C(C(N,2), m).
[[nodiscard]] double rho_L(int n, int l, int m);

/// N (h(1/b) + beta ln(1 - 1/b^2)).
[[nodiscard]] double ln_nsoln_asymptotic(const EnsembleParams &params);

/// Density at which the expected solution count crosses one:
/// -h(1/b) / ln(1 - 1/b^2).
[[nodiscard]] double beta_crit(double b);

/// Upper density of the polynomial-cost regime:
/// ((1 - b^2) / (2b)) ln(1/(b-1)).
[[nodiscard]] double beta_poly(double b);

} // namespace qlattice::theory
