#pragma once

// The problem-independent map from lattice level i to level i+1.
//
// The closest matrix with orthonormal columns to the ideal superset map has
// entries that depend only on the overlap of the row and column sets:
// U(r, alpha) = a[|r ∩ alpha|]. The i+1 coefficients are found by solving
// the orthonormality conditions in overlap coordinates (solve_coefficients);
// an explicit SVD of the ideal matrix serves as the independent oracle at
// small N (closest_unitary_oracle).

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace qlattice {

struct MapCoefficients {
  int n = 0;
  int level = 0;         // source level i
  std::vector<double> a; // a[k], k = overlap, 0..i
};

struct ScaledCoefficients {
  std::vector<double> b; // b[k] = (-1)^k a[i-k] sqrt(n_{i-k})
};

struct CoefficientResiduals {
  double normalization = 0;         // |sum_k n_k a_k^2 - 1|
  std::vector<double> orthogonality; // |sum_jk n_pjk a_j a_k|, p = 0..i-1

  [[nodiscard]] double max_orthogonality() const;
  [[nodiscard]] double max_abs() const;
};

/// True when a map from level i to i+1 exists for N items: i+1 <= ceil(N/2).
[[nodiscard]] bool map_level_allowed(int n, int i);

/// 0/1 matrix of shape C(N,i+1) x C(N,i); entry (r, alpha) is 1 iff
/// alpha ⊂ r. Rows and columns follow colex rank. Requires N <= 12.
[[nodiscard]] Eigen::MatrixXd ideal_matrix(int n, int i);

struct OracleResult {
  Eigen::MatrixXd u;
  std::vector<double> a;
  /// Largest spread among entries of u sharing the same overlap.
  double max_same_overlap_deviation = 0;
};

/// Polar factor of the ideal matrix via SVD (M = A S B^T, U = A B^T), with
/// the overlap-dependence check. Throws std::logic_error if entries with equal
/// overlap disagree by more than 1e-9.
[[nodiscard]] OracleResult closest_unitary_oracle(int n, int i);
[[nodiscard]] OracleResult closest_unitary_oracle(const Eigen::MatrixXd &m,
                                                  int n, int i);

struct SolverOptions {
  double tolerance = 1e-12;
  int max_iterations = 200;
  int max_restarts = 64;
};

/// Solves the orthonormality system for the coefficients of the map from
/// level i to i+1 and returns the root closest to the ideal superset map.
/// Throws std::invalid_argument if the level restriction is violated and
/// std::runtime_error if no verified root is found.
[[nodiscard]] MapCoefficients solve_coefficients(int n, int i,
                                                 const SolverOptions &opts = {});

[[nodiscard]] CoefficientResiduals residuals(const MapCoefficients &c);

[[nodiscard]] ScaledCoefficients scaled_b(const MapCoefficients &c);

/// Frobenius distance to the ideal map divided by sqrt(C(N,i)):
/// sqrt(sum_k n_k (a_k - [k = i])^2).
[[nodiscard]] double distance_to_ideal(const MapCoefficients &c);

/// Dense matrix with entries a[|r ∩ alpha|], rows and columns in colex order.
[[nodiscard]] Eigen::MatrixXd explicit_map_matrix(const MapCoefficients &c);

/// Coefficients computed once per (N, i). Lookups lock a mutex; callers that
/// fan out should warm the cache first.
class CoefficientCache {
public:
  const MapCoefficients &get(int n, int i);
  /// Populates every level map needed to reach `top_level`.
  void warm(int n, int top_level);

  static CoefficientCache &global();

private:
  std::mutex mu_;
  std::map<std::pair<int, int>, MapCoefficients> entries_;
};

} // namespace qlattice
