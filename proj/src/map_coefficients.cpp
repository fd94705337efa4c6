#include "qlattice/map_coefficients.hpp"

#include "qlattice/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qlattice {

namespace {

// Largest N for which the explicit matrices are built.
constexpr int kOracleMaxItems = 12;

void check_map_level(int n, int i) {
  if (n < 1 || n > kMaxItems)
    throw std::invalid_argument("item count outside [1, " +
                                std::to_string(kMaxItems) + "]");
  if (!map_level_allowed(n, i))
    throw std::invalid_argument(
        "no unitary map from level " + std::to_string(i) + " to " +
        std::to_string(i + 1) + " for N=" + std::to_string(n) +
        " (requires 0 <= i and i+1 <= ceil(N/2))");
}

// The orthonormality system in overlap coordinates:
//   F_0(a)   = sum_k n_k a_k^2 - 1
//   F_p+1(a) = sum_jk n_pjk a_j a_k,  p = 0..i-1
struct System {
  int n;
  int i;
  Eigen::VectorXd nk;
  std::vector<Eigen::MatrixXd> q;

  System(int n_items, int level) : n(n_items), i(level) {
    nk.resize(i + 1);
    for (int k = 0; k <= i; ++k)
      nk[k] = static_cast<double>(n_k(n, i, k));
    q.reserve(i);
    for (int p = 0; p < i; ++p) {
      Eigen::MatrixXd m(i + 1, i + 1);
      for (int j = 0; j <= i; ++j)
        for (int k = 0; k <= i; ++k)
          m(j, k) = static_cast<double>(n_pjk(n, i, p, j, k));
      q.push_back(std::move(m));
    }
  }

  [[nodiscard]] Eigen::VectorXd value(const Eigen::VectorXd &a) const {
    Eigen::VectorXd f(i + 1);
    f[0] = nk.dot(a.cwiseProduct(a)) - 1.0;
    for (int p = 0; p < i; ++p)
      f[p + 1] = a.dot(q[p] * a);
    return f;
  }

  [[nodiscard]] Eigen::MatrixXd jacobian(const Eigen::VectorXd &a) const {
    Eigen::MatrixXd jac(i + 1, i + 1);
    jac.row(0) = 2.0 * nk.cwiseProduct(a).transpose();
    for (int p = 0; p < i; ++p)
      jac.row(p + 1) = ((q[p] + q[p].transpose()) * a).transpose();
    return jac;
  }
};

double ideal_distance(const Eigen::VectorXd &nk, const Eigen::VectorXd &a) {
  const int i = static_cast<int>(a.size()) - 1;
  double d = 0;
  for (int k = 0; k <= i; ++k) {
    const double diff = a[k] - (k == i ? 1.0 : 0.0);
    d += nk[k] * diff * diff;
  }
  return std::sqrt(d);
}

// Damped Newton from `start`. Returns true and overwrites `a` on convergence.
bool newton(const System &sys, Eigen::VectorXd &a, const SolverOptions &opts) {
  Eigen::VectorXd f = sys.value(a);
  double fnorm = f.lpNorm<Eigen::Infinity>();
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    if (fnorm <= opts.tolerance)
      return true;
    const Eigen::MatrixXd jac = sys.jacobian(a);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
    if (!lu.isInvertible())
      return false;
    const Eigen::VectorXd step = lu.solve(-f);
    double t = 1.0;
    bool accepted = false;
    for (int halvings = 0; halvings < 40; ++halvings, t *= 0.5) {
      Eigen::VectorXd trial = a + t * step;
      Eigen::VectorXd ft = sys.value(trial);
      const double tn = ft.lpNorm<Eigen::Infinity>();
      if (std::isfinite(tn) && tn < fnorm) {
        a = std::move(trial);
        f = std::move(ft);
        fnorm = tn;
        accepted = true;
        break;
      }
    }
    if (!accepted)
      return fnorm <= opts.tolerance;
  }
  return fnorm <= opts.tolerance;
}

} // namespace

double CoefficientResiduals::max_orthogonality() const {
  double m = 0;
  for (double r : orthogonality)
    m = std::max(m, r);
  return m;
}

double CoefficientResiduals::max_abs() const {
  return std::max(normalization, max_orthogonality());
}

bool map_level_allowed(int n, int i) {
  return i >= 0 && i + 1 <= (n + 1) / 2;
}

Eigen::MatrixXd ideal_matrix(int n, int i) {
  if (n < 1 || n > kOracleMaxItems)
    throw std::invalid_argument("ideal_matrix: N must be in [1, " +
                                std::to_string(kOracleMaxItems) + "]");
  if (i < 0 || i + 1 > n)
    throw std::invalid_argument("ideal_matrix: level outside [0, N-1]");
  const auto rows = level_masks(n, i + 1);
  const auto cols = level_masks(n, i);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()),
                                            static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c)
      if ((cols[c] & ~rows[r]) == 0)
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = 1.0;
  return m;
}

OracleResult closest_unitary_oracle(int n, int i) {
  return closest_unitary_oracle(ideal_matrix(n, i), n, i);
}

OracleResult closest_unitary_oracle(const Eigen::MatrixXd &m, int n, int i) {
  if (m.rows() < m.cols())
    throw std::invalid_argument(
        "closest_unitary_oracle: more columns than rows, no orthonormal "
        "columns exist");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  OracleResult out;
  out.u = svd.matrixU() * svd.matrixV().transpose();

  const auto rows = level_masks(n, i + 1);
  const auto cols = level_masks(n, i);
  if (static_cast<Eigen::Index>(rows.size()) != m.rows() ||
      static_cast<Eigen::Index>(cols.size()) != m.cols())
    throw std::invalid_argument("closest_unitary_oracle: shape does not match (N, i)");

  std::vector<double> lo(i + 1, std::numeric_limits<double>::infinity());
  std::vector<double> hi(i + 1, -std::numeric_limits<double>::infinity());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const int k = std::popcount(rows[r] & cols[c]);
      const double v = out.u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      lo[k] = std::min(lo[k], v);
      hi[k] = std::max(hi[k], v);
    }
  out.a.resize(i + 1);
  for (int k = 0; k <= i; ++k) {
    if (!std::isfinite(lo[k]))
      throw std::logic_error("closest_unitary_oracle: overlap " +
                             std::to_string(k) + " never occurs");
    out.a[k] = 0.5 * (lo[k] + hi[k]);
    out.max_same_overlap_deviation =
        std::max(out.max_same_overlap_deviation, hi[k] - lo[k]);
  }
  if (out.max_same_overlap_deviation > 1e-9) {
    std::ostringstream msg;
    msg << "closest_unitary_oracle: entries are not a function of overlap "
           "(spread "
        << out.max_same_overlap_deviation << ")";
    throw std::logic_error(msg.str());
  }
  return out;
}

MapCoefficients solve_coefficients(int n, int i, const SolverOptions &opts) {
  check_map_level(n, i);
  const System sys(n, i);

  Eigen::VectorXd ideal = Eigen::VectorXd::Zero(i + 1);
  ideal[i] = 1.0 / std::sqrt(static_cast<double>(n - i));

  std::vector<Eigen::VectorXd> roots;
  Eigen::VectorXd a = ideal;
  if (newton(sys, a, opts)) {
    roots.push_back(a);
  } else {
    // Perturb the ideal start with alternating-sign patterns of growing size.
    for (int attempt = 1; attempt <= opts.max_restarts; ++attempt) {
      const double scale = 0.05 * attempt / std::sqrt(static_cast<double>(n - i));
      a = ideal;
      for (int k = 0; k < i; ++k) {
        const int pattern = (attempt >> (k % 6)) & 1 ? -1 : 1;
        const double sign = ((i - k) % 2 == 0 ? 1.0 : -1.0) * pattern;
        a[k] += sign * scale / std::sqrt(sys.nk[k]);
      }
      if (newton(sys, a, opts))
        roots.push_back(a);
    }
  }
  if (roots.empty()) {
    const Eigen::VectorXd f = sys.value(a);
    std::ostringstream msg;
    msg << "solve_coefficients(N=" << n << ", i=" << i
        << "): no converged root; last residual max-norm "
        << f.lpNorm<Eigen::Infinity>();
    throw std::runtime_error(msg.str());
  }

  for (auto &r : roots)
    if (r[i] < 0)
      r = -r;
  const auto best = std::min_element(
      roots.begin(), roots.end(), [&](const auto &x, const auto &y) {
        return ideal_distance(sys.nk, x) < ideal_distance(sys.nk, y);
      });

  MapCoefficients c;
  c.n = n;
  c.level = i;
  c.a.assign(best->data(), best->data() + best->size());

  const auto res = residuals(c);
  if (res.max_abs() > std::max(opts.tolerance, 1e-10)) {
    std::ostringstream msg;
    msg << "solve_coefficients(N=" << n << ", i=" << i
        << "): residuals above tolerance (normalization " << res.normalization
        << ", orthogonality " << res.max_orthogonality() << ")";
    throw std::runtime_error(msg.str());
  }
  return c;
}

CoefficientResiduals residuals(const MapCoefficients &c) {
  const int i = c.level;
  const int n = c.n;
  CoefficientResiduals out;
  double norm = 0;
  for (int k = 0; k <= i; ++k)
    norm += static_cast<double>(n_k(n, i, k)) * c.a[k] * c.a[k];
  out.normalization = std::abs(norm - 1.0);
  out.orthogonality.reserve(i);
  for (int p = 0; p < i; ++p) {
    double s = 0;
    for (int j = 0; j <= i; ++j)
      for (int k = 0; k <= i; ++k)
        s += static_cast<double>(n_pjk(n, i, p, j, k)) * c.a[j] * c.a[k];
    out.orthogonality.push_back(std::abs(s));
  }
  return out;
}

ScaledCoefficients scaled_b(const MapCoefficients &c) {
  const int i = c.level;
  ScaledCoefficients out;
  out.b.resize(i + 1);
  for (int k = 0; k <= i; ++k) {
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    out.b[k] = sign * c.a[i - k] *
               std::sqrt(static_cast<double>(n_k(c.n, i, i - k)));
  }
  return out;
}

double distance_to_ideal(const MapCoefficients &c) {
  Eigen::VectorXd nk(c.level + 1);
  for (int k = 0; k <= c.level; ++k)
    nk[k] = static_cast<double>(n_k(c.n, c.level, k));
  return ideal_distance(nk, Eigen::Map<const Eigen::VectorXd>(
                                c.a.data(), static_cast<Eigen::Index>(c.a.size())));
}

Eigen::MatrixXd explicit_map_matrix(const MapCoefficients &c) {
  if (c.n > kOracleMaxItems)
    throw std::invalid_argument("explicit_map_matrix: N too large");
  const auto rows = level_masks(c.n, c.level + 1);
  const auto cols = level_masks(c.n, c.level);
  Eigen::MatrixXd u(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t col = 0; col < cols.size(); ++col)
      u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) =
          c.a[std::popcount(rows[r] & cols[col])];
  return u;
}

const MapCoefficients &CoefficientCache::get(int n, int i) {
  std::lock_guard lock(mu_);
  auto it = entries_.find({n, i});
  if (it == entries_.end())
    it = entries_.emplace(std::pair{n, i}, solve_coefficients(n, i)).first;
  return it->second;
}

void CoefficientCache::warm(int n, int top_level) {
  for (int i = 0; i < top_level; ++i)
    if (map_level_allowed(n, i))
      (void)get(n, i);
}

CoefficientCache &CoefficientCache::global() {
  static CoefficientCache cache;
  return cache;
}

} // namespace qlattice
