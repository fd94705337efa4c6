#pragma once

// Amplitude-vector simulation of the lattice search: start on the goods of a
// low level, then for each level up to L-1 adjust nogood phases and apply the
// level map. The probability of a solution is the squared amplitude on the
// good sets at level L.

#include "qlattice/map_coefficients.hpp"
#include "qlattice/problems.hpp"
#include "qlattice/random.hpp"

#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

namespace qlattice {

using Amplitude = std::complex<double>;

/// Amplitudes of every set at one level, indexed by colex rank.
template <class Scalar> struct BasicAmplitudeState {
  int n = 0;
  int level = 0;
  std::vector<Scalar> amps;

  BasicAmplitudeState() = default;
  BasicAmplitudeState(int n_items, int lvl)
      : n(n_items), level(lvl), amps(LevelIndex(n_items, lvl).size()) {}

  [[nodiscard]] double squared_norm() const {
    double s = 0;
    for (const auto &x : amps)
      s += std::norm(x);
    return s;
  }
};

using AmplitudeState = BasicAmplitudeState<Amplitude>;
/// Real amplitudes; exact for policies whose factors are all real.
using RealAmplitudeState = BasicAmplitudeState<double>;

enum class PhaseKind { none, inversion, random_uniform, fixed_angle };

struct PhasePolicy {
  PhaseKind kind = PhaseKind::inversion;
  double angle = 0; // fixed_angle only

  static PhasePolicy none() { return {PhaseKind::none, 0}; }
  static PhasePolicy inversion() { return {PhaseKind::inversion, 0}; }
  static PhasePolicy random_uniform() { return {PhaseKind::random_uniform, 0}; }
  static PhasePolicy fixed(double theta) { return {PhaseKind::fixed_angle, theta}; }

  [[nodiscard]] bool is_random() const { return kind == PhaseKind::random_uniform; }
  [[nodiscard]] bool is_real() const {
    return kind == PhaseKind::none || kind == PhaseKind::inversion;
  }
};

[[nodiscard]] const char *to_string(PhaseKind kind);
/// "inversion", "random", "none", "fixed:<theta>"
[[nodiscard]] PhasePolicy parse_phase_policy(const std::string &text);

/// Uniform amplitude 1/sqrt(G) on the G good sets at `start_level`.
/// Throws std::domain_error if there are none.
[[nodiscard]] AmplitudeState init_state(const Problem &p, int start_level);

/// Multiplies each nogood amplitude by its phase factor. Random angles are
/// drawn in rank order of the nogood sets and appended to `phase_log`.
[[nodiscard]] AmplitudeState apply_phases(AmplitudeState s, const Problem &p,
                                          const PhasePolicy &policy,
                                          RandomStream &stream,
                                          std::vector<double> *phase_log = nullptr);

/// Direct evaluation: psi'(r) = sum_alpha a[|r ∩ alpha|] psi(alpha).
[[nodiscard]] AmplitudeState apply_map(const AmplitudeState &s,
                                       const MapCoefficients &c);
[[nodiscard]] RealAmplitudeState apply_map(const RealAmplitudeState &s,
                                           const MapCoefficients &c);

/// Same map evaluated through the subset chains of the lattice:
/// U = sum_t c_t Up(t -> i+1) Down(i -> t), where Down sums over supersets and
/// Up sums over subsets, and c is the binomial inverse of a.
[[nodiscard]] AmplitudeState apply_map_fast(const AmplitudeState &s,
                                            const MapCoefficients &c);
[[nodiscard]] RealAmplitudeState apply_map_fast(const RealAmplitudeState &s,
                                                const MapCoefficients &c);

/// c_t = sum_{k<=t} (-1)^(t-k) C(t,k) a_k, so that a_k = sum_t C(k,t) c_t.
[[nodiscard]] std::vector<double> overlap_basis_coefficients(const MapCoefficients &c);

struct RunOptions {
  bool direct_map = false;   // use apply_map instead of apply_map_fast
  bool real_path = true;     // real amplitudes for none/inversion
  bool record_phases = false;
  bool keep_final_state = false;
};

struct RunResult {
  double p_soln = 0;
  double final_norm = 0;
  /// 1 / p_soln; +infinity when p_soln is zero.
  double trials_equivalent = std::numeric_limits<double>::infinity();
  std::vector<double> phase_log;
  AmplitudeState final_state; // only with keep_final_state
};

/// Full pipeline from `start_level` to the problem's solution level.
[[nodiscard]] RunResult run(const Problem &p, int start_level,
                            const PhasePolicy &policy, RandomStream &stream,
                            const RunOptions &opts = {});

struct AveragedResult {
  int tries = 0;
  double mean_p = 0;
  /// Mean of 1/p over tries with p > 0.
  double mean_inv_p = std::numeric_limits<double>::infinity();
  int zero_p_tries = 0;
  double max_norm_deviation = 0;
  std::vector<double> p_values;
};

/// Repeats `run` `tries` times for random phases; deterministic policies run
/// once.
[[nodiscard]] AveragedResult run_averaged(const Problem &p, int start_level,
                                          const PhasePolicy &policy, int tries,
                                          RandomStream &stream,
                                          const RunOptions &opts = {});

} // namespace qlattice
