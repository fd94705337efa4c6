#include "qlattice/quantum_sim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qlattice {

namespace {

void check_map_input(int n, int level, const MapCoefficients &c,
                     std::size_t size) {
  if (c.n != n || c.level != level)
    throw std::invalid_argument(
        "apply_map: coefficients for (N=" + std::to_string(c.n) +
        ", i=" + std::to_string(c.level) + ") applied to a state at (N=" +
        std::to_string(n) + ", i=" + std::to_string(level) + ")");
  if (!map_level_allowed(n, level))
    throw std::invalid_argument("apply_map: level restriction violated (i+1 > ceil(N/2))");
  if (size != LevelIndex(n, level).size())
    throw std::invalid_argument("apply_map: amplitude vector has the wrong length");
}

double factorial(int k) {
  double f = 1;
  for (int t = 2; t <= k; ++t)
    f *= t;
  return f;
}

template <class Scalar>
BasicAmplitudeState<Scalar> map_direct(const BasicAmplitudeState<Scalar> &s,
                                       const MapCoefficients &c) {
  check_map_input(s.n, s.level, c, s.amps.size());
  const auto src = level_table(s.n, s.level);
  const auto dst = level_table(s.n, s.level + 1);
  BasicAmplitudeState<Scalar> out(s.n, s.level + 1);
  for (std::size_t r = 0; r < dst->size(); ++r) {
    const std::uint32_t rbits = dst->masks[r];
    Scalar acc{};
    for (std::size_t q = 0; q < src->size(); ++q)
      acc += c.a[std::popcount(rbits & src->masks[q])] * s.amps[q];
    out.amps[r] = acc;
  }
  return out;
}

template <class Scalar>
BasicAmplitudeState<Scalar> map_fast(const BasicAmplitudeState<Scalar> &s,
                                     const MapCoefficients &c) {
  check_map_input(s.n, s.level, c, s.amps.size());
  const int n = s.n;
  const int i = s.level;
  const auto basis = overlap_basis_coefficients(c);

  std::vector<std::shared_ptr<const LevelTable>> tables(i + 2);
  for (int j = 0; j <= i + 1; ++j)
    tables[j] = level_table(n, j);

  // down[j](tau) = (i-j)! * sum of psi over the i-supersets of tau.
  std::vector<std::vector<Scalar>> down(i + 1);
  down[i] = s.amps;
  for (int j = i; j >= 1; --j) {
    const LevelTable &t = *tables[j];
    down[j - 1].assign(tables[j - 1]->size(), Scalar{});
    const auto &in = down[j];
    auto &out = down[j - 1];
    for (std::size_t q = 0; q < t.size(); ++q) {
      const Scalar v = in[q];
      const std::uint32_t *sub = &t.subset_ranks[q * static_cast<std::size_t>(j)];
      for (int p = 0; p < j; ++p)
        out[sub[p]] += v;
    }
  }

  // Horner-style ascent; each up step sums over the subsets one level down.
  // The weight absorbs the (i-t)! from the descent and the (i+1-t)! chain
  // multiplicity of the ascent.
  auto weight = [&](int t) {
    return basis[t] / (factorial(i - t) * factorial(i + 1 - t));
  };
  std::vector<Scalar> acc(1, weight(0) * down[0][0]);
  for (int j = 1; j <= i + 1; ++j) {
    const LevelTable &t = *tables[j];
    std::vector<Scalar> next(t.size());
    const double w = j <= i ? weight(j) : 0.0;
    for (std::size_t q = 0; q < t.size(); ++q) {
      const std::uint32_t *sub = &t.subset_ranks[q * static_cast<std::size_t>(j)];
      Scalar v{};
      for (int p = 0; p < j; ++p)
        v += acc[sub[p]];
      if (j <= i)
        v += w * down[j][q];
      next[q] = v;
    }
    acc = std::move(next);
  }

  BasicAmplitudeState<Scalar> out;
  out.n = n;
  out.level = i + 1;
  out.amps = std::move(acc);
  return out;
}

std::vector<std::uint32_t> good_ranks(const Problem &p, int level) {
  const auto t = level_table(p.items(), level);
  std::vector<std::uint32_t> out;
  for (std::size_t q = 0; q < t->size(); ++q)
    if (!p.is_nogood(t->masks[q]))
      out.push_back(static_cast<std::uint32_t>(q));
  return out;
}

template <class Scalar>
BasicAmplitudeState<Scalar> initial(const Problem &p, int start_level) {
  const auto goods = good_ranks(p, start_level);
  if (goods.empty())
    throw std::domain_error("init_state: no good sets at level " +
                            std::to_string(start_level));
  BasicAmplitudeState<Scalar> s(p.items(), start_level);
  const double amp = 1.0 / std::sqrt(static_cast<double>(goods.size()));
  for (std::uint32_t q : goods)
    s.amps[q] = amp;
  return s;
}

void phase_real(RealAmplitudeState &s, const Problem &p, const PhasePolicy &policy) {
  if (policy.kind == PhaseKind::none)
    return;
  if (policy.kind != PhaseKind::inversion)
    throw std::invalid_argument("real amplitudes support only none/inversion");
  const auto t = level_table(s.n, s.level);
  for (std::size_t q = 0; q < t->size(); ++q)
    if (p.is_nogood(t->masks[q]))
      s.amps[q] = -s.amps[q];
}

void phase_complex(AmplitudeState &s, const Problem &p, const PhasePolicy &policy,
                   RandomStream &stream, std::vector<double> *log) {
  if (policy.kind == PhaseKind::none)
    return;
  const auto t = level_table(s.n, s.level);
  const Amplitude fixed = policy.kind == PhaseKind::inversion
                              ? Amplitude(-1.0, 0.0)
                              : std::polar(1.0, policy.angle);
  for (std::size_t q = 0; q < t->size(); ++q) {
    if (!p.is_nogood(t->masks[q]))
      continue;
    if (policy.kind == PhaseKind::random_uniform) {
      const double theta = 2.0 * std::numbers::pi * stream.uniform01();
      if (log != nullptr)
        log->push_back(theta);
      s.amps[q] *= std::polar(1.0, theta);
    } else {
      s.amps[q] *= fixed;
    }
  }
}

void check_run(const Problem &p, int start_level) {
  const int l = p.solution_level();
  if (start_level < 0 || start_level >= l)
    throw std::invalid_argument("run: start level must be in [0, L)");
  if (!map_level_allowed(p.items(), l - 1))
    throw std::invalid_argument("run: L=" + std::to_string(l) +
                                " exceeds ceil(N/2) for N=" +
                                std::to_string(p.items()));
}

template <class Scalar, class PhaseFn>
RunResult run_impl(const Problem &p, int start_level, const RunOptions &opts,
                   PhaseFn &&phase) {
  auto state = initial<Scalar>(p, start_level);
  auto &cache = CoefficientCache::global();
  for (int level = start_level; level < p.solution_level(); ++level) {
    phase(state);
    const auto &c = cache.get(p.items(), level);
    state = opts.direct_map ? map_direct(state, c) : map_fast(state, c);
  }
  RunResult result;
  double total = 0;
  double in_solutions = 0;
  const auto t = level_table(p.items(), p.solution_level());
  for (std::size_t q = 0; q < t->size(); ++q) {
    const double w = std::norm(state.amps[q]);
    total += w;
    if (!p.is_nogood(t->masks[q]))
      in_solutions += w;
  }
  result.p_soln = in_solutions;
  result.final_norm = std::sqrt(total);
  if (in_solutions > 0)
    result.trials_equivalent = 1.0 / in_solutions;
  if (opts.keep_final_state) {
    result.final_state = AmplitudeState(state.n, state.level);
    for (std::size_t q = 0; q < state.amps.size(); ++q)
      result.final_state.amps[q] = Amplitude(state.amps[q]);
  }
  return result;
}

} // namespace

const char *to_string(PhaseKind kind) {
  switch (kind) {
  case PhaseKind::none:
    return "none";
  case PhaseKind::inversion:
    return "inversion";
  case PhaseKind::random_uniform:
    return "random";
  case PhaseKind::fixed_angle:
    return "fixed";
  }
  return "?";
}

PhasePolicy parse_phase_policy(const std::string &text) {
  if (text == "inversion" || text == "invert")
    return PhasePolicy::inversion();
  if (text == "random")
    return PhasePolicy::random_uniform();
  if (text == "none")
    return PhasePolicy::none();
  if (text.rfind("fixed:", 0) == 0) {
    try {
      return PhasePolicy::fixed(std::stod(text.substr(6)));
    } catch (const std::exception &) {
    }
  }
  throw std::invalid_argument("unknown phase policy '" + text +
                              "' (expected inversion|random|none|fixed:<theta>)");
}

AmplitudeState init_state(const Problem &p, int start_level) {
  return initial<Amplitude>(p, start_level);
}

AmplitudeState apply_phases(AmplitudeState s, const Problem &p,
                            const PhasePolicy &policy, RandomStream &stream,
                            std::vector<double> *phase_log) {
  phase_complex(s, p, policy, stream, phase_log);
  return s;
}

AmplitudeState apply_map(const AmplitudeState &s, const MapCoefficients &c) {
  return map_direct(s, c);
}

RealAmplitudeState apply_map(const RealAmplitudeState &s, const MapCoefficients &c) {
  return map_direct(s, c);
}

AmplitudeState apply_map_fast(const AmplitudeState &s, const MapCoefficients &c) {
  return map_fast(s, c);
}

RealAmplitudeState apply_map_fast(const RealAmplitudeState &s,
                                  const MapCoefficients &c) {
  return map_fast(s, c);
}

std::vector<double> overlap_basis_coefficients(const MapCoefficients &c) {
  const int i = c.level;
  std::vector<double> basis(i + 1, 0.0);
  for (int t = 0; t <= i; ++t) {
    double v = 0;
    for (int k = 0; k <= t; ++k) {
      const double sign = (t - k) % 2 == 0 ? 1.0 : -1.0;
      v += sign * static_cast<double>(binom(t, k)) * c.a[k];
    }
    basis[t] = v;
  }
  return basis;
}

RunResult run(const Problem &p, int start_level, const PhasePolicy &policy,
              RandomStream &stream, const RunOptions &opts) {
  check_run(p, start_level);
  if (policy.is_real() && opts.real_path)
    return run_impl<double>(p, start_level, opts, [&](RealAmplitudeState &s) {
      phase_real(s, p, policy);
    });
  std::vector<double> log;
  auto result = run_impl<Amplitude>(p, start_level, opts, [&](AmplitudeState &s) {
    phase_complex(s, p, policy, stream, opts.record_phases ? &log : nullptr);
  });
  result.phase_log = std::move(log);
  return result;
}

AveragedResult run_averaged(const Problem &p, int start_level,
                            const PhasePolicy &policy, int tries,
                            RandomStream &stream, const RunOptions &opts) {
  if (tries < 1)
    throw std::invalid_argument("run_averaged: tries must be at least 1");
  AveragedResult out;
  out.tries = policy.is_random() ? tries : 1;
  double sum_p = 0;
  double sum_inv = 0;
  for (int t = 0; t < out.tries; ++t) {
    const auto r = run(p, start_level, policy, stream, opts);
    out.p_values.push_back(r.p_soln);
    sum_p += r.p_soln;
    if (r.p_soln > 0)
      sum_inv += 1.0 / r.p_soln;
    else
      ++out.zero_p_tries;
    out.max_norm_deviation =
        std::max(out.max_norm_deviation, std::abs(r.final_norm - 1.0));
  }
  out.mean_p = sum_p / out.tries;
  const int nonzero = out.tries - out.zero_p_tries;
  if (nonzero > 0)
    out.mean_inv_p = sum_inv / nonzero;
  return out;
}

} // namespace qlattice
