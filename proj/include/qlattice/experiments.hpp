#pragma once

// Batch experiments over random problem ensembles: density sweeps, size
// scaling, enhancement over random selection, 3-SAT sweeps and the classical
// backtracking baseline.
//
// Every instance draws from its own stream derived from the master seed and
// (point index, instance index), so results do not depend on the order in
// which worker threads finish.

#include "qlattice/quantum_sim.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace qlattice {

enum class ExperimentKind { sweep_beta, scaling, enhancement, sat_sweep, backtrack_sweep };

[[nodiscard]] const char *to_string(ExperimentKind kind);

enum class Ensemble { random_csp, random_3sat };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::sweep_beta;
  Ensemble ensemble = Ensemble::random_csp;
  /// Item counts N for the CSP ensemble, variable counts n for 3-SAT.
  std::vector<int> sizes{10};
  /// Solution level; 0 means L = N/2 (CSP) or L = n (3-SAT).
  int solution_level = 0;
  /// beta = m/N for CSPs, c/n for 3-SAT.
  std::vector<double> params{1.0};
  int instances = 100;
  int tries = 10;
  std::uint64_t seed = 1;
  PhasePolicy policy = PhasePolicy::inversion();
  /// 0: level 2 for CSPs, level 3 for 3-SAT.
  int start_level = 0;
  bool filter_soluble = true;
  int threads = 0; // 0: hardware concurrency
  int max_consecutive_rejections = 10000;

  /// Throws std::invalid_argument describing the first problem found.
  void validate() const;
  [[nodiscard]] int level_for(int size) const;
  [[nodiscard]] int items_for(int size) const;
  [[nodiscard]] int start_for() const;
  /// Nogood count m = round(beta N), or clause count c = round(ratio n).
  [[nodiscard]] int count_for(int size, double param) const;
};

/// One line per instance, enough to re-aggregate a table offline.
struct InstanceRecord {
  int point = 0;
  int instance = 0;
  int size = 0;       // N or n
  double param = 0;   // beta or c/n
  int count = 0;      // m or c
  std::uint64_t solutions = 0;
  std::uint64_t cost = 0;
  std::uint64_t rejected = 0; // insoluble draws skipped before this one
  bool soluble_unforced = false;
  std::vector<double> p_tries;
};

struct SweepRow {
  int size = 0;
  int items = 0;
  int level = 0;
  double param = 0;
  int count = 0;
  int instances = 0;
  int zero_p = 0;

  double mean_inv_p = 0, stderr_inv_p = 0, std_inv_p = 0;
  double mean_p = 0, stderr_p = 0, std_p = 0;
  double mean_nsoln = 0, std_nsoln = 0;
  double mean_ratio_sets = 0, stderr_ratio_sets = 0;
  double mean_ratio_assign = 0, stderr_ratio_assign = 0;
  double mean_cost = 0, stderr_cost = 0, std_cost = 0;
  double soluble_fraction = 0;
  std::uint64_t rejected = 0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<SweepRow> rows;
  std::vector<InstanceRecord> records;
};

[[nodiscard]] ExperimentResult sweep_beta(const ExperimentConfig &config);
[[nodiscard]] ExperimentResult scaling_run(const ExperimentConfig &config);
[[nodiscard]] ExperimentResult enhancement_run(const ExperimentConfig &config);
[[nodiscard]] ExperimentResult sat_sweep(const ExperimentConfig &config);
[[nodiscard]] ExperimentResult backtrack_sweep(const ExperimentConfig &config);
/// Dispatches on config.kind.
[[nodiscard]] ExperimentResult run_experiment(const ExperimentConfig &config);

/// Rebuilds the rows from per-instance records.
[[nodiscard]] std::vector<SweepRow> aggregate(const ExperimentConfig &config,
                                              const std::vector<InstanceRecord> &records);

/// Sample mean and standard deviation (n-1 denominator; 0 for n < 2).
struct Moments {
  double mean = 0;
  double stddev = 0;
  double stderr_mean = 0;
  std::size_t count = 0;
};
[[nodiscard]] Moments moments(const std::vector<double> &values);

// Output. CSV uses a header row, ',' separators, 12 significant digits and
// LF line endings.
void write_csv(std::ostream &out, const ExperimentResult &result);
void write_raw(std::ostream &out, const ExperimentResult &result);
[[nodiscard]] std::vector<InstanceRecord> read_raw(std::istream &in);
void write_svg(std::ostream &out, const ExperimentResult &result);

/// "key=value" lines; '#' starts a comment line.
[[nodiscard]] std::map<std::string, std::string> read_config_file(const std::string &path);

} // namespace qlattice
