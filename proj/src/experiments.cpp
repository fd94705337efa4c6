#include "qlattice/experiments.hpp"

#include "qlattice/classical_search.hpp"
#include "qlattice/report.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qlattice {

namespace {

using report::format_exact;
using report::format_number;

struct Point {
  int size;
  double param;
};

std::vector<Point> points_for(const ExperimentConfig &config) {
  std::vector<Point> pts;
  if (config.kind == ExperimentKind::scaling || config.kind == ExperimentKind::enhancement) {
    for (double param : config.params)
      for (int size : config.sizes)
        pts.push_back({size, param});
  } else {
    for (int size : config.sizes)
      for (double param : config.params)
        pts.push_back({size, param});
  }
  return pts;
}

bool uses_quantum(const ExperimentConfig &config) {
  return config.kind != ExperimentKind::backtrack_sweep;
}

// Streams depend on (size, param, instance), not on the point's position in
// the table, so the same ensemble point yields the same instances in every
// experiment kind.
RandomStream instance_stream(const ExperimentConfig &config, const Point &pt,
                             int instance) {
  const std::uint64_t ensemble = config.ensemble == Ensemble::random_3sat ? 1 : 0;
  return RandomStream::derived(
      config.seed, {ensemble, static_cast<std::uint64_t>(pt.size),
                    std::bit_cast<std::uint64_t>(pt.param),
                    static_cast<std::uint64_t>(instance)});
}

InstanceRecord evaluate_csp(const ExperimentConfig &config, const Point &pt,
                            int point, int instance) {
  InstanceRecord rec;
  rec.point = point;
  rec.instance = instance;
  rec.size = pt.size;
  rec.param = pt.param;
  const int n = pt.size;
  const int l = config.level_for(n);
  rec.count = config.count_for(n, pt.param);

  const RandomStream base = instance_stream(config, pt, instance);
  RandomStream gen = base.child(0);
  const Problem problem =
      generate_random_csp(n, rec.count, ItemSet::first_items(n, l), gen);
  rec.solutions = count_solutions(problem);
  // The planted solution sits on the first L items, which an ascending-order
  // search would reach without backtracking. A random relabeling places it
  // uniformly for the classical baseline.
  RandomStream relabel = base.child(3);
  rec.cost = backtrack_cost(permute_items(problem, random_permutation(n, relabel))).cost;

  if (uses_quantum(config)) {
    RandomStream phases = base.child(1);
    const auto avg = run_averaged(problem, config.start_for(), config.policy,
                                  config.tries, phases);
    rec.p_tries = avg.p_values;
  } else {
    RandomStream unforced_gen = base.child(2);
    const Problem unforced = generate_unforced_csp(n, l, rec.count, unforced_gen);
    rec.soluble_unforced = is_soluble(unforced);
  }
  return rec;
}

InstanceRecord evaluate_sat(const ExperimentConfig &config, const Point &pt,
                            int point, int instance) {
  InstanceRecord rec;
  rec.point = point;
  rec.instance = instance;
  rec.size = pt.size;
  rec.param = pt.param;
  rec.count = config.count_for(pt.size, pt.param);

  const RandomStream base = instance_stream(config, pt, instance);
  RandomStream gen = base.child(0);
  Problem problem = generate_random_3sat(pt.size, rec.count, gen);
  std::uint64_t solutions = count_solutions(problem);
  if (config.filter_soluble) {
    while (solutions == 0) {
      ++rec.rejected;
      if (rec.rejected > static_cast<std::uint64_t>(config.max_consecutive_rejections)) {
        std::ostringstream msg;
        msg << "sat_sweep: more than " << config.max_consecutive_rejections
            << " consecutive insoluble instances at n=" << pt.size
            << ", c=" << rec.count << " (instance " << instance << ")";
        throw std::runtime_error(msg.str());
      }
      problem = generate_random_3sat(pt.size, rec.count, gen);
      solutions = count_solutions(problem);
    }
  }
  rec.solutions = solutions;
  rec.cost = backtrack_cost(problem).cost;
  if (solutions > 0) {
    RandomStream phases = base.child(1);
    const auto avg = run_averaged(problem, config.start_for(), config.policy,
                                  config.tries, phases);
    rec.p_tries = avg.p_values;
  } else {
    rec.p_tries.assign(config.policy.is_random() ? config.tries : 1, 0.0);
  }
  return rec;
}

template <class Task>
void parallel_for(std::size_t count, int threads, Task &&task) {
  unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                 : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k)
      task(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t k = next.fetch_add(1);
        if (k >= count)
          return;
        try {
          task(k);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error)
            error = std::current_exception();
          next.store(count);
          return;
        }
      }
    });
  for (auto &t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
}

ExperimentResult execute(const ExperimentConfig &config) {
  config.validate();
  const auto pts = points_for(config);

  // Coefficients are shared read-only by the workers.
  if (uses_quantum(config))
    for (const auto &pt : pts)
      CoefficientCache::global().warm(config.items_for(pt.size),
                                      config.level_for(pt.size));

  const std::size_t per_point = static_cast<std::size_t>(config.instances);
  ExperimentResult result;
  result.config = config;
  result.records.resize(pts.size() * per_point);
  parallel_for(result.records.size(), config.threads, [&](std::size_t k) {
    const int point = static_cast<int>(k / per_point);
    const int instance = static_cast<int>(k % per_point);
    result.records[k] = config.ensemble == Ensemble::random_3sat
                            ? evaluate_sat(config, pts[point], point, instance)
                            : evaluate_csp(config, pts[point], point, instance);
  });
  result.rows = aggregate(config, result.records);
  return result;
}

std::vector<std::string> split(const std::string &s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    out.push_back(cur);
  if (!s.empty() && s.back() == sep)
    out.emplace_back();
  return out;
}

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt_int(std::uint64_t v) { return std::to_string(v); }

double safe_log(double v) { return v > 0 ? std::log(v) : -std::numeric_limits<double>::infinity(); }

} // namespace

const char *to_string(ExperimentKind kind) {
  switch (kind) {
  case ExperimentKind::sweep_beta: return "sweep-beta";
  case ExperimentKind::scaling: return "scaling";
  case ExperimentKind::enhancement: return "enhancement";
  case ExperimentKind::sat_sweep: return "sat-sweep";
  case ExperimentKind::backtrack_sweep: return "backtrack";
  }
  return "?";
}

int ExperimentConfig::level_for(int size) const {
  if (ensemble == Ensemble::random_3sat)
    return size;
  return solution_level > 0 ? solution_level : size / 2;
}

int ExperimentConfig::items_for(int size) const {
  return ensemble == Ensemble::random_3sat ? 2 * size : size;
}

int ExperimentConfig::start_for() const {
  if (start_level > 0)
    return start_level;
  return ensemble == Ensemble::random_3sat ? 3 : 2;
}

int ExperimentConfig::count_for(int size, double param) const {
  return static_cast<int>(std::lround(param * size));
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string &msg) { throw std::invalid_argument("config: " + msg); };
  if (instances < 1)
    fail("instances must be >= 1");
  if (tries < 1)
    fail("tries must be >= 1");
  if (sizes.empty())
    fail("no sizes given");
  if (params.empty())
    fail("no parameter values given");
  if (kind == ExperimentKind::sat_sweep)
    if (ensemble != Ensemble::random_3sat)
      fail("sat-sweep requires the 3-SAT ensemble");
  if (ensemble == Ensemble::random_3sat && kind == ExperimentKind::backtrack_sweep)
    fail("backtrack sweeps use the random CSP ensemble");
  for (double p : params)
    if (!(p >= 0) || !std::isfinite(p))
      fail("parameter values must be finite and >= 0");
  for (int size : sizes) {
    const int items = items_for(size);
    const int l = level_for(size);
    if (ensemble == Ensemble::random_3sat) {
      if (size < 4 || items > kMaxItems)
        fail("3-SAT variable count must be in [4, " + std::to_string(kMaxItems / 2) +
             "], got " + std::to_string(size));
    } else if (items < 2 || items > kMaxItems) {
      fail("item count must be in [2, " + std::to_string(kMaxItems) + "], got " +
           std::to_string(items));
    }
    if (l < 1 || l > items)
      fail("solution level " + std::to_string(l) + " invalid for N=" + std::to_string(items));
    if (uses_quantum(*this)) {
      if (!map_level_allowed(items, l - 1))
        fail("L=" + std::to_string(l) + " exceeds ceil(N/2) for N=" + std::to_string(items));
      if (start_for() >= l)
        fail("start level " + std::to_string(start_for()) + " must be below L=" +
             std::to_string(l));
    }
    for (double p : params) {
      const int count = count_for(size, p);
      if (ensemble == Ensemble::random_3sat) {
        if (static_cast<std::uint64_t>(count) > sat_clause_pool_size(size))
          fail("c=" + std::to_string(count) + " exceeds the clause pool for n=" +
               std::to_string(size));
      } else {
        const auto pool = binom(items, 2) - binom(l, 2);
        if (static_cast<std::uint64_t>(count) > pool)
          fail("beta=" + format_number(p) + " gives m=" + std::to_string(count) +
               " but only " + std::to_string(pool) + " pairs lie outside the solution at N=" +
               std::to_string(items));
      }
    }
  }
}

Moments moments(const std::vector<double> &values) {
  Moments m;
  m.count = values.size();
  if (values.empty())
    return m;
  double sum = 0;
  for (double v : values)
    sum += v;
  m.mean = sum / static_cast<double>(values.size());
  if (values.size() >= 2) {
    double ss = 0;
    for (double v : values)
      ss += (v - m.mean) * (v - m.mean);
    m.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    m.stderr_mean = m.stddev / std::sqrt(static_cast<double>(values.size()));
  }
  return m;
}

std::vector<SweepRow> aggregate(const ExperimentConfig &config,
                                const std::vector<InstanceRecord> &records) {
  std::map<int, std::vector<const InstanceRecord *>> by_point;
  for (const auto &r : records)
    by_point[r.point].push_back(&r);

  std::vector<SweepRow> rows;
  for (const auto &[point, recs] : by_point) {
    SweepRow row;
    const InstanceRecord &first = *recs.front();
    row.size = first.size;
    row.items = config.items_for(first.size);
    row.level = config.level_for(first.size);
    row.param = first.param;
    row.count = first.count;
    row.instances = static_cast<int>(recs.size());

    const double level_sets = static_cast<double>(binom(row.items, row.level));
    const double assignments = std::ldexp(1.0, first.size);
    std::vector<double> inv_p, p, nsoln, ratio_sets, ratio_assign, cost;
    int soluble = 0;
    for (const InstanceRecord *r : recs) {
      nsoln.push_back(static_cast<double>(r->solutions));
      cost.push_back(static_cast<double>(r->cost));
      soluble += r->soluble_unforced ? 1 : 0;
      row.rejected += r->rejected;
      if (r->p_tries.empty())
        continue;
      double sum_p = 0, sum_inv = 0;
      int nonzero = 0;
      for (double v : r->p_tries) {
        sum_p += v;
        if (v > 0) {
          sum_inv += 1.0 / v;
          ++nonzero;
        }
      }
      const double mean_p = sum_p / static_cast<double>(r->p_tries.size());
      p.push_back(mean_p);
      if (nonzero > 0)
        inv_p.push_back(sum_inv / nonzero);
      else
        ++row.zero_p;
      if (r->solutions > 0) {
        const double s = static_cast<double>(r->solutions);
        ratio_sets.push_back(mean_p / (s / level_sets));
        if (config.ensemble == Ensemble::random_3sat)
          ratio_assign.push_back(mean_p / (s / assignments));
      }
    }
    const auto mi = moments(inv_p);
    row.mean_inv_p = inv_p.empty() ? std::numeric_limits<double>::infinity() : mi.mean;
    row.std_inv_p = mi.stddev;
    row.stderr_inv_p = mi.stderr_mean;
    const auto mp = moments(p);
    row.mean_p = mp.mean;
    row.std_p = mp.stddev;
    row.stderr_p = mp.stderr_mean;
    const auto ms = moments(nsoln);
    row.mean_nsoln = ms.mean;
    row.std_nsoln = ms.stddev;
    const auto mr = moments(ratio_sets);
    row.mean_ratio_sets = mr.mean;
    row.stderr_ratio_sets = mr.stderr_mean;
    const auto ma = moments(ratio_assign);
    row.mean_ratio_assign = ma.mean;
    row.stderr_ratio_assign = ma.stderr_mean;
    const auto mc = moments(cost);
    row.mean_cost = mc.mean;
    row.std_cost = mc.stddev;
    row.stderr_cost = mc.stderr_mean;
    row.soluble_fraction = static_cast<double>(soluble) / static_cast<double>(recs.size());
    rows.push_back(row);
  }
  return rows;
}

ExperimentResult sweep_beta(const ExperimentConfig &config) {
  auto c = config;
  c.kind = ExperimentKind::sweep_beta;
  c.ensemble = Ensemble::random_csp;
  return execute(c);
}

ExperimentResult scaling_run(const ExperimentConfig &config) {
  auto c = config;
  c.kind = ExperimentKind::scaling;
  c.ensemble = Ensemble::random_csp;
  return execute(c);
}

ExperimentResult enhancement_run(const ExperimentConfig &config) {
  auto c = config;
  c.kind = ExperimentKind::enhancement;
  return execute(c);
}

ExperimentResult sat_sweep(const ExperimentConfig &config) {
  auto c = config;
  c.kind = ExperimentKind::sat_sweep;
  c.ensemble = Ensemble::random_3sat;
  return execute(c);
}

ExperimentResult backtrack_sweep(const ExperimentConfig &config) {
  auto c = config;
  c.kind = ExperimentKind::backtrack_sweep;
  c.ensemble = Ensemble::random_csp;
  return execute(c);
}

ExperimentResult run_experiment(const ExperimentConfig &config) {
  switch (config.kind) {
  case ExperimentKind::sweep_beta: return sweep_beta(config);
  case ExperimentKind::scaling: return scaling_run(config);
  case ExperimentKind::enhancement: return enhancement_run(config);
  case ExperimentKind::sat_sweep: return sat_sweep(config);
  case ExperimentKind::backtrack_sweep: return backtrack_sweep(config);
  }
  throw std::invalid_argument("unknown experiment kind");
}

void write_csv(std::ostream &out, const ExperimentResult &result) {
  const auto &cfg = result.config;
  const bool sat = cfg.ensemble == Ensemble::random_3sat;
  switch (cfg.kind) {
  case ExperimentKind::sweep_beta:
    report::write_csv_row(out, {"N", "L", "beta", "m", "instances", "mean_inv_p",
                                "stderr_inv_p", "std_inv_p", "mean_p", "stderr_p",
                                "mean_nsoln", "zero_p"});
    for (const auto &r : result.rows)
      report::write_csv_row(
          out, {fmt_int(r.items), fmt_int(r.level), format_number(r.param),
                fmt_int(r.count), fmt_int(r.instances), format_number(r.mean_inv_p),
                format_number(r.stderr_inv_p), format_number(r.std_inv_p),
                format_number(r.mean_p), format_number(r.stderr_p),
                format_number(r.mean_nsoln), fmt_int(r.zero_p)});
    break;
  case ExperimentKind::scaling:
    report::write_csv_row(out, {"beta", "N", "L", "m", "instances", "mean_p", "stderr_p",
                                "ln_mean_p", "ln_N", "mean_inv_p", "stderr_inv_p",
                                "std_inv_p", "zero_p"});
    for (const auto &r : result.rows)
      report::write_csv_row(
          out, {format_number(r.param), fmt_int(r.items), fmt_int(r.level),
                fmt_int(r.count), fmt_int(r.instances), format_number(r.mean_p),
                format_number(r.stderr_p), format_number(safe_log(r.mean_p)),
                format_number(std::log(static_cast<double>(r.items))),
                format_number(r.mean_inv_p), format_number(r.stderr_inv_p),
                format_number(r.std_inv_p), fmt_int(r.zero_p)});
    break;
  case ExperimentKind::enhancement:
    if (sat) {
      report::write_csv_row(out, {"ratio", "n", "N", "L", "c", "instances", "rejected",
                                  "mean_p", "mean_nsoln", "mean_ratio_sets",
                                  "stderr_ratio_sets", "ln_mean_ratio_sets",
                                  "mean_ratio_assign", "stderr_ratio_assign",
                                  "ln_mean_ratio_assign", "zero_p"});
      for (const auto &r : result.rows)
        report::write_csv_row(
            out, {format_number(r.param), fmt_int(r.size), fmt_int(r.items),
                  fmt_int(r.level), fmt_int(r.count), fmt_int(r.instances),
                  fmt_int(r.rejected), format_number(r.mean_p),
                  format_number(r.mean_nsoln), format_number(r.mean_ratio_sets),
                  format_number(r.stderr_ratio_sets),
                  format_number(safe_log(r.mean_ratio_sets)),
                  format_number(r.mean_ratio_assign),
                  format_number(r.stderr_ratio_assign),
                  format_number(safe_log(r.mean_ratio_assign)), fmt_int(r.zero_p)});
    } else {
      report::write_csv_row(out, {"beta", "N", "L", "m", "instances", "mean_p",
                                  "mean_nsoln", "mean_ratio_sets", "stderr_ratio_sets",
                                  "ln_mean_ratio_sets", "zero_p"});
      for (const auto &r : result.rows)
        report::write_csv_row(
            out, {format_number(r.param), fmt_int(r.items), fmt_int(r.level),
                  fmt_int(r.count), fmt_int(r.instances), format_number(r.mean_p),
                  format_number(r.mean_nsoln), format_number(r.mean_ratio_sets),
                  format_number(r.stderr_ratio_sets),
                  format_number(safe_log(r.mean_ratio_sets)), fmt_int(r.zero_p)});
    }
    break;
  case ExperimentKind::sat_sweep:
    report::write_csv_row(out, {"n", "N", "L", "ratio", "c", "instances", "rejected",
                                "mean_p", "stderr_p", "ln_mean_p", "mean_inv_p",
                                "stderr_inv_p", "std_inv_p", "mean_nsoln",
                                "mean_ratio_sets", "stderr_ratio_sets",
                                "mean_ratio_assign", "stderr_ratio_assign", "zero_p"});
    for (const auto &r : result.rows)
      report::write_csv_row(
          out, {fmt_int(r.size), fmt_int(r.items), fmt_int(r.level),
                format_number(r.param), fmt_int(r.count), fmt_int(r.instances),
                fmt_int(r.rejected), format_number(r.mean_p), format_number(r.stderr_p),
                format_number(safe_log(r.mean_p)), format_number(r.mean_inv_p),
                format_number(r.stderr_inv_p), format_number(r.std_inv_p),
                format_number(r.mean_nsoln), format_number(r.mean_ratio_sets),
                format_number(r.stderr_ratio_sets), format_number(r.mean_ratio_assign),
                format_number(r.stderr_ratio_assign), fmt_int(r.zero_p)});
    break;
  case ExperimentKind::backtrack_sweep:
    report::write_csv_row(out, {"N", "L", "beta", "m", "instances", "mean_cost",
                                "stderr_cost", "std_cost", "mean_nsoln",
                                "soluble_fraction"});
    for (const auto &r : result.rows)
      report::write_csv_row(
          out, {fmt_int(r.items), fmt_int(r.level), format_number(r.param),
                fmt_int(r.count), fmt_int(r.instances), format_number(r.mean_cost),
                format_number(r.stderr_cost), format_number(r.std_cost),
                format_number(r.mean_nsoln), format_number(r.soluble_fraction)});
    break;
  }
}

void write_raw(std::ostream &out, const ExperimentResult &result) {
  out << "# qlattice raw kind=" << to_string(result.config.kind) << " seed="
      << result.config.seed << '\n';
  report::write_csv_row(out, {"point", "instance", "size", "param", "count", "solutions",
                              "cost", "rejected", "soluble_unforced", "p_tries"});
  for (const auto &r : result.records) {
    std::string tries;
    for (std::size_t t = 0; t < r.p_tries.size(); ++t) {
      if (t != 0)
        tries += ';';
      tries += format_exact(r.p_tries[t]);
    }
    report::write_csv_row(out, {fmt_int(r.point), fmt_int(r.instance), fmt_int(r.size),
                                format_exact(r.param), fmt_int(r.count),
                                fmt_int(r.solutions), fmt_int(r.cost),
                                fmt_int(r.rejected), r.soluble_unforced ? "1" : "0",
                                tries});
  }
}

std::vector<InstanceRecord> read_raw(std::istream &in) {
  std::vector<InstanceRecord> out;
  std::string line;
  bool header = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#')
      continue;
    if (!header) {
      header = true;
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() != 10)
      throw std::invalid_argument("raw record line " + std::to_string(lineno) +
                                  ": expected 10 fields");
    try {
      InstanceRecord r;
      r.point = std::stoi(cells[0]);
      r.instance = std::stoi(cells[1]);
      r.size = std::stoi(cells[2]);
      r.param = std::stod(cells[3]);
      r.count = std::stoi(cells[4]);
      r.solutions = std::stoull(cells[5]);
      r.cost = std::stoull(cells[6]);
      r.rejected = std::stoull(cells[7]);
      r.soluble_unforced = cells[8] == "1";
      if (!cells[9].empty())
        for (const auto &v : split(cells[9], ';'))
          r.p_tries.push_back(std::stod(v));
      out.push_back(std::move(r));
    } catch (const std::logic_error &) {
      throw std::invalid_argument("raw record line " + std::to_string(lineno) +
                                  ": malformed field");
    }
  }
  return out;
}

void write_svg(std::ostream &out, const ExperimentResult &result) {
  const auto &cfg = result.config;
  report::Chart chart;
  std::map<double, report::Series> by_series;
  auto add = [&](double key, const std::string &name, double x, double y) {
    auto &s = by_series[key];
    s.name = name;
    s.x.push_back(x);
    s.y.push_back(y);
  };
  for (const auto &r : result.rows) {
    switch (cfg.kind) {
    case ExperimentKind::sweep_beta:
      add(r.items, "N=" + std::to_string(r.items), r.param, r.mean_inv_p);
      break;
    case ExperimentKind::scaling:
      add(r.param, "beta=" + format_number(r.param), r.items, r.mean_p);
      break;
    case ExperimentKind::enhancement:
      add(r.param, (cfg.ensemble == Ensemble::random_3sat ? "c/n=" : "beta=") +
                       format_number(r.param),
          r.size, r.mean_ratio_sets);
      break;
    case ExperimentKind::sat_sweep:
      add(r.param, "c/n=" + format_number(r.param), r.size, r.mean_p);
      break;
    case ExperimentKind::backtrack_sweep:
      add(r.items, "N=" + std::to_string(r.items), r.param, r.mean_cost);
      break;
    }
  }
  switch (cfg.kind) {
  case ExperimentKind::sweep_beta:
    chart.title = "Expected trials to find a solution";
    chart.x_label = "beta = m/N";
    chart.y_label = "mean 1/p_soln";
    break;
  case ExperimentKind::scaling:
    chart.title = "Probability of a solution vs size";
    chart.x_label = "N";
    chart.y_label = "mean p_soln";
    chart.log_y = true;
    break;
  case ExperimentKind::enhancement:
    chart.title = "Enhancement over random selection";
    chart.x_label = cfg.ensemble == Ensemble::random_3sat ? "n" : "N";
    chart.y_label = "p_soln / p_random";
    chart.log_y = true;
    break;
  case ExperimentKind::sat_sweep:
    chart.title = "Random 3-SAT: probability of a solution";
    chart.x_label = "n";
    chart.y_label = "mean p_soln";
    chart.log_y = true;
    break;
  case ExperimentKind::backtrack_sweep:
    chart.title = "Chronological backtracking cost";
    chart.x_label = "beta = m/N";
    chart.y_label = "mean sets visited";
    break;
  }
  for (auto &[key, s] : by_series)
    chart.series.push_back(std::move(s));
  report::write_svg_chart(out, chart);
}

std::map<std::string, std::string> read_config_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#')
      continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    out[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return out;
}

} // namespace qlattice
