// Command-line front end: coefficient tables, single-problem simulation,
// ensemble experiments and theory tables.

#include "qlattice/classical_search.hpp"
#include "qlattice/experiments.hpp"
#include "qlattice/map_coefficients.hpp"
#include "qlattice/problems.hpp"
#include "qlattice/quantum_sim.hpp"
#include "qlattice/report.hpp"
#include "qlattice/theory.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace qlattice;
using report::format_number;

// "1,2,3", "0.5:7:0.5" (inclusive range) or a mix of both.
std::vector<double> parse_list(const std::string &text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty())
      continue;
    const auto c1 = item.find(':');
    if (c1 == std::string::npos) {
      out.push_back(std::stod(item));
      continue;
    }
    const auto c2 = item.find(':', c1 + 1);
    const double lo = std::stod(item.substr(0, c1));
    const double hi = std::stod(item.substr(c1 + 1, c2 == std::string::npos ? std::string::npos : c2 - c1 - 1));
    const double step = c2 == std::string::npos ? 1.0 : std::stod(item.substr(c2 + 1));
    if (!(step > 0))
      throw std::invalid_argument("range step must be positive in '" + item + "'");
    const long count = std::lround(std::floor((hi - lo) / step + 1e-9));
    for (long k = 0; k <= count; ++k)
      out.push_back(lo + static_cast<double>(k) * step);
  }
  if (out.empty())
    throw std::invalid_argument("empty list '" + text + "'");
  return out;
}

std::vector<int> parse_int_list(const std::string &text) {
  std::vector<int> out;
  for (double v : parse_list(text)) {
    if (v != std::round(v))
      throw std::invalid_argument("expected integers in '" + text + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

// Output file or stdout.
class Sink {
public:
  explicit Sink(const std::string &path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_)
        throw std::runtime_error("cannot write '" + path + "'");
    }
  }
  std::ostream &stream() { return file_ ? *file_ : std::cout; }

private:
  std::unique_ptr<std::ofstream> file_;
};

struct CommonOptions {
  std::uint64_t seed = 1;
  int instances = 100;
  int tries = 10;
  std::string policy = "inversion";
  std::string out, raw, svg;
  int threads = 0;
  int level = 0;
  std::string sizes;
  std::string params;
  bool enhancement = false;
  bool no_filter = false;
};

void add_common(CLI::App *cmd, CommonOptions &o, const std::string &default_sizes,
                const std::string &params_flag, const std::string &default_params) {
  o.sizes = default_sizes;
  o.params = default_params;
  cmd->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  cmd->add_option("--instances", o.instances, "Instances per point")->capture_default_str();
  cmd->add_option("--tries", o.tries, "Random-phase tries per instance")->capture_default_str();
  cmd->add_option("--policy", o.policy, "inversion|random")->capture_default_str();
  cmd->add_option("--out", o.out, "CSV output path (default stdout)");
  cmd->add_option("--raw", o.raw, "Per-instance records output path");
  cmd->add_option("--svg", o.svg, "SVG chart output path");
  cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)")->capture_default_str();
  cmd->add_option("--sizes", o.sizes, "Sizes: list or lo:hi:step")->capture_default_str();
  cmd->add_option(params_flag, o.params, "Parameter values: list or lo:hi:step")
      ->capture_default_str();
  // Accepted here so CLI11 does not reject it; handled before parsing.
  cmd->add_option("--config", "key=value file; command-line flags override it");
}

ExperimentConfig to_config(ExperimentKind kind, Ensemble ensemble, const CommonOptions &o) {
  ExperimentConfig c;
  c.kind = kind;
  c.ensemble = ensemble;
  c.sizes = parse_int_list(o.sizes);
  c.params = parse_list(o.params);
  c.instances = o.instances;
  c.tries = o.tries;
  c.seed = o.seed;
  c.policy = parse_phase_policy(o.policy);
  c.threads = o.threads;
  c.solution_level = o.level;
  c.filter_soluble = !o.no_filter;
  return c;
}

void emit(const ExperimentResult &result, const CommonOptions &o) {
  Sink csv(o.out);
  write_csv(csv.stream(), result);
  if (!o.raw.empty()) {
    Sink raw(o.raw);
    write_raw(raw.stream(), result);
  }
  if (!o.svg.empty()) {
    Sink svg(o.svg);
    write_svg(svg.stream(), result);
  }
}

int cmd_coeffs(const std::string &sizes, int level, const std::string &out) {
  Sink sink(out);
  auto &os = sink.stream();
  report::write_csv_row(os, {"N", "i", "k", "a_k", "b_k", "res_norm", "res_orth_max"});
  for (int n : parse_int_list(sizes)) {
    for (int i = 0; map_level_allowed(n, i); ++i) {
      if (level >= 0 && i != level)
        continue;
      const auto c = solve_coefficients(n, i);
      const auto b = scaled_b(c);
      const auto res = residuals(c);
      for (int k = 0; k <= i; ++k)
        report::write_csv_row(os, {std::to_string(n), std::to_string(i), std::to_string(k),
                                   format_number(c.a[k]), format_number(b.b[k]),
                                   format_number(res.normalization),
                                   format_number(res.max_orthogonality())});
    }
  }
  return 0;
}

int cmd_simulate(const std::string &path, int start_level, const std::string &policy_text,
                 int tries, std::uint64_t seed, bool direct) {
  const Problem p = read_problem_file(path);
  const PhasePolicy policy = parse_phase_policy(policy_text);
  RandomStream stream(seed);
  RunOptions opts;
  opts.direct_map = direct;
  const auto avg = run_averaged(p, start_level, policy, tries, stream, opts);
  const auto solutions = count_solutions(p);
  const auto bt = backtrack_cost(p);
  std::cout << "N=" << p.items() << " L=" << p.solution_level()
            << " nogoods=" << p.nogoods().size() << '\n'
            << "policy=" << to_string(policy.kind) << " start_level=" << start_level
            << " tries=" << avg.tries << '\n'
            << "solutions=" << solutions << " random_selection_p="
            << format_number(static_cast<double>(solutions) /
                             static_cast<double>(binom(p.items(), p.solution_level())))
            << '\n'
            << "p_soln=" << format_number(avg.mean_p) << '\n'
            << "mean_inv_p=" << format_number(avg.mean_inv_p) << '\n'
            << "zero_p_tries=" << avg.zero_p_tries << '\n'
            << "max_norm_deviation=" << format_number(avg.max_norm_deviation) << '\n'
            << "backtrack_cost=" << bt.cost << " found=" << (bt.found ? 1 : 0) << '\n';
  return 0;
}

int cmd_theory(const std::string &bs, int n, int level, int m_max, const std::string &out) {
  Sink sink(out);
  auto &os = sink.stream();
  report::write_csv_row(os, {"b", "beta_crit", "beta_poly"});
  for (double b : parse_list(bs))
    report::write_csv_row(os, {format_number(b), format_number(theory::beta_crit(b)),
                               format_number(theory::beta_poly(b))});
  if (n > 0) {
    const int l = level > 0 ? level : n / 2;
    const auto pool = binom(n, 2) - binom(l, 2);
    const int top = m_max >= 0 ? std::min<int>(m_max, static_cast<int>(pool))
                               : static_cast<int>(pool);
    os << '\n';
    report::write_csv_row(os, {"N", "L", "m", "beta", "rho_L", "expected_nsoln",
                               "ln_nsoln_asymptotic"});
    for (int m = 0; m <= top; ++m) {
      const double rho = theory::rho_L(n, l, m);
      const double beta = static_cast<double>(m) / n;
      report::write_csv_row(
          os, {std::to_string(n), std::to_string(l), std::to_string(m), format_number(beta),
               format_number(rho),
               format_number(rho * static_cast<double>(binom(n, l))),
               format_number(theory::ln_nsoln_asymptotic({2.0, beta, n}))});
    }
  }
  return 0;
}

// Splices "--key=value" pairs from a --config file in front of the
// subcommand's own arguments, so explicit flags take precedence.
std::vector<std::string> expand_config(int argc, char **argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::string path;
  std::size_t at = 0;
  for (std::size_t k = 1; k < args.size(); ++k) {
    if (args[k] == "--config" && k + 1 < args.size()) {
      path = args[k + 1];
      args.erase(args.begin() + static_cast<long>(k), args.begin() + static_cast<long>(k) + 2);
      at = k;
      break;
    }
    if (args[k].rfind("--config=", 0) == 0) {
      path = args[k].substr(9);
      args.erase(args.begin() + static_cast<long>(k));
      at = k;
      break;
    }
  }
  if (path.empty())
    return args;
  std::size_t insert_at = 1;
  for (std::size_t k = 1; k < std::min(at, args.size()); ++k)
    if (args[k].rfind("-", 0) != 0) {
      insert_at = k + 1;
      break;
    }
  std::vector<std::string> injected;
  for (const auto &[key, value] : read_config_file(path))
    injected.push_back("--" + key + "=" + value);
  args.insert(args.begin() + static_cast<long>(insert_at), injected.begin(), injected.end());
  return args;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Lattice quantum search simulator", "qlattice"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  std::string coeff_sizes = "10";
  int coeff_level = -1;
  std::string coeff_out;
  auto *coeffs = app.add_subcommand("coeffs", "Print map coefficients a_k and scaled b_k");
  coeffs->add_option("--sizes,-n", coeff_sizes, "Item counts N")->capture_default_str();
  coeffs->add_option("--level,-i", coeff_level, "Only this source level");
  coeffs->add_option("--out", coeff_out, "CSV output path");

  std::string sim_path;
  int sim_start = 2;
  std::string sim_policy = "inversion";
  int sim_tries = 10;
  std::uint64_t sim_seed = 1;
  bool sim_direct = false;
  auto *simulate = app.add_subcommand("simulate", "Simulate one problem file");
  simulate->add_option("problem", sim_path, "Problem file")->required();
  simulate->add_option("--start-level", sim_start, "Starting level")->capture_default_str();
  simulate->add_option("--policy", sim_policy, "inversion|random|none|fixed:<theta>")
      ->capture_default_str();
  simulate->add_option("--tries", sim_tries, "Tries for random phases")->capture_default_str();
  simulate->add_option("--seed", sim_seed, "Seed")->capture_default_str();
  simulate->add_flag("--direct", sim_direct, "Use the direct map evaluation");

  CommonOptions sweep_o, scaling_o, sat_o, bt_o;
  auto *sweep = app.add_subcommand("sweep-beta", "Trials to solution vs nogood density");
  add_common(sweep, sweep_o, "10", "--betas", "0.5:3.5:0.5");
  sweep->add_option("--level,-L", sweep_o.level, "Solution level (default N/2)");

  auto *scaling = app.add_subcommand("scaling", "Solution probability vs problem size");
  add_common(scaling, scaling_o, "8:20:2", "--betas", "1,2");
  scaling->add_option("--level,-L", scaling_o.level, "Solution level (default N/2)");
  scaling->add_flag("--enhancement", scaling_o.enhancement,
                    "Emit ratios to random selection at the solution level");

  auto *sat = app.add_subcommand("sat-sweep", "Random 3-SAT experiments");
  add_common(sat, sat_o, "5:9", "--ratios", "2,4,6,8");
  sat->add_flag("--no-filter", sat_o.no_filter, "Keep insoluble instances");
  sat->add_flag("--enhancement", sat_o.enhancement,
                "Emit ratios to random set and assignment selection");

  auto *bt = app.add_subcommand("backtrack", "Chronological backtracking baseline");
  add_common(bt, bt_o, "10,20", "--betas", "0.5:3.5:0.5");
  bt_o.instances = 1000;
  bt->add_option("--level,-L", bt_o.level, "Solution level (default N/2)");

  std::string th_b = "2";
  int th_n = 0, th_level = 0, th_m_max = -1;
  std::string th_out;
  auto *th = app.add_subcommand("theory", "Transition estimates and rho_L tables");
  th->add_option("--b", th_b, "Values per variable")->capture_default_str();
  th->add_option("--n", th_n, "Item count for a rho_L table");
  th->add_option("--level,-L", th_level, "Solution level (default N/2)");
  th->add_option("--m-max", th_m_max, "Largest m in the rho_L table");
  th->add_option("--out", th_out, "CSV output path");

  try {
    auto args = expand_config(argc, argv);
    std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
    app.parse(rest);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (coeffs->parsed())
      return cmd_coeffs(coeff_sizes, coeff_level, coeff_out);
    if (simulate->parsed())
      return cmd_simulate(sim_path, sim_start, sim_policy, sim_tries, sim_seed, sim_direct);
    if (sweep->parsed()) {
      emit(sweep_beta(to_config(ExperimentKind::sweep_beta, Ensemble::random_csp, sweep_o)),
           sweep_o);
      return 0;
    }
    if (scaling->parsed()) {
      const auto kind = scaling_o.enhancement ? ExperimentKind::enhancement
                                              : ExperimentKind::scaling;
      emit(run_experiment(to_config(kind, Ensemble::random_csp, scaling_o)), scaling_o);
      return 0;
    }
    if (sat->parsed()) {
      const auto kind = sat_o.enhancement ? ExperimentKind::enhancement
                                          : ExperimentKind::sat_sweep;
      emit(run_experiment(to_config(kind, Ensemble::random_3sat, sat_o)), sat_o);
      return 0;
    }
    if (bt->parsed()) {
      emit(backtrack_sweep(to_config(ExperimentKind::backtrack_sweep, Ensemble::random_csp,
                                     bt_o)),
           bt_o);
      return 0;
    }
    if (th->parsed())
      return cmd_theory(th_b, th_n, th_level, th_m_max, th_out);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
