#include "qlattice/quantum_sim.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace qlattice;

namespace {

Problem three_item_problem() { return Problem(3, 2, {ItemSet::from_items(3, {3})}); }

AmplitudeState random_state(int n, int level, RandomStream &s) {
  AmplitudeState st(n, level);
  for (auto &x : st.amps)
    x = {s.uniform01() - 0.5, s.uniform01() - 0.5};
  return st;
}

double max_diff(const AmplitudeState &a, const AmplitudeState &b) {
  double d = 0;
  for (std::size_t k = 0; k < a.amps.size(); ++k)
    d = std::max(d, std::abs(a.amps[k] - b.amps[k]));
  return d;
}

} // namespace

TEST_CASE("three-item problem under a fixed phase") {
  const Problem p = three_item_problem();
  RandomStream s(1);
  for (int t = 0; t < 100; ++t) {
    const double theta = 2 * std::numbers::pi * t / 100;
    const auto r = run(p, 0, PhasePolicy::fixed(theta), s);
    CHECK(r.p_soln == doctest::Approx((17 - 8 * std::cos(theta)) / 27).epsilon(1e-12));
    CHECK(std::abs(r.final_norm - 1) < 1e-12);
  }
  CHECK(run(p, 0, PhasePolicy::inversion(), s).p_soln ==
        doctest::Approx(25.0 / 27).epsilon(1e-12));
  CHECK(run(p, 0, PhasePolicy::none(), s).p_soln == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("phase policies") {
  CHECK(parse_phase_policy("inversion").kind == PhaseKind::inversion);
  CHECK(parse_phase_policy("random").kind == PhaseKind::random_uniform);
  CHECK(parse_phase_policy("none").kind == PhaseKind::none);
  const auto f = parse_phase_policy("fixed:1.5");
  CHECK(f.kind == PhaseKind::fixed_angle);
  CHECK(f.angle == 1.5);
  CHECK_THROWS_AS((void)parse_phase_policy("sometimes"), std::invalid_argument);
  CHECK(std::string(to_string(PhaseKind::random_uniform)) == "random");
}

TEST_CASE("initial state") {
  const Problem p(4, 2, {ItemSet::from_items(4, {1}), ItemSet::from_items(4, {2, 3})});
  const auto st = init_state(p, 2);
  // Goods at level 2: {2,4}, {3,4}.
  int nonzero = 0;
  for (const auto &x : st.amps)
    if (std::abs(x) > 0) {
      ++nonzero;
      CHECK(std::abs(x - Amplitude(1 / std::sqrt(2.0), 0)) < 1e-15);
    }
  CHECK(nonzero == 2);
  std::vector<ItemSet> singles;
  for (int j = 1; j <= 4; ++j)
    singles.push_back(ItemSet::from_items(4, {j}));
  CHECK_THROWS_AS((void)init_state(Problem(4, 2, singles), 1), std::domain_error);
}

TEST_CASE("phases touch only nogoods and random angles are logged in rank order") {
  const Problem p(6, 3, {ItemSet::from_items(6, {1, 2}), ItemSet::from_items(6, {5})});
  RandomStream s(2);
  AmplitudeState st(6, 2);
  for (auto &x : st.amps)
    x = 1;
  std::vector<double> log;
  const auto out = apply_phases(st, p, PhasePolicy::random_uniform(), s, &log);
  std::size_t next = 0;
  const auto masks = level_masks(6, 2);
  for (std::size_t r = 0; r < masks.size(); ++r) {
    if (p.is_nogood(masks[r])) {
      REQUIRE(next < log.size());
      CHECK(std::abs(out.amps[r] - std::polar(1.0, log[next])) < 1e-15);
      CHECK(log[next] >= 0);
      CHECK(log[next] < 2 * std::numbers::pi);
      ++next;
    } else {
      CHECK(out.amps[r] == Amplitude(1, 0));
    }
  }
  CHECK(next == log.size());
  CHECK(log.size() == 6); // {1,2} plus five pairs containing 5
}

TEST_CASE("overlap basis coefficients invert the binomial transform") {
  for (int n = 2; n <= 16; ++n)
    for (int i = 0; map_level_allowed(n, i); ++i) {
      const auto c = solve_coefficients(n, i);
      const auto ct = overlap_basis_coefficients(c);
      for (int k = 0; k <= i; ++k) {
        double a = 0;
        for (int t = 0; t <= k; ++t)
          a += static_cast<double>(binom(k, t)) * ct[t];
        REQUIRE(std::abs(a - c.a[k]) < 1e-9);
      }
    }
}

TEST_CASE("direct map agrees with the explicit matrix") {
  RandomStream s(8);
  for (int n = 1; n <= 8; ++n)
    for (int i = 0; map_level_allowed(n, i); ++i) {
      const auto c = solve_coefficients(n, i);
      const Eigen::MatrixXd u = explicit_map_matrix(c);
      const auto st = random_state(n, i, s);
      Eigen::VectorXcd v(st.amps.size());
      for (std::size_t k = 0; k < st.amps.size(); ++k)
        v[static_cast<Eigen::Index>(k)] = st.amps[k];
      const Eigen::VectorXcd w = u.cast<Amplitude>() * v;
      const auto out = apply_map(st, c);
      for (std::size_t k = 0; k < out.amps.size(); ++k)
        REQUIRE(std::abs(out.amps[k] - w[static_cast<Eigen::Index>(k)]) < 1e-12);
    }
}

TEST_CASE("fast map agrees with the direct map") {
  RandomStream s(9);
  for (int n = 1; n <= 12; ++n)
    for (int i = 0; map_level_allowed(n, i); ++i) {
      const auto c = solve_coefficients(n, i);
      const auto st = random_state(n, i, s);
      INFO("N=" << n << " i=" << i);
      REQUIRE(max_diff(apply_map_fast(st, c), apply_map(st, c)) <= 1e-10);
      RealAmplitudeState re(n, i);
      for (std::size_t k = 0; k < re.amps.size(); ++k)
        re.amps[k] = st.amps[k].real();
      const auto fast = apply_map_fast(re, c);
      const auto direct = apply_map(re, c);
      for (std::size_t k = 0; k < fast.amps.size(); ++k)
        REQUIRE(std::abs(fast.amps[k] - direct.amps[k]) <= 1e-10);
    }
}

TEST_CASE("real, complex, fast and direct paths give the same probability") {
  RandomStream s(10);
  for (int t = 0; t < 30; ++t) {
    const int n = 6 + 2 * static_cast<int>(s.uniform_index(3));
    const ItemSet sol = ItemSet::first_items(n, n / 2);
    RandomStream g = s.child(t);
    const Problem p = generate_random_csp(n, static_cast<int>(g.uniform_index(2 * n)), sol, g);
    RandomStream r1(0), r2(0), r3(0);
    RunOptions complex_path;
    complex_path.real_path = false;
    RunOptions direct;
    direct.direct_map = true;
    const double a = run(p, 2, PhasePolicy::inversion(), r1).p_soln;
    const double b = run(p, 2, PhasePolicy::inversion(), r2, complex_path).p_soln;
    const double c = run(p, 2, PhasePolicy::inversion(), r3, direct).p_soln;
    REQUIRE(std::abs(a - b) < 1e-12);
    REQUIRE(std::abs(a - c) < 1e-12);
  }
}

TEST_CASE("norm is conserved and random phases are reproducible") {
  RandomStream s(12);
  for (int t = 0; t < 40; ++t) {
    const int n = 8 + 2 * static_cast<int>(s.uniform_index(4));
    const ItemSet sol = ItemSet::first_items(n, n / 2);
    RandomStream g = s.child(t);
    const Problem p = generate_random_csp(n, static_cast<int>(g.uniform_index(3 * n)), sol, g);
    for (const auto &policy : {PhasePolicy::inversion(), PhasePolicy::random_uniform()}) {
      RandomStream a(t), b(t);
      RunOptions opts;
      opts.record_phases = true;
      const auto ra = run(p, 2, policy, a, opts);
      const auto rb = run(p, 2, policy, b, opts);
      REQUIRE(std::abs(ra.final_norm - 1) <= 1e-9);
      REQUIRE(ra.p_soln == rb.p_soln);
      REQUIRE(ra.phase_log == rb.phase_log);
      REQUIRE(ra.p_soln > 0);
      REQUIRE(ra.p_soln <= 1 + 1e-12);
      REQUIRE(ra.trials_equivalent == doctest::Approx(1 / ra.p_soln));
    }
  }
}

TEST_CASE("averaging") {
  const Problem p = three_item_problem();
  RandomStream s(3);
  const auto inv = run_averaged(p, 0, PhasePolicy::inversion(), 10, s);
  CHECK(inv.tries == 1);
  CHECK(inv.mean_p == doctest::Approx(25.0 / 27));
  const auto rnd = run_averaged(p, 0, PhasePolicy::random_uniform(), 4000, s);
  CHECK(rnd.tries == 4000);
  CHECK(rnd.p_values.size() == 4000);
  CHECK(rnd.mean_p == doctest::Approx(17.0 / 27).epsilon(0.02));
  CHECK(rnd.zero_p_tries == 0);
  CHECK_THROWS((void)run_averaged(p, 0, PhasePolicy::random_uniform(), 0, s));
}

TEST_CASE("run argument checks") {
  RandomStream s(1);
  CHECK_THROWS_AS((void)run(three_item_problem(), 2, PhasePolicy::inversion(), s),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)run(Problem(4, 3, {}), 0, PhasePolicy::inversion(), s),
                  std::invalid_argument);
}
