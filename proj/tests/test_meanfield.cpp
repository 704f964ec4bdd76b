#include <doctest.h>

#include <cmath>
#include <vector>

#include "cbo/meanfield.hpp"
#include "cbo/rng.hpp"

using namespace cbo;

namespace {

SimConfig short_cfg(std::uint64_t seed) {
  SimConfig cfg;
  cfg.manifold = Manifold::sphere(1.0, 3);
  cfg.objective = Objective::ackley({0.0, 0.0, 1.0});
  cfg.lambda = 1.0;
  cfg.sigma = 0.25;
  cfg.alpha = 50.0;
  cfg.dt = 0.05;
  cfg.t_max = 1.0;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_SUITE("meanfield") {

TEST_CASE("rate fit recovers an exact power law") {
  const std::vector<std::size_t> n = {16, 64, 256, 1024};
  std::vector<double> mse(4);
  for (std::size_t i = 0; i < 4; ++i) mse[i] = 4.0 / static_cast<double>(n[i]);
  const RateEstimate est = fit_rate(n, mse, 100);
  CHECK(est.slope == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(est.intercept == doctest::Approx(std::log(4.0)).epsilon(1e-10));
  CHECK(est.conf_halfwidth < 1e-10);
}

TEST_CASE("rate fit validation") {
  CHECK_THROWS_AS(fit_rate(std::vector<std::size_t>{16, 64},
                           std::vector<double>{1.0, 0.5}, 10),
                  Error);  // too few points
  CHECK_THROWS_AS(fit_rate(std::vector<std::size_t>{16, 32, 64},
                           std::vector<double>{1.0, 0.5, 0.25}, 10),
                  Error);  // span below x16
  CHECK_THROWS_AS(fit_rate(std::vector<std::size_t>{16, 64, 256},
                           std::vector<double>{1.0, 0.0, 0.25}, 10),
                  Error);  // zero mse has no log
}

TEST_CASE("vanishing alpha reduces to the law of large numbers for the mean") {
  const RateEstimate est = consensus_lln_rate(
      Manifold::sphere(1.0, 3), Objective::ackley({0.0, 0.0, 1.0}),
      /*alpha=*/1e-9, std::vector<std::size_t>{8, 32, 128},
      /*n_repeats=*/200, /*m_reference=*/8192, /*seed=*/21);
  CHECK(est.slope > -1.3);
  CHECK(est.slope < -0.7);
}

TEST_CASE("lln experiment enforces its preconditions") {
  const Manifold m = Manifold::sphere(1.0, 3);
  const Objective obj = Objective::ackley({0.0, 0.0, 1.0});
  try {
    consensus_lln_rate(m, obj, 50.0, std::vector<std::size_t>{8, 32, 128}, 5,
                       8192, 0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientRepeats);
  }
  CHECK_THROWS_AS(consensus_lln_rate(m, obj, 50.0,
                                     std::vector<std::size_t>{128, 32, 8}, 100,
                                     8192, 0),
                  Error);  // not increasing
  CHECK_THROWS_AS(consensus_lln_rate(m, obj, 50.0,
                                     std::vector<std::size_t>{8, 32, 128}, 100,
                                     64, 0),
                  Error);  // reference smaller than the largest N
}

TEST_CASE("doubling the repeat count moves the fitted slope by less than 0.1") {
  const Manifold m = Manifold::sphere(1.0, 3);
  const Objective obj = Objective::ackley({0.0, 0.0, 1.0});
  const std::vector<std::size_t> n = {8, 32, 128};
  const RateEstimate a = consensus_lln_rate(m, obj, 1e-9, n, 200, 8192, 22);
  const RateEstimate b = consensus_lln_rate(m, obj, 1e-9, n, 400, 8192, 22);
  CHECK(std::abs(a.slope - b.slope) < 0.1);
}

TEST_CASE("mean-field copies driven by their own consensus path reproduce the run") {
  // Coupling sanity: same initial data, same Brownian streams, consensus
  // inputs replayed from the recorded path => bitwise identical states.
  SimConfig cfg = short_cfg(33);
  cfg.n_particles = 64;
  const std::size_t steps = 20;
  const auto path = record_consensus_path(cfg, steps);
  REQUIRE(path.size() == steps);

  Ensemble interacting = make_initial_ensemble(cfg);
  Ensemble copies = make_initial_ensemble(cfg);
  for (std::size_t k = 0; k < steps; ++k) {
    em_step(interacting, cfg);
    em_step_with_consensus(copies, cfg, path[k]);
  }
  CHECK(interacting.positions == copies.positions);
}

TEST_CASE("frozen dynamics couples with zero error for every N") {
  SimConfig cfg = short_cfg(34);
  cfg.sigma = 0.0;
  cfg.lambda = 0.0;
  const std::vector<std::size_t> n = {8, 32, 128};
  const std::vector<double> mse = coupled_meanfield_mse(cfg, n, 512, 0.5, 10);
  for (double v : mse) CHECK(v == 0.0);
}

TEST_CASE("coupled rate is near 1/N on the sphere") {
  const SimConfig cfg = short_cfg(35);
  const RateEstimate est = coupled_meanfield_rate(
      cfg, std::vector<std::size_t>{16, 64, 256}, /*m_reference=*/20000,
      /*t_check=*/1.0, /*n_repeats=*/50);
  CHECK(est.slope > -1.4);
  CHECK(est.slope < -0.6);
}

TEST_CASE("constant test functions have exactly zero weak error") {
  const SimConfig cfg = short_cfg(36);
  const std::vector<double> mse = empirical_measure_mse(
      cfg, TestFunction::constant_one(), std::vector<std::size_t>{8, 32, 128},
      512, 0.5, 10);
  for (double v : mse) CHECK(v == 0.0);
}

TEST_CASE("weak error is exactly quartic under doubling the test function") {
  const SimConfig cfg = short_cfg(37);
  const std::vector<std::size_t> n = {8, 32, 128};
  const TestFunction phi = TestFunction::coordinate(2);
  const std::vector<double> a = empirical_measure_mse(cfg, phi, n, 512, 0.5, 10);
  const std::vector<double> b =
      empirical_measure_mse(cfg, phi.scaled(2.0), n, 512, 0.5, 10);
  for (std::size_t i = 0; i < n.size(); ++i) CHECK(b[i] == 4.0 * a[i]);
}

TEST_CASE("weak convergence of the vertical coordinate is near 1/N") {
  const SimConfig cfg = short_cfg(38);
  const RateEstimate est = empirical_measure_convergence(
      cfg, TestFunction::coordinate(2), std::vector<std::size_t>{16, 64, 256},
      /*m_reference=*/20000, /*t_check=*/1.0, /*n_repeats=*/100);
  CHECK(est.slope > -1.4);
  CHECK(est.slope < -0.6);
}

}  // TEST_SUITE
