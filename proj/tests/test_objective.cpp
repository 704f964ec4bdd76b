#include <doctest.h>

#include <cmath>
#include <vector>

#include "cbo/kernels.hpp"
#include "cbo/manifold.hpp"
#include "cbo/objective.hpp"
#include "cbo/rng.hpp"

using namespace cbo;

TEST_SUITE("objective") {

TEST_CASE("ackley vanishes at the minimizer") {
  const Objective obj = Objective::ackley({0.0, 0.0, 1.0});
  CHECK(std::abs(obj.eval(std::vector{0.0, 0.0, 1.0})) < 1e-15);
  // With A != B the analytic minimum is B - A.
  const Objective shifted = Objective::ackley({0.5, -0.25}, 3.0, 0.2, 3.0, 7.0);
  CHECK(shifted.eval(std::vector{0.5, -0.25}) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("ackley at the antipode matches the independently evaluated formula") {
  // Frozen from a 120-bit direct evaluation of the defining expression with
  // v* = (0,0,1), v = (0,0,-1) and default parameters.
  const Objective obj = Objective::ackley({0.0, 0.0, 1.0});
  CHECK(obj.eval(std::vector{0.0, 0.0, -1.0}) ==
        doctest::Approx(9.9967308904386183).epsilon(1e-12));
}

TEST_CASE("ackley is nonnegative on the sphere") {
  const Objective obj = Objective::ackley({0.0, 0.0, 1.0});
  const PointsSoA pts = Manifold::sphere(1.0, 3).sample_uniform(10000, 31);
  std::vector<double> e(pts.size());
  obj.eval_batch(pts, e);
  for (double x : e) CHECK(x >= 0.0);
}

TEST_CASE("translation structure") {
  const std::vector<double> vstar = {0.3, -0.7, 0.64};
  const Objective centered = Objective::ackley(vstar);
  const Objective origin = Objective::ackley({0.0, 0.0, 0.0});
  std::vector<double> v(3), shifted(3);
  for (std::size_t i = 0; i < 100; ++i) {
    rng::fill_normals(rng::stream_key(3, 1, i), 0, v);
    for (std::size_t c = 0; c < 3; ++c) shifted[c] = v[c] - vstar[c];
    CHECK(centered.eval(v) ==
          doctest::Approx(origin.eval(shifted)).epsilon(1e-12));
  }
}

TEST_CASE("strictly positive near the minimizer") {
  const std::vector<double> vstar = {0.0, 0.0, 1.0};
  const Objective obj = Objective::ackley(vstar);
  std::vector<double> p(3), v(3);
  for (std::size_t i = 0; i < 1000; ++i) {
    rng::fill_normals(rng::stream_key(4, 1, i), 0, p);
    const double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    const double target = 1e-4 + 0.4999 * rng::uniform01(5, i, 0);  // |p| in (0, 0.5]
    for (std::size_t c = 0; c < 3; ++c) v[c] = vstar[c] + p[c] * target / n;
    CHECK(obj.eval(v) > 0.0);
  }
}

TEST_CASE("batch evaluation equals the scalar loop") {
  const Objective obj = Objective::ackley({0.1, 0.2, 0.3});
  const PointsSoA pts = Manifold::sphere(1.0, 3).sample_uniform(257, 8);
  std::vector<double> batch(pts.size());
  obj.eval_batch(pts, batch);
  std::vector<double> row(3);
  const bool scalar = kernels::active_backend() == kernels::Backend::Scalar;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    pts.get_row(i, row);
    const double one = obj.eval(row);
    if (scalar)
      CHECK(batch[i] == one);  // identical code path
    else
      CHECK(batch[i] == doctest::Approx(one).epsilon(1e-12));
  }
}

TEST_CASE("empty batch and single particle") {
  const Objective obj = Objective::ackley({0.0, 0.0, 1.0});
  PointsSoA empty(0, 3);
  std::vector<double> none;
  obj.eval_batch(empty, none);  // no-op
  PointsSoA one(1, 3);
  one.set_row(0, std::vector{0.0, 0.0, 1.0});
  std::vector<double> e(1);
  obj.eval_batch(one, e);
  CHECK(std::abs(e[0]) < 1e-15);
}

TEST_CASE("dimension mismatch raises") {
  const Objective obj = Objective::ackley({0.0, 0.0, 1.0});
  try {
    obj.eval(std::vector{1.0, 2.0});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("custom objective wraps a callable") {
  const Objective obj = Objective::custom(
      "sumsq", 2, [](std::span<const double> v) { return v[0] * v[0] + v[1] * v[1]; });
  CHECK(obj.eval(std::vector{3.0, 4.0}) == 25.0);
  CHECK(obj.name() == "sumsq");
  CHECK_FALSE(obj.known_minimizer().has_value());
}

}  // TEST_SUITE
