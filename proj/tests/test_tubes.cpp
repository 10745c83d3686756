#include <doctest.h>

#include <cmath>
#include <numbers>

#include "corf/errors.hpp"
#include "corf/rng.hpp"
#include "corf/thresholds.hpp"
#include "corf/tubes.hpp"

using namespace corf;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("angle of parallelism") {
  // sinh(b) = 1 gives angle pi/4
  CHECK(angle_of_parallelism(std::log(1.0 + std::sqrt(2.0))) == doctest::Approx(kPi / 4.0).epsilon(1e-12));
  // decreasing toward 0
  CHECK(angle_of_parallelism(5.0) < angle_of_parallelism(1.0));
  CHECK(angle_of_parallelism(10.0) < angle_of_parallelism(5.0));
  CHECK(angle_of_parallelism(10.0) > 0.0);
  CHECK_THROWS_AS(angle_of_parallelism(0.0), InputError);

  // 1 / tan^2(pi(b)) = sinh^2(b)
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const double b = rng.uniform(0.05, 4.0);
    const double t = std::tan(angle_of_parallelism(b));
    CHECK(1.0 / (t * t) == doctest::Approx(std::sinh(b) * std::sinh(b)).epsilon(1e-12));
  }
}

TEST_CASE("closed-form tube volumes") {
  CHECK(tube_volume({3, 1.0, 2.0}) == doctest::Approx(2.0 * kPi * std::sinh(1.0) * std::sinh(1.0)).epsilon(1e-12));
  CHECK(tube_volume({3, 1.0, 2.0}) == doctest::Approx(8.677691).epsilon(1e-6));
  CHECK(tube_volume({4, 1.0, 1.0}) ==
        doctest::Approx((4.0 / 3.0) * kPi * std::pow(std::sinh(1.0), 3)).epsilon(1e-12));
  CHECK(tube_volume({4, 1.0, 1.0}) == doctest::Approx(6.798692).epsilon(1e-6));
  CHECK(tube_volume({2, 1.0, 1.0}) == doctest::Approx(2.350402).epsilon(1e-6));
  CHECK_THROWS_AS(tube_volume({5, 1.0, 1.0}), InputError);
  CHECK_THROWS_AS(tube_volume({3, -1.0, 1.0}), InputError);
}

TEST_CASE("tube volume is linear in the core length") {
  Rng rng(5);
  for (int dim : {2, 3, 4}) {
    for (int i = 0; i < 30; ++i) {
      const double b = rng.uniform(0.2, 2.0);
      const double l1 = rng.uniform(0.2, 3.0);
      const double l2 = rng.uniform(0.2, 3.0);
      CHECK(tube_volume({dim, b, l1 + l2}) ==
            doctest::Approx(tube_volume({dim, b, l1}) + tube_volume({dim, b, l2})).epsilon(1e-12));
    }
  }
}

TEST_CASE("Monte Carlo tube volumes agree with the closed forms") {
  // moderate sample counts here; the acceptance suite runs the 1e7 grid
  for (const TubeSpec spec : {TubeSpec{2, 1.0, 1.0}, TubeSpec{3, 1.0, 1.0}, TubeSpec{4, 1.0, 1.0},
                              TubeSpec{3, 0.5, 2.0}}) {
    const McEstimate mc = mc_tube_volume(spec, 400000, 99);
    const double closed = tube_volume(spec);
    CHECK(std::abs(mc.estimate - closed) < 3.0 * mc.std_error);
    CHECK(mc.std_error < 0.05 * closed);
  }
  CHECK_THROWS_AS(mc_tube_volume({3, 1.0, 1.0}, 100, 1), InputError);
}

TEST_CASE("Monte Carlo is seed deterministic") {
  const McEstimate a = mc_tube_volume({3, 1.0, 1.0}, 50000, 1234);
  const McEstimate b = mc_tube_volume({3, 1.0, 1.0}, 50000, 1234);
  CHECK(a.estimate == b.estimate);
  CHECK(a.std_error == b.std_error);
}

TEST_CASE("index bound closed forms") {
  // sinh(ln(sqrt2+sqrt3)) = sqrt2 makes the base case exactly 4 pi
  CHECK(index_bound({3, 0.0, 1.0, 1.0}) == doctest::Approx(4.0 * kPi).epsilon(1e-12));
  // sinh(ln(2+sqrt3)) = sqrt3 makes the 4-dimensional base case 8 sqrt3 pi
  CHECK(index_bound({4, 0.0, 1.0, 1.0}) == doctest::Approx(8.0 * std::sqrt(3.0) * kPi).epsilon(1e-12));
  CHECK(index_bound({2, 0.0, 1.0, 1.0}) == doctest::Approx(4.0).epsilon(1e-12));

  // direct evaluation with diameter, volume and length in play
  const double expected = (2.0 * kPi / 4.0) * std::pow(std::sinh(std::log(std::sqrt(2.0) + std::sqrt(3.0)) + 1.0), 2) * 2.0;
  CHECK(index_bound({3, 1.0, 4.0, 2.0}) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(index_bound({3, 1.0, 4.0, 2.0}) ==
        doctest::Approx(2.0 * tube_volume({3, max_threshold(3) + 1.0, 2.0}) / 4.0).epsilon(1e-12));

  CHECK_THROWS_AS(index_bound({3, 0.0, 0.0, 1.0}), InputError);
  CHECK_THROWS_AS(index_bound({3, 0.0, 1.0, -1.0}), InputError);
}

TEST_CASE("tile count bound is half the index bound") {
  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    const BoundInputs in{2 + static_cast<int>(rng.below(3)), rng.uniform(0.0, 3.0),
                         rng.uniform(0.1, 10.0), rng.uniform(0.1, 10.0)};
    CHECK(tile_count_bound(in) == doctest::Approx(0.5 * index_bound(in)).epsilon(1e-15));
  }
  CHECK(tile_count_bound({3, 0.0, 1.0, 1.0}) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
  CHECK(tile_count_bound({4, 0.0, 1.0, 1.0}) == doctest::Approx(4.0 * std::sqrt(3.0) * kPi).epsilon(1e-12));
}

TEST_CASE("index bound is linear in the geodesic length") {
  Rng rng(11);
  for (int dim : {2, 3, 4}) {
    const double dp = rng.uniform(0.0, 2.0);
    const double vp = rng.uniform(0.5, 5.0);
    const double base = index_bound({dim, dp, vp, 1.0});
    for (double ell : {0.5, 2.0, 7.0, 31.0}) {
      CHECK(index_bound({dim, dp, vp, ell}) == doctest::Approx(base * ell).epsilon(1e-12));
    }
  }
}
