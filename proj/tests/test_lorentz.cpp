#include <doctest.h>

#include <cmath>

#include "corf/errors.hpp"
#include "corf/lorentz.hpp"
#include "corf/rng.hpp"

using namespace corf;

namespace {

Vec vec3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

Vec random_point(Rng& rng, int dim, double radius) {
  Vec dir(dim + 1);
  dir[0] = 0.0;
  double norm = 0.0;
  do {
    for (int i = 1; i <= dim; ++i) dir[i] = rng.normal();
    norm = dir.tail(dim).norm();
  } while (norm < 1e-9);
  dir /= norm;
  return geodesic_point(Vec::Unit(dim + 1, 0), dir, rng.uniform(0.0, radius));
}

}  // namespace

TEST_CASE("minkowski inner product on basis vectors") {
  const Vec e0 = Vec::Unit(3, 0);
  const Vec e1 = Vec::Unit(3, 1);
  CHECK(minkowski_inner(e0, e0) == doctest::Approx(-1.0));
  CHECK(minkowski_inner(e1, e1) == doctest::Approx(1.0));
  CHECK(minkowski_inner(e0, e1) == doctest::Approx(0.0));
}

TEST_CASE("minkowski inner product, hand evaluation -2 + 1") {
  const Vec x = vec3(std::sqrt(2.0), 1.0, 0.0);
  CHECK(minkowski_inner(x, x) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("minkowski inner rejects dimension mismatch") {
  CHECK_THROWS_AS(minkowski_inner(Vec::Unit(3, 0), Vec::Unit(4, 0)), InputError);
}

TEST_CASE("minkowski inner is bilinear and symmetric") {
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    Vec x(4), y(4), z(4);
    for (int j = 0; j < 4; ++j) {
      x[j] = rng.normal();
      y[j] = rng.normal();
      z[j] = rng.normal();
    }
    const double a = rng.normal();
    CHECK(minkowski_inner(x, y) == doctest::Approx(minkowski_inner(y, x)).epsilon(1e-12));
    CHECK(minkowski_inner(x + a * z, y) ==
          doctest::Approx(minkowski_inner(x, y) + a * minkowski_inner(z, y)).epsilon(1e-10));
  }
}

TEST_CASE("distance between points") {
  const Vec p = vec3(1.0, 0.0, 0.0);
  CHECK(dist_points(p, p) == doctest::Approx(0.0));
  const Vec q = vec3(std::cosh(1.0), std::sinh(1.0), 0.0);
  CHECK(dist_points(p, q) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("triangle inequality on random point triples") {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const Vec a = random_point(rng, 3, 2.0);
    const Vec b = random_point(rng, 3, 2.0);
    const Vec c = random_point(rng, 3, 2.0);
    CHECK(dist_points(a, c) <= dist_points(a, b) + dist_points(b, c) + 1e-9);
  }
}

TEST_CASE("point to hyperplane distance") {
  const Vec u = Vec::Unit(3, 1);
  const Vec on_plane = vec3(std::cosh(0.7), 0.0, std::sinh(0.7));
  CHECK(dist_point_hyperplane(on_plane, u) == doctest::Approx(0.0));

  const Vec x = vec3(std::cosh(1.0), std::sinh(1.0), 0.0);
  CHECK(dist_point_hyperplane(x, u) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(signed_dist_point_hyperplane(x, u) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hyperplane at distance t from the origin") {
  const Vec e0 = Vec::Unit(3, 0);
  const Vec dir = Vec::Unit(3, 1);
  const Vec u = hyperplane_at(e0, dir, 0.8);
  CHECK(is_unit_normal(u, 1e-12));
  CHECK(dist_point_hyperplane(e0, u) == doctest::Approx(0.8).epsilon(1e-12));
  // the origin is on the negative side
  CHECK(signed_dist_point_hyperplane(e0, u) < 0.0);
  // the closest point lies on the plane
  CHECK(dist_point_hyperplane(geodesic_point(e0, dir, 0.8), u) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("distance between disjoint hyperplanes") {
  const Vec e0 = Vec::Unit(3, 0);
  const Vec dir = Vec::Unit(3, 1);
  const Vec u = hyperplane_at(e0, dir, 0.5);
  const Vec v = hyperplane_at(e0, Vec(-dir), 0.9);
  CHECK(dist_hyperplanes(u, v) == doctest::Approx(1.4).epsilon(1e-10));
  CHECK(dist_hyperplanes(u, Vec::Unit(3, 2)) == doctest::Approx(0.0));
}

TEST_CASE("normalization helpers") {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    Vec x = random_point(rng, 2, 3.0) * rng.uniform(0.5, 2.0);
    const Vec p = normalize_point(x);
    CHECK(is_point(p, 1e-12));
  }
  CHECK_THROWS_AS(normalize_point(Vec::Unit(3, 1)), NumericalError);
  CHECK_THROWS_AS(normalize_normal(Vec::Unit(3, 0)), NumericalError);
}
