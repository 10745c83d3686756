#include <doctest.h>

#include <cmath>
#include <numbers>

#include "corf/errors.hpp"
#include "corf/polyhedron.hpp"
#include "corf/rng.hpp"

using namespace corf;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("pentagon construction and validation") {
  const Polyhedron p = builtin_pentagon();
  CHECK(p.dim == 2);
  CHECK(p.face_count() == 5);
  CHECK(p.vertices.size() == 5);

  const PolyhedronValidation v = validate_polyhedron(p);
  CHECK(v.ok);
  CHECK(v.max_right_angle_deviation < 1e-10);
  CHECK(v.min_disjoint_separation >= 1.0);
  CHECK(v.max_vertex_residual < 1e-10);

  // Gauss-Bonnet area of the all-right pentagon
  CHECK(p.volume == doctest::Approx(kPi / 2.0));
  CHECK(p.volume_std_error == 0.0);

  // wall distance solves tanh^2(t) = cos(2 pi / 5)
  const double t = std::atanh(std::sqrt(std::cos(2.0 * kPi / 5.0)));
  CHECK(dist_point_hyperplane(p.reference_point, p.face_normals[0]) == doctest::Approx(t).epsilon(1e-10));

  // diameter equals the maximal vertex distance, vertices at equal radius
  for (const Vec& vert : p.vertices)
    CHECK(dist_points(p.reference_point, vert) == doctest::Approx(p.circumradius).epsilon(1e-9));
  CHECK(p.diameter > p.circumradius);
  CHECK(p.diameter < 2.0 * p.circumradius + 1e-12);
}

TEST_CASE("pentagon area by Monte Carlo matches Gauss-Bonnet") {
  const Polyhedron p = builtin_pentagon();
  const McEstimate mc = mc_polyhedron_volume(p, 400000, 4242);
  CHECK(std::abs(mc.estimate - kPi / 2.0) < 3.0 * mc.std_error);
  CHECK(mc.std_error < 0.01);
}

TEST_CASE("dodecahedron construction and validation") {
  const Polyhedron p = builtin_dodecahedron();
  CHECK(p.dim == 3);
  CHECK(p.face_count() == 12);
  CHECK(p.vertices.size() == 20);

  int adjacent_pairs = 0;
  for (int i = 0; i < 12; ++i)
    for (int j = i + 1; j < 12; ++j)
      if (p.adjacent[i][j]) ++adjacent_pairs;
  CHECK(adjacent_pairs == 30);

  const PolyhedronValidation v = validate_polyhedron(p);
  CHECK(v.ok);
  CHECK(v.max_right_angle_deviation < 1e-9);

  for (const Vec& vert : p.vertices) CHECK(is_point(vert, 1e-9));

  // right-angled dodecahedron volume is about 4.306
  CHECK(p.volume == doctest::Approx(4.306).epsilon(0.01));
  CHECK(p.volume_std_error < 0.01);

  // two seeds agree within their combined three-sigma band
  const McEstimate a = mc_polyhedron_volume(p, 300000, 1);
  const McEstimate b = mc_polyhedron_volume(p, 300000, 2);
  CHECK(std::abs(a.estimate - b.estimate) < 3.0 * std::hypot(a.std_error, b.std_error));
}

TEST_CASE("doubling across a face doubles the Monte Carlo volume") {
  const Polyhedron p = builtin_pentagon();
  const Isometry refl = Isometry::reflection(p.face_normals[0]);

  // sample a ball covering the doubled region, weight by the hyperbolic
  // density, membership in P or its mirror image
  Rng rng(2024);
  const double radius_hyp = p.circumradius + 2.0 * dist_point_hyperplane(p.reference_point, p.face_normals[0]) + 0.01;
  const double r_ball = std::tanh(radius_hyp / 2.0);
  const long n = 400000;
  double sum = 0.0, sum2 = 0.0;
  for (long i = 0; i < n; ++i) {
    Vec y(2);
    double norm = 0.0;
    do {
      y << rng.normal(), rng.normal();
      norm = y.norm();
    } while (norm < 1e-12);
    y *= r_ball * std::sqrt(rng.uniform()) / norm;
    const double r2 = y.squaredNorm();
    Vec x(3);
    x << (1.0 + r2) / (1.0 - r2), 2.0 * y[0] / (1.0 - r2), 2.0 * y[1] / (1.0 - r2);
    const bool inside = p.contains(x, 0.0) || p.contains(refl(x), 0.0);
    if (inside) {
      const double w = kPi * r_ball * r_ball * std::pow(2.0 / (1.0 - r2), 2);
      sum += w;
      sum2 += w * w;
    }
  }
  const double mean = sum / n;
  const double se = std::sqrt(std::max(0.0, sum2 / n - mean * mean) / n);
  CHECK(std::abs(mean - 2.0 * (kPi / 2.0)) < 3.0 * se);
}

TEST_CASE("exact point-to-polyhedron distance") {
  const Polyhedron p = builtin_pentagon();
  CHECK(dist_point_to_polyhedron(p, p.reference_point) == 0.0);

  // along the perpendicular of a wall the distance is the overshoot
  const double t = dist_point_hyperplane(p.reference_point, p.face_normals[0]);
  Vec dir(3);
  dir << 0.0, 1.0, 0.0;  // wall 0 sits in the +x direction
  for (double s : {0.2, 0.7, 1.8}) {
    const Vec x = geodesic_point(p.reference_point, dir, t + s);
    CHECK(dist_point_to_polyhedron(p, x) == doctest::Approx(s).epsilon(1e-9));
  }

  // distance to a vertex from beyond the corner
  const Vec vertex = p.vertices[0];
  const double rho = dist_points(p.reference_point, vertex);
  const Vec radial = (vertex - std::cosh(rho) * p.reference_point) / std::sinh(rho);
  const Vec out = geodesic_point(p.reference_point, radial, rho + 0.5);
  CHECK(dist_point_to_polyhedron(p, out) == doctest::Approx(0.5).epsilon(1e-9));

  // never exceeds the distance to the reference point, never negative
  Rng rng(77);
  for (int i = 0; i < 200; ++i) {
    Vec d(3);
    d << 0.0, rng.normal(), rng.normal();
    d /= d.tail(2).norm();
    const Vec x = geodesic_point(p.reference_point, d, rng.uniform(0.0, 4.0));
    const double dist = dist_point_to_polyhedron(p, x);
    CHECK(dist >= 0.0);
    CHECK(dist <= dist_points(x, p.reference_point) + 1e-12);
  }
}

TEST_CASE("perturbed pentagon fails validation naming the pair") {
  Polyhedron p = builtin_pentagon();
  p.face_normals[1] = normalize_normal(p.face_normals[1] + 1e-3 * Vec::Unit(3, 2));
  const PolyhedronValidation v = validate_polyhedron(p);
  CHECK(!v.ok);
  bool names_pair = false;
  for (const auto& msg : v.violations)
    if (msg.find("(0,1)") != std::string::npos || msg.find("(1,2)") != std::string::npos)
      names_pair = true;
  CHECK(names_pair);
}

TEST_CASE("polyhedron JSON round trip recomputes geometry") {
  const Polyhedron p = builtin_pentagon();
  const std::string text = polyhedron_to_json(p);
  const Polyhedron q = polyhedron_from_json(text);
  CHECK(q.dim == p.dim);
  CHECK(q.face_count() == p.face_count());
  CHECK(q.vertices.size() == p.vertices.size());
  CHECK(q.diameter == doctest::Approx(p.diameter).epsilon(1e-9));
  // the volume comes from Monte Carlo on load, close to pi/2
  CHECK(q.volume == doctest::Approx(kPi / 2.0).epsilon(0.02));
  CHECK(q.volume_std_error > 0.0);
  CHECK(validate_polyhedron(q).ok);
}

TEST_CASE("malformed polyhedron JSON is rejected") {
  CHECK_THROWS_AS(polyhedron_from_json("{ not json"), InputError);
  CHECK_THROWS_AS(polyhedron_from_json(R"({"dim": 2, "normals": [], "adjacency": []})"), InputError);
  CHECK_THROWS_AS(load_polyhedron("no-such-file.json"), InputError);
  CHECK_THROWS_AS(builtin_polyhedron("icosahedron"), InputError);
}
