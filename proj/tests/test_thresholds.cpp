#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "corf/errors.hpp"
#include "corf/isometry.hpp"
#include "corf/rng.hpp"
#include "corf/thresholds.hpp"

using namespace corf;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Vector3d random_unit3(Rng& rng) {
  Eigen::Vector3d v;
  double n = 0.0;
  do {
    v << rng.normal(), rng.normal(), rng.normal();
    n = v.norm();
  } while (n < 1e-9);
  return v / n;
}

// interior angle of the spherical triangle (a, b, c) at vertex a
double corner_angle(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
  const Eigen::Vector3d tb = (b - a.dot(b) * a).normalized();
  const Eigen::Vector3d tc = (c - a.dot(c) * a).normalized();
  return std::acos(std::clamp(tb.dot(tc), -1.0, 1.0));
}

double side(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
}

}  // namespace

TEST_CASE("spherical law of cosines degeneracies") {
  // both other angles pi/2: alpha equals the opposite side
  for (double a : {0.3, 0.8, 1.4, 2.2}) {
    CHECK(spherical_angle(kPi / 2.0, kPi / 2.0, a) == doctest::Approx(a).epsilon(1e-12));
  }
  CHECK_THROWS_AS(spherical_angle(0.0, 1.0, 1.0), InputError);
}

TEST_CASE("spherical law of cosines vs random spherical triangles") {
  Rng rng(101);
  int tested = 0;
  while (tested < 200) {
    const Eigen::Vector3d a = random_unit3(rng), b = random_unit3(rng), c = random_unit3(rng);
    if (std::abs(a.cross(b).dot(c)) < 0.1) continue;  // avoid degenerate triangles
    const double alpha = corner_angle(a, b, c);
    const double beta = corner_angle(b, c, a);
    const double gamma = corner_angle(c, a, b);
    const double side_a = side(b, c);
    CHECK(spherical_angle(beta, gamma, side_a) == doctest::Approx(alpha).epsilon(1e-9));
    ++tested;
  }
}

TEST_CASE("spherical side inverts spherical angle") {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const double beta = rng.uniform(0.3, 2.8);
    const double gamma = rng.uniform(0.3, 2.8);
    const double a = rng.uniform(0.1, 3.0);
    double alpha = 0.0;
    try {
      alpha = spherical_angle(beta, gamma, a);
    } catch (const Error&) {
      continue;
    }
    if (alpha < 1e-3 || alpha > kPi - 1e-3) continue;
    CHECK(spherical_side(alpha, beta, gamma) == doctest::Approx(a).epsilon(1e-10));
  }
}

TEST_CASE("incircle of the all-right spherical triangle") {
  const double r = inscribed_circle_radius_right_triangle();
  CHECK(r == doctest::Approx(std::acos(std::sqrt(2.0) / std::sqrt(3.0))).epsilon(1e-12));
  CHECK(r == doctest::Approx(0.61547970867).epsilon(1e-9));

  // vector oracle on the octant triangle with vertices e1, e2, e3: the
  // incenter is (1,1,1)/sqrt(3) and the tangency points are the edge
  // midpoints
  const Eigen::Vector3d incenter = Eigen::Vector3d::Ones().normalized();
  const Eigen::Vector3d m12 = (Eigen::Vector3d::UnitX() + Eigen::Vector3d::UnitY()).normalized();
  const Eigen::Vector3d m13 = (Eigen::Vector3d::UnitX() + Eigen::Vector3d::UnitZ()).normalized();
  const Eigen::Vector3d m23 = (Eigen::Vector3d::UnitY() + Eigen::Vector3d::UnitZ()).normalized();
  for (const auto& m : {m12, m13, m23}) CHECK(side(incenter, m) == doctest::Approx(r).epsilon(1e-12));
  // equidistant from the three edges: distance to the great circle
  // {x_i = 0} is arcsin of the i-th coordinate
  for (int i = 0; i < 3; ++i) CHECK(std::asin(incenter[i]) == doctest::Approx(r).epsilon(1e-12));
}

TEST_CASE("insphere of the all-right spherical tetrahedron") {
  const double r = inscribed_sphere_radius_right_tetrahedron();
  CHECK(r == doctest::Approx(std::acos(std::sqrt(3.0) / 2.0)).epsilon(1e-12));
  CHECK(r == doctest::Approx(kPi / 6.0).epsilon(1e-12));
  CHECK(right_tetrahedron_center_angle() ==
        doctest::Approx(std::acos(1.0 / std::sqrt(3.0))).epsilon(1e-12));

  // S^3 oracle: the incenter of the octant tetrahedron is (1,1,1,1)/2 and
  // its distance to the wall {x_i = 0} is arcsin(1/2)
  const Eigen::Vector4d incenter = Eigen::Vector4d::Ones() / 2.0;
  CHECK(incenter.norm() == doctest::Approx(1.0));
  for (int i = 0; i < 4; ++i) CHECK(std::asin(incenter[i]) == doctest::Approx(r).epsilon(1e-12));
}

TEST_CASE("tangency radius to separation distance") {
  CHECK(threshold_from_tangency(std::acos(std::sqrt(2.0 / 3.0))) ==
        doctest::Approx(std::log(std::sqrt(2.0) + std::sqrt(3.0))).epsilon(1e-12));
  CHECK(threshold_from_tangency(kPi / 6.0) ==
        doctest::Approx(std::log(2.0 + std::sqrt(3.0))).epsilon(1e-12));
  CHECK(threshold_from_tangency(kPi / 4.0) ==
        doctest::Approx(std::log(1.0 + std::sqrt(2.0))).epsilon(1e-12));
  CHECK(std::log(std::sqrt(2.0) + std::sqrt(3.0)) == doctest::Approx(1.146216).epsilon(1e-5));
}

TEST_CASE("hyperplane boundary radius oracle reproduces the tangency relation") {
  // place a wall orthogonal to a radius at distance d: its ideal boundary
  // is a sphere of spherical radius arccos(tanh d) around the axis
  // direction, checked here on explicit lightlike vectors
  for (double r : {0.3, std::acos(std::sqrt(2.0 / 3.0)), kPi / 6.0, kPi / 4.0, 1.1}) {
    const double d = threshold_from_tangency(r);
    const Vec u = hyperplane_at(Vec::Unit(3, 0), Vec::Unit(3, 1), d);
    const double rho = std::acos(std::tanh(d));
    Vec ideal(3);
    ideal << 1.0, std::cos(rho), std::sin(rho);
    CHECK(std::abs(minkowski_inner(ideal, u)) < 1e-10);
    CHECK(rho == doctest::Approx(r).epsilon(1e-10));
  }
}

TEST_CASE("codimension thresholds and their maxima") {
  CHECK(codim_threshold(3, 3).threshold ==
        doctest::Approx(std::log(std::sqrt(2.0) + std::sqrt(3.0))).epsilon(1e-12));
  CHECK(codim_threshold(4, 4).threshold ==
        doctest::Approx(std::log(2.0 + std::sqrt(3.0))).epsilon(1e-12));
  CHECK(codim_threshold(3, 1).threshold == 0.0);
  CHECK(codim_threshold(3, 1).note.find("any R > 0") != std::string::npos);
  CHECK(codim_threshold(3, 2).inscribed_radius == doctest::Approx(kPi / 4.0));

  // R = threshold_from_tangency(r) for every k >= 2 and monotone in k
  for (int dim : {2, 3, 4}) {
    double prev = -1.0;
    for (int k = 1; k <= dim; ++k) {
      const ThresholdCase c = codim_threshold(dim, k);
      if (k >= 2)
        CHECK(c.threshold == doctest::Approx(threshold_from_tangency(c.inscribed_radius)));
      CHECK(c.threshold > prev);
      prev = c.threshold;
    }
  }
  CHECK(max_threshold(2) == doctest::Approx(std::log(1.0 + std::sqrt(2.0))).epsilon(1e-12));
  CHECK(max_threshold(3) == doctest::Approx(std::log(std::sqrt(2.0) + std::sqrt(3.0))).epsilon(1e-12));
  CHECK(max_threshold(4) == doctest::Approx(std::log(2.0 + std::sqrt(3.0))).epsilon(1e-12));
  CHECK_THROWS_AS(codim_threshold(5, 1), InputError);
  CHECK_THROWS_AS(codim_threshold(3, 4), InputError);
}

TEST_CASE("sinh identities of the maximal thresholds") {
  CHECK(std::sinh(max_threshold(3)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::sinh(max_threshold(4)) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(std::sinh(max_threshold(2)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("separation holds just above the threshold") {
  for (int dim : {3, 4}) {
    const SeparationReport rep =
        verify_separation_property(dim, max_threshold(dim) + 0.01, 20000, 424242);
    CHECK(rep.geodesic_fraction == 1.0);
    CHECK(rep.hyperplane_fraction == 1.0);
    CHECK(!rep.counterexample.has_value());
  }
}

TEST_CASE("tangency configurations appear below the threshold") {
  // the inscribed configuration is feasible below the threshold, so the
  // probe finds hyperplane-level counterexamples near the incenter; the
  // feasible patch is small (about 3e-3 of directions in dimension 3 and
  // 2e-4 in dimension 4), hence the sample count
  for (int dim : {3, 4}) {
    const SeparationReport rep =
        verify_separation_property(dim, max_threshold(dim) - 0.05, 300000, 424242);
    CHECK(rep.hyperplane_fraction < 1.0);
    CHECK(rep.counterexample.has_value());
  }
}

TEST_CASE("separation sampling is seed deterministic") {
  const SeparationReport a = verify_separation_property(3, 1.2, 5000, 7);
  const SeparationReport b = verify_separation_property(3, 1.2, 5000, 7);
  CHECK(a.geodesic_separated == b.geodesic_separated);
  CHECK(a.hyperplane_separated == b.hyperplane_separated);
}
