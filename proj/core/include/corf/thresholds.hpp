#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "corf/lorentz.hpp"

namespace corf {

// Spherical law of cosines for angles: the angle alpha opposite side a in
// a triangle with remaining angles beta and gamma,
//   cos(alpha) = -cos(beta)cos(gamma) + sin(beta)sin(gamma)cos(a).
double spherical_angle(double beta, double gamma, double side_a);

// Solves spherical_angle(beta, gamma, a) = alpha for the side a by
// bisection (the map a -> alpha is monotone increasing).
double spherical_side(double alpha, double beta, double gamma);

// Radius of the circle inscribed in the all-right spherical triangle with
// edge lengths pi/2: arccos(sqrt(2)/sqrt(3)).
double inscribed_circle_radius_right_triangle();

// Angle at the incenter of the all-right spherical tetrahedron in the
// (edge midpoint, tangency point, center) triangle: arccos(1/sqrt(3)).
double right_tetrahedron_center_angle();

// Radius of the sphere inscribed in the all-right spherical tetrahedron:
// arccos(sqrt(3)/2) = pi/6.
double inscribed_sphere_radius_right_tetrahedron();

// Distance R from the ball origin at which a hyperplane orthogonal to a
// radius has ideal boundary sphere of spherical radius r:
// with theta = r, c = sec(theta), q = tan(theta), y = c - q,
// R = ln((1+y)/(1-y)).
double threshold_from_tangency(double r);

struct ThresholdCase {
  int dim = 0;
  int codim = 0;             // k, number of walls through the closest face
  double inscribed_radius = 0.0;  // spherical, radians
  double threshold = 0.0;         // hyperbolic separation distance R
  std::string note;
};

// k = 1 is the sentinel R = 0 (any positive distance suffices there);
// k = 2 -> ln(1+sqrt2), k = 3 -> ln(sqrt2+sqrt3), k = 4 -> ln(2+sqrt3).
ThresholdCase codim_threshold(int dim, int k);

// Largest case for the dimension: ln(1+sqrt2), ln(sqrt2+sqrt3),
// ln(2+sqrt3) for dim 2, 3, 4.
double max_threshold(int dim);

struct SeparationCounterexample {
  Vec direction;  // spatial direction of the closest axis point (n entries)
  Vec tangent;    // geodesic tangent at that point (n+1 entries)
};

struct SeparationReport {
  int dim = 0;
  double distance = 0.0;
  long n_samples = 0;
  std::uint64_t seed = 0;
  long geodesic_separated = 0;   // some wall strictly separates the sampled geodesic
  long hyperplane_separated = 0; // some wall separates the whole orthogonal hyperplane
  double geodesic_fraction = 0.0;
  double hyperplane_fraction = 0.0;
  std::optional<SeparationCounterexample> counterexample;  // first sample with no separating wall
};

// Samples geodesics whose closest point to the orthant corner at the
// origin lies at the given distance, with the approach direction drawn
// from the corner's normal cone and the whole configuration moved by a
// random signed coordinate permutation.  Reports how many samples are cut
// off from the corner by one of the coordinate walls.  Above
// max_threshold(dim) the fraction is 1; below it, samples near the
// inscribed configuration give hyperplane-level counterexamples.
SeparationReport verify_separation_property(int dim, double distance, long n_samples,
                                            std::uint64_t seed);

}  // namespace corf
