#pragma once

#include <cstdint>

namespace corf {

struct TubeSpec {
  int dim = 3;
  double radius = 1.0;  // b, tube radius
  double length = 1.0;  // l, core geodesic segment length
};

// Angle of parallelism, tan(pi(b)) = 1/sinh(b); values in (0, pi/2).
double angle_of_parallelism(double b);

// Volume of the solid tube of radius b around a geodesic segment of
// length l: 2 sinh(b) l in H^2, pi sinh^2(b) l in H^3,
// (4/3) pi sinh^3(b) l in H^4.  The H^2 value is the analog obtained from
// the same spherical-coordinate integral.
double tube_volume(const TubeSpec& spec);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  long n_samples = 0;
  std::uint64_t seed = 0;
};

// Monte Carlo oracle in upper half-space coordinates with density u^-dim.
// The core runs up the vertical axis from height 1 to e^l; membership is
// r in [1, e^l] and u >= r / cosh(b).
McEstimate mc_tube_volume(const TubeSpec& spec, long n_samples, std::uint64_t seed);

struct BoundInputs {
  int dim = 3;
  double diameter = 0.0;  // d_P
  double volume = 1.0;    // V_P > 0
  double length = 1.0;    // geodesic length of the separated element
};

// Closed-form index bound: twice the tube volume of radius
// max_threshold(dim) + d_P over the polyhedron volume, i.e.
// (2 pi / V_P) sinh^2(ln(sqrt3+sqrt2) + d_P) l in dimension 3 and
// (8 pi / 3 V_P) sinh^3(ln(2+sqrt3) + d_P) l in dimension 4.
double index_bound(const BoundInputs& in);

// index_bound / 2, the bound on the number of tiles in one convexification
// period.
double tile_count_bound(const BoundInputs& in);

}  // namespace corf
