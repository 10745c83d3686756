#include "corf/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "corf/errors.hpp"
#include "corf/rng.hpp"

namespace corf {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

double spherical_angle(double beta, double gamma, double side_a) {
  if (beta <= 0.0 || beta >= kPi || gamma <= 0.0 || gamma >= kPi || side_a <= 0.0 || side_a >= kPi)
    throw InputError("spherical_angle: arguments must lie in (0, pi)");
  double c = -std::cos(beta) * std::cos(gamma) + std::sin(beta) * std::sin(gamma) * std::cos(side_a);
  if (c > 1.0 + kGeomTolDefault || c < -1.0 - kGeomTolDefault)
    throw NumericalError("spherical_angle: cosine out of range");
  c = std::clamp(c, -1.0, 1.0);
  return std::acos(c);
}

double spherical_side(double alpha, double beta, double gamma) {
  double lo = 1e-12, hi = kPi - 1e-12;
  // alpha grows with the side, so plain bisection converges
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (spherical_angle(beta, gamma, mid) < alpha)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double inscribed_circle_radius_right_triangle() {
  // Triangle formed by a corner of the all-right spherical triangle, the
  // tangency point on an adjacent edge, and the incenter: angles pi/4,
  // pi/2, pi/3, and the inradius is the side opposite the corner.
  return spherical_side(kPi / 4.0, kPi / 2.0, kPi / 3.0);
}

double right_tetrahedron_center_angle() {
  return spherical_angle(kPi / 4.0, kPi / 2.0, inscribed_circle_radius_right_triangle());
}

double inscribed_sphere_radius_right_tetrahedron() {
  // Second application in the (edge midpoint, tangency, center) triangle:
  // the side between tangency point and center, opposite the pi/4 angle.
  return spherical_side(kPi / 4.0, right_tetrahedron_center_angle(), kPi / 2.0);
}

double threshold_from_tangency(double r) {
  if (r <= 0.0 || r >= kPi / 2.0) throw InputError("threshold_from_tangency: r must lie in (0, pi/2)");
  const double c = 1.0 / std::cos(r);
  const double q = std::tan(r);
  const double y = c - q;
  if (y >= 1.0 - 1e-12) throw NumericalError("threshold_from_tangency: configuration degenerates as r -> pi/2");
  return std::log((1.0 + y) / (1.0 - y));
}

ThresholdCase codim_threshold(int dim, int k) {
  if (dim < 2 || dim > 4 || k < 1 || k > dim) throw InputError("codim_threshold: need 1 <= k <= dim <= 4");
  ThresholdCase out;
  out.dim = dim;
  out.codim = k;
  switch (k) {
    case 1:
      out.inscribed_radius = kPi / 2.0;
      out.threshold = 0.0;
      out.note = "closest face is a wall; its own hyperplane separates, any R > 0 works";
      break;
    case 2:
      out.inscribed_radius = kPi / 4.0;
      out.note = "edge case, tangency against the right-angled bi-disk";
      break;
    case 3:
      out.inscribed_radius = inscribed_circle_radius_right_triangle();
      out.note = "vertex case in dimension 3, incircle of the all-right spherical triangle";
      break;
    case 4:
      out.inscribed_radius = inscribed_sphere_radius_right_tetrahedron();
      out.note = "vertex case in dimension 4, insphere of the all-right spherical tetrahedron";
      break;
  }
  if (k >= 2) out.threshold = threshold_from_tangency(out.inscribed_radius);
  return out;
}

double max_threshold(int dim) {
  if (dim < 2 || dim > 4) throw InputError("max_threshold: dim must be 2, 3 or 4");
  double best = 0.0;
  for (int k = 1; k <= dim; ++k) best = std::max(best, codim_threshold(dim, k).threshold);
  return best;
}

SeparationReport verify_separation_property(int dim, double distance, long n_samples,
                                            std::uint64_t seed) {
  if (dim != 3 && dim != 4) throw InputError("verify_separation_property: dim must be 3 or 4");
  if (distance <= 0.0 || n_samples <= 0) throw InputError("verify_separation_property: bad parameters");

  SeparationReport rep;
  rep.dim = dim;
  rep.distance = distance;
  rep.n_samples = n_samples;
  rep.seed = seed;

  Rng rng(seed);
  const double cosh_d = std::cosh(distance);
  const double sinh_d = std::sinh(distance);
  const double sin_rho = 1.0 / cosh_d;  // spherical radius of the hyperplane boundary

  for (long s = 0; s < n_samples; ++s) {
    // random signed permutation of the coordinate walls
    std::vector<int> perm(dim);
    for (int i = 0; i < dim; ++i) perm[i] = i;
    for (int i = dim - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    std::vector<double> sign(dim);
    for (int i = 0; i < dim; ++i) sign[i] = rng.uniform() < 0.5 ? -1.0 : 1.0;

    // approach direction in the corner's normal cone: fold a uniform
    // sphere direction into the positive cell, then move it
    Vec c(dim);
    double norm = 0.0;
    do {
      for (int i = 0; i < dim; ++i) c[i] = rng.normal();
      norm = c.norm();
    } while (norm < 1e-12);
    c = c.cwiseAbs() / norm;
    Vec cw(dim);
    for (int i = 0; i < dim; ++i) cw[perm[i]] = sign[i] * c[i];

    Vec y(dim + 1), radial(dim + 1);
    y[0] = cosh_d;
    y.tail(dim) = sinh_d * cw;
    radial[0] = sinh_d;
    radial.tail(dim) = cosh_d * cw;

    // random tangent orthogonal to the radius
    Vec w(dim + 1);
    double wq = 0.0;
    do {
      for (int i = 0; i <= dim; ++i) w[i] = rng.normal();
      w += minkowski_inner(w, y) * y;
      w -= minkowski_inner(w, radial) * radial;
      wq = minkowski_inner(w, w);
    } while (wq < 1e-12);
    w /= std::sqrt(wq);

    const Vec end_a = y + w;
    const Vec end_b = y - w;

    bool geo_sep = false;
    bool hyp_sep = false;
    for (int i = 0; i < dim && !(geo_sep && hyp_sep); ++i) {
      // wall normal sign[i] * e_{perm[i]+1}; the moved corner lies on its
      // non-positive side
      const double pa = sign[i] * end_a[perm[i] + 1];
      const double pb = sign[i] * end_b[perm[i] + 1];
      if (pa > 0.0 && pb > 0.0) geo_sep = true;
      if (sign[i] * cw[perm[i]] > sin_rho) hyp_sep = true;
    }
    if (geo_sep) ++rep.geodesic_separated;
    if (hyp_sep) ++rep.hyperplane_separated;
    if (!hyp_sep && !rep.counterexample) {
      SeparationCounterexample ce;
      ce.direction = cw;
      ce.tangent = w;
      rep.counterexample = std::move(ce);
    }
  }

  rep.geodesic_fraction = static_cast<double>(rep.geodesic_separated) / n_samples;
  rep.hyperplane_fraction = static_cast<double>(rep.hyperplane_separated) / n_samples;
  return rep;
}

}  // namespace corf
