#include "corf/lorentz.hpp"

#include <cmath>
#include <cstdlib>

#include "corf/errors.hpp"

namespace corf {

double geometric_tol() {
  static const double tol = [] {
    if (const char* env = std::getenv("CORF_TOL")) {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end != env && v > 0.0 && v < 1.0) return v;
    }
    return kGeomTolDefault;
  }();
  return tol;
}

Mat minkowski_form(int dim) {
  Mat j = Mat::Identity(dim + 1, dim + 1);
  j(0, 0) = -1.0;
  return j;
}

double minkowski_inner(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw InputError("minkowski_inner: dimension mismatch");
  return x.tail(x.size() - 1).dot(y.tail(y.size() - 1)) - x[0] * y[0];
}

bool is_point(const Vec& x, double tol) {
  // the unit residual of a distant point carries an unavoidable x0^2
  // rounding factor
  return x[0] > 0.0 && std::abs(minkowski_inner(x, x) + 1.0) < tol * (1.0 + x[0] * x[0]);
}

bool is_unit_normal(const Vec& u, double tol) {
  const double scale = 1.0 + u[0] * u[0];
  return std::abs(minkowski_inner(u, u) - 1.0) < tol * scale;
}

bool is_lightlike(const Vec& x, double tol) {
  return std::abs(minkowski_inner(x, x)) < tol;
}

Vec normalize_point(Vec x) {
  const double q = minkowski_inner(x, x);
  if (q >= 0.0) throw NumericalError("normalize_point: vector is not timelike");
  x /= std::sqrt(-q);
  if (x[0] < 0.0) x = -x;
  return x;
}

Vec normalize_normal(Vec u) {
  const double q = minkowski_inner(u, u);
  if (q <= 0.0) throw NumericalError("normalize_normal: vector is not spacelike");
  u /= std::sqrt(q);
  return u;
}

double dist_points(const Vec& x, const Vec& y) {
  const double c = -minkowski_inner(x, y);
  if (c < 1.0 - geometric_tol()) throw InputError("dist_points: inputs are not valid points");
  return std::acosh(std::max(c, 1.0));
}

double dist_point_hyperplane(const Vec& x, const Vec& u) {
  return std::asinh(std::abs(minkowski_inner(x, u)));
}

double signed_dist_point_hyperplane(const Vec& x, const Vec& u) {
  return std::asinh(minkowski_inner(x, u));
}

double dist_hyperplanes(const Vec& u, const Vec& v) {
  const double c = std::abs(minkowski_inner(u, v));
  if (c <= 1.0) return 0.0;
  return std::acosh(c);
}

Vec geodesic_point(const Vec& base, const Vec& dir, double t) {
  return std::cosh(t) * base + std::sinh(t) * dir;
}

Vec hyperplane_at(const Vec& base, const Vec& dir, double t) {
  return std::sinh(t) * base + std::cosh(t) * dir;
}

}  // namespace corf
