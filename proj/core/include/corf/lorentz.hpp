#pragma once

#include <Eigen/Dense>

namespace corf {

// Hyperboloid-model coordinates live in R^{n+1} with the bilinear form
// <x,y> = -x0*y0 + x1*y1 + ... + xn*yn.  Points satisfy <x,x> = -1 with
// x0 > 0, hyperplane normals <u,u> = +1, ideal points <x,x> = 0.
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kGeomTolDefault = 1e-9;  // geometric predicates
inline constexpr double kAlgebraTol = 1e-12;     // algebraic identities

// kGeomTolDefault unless overridden by the CORF_TOL environment variable
// (read once per process).
double geometric_tol();

Mat minkowski_form(int dim);

double minkowski_inner(const Vec& x, const Vec& y);

bool is_point(const Vec& x, double tol = kGeomTolDefault);
bool is_unit_normal(const Vec& u, double tol = kGeomTolDefault);
bool is_lightlike(const Vec& x, double tol = kGeomTolDefault);

// Rescale to <x,x> = -1 with x0 > 0.
Vec normalize_point(Vec x);
// Rescale to <u,u> = +1.
Vec normalize_normal(Vec u);

double dist_points(const Vec& x, const Vec& y);

// arcsinh(|<x,u>|); the signed variant keeps the sign of <x,u>, which
// identifies the side of the hyperplane.
double dist_point_hyperplane(const Vec& x, const Vec& u);
double signed_dist_point_hyperplane(const Vec& x, const Vec& u);

// 0 when the hyperplanes meet, otherwise the length of their common
// perpendicular, arccosh(|<u,v>|).
double dist_hyperplanes(const Vec& u, const Vec& v);

// Point at hyperbolic distance t from `base` along the unit spacelike
// direction `dir` (tangent at base: <dir,dir> = 1, <dir,base> = 0).
Vec geodesic_point(const Vec& base, const Vec& dir, double t);

// Normal of the hyperplane at distance t from `base` whose closest point
// to base lies in direction `dir`; base sits on the <x,u> < 0 side.
Vec hyperplane_at(const Vec& base, const Vec& dir, double t);

}  // namespace corf
