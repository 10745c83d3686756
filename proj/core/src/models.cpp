#include "corf/models.hpp"

#include <cmath>

#include "corf/errors.hpp"

namespace corf {

namespace {

Vec hyperboloid_to_ball(const Vec& x) {
  if (!is_point(x, 1e-6)) throw InputError("model_convert: not a hyperboloid point");
  return x.tail(x.size() - 1) / (1.0 + x[0]);
}

Vec ball_to_hyperboloid(const Vec& b) {
  const double r2 = b.squaredNorm();
  if (r2 >= 1.0) throw InputError("model_convert: point outside the unit ball");
  Vec x(b.size() + 1);
  x[0] = (1.0 + r2) / (1.0 - r2);
  x.tail(b.size()) = 2.0 * b / (1.0 - r2);
  return x;
}

// Involution exchanging the ball and the upper half-space.
Vec invert_ball_half_space(const Vec& p) {
  Vec c = Vec::Zero(p.size());
  c[p.size() - 1] = -1.0;
  const Vec d = p - c;
  const double n2 = d.squaredNorm();
  if (n2 == 0.0) throw InputError("model_convert: inversion center is not in the domain");
  return c + 2.0 * d / n2;
}

}  // namespace

Vec model_convert(const Vec& x, Model from, Model to) {
  if (from == to) return x;
  switch (from) {
    case Model::Hyperboloid: {
      const Vec b = hyperboloid_to_ball(x);
      return to == Model::Ball ? b : invert_ball_half_space(b);
    }
    case Model::Ball: {
      if (x.squaredNorm() >= 1.0) throw InputError("model_convert: point outside the unit ball");
      return to == Model::Hyperboloid ? ball_to_hyperboloid(x) : invert_ball_half_space(x);
    }
    case Model::HalfSpace: {
      if (x[x.size() - 1] <= 0.0) throw InputError("model_convert: point outside the upper half-space");
      const Vec b = invert_ball_half_space(x);
      return to == Model::Ball ? b : ball_to_hyperboloid(b);
    }
  }
  throw InputError("model_convert: unknown model");
}

double ball_distance(const Vec& p, const Vec& q) {
  const double a = (p - q).squaredNorm();
  const double c = 1.0 + 2.0 * a / ((1.0 - p.squaredNorm()) * (1.0 - q.squaredNorm()));
  return std::acosh(std::max(c, 1.0));
}

double half_space_distance(const Vec& p, const Vec& q) {
  const int n = static_cast<int>(p.size());
  const double c = 1.0 + (p - q).squaredNorm() / (2.0 * p[n - 1] * q[n - 1]);
  return std::acosh(std::max(c, 1.0));
}

}  // namespace corf
