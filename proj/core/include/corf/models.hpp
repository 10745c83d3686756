#pragma once

#include "corf/lorentz.hpp"

namespace corf {

enum class Model { Hyperboloid, Ball, HalfSpace };

// Hyperboloid coordinates carry n+1 entries, ball and half-space carry n.
// Ball <-> half-space is the inversion centered at (0,...,0,-1) with
// radius sqrt(2), which maps the ball origin to (0,...,0,1).
Vec model_convert(const Vec& x, Model from, Model to);

// Independent closed-form metrics, used to cross-check conversions.
double ball_distance(const Vec& p, const Vec& q);
double half_space_distance(const Vec& p, const Vec& q);

}  // namespace corf
