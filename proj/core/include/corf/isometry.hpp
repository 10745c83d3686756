#pragma once

#include "corf/lorentz.hpp"

namespace corf {

enum class IsometryClass { Identity, Elliptic, Parabolic, Loxodromic };

const char* to_string(IsometryClass c);

// Lorentz matrix preserving the upper sheet.  Composition counts matrix
// products and re-orthonormalizes every 64 of them, which keeps
// ||G^T J G - J||_inf below 1e-10 across the long reflection words the
// tessellation walker produces.
class Isometry {
 public:
  explicit Isometry(Mat m, int products = 0);

  static Isometry identity(int dim);
  static Isometry reflection(const Vec& unit_normal);

  int dim() const { return static_cast<int>(m_.rows()) - 1; }
  const Mat& matrix() const { return m_; }

  Vec operator()(const Vec& x) const { return m_ * x; }

  Isometry inverse() const;  // J G^T J
  Isometry operator*(const Isometry& rhs) const;
  Isometry pow(int n) const;

  double lorentz_residual() const;  // ||G^T J G - J||_inf
  void renormalize();               // Minkowski Gram-Schmidt on the columns

 private:
  Mat m_;
  int products_ = 0;
};

// Spectral classification.  Loxodromic iff the spectral radius exceeds
// 1 + 1e-7; radii in (1 + tol, 1 + 1e-7] are rejected as numerically
// ambiguous rather than guessed.  At radius 1, elliptic and parabolic are
// told apart by comparing the geometric and algebraic multiplicity of the
// eigenvalue cluster at 1.
IsometryClass classify(const Isometry& g);

double spectral_radius(const Isometry& g);

// ln(spectral radius); requires classify(g) == Loxodromic.
double translation_length(const Isometry& g);

// Oriented geodesic stored by ideal endpoints scaled so <fwd,bwd> = -2;
// point_at(t) = (e^t fwd + e^-t bwd)/2 is a unit-speed parametrization
// tending to fwd as t -> +inf.  The endpoint gauge (each endpoint first
// normalized to x0 = 1, then both rescaled symmetrically) is deterministic,
// so parameters are comparable across reconstructions.
class Geodesic {
 public:
  Geodesic(Vec fwd, Vec bwd);

  const Vec& fwd() const { return fwd_; }
  const Vec& bwd() const { return bwd_; }
  int dim() const { return static_cast<int>(fwd_.size()) - 1; }

  Vec point_at(double t) const;
  Vec tangent_at(double t) const;

 private:
  Vec fwd_, bwd_;
};

// Translation axis of a loxodromic g, oriented so g(point_at(t)) =
// point_at(t + translation_length(g)).
Geodesic axis(const Isometry& g);

Geodesic geodesic_through(const Vec& point, const Vec& unit_dir);

double dist_point_to_geodesic(const Vec& x, const Geodesic& geo);

// Parameter of the closest axis point, argmin_t d(x, point_at(t)).
double geodesic_foot_param(const Vec& x, const Geodesic& geo);

// 2 arccosh(|trace|/2); requires |trace| > 2.
double sl2_translation_length(double trace);

}  // namespace corf
