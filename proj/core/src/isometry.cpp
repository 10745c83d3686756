#include "corf/isometry.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "corf/errors.hpp"

namespace corf {

namespace {

constexpr int kRenormalizeEvery = 64;
constexpr double kClassifyMargin = 1e-7;  // ambiguous spectral-radius band
constexpr double kConditionLimit = 1e12;
constexpr double kClusterTol = 1e-6;  // eigenvalue cluster at 1 for the Jordan test

}  // namespace

const char* to_string(IsometryClass c) {
  switch (c) {
    case IsometryClass::Identity: return "identity";
    case IsometryClass::Elliptic: return "elliptic";
    case IsometryClass::Parabolic: return "parabolic";
    case IsometryClass::Loxodromic: return "loxodromic";
  }
  return "unknown";
}

Isometry::Isometry(Mat m, int products) : m_(std::move(m)), products_(products) {
  if (m_.rows() != m_.cols() || m_.rows() < 2) throw InputError("Isometry: matrix must be square, size >= 2");
  if ((m_ * Vec::Unit(m_.rows(), 0))[0] <= 0.0) throw InputError("Isometry: matrix does not preserve the upper sheet");
}

Isometry Isometry::identity(int dim) { return Isometry(Mat::Identity(dim + 1, dim + 1)); }

Isometry Isometry::reflection(const Vec& unit_normal) {
  if (!is_unit_normal(unit_normal, 1e-8)) throw InputError("reflection: normal is not unit spacelike");
  const int n = static_cast<int>(unit_normal.size());
  const Mat j = minkowski_form(n - 1);
  Mat r = Mat::Identity(n, n) - 2.0 * unit_normal * (j * unit_normal).transpose();
  return Isometry(std::move(r));
}

Isometry Isometry::inverse() const {
  const Mat j = minkowski_form(dim());
  return Isometry(j * m_.transpose() * j, products_);
}

Isometry Isometry::operator*(const Isometry& rhs) const {
  if (dim() != rhs.dim()) throw InputError("Isometry: dimension mismatch");
  Isometry out(m_ * rhs.m_, std::max(products_, rhs.products_) + 1);
  if (out.products_ >= kRenormalizeEvery) {
    out.renormalize();
    out.products_ = 0;
  }
  return out;
}

Isometry Isometry::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  Isometry out = identity(dim());
  for (int i = 0; i < n; ++i) out = *this * out;
  return out;
}

double Isometry::lorentz_residual() const {
  const Mat j = minkowski_form(dim());
  return (m_.transpose() * j * m_ - j).cwiseAbs().maxCoeff();
}

void Isometry::renormalize() {
  const int n = static_cast<int>(m_.rows());
  const Mat j = minkowski_form(n - 1);
  auto inner = [&](const Vec& a, const Vec& b) { return a.dot(j * b); };
  for (int i = 0; i < n; ++i) {
    Vec c = m_.col(i);
    for (int k = 0; k < i; ++k) {
      const Vec ck = m_.col(k);
      c -= (inner(c, ck) / inner(ck, ck)) * ck;
    }
    const double q = inner(c, c);
    if (i == 0) {
      if (q >= 0.0) throw NumericalError("renormalize: first column lost timelike character");
      c /= std::sqrt(-q);
      if (c[0] < 0.0) c = -c;
    } else {
      if (q <= 0.0) throw NumericalError("renormalize: column lost spacelike character");
      c /= std::sqrt(q);
    }
    m_.col(i) = c;
  }
}

double spectral_radius(const Isometry& g) {
  Eigen::EigenSolver<Mat> es(g.matrix(), /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw NumericalError("spectral_radius: eigensolver failed");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

namespace {

// Parabolic iff the eigenvalue cluster at 1 is defective: null(g - I)
// smaller than the cluster.  The tolerance must dominate the O(eps^(1/3))
// splitting a defective eigenvalue suffers under rounding.
bool defective_at_one(const Mat& m, const Eigen::VectorXcd& eigenvalues, double cluster_tol) {
  int algebraic = 0;
  for (int i = 0; i < eigenvalues.size(); ++i)
    if (std::abs(eigenvalues[i] - std::complex<double>(1.0, 0.0)) < cluster_tol) ++algebraic;
  const int n = static_cast<int>(m.rows());
  Eigen::JacobiSVD<Mat> svd(m - Mat::Identity(n, n));
  int geometric = 0;
  const double sigma_tol = cluster_tol * std::max(1.0, m.cwiseAbs().maxCoeff());
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] < sigma_tol) ++geometric;
  return geometric < algebraic;
}

}  // namespace

IsometryClass classify(const Isometry& g) {
  const Mat& m = g.matrix();
  const int n = static_cast<int>(m.rows());
  if (m.cwiseAbs().maxCoeff() > kConditionLimit)
    throw NumericalError("classify: matrix norm beyond conditioning limit");
  if ((m - Mat::Identity(n, n)).cwiseAbs().maxCoeff() < geometric_tol()) return IsometryClass::Identity;

  Eigen::EigenSolver<Mat> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw NumericalError("classify: eigensolver failed");
  const double rho = es.eigenvalues().cwiseAbs().maxCoeff();

  // Far above 1 the spectral radius is decisive.
  if (rho > 1.001) return IsometryClass::Loxodromic;

  if (rho > 1.0 + geometric_tol()) {
    // A defective unit eigenvalue splits under rounding by about
    // eps^(1/3) ~ 1e-5, which lands exactly in this band; test for it
    // before trusting the radius.
    if (defective_at_one(m, es.eigenvalues(), std::max(kClusterTol, 10.0 * (rho - 1.0))))
      return IsometryClass::Parabolic;
    if (rho > 1.0 + kClassifyMargin) return IsometryClass::Loxodromic;
    throw NumericalError("classify: spectral radius in the ambiguous band (1, 1+1e-7]");
  }

  return defective_at_one(m, es.eigenvalues(), kClusterTol) ? IsometryClass::Parabolic
                                                            : IsometryClass::Elliptic;
}

double translation_length(const Isometry& g) {
  if (classify(g) != IsometryClass::Loxodromic) throw InputError("translation_length: isometry is not loxodromic");
  return std::log(spectral_radius(g));
}

Geodesic::Geodesic(Vec fwd, Vec bwd) : fwd_(std::move(fwd)), bwd_(std::move(bwd)) {
  if (fwd_.size() != bwd_.size()) throw InputError("Geodesic: endpoint dimension mismatch");
  if (!is_lightlike(fwd_, 1e-6) || !is_lightlike(bwd_, 1e-6))
    throw InputError("Geodesic: endpoints must be lightlike");
  if (fwd_[0] < 0.0) fwd_ = -fwd_;
  if (bwd_[0] < 0.0) bwd_ = -bwd_;
  fwd_ /= fwd_[0];
  bwd_ /= bwd_[0];
  const double q = minkowski_inner(fwd_, bwd_);
  if (q > -1e-12) throw InputError("Geodesic: endpoints are proportional");
  const double s = std::sqrt(-2.0 / q);
  fwd_ *= s;
  bwd_ *= s;
}

Vec Geodesic::point_at(double t) const { return 0.5 * (std::exp(t) * fwd_ + std::exp(-t) * bwd_); }

Vec Geodesic::tangent_at(double t) const { return 0.5 * (std::exp(t) * fwd_ - std::exp(-t) * bwd_); }

Geodesic axis(const Isometry& g) {
  if (classify(g) != IsometryClass::Loxodromic) throw InputError("axis: isometry is not loxodromic");
  Eigen::EigenSolver<Mat> es(g.matrix(), /*computeEigenvectors=*/true);
  if (es.info() != Eigen::Success) throw NumericalError("axis: eigensolver failed");
  const auto& vals = es.eigenvalues();
  int hi = 0, lo = 0;
  for (int i = 1; i < vals.size(); ++i) {
    if (std::abs(vals[i]) > std::abs(vals[hi])) hi = i;
    if (std::abs(vals[i]) < std::abs(vals[lo])) lo = i;
  }
  if (std::abs(vals[hi].imag()) > 1e-8 * std::abs(vals[hi]))
    throw NumericalError("axis: top eigenvalue is not real");
  Vec fwd = es.eigenvectors().col(hi).real();
  Vec bwd = es.eigenvectors().col(lo).real();
  return Geodesic(std::move(fwd), std::move(bwd));
}

Geodesic geodesic_through(const Vec& point, const Vec& unit_dir) {
  return Geodesic(point + unit_dir, point - unit_dir);
}

double dist_point_to_geodesic(const Vec& x, const Geodesic& geo) {
  const double a = minkowski_inner(x, geo.fwd());
  const double b = minkowski_inner(x, geo.bwd());
  const double c2 = a * b;  // cosh^2 of the distance, since <fwd,bwd> = -2
  if (c2 < 1.0) return 0.0;
  return std::acosh(std::sqrt(c2));
}

double geodesic_foot_param(const Vec& x, const Geodesic& geo) {
  const double a = minkowski_inner(x, geo.fwd());
  const double b = minkowski_inner(x, geo.bwd());
  if (a >= 0.0 || b >= 0.0) throw NumericalError("geodesic_foot_param: point not in the admissible cone");
  return 0.5 * std::log(b / a);
}

double sl2_translation_length(double trace) {
  const double t = std::abs(trace);
  if (t <= 2.0) throw InputError("sl2_translation_length: |trace| <= 2 is not loxodromic");
  return 2.0 * std::acosh(t / 2.0);
}

}  // namespace corf
