#pragma once

#include <Eigen/Cholesky>

#include "scalelab/types.hpp"

namespace scalelab {

// Hermitian positive definite Gram matrix defining <u,v> = v^H G u.
// The Cholesky factor (G = L L^H) is computed once and reused by everything
// that needs to move between the metric and Euclidean coordinates.
class HilbertMetric {
 public:
  explicit HilbertMetric(Matrix gram);
  static HilbertMetric euclidean(Index dim);

  Index dim() const { return gram_.rows(); }
  const Matrix& gram() const { return gram_; }
  const Eigen::LLT<Matrix>& llt() const { return llt_; }
  Matrix cholesky_factor() const { return llt_.matrixL(); }
  double min_eigenvalue() const { return min_eig_; }

  Complex inner(const Vector& u, const Vector& v) const { return (v.adjoint() * gram_ * u)(0); }
  double norm(const Vector& u) const;

 private:
  Matrix gram_;
  Eigen::LLT<Matrix> llt_;
  double min_eig_;
};

// largest singular value of T as an endomorphism of (C^n, G)
double metric_operator_norm(const Matrix& t, const HilbertMetric& g);

// eigenvalues (ascending) of the G-Hermitian part of the endomorphism T,
// i.e. of the pencil ((G T + T^H G)/2, G); these are the extremes of
// Re <Tu,u>_G / |u|_G^2
RealVector metric_hermitian_eigenvalues(const Matrix& t, const HilbertMetric& g);

// numerical radius sup |<Tu,u>_G| / |u|_G^2, computed as the maximum over
// rotations of the largest eigenvalue of Re(e^{i theta} T); 720-point theta
// grid, refined once by Richardson extrapolation against a 1440-point grid
double metric_numerical_radius(const Matrix& t, const HilbertMetric& g);

// largest singular value of the coefficient array M of a sesquilinear form
// against the metric G: the best constant in |v^H M u| <= C |u|_G |v|_G
double form_continuity_norm(const Matrix& m, const HilbertMetric& g);

// eigenvalues (ascending) of the pencil (Herm(M), G) for a form coefficient M
RealVector form_hermitian_eigenvalues(const Matrix& m, const HilbertMetric& g);

}  // namespace scalelab
