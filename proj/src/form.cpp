#include "scalelab/form.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

#include "scalelab/types.hpp"

namespace scalelab {

HilbertMetric::HilbertMetric(Matrix gram) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols() || gram_.rows() == 0)
    throw ConfigError("metric Gram matrix must be square and non-empty");
  if (!is_hermitian(gram_, 1e-12))
    throw NumericalError("metric Gram matrix is not Hermitian");
  gram_ = hermitian_part(gram_);  // exact symmetrization of roundoff noise
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram_, Eigen::EigenvaluesOnly);
  min_eig_ = es.eigenvalues().minCoeff();
  if (min_eig_ <= 0.0)
    throw NumericalError("metric Gram matrix is not positive definite (min eigenvalue " +
                         format_double(min_eig_) + ")");
  llt_.compute(gram_);
  if (llt_.info() != Eigen::Success)
    throw NumericalError("Cholesky factorization of the metric failed");
}

HilbertMetric HilbertMetric::euclidean(Index dim) {
  return HilbertMetric(Matrix::Identity(dim, dim));
}

double HilbertMetric::norm(const Vector& u) const {
  double s = std::real((u.adjoint() * gram_ * u)(0));
  return std::sqrt(std::max(s, 0.0));
}

namespace {

// L^H T L^{-H}: similarity taking the G-geometry to the Euclidean one
Matrix euclideanize(const Matrix& t, const HilbertMetric& g) {
  Matrix l = g.cholesky_factor();
  // X = T L^{-H}  <=>  X L^H = T  <=>  L X^H = T^H
  Matrix x = l.triangularView<Eigen::Lower>().solve(t.adjoint()).adjoint();
  return l.adjoint() * x;
}

}  // namespace

double metric_operator_norm(const Matrix& t, const HilbertMetric& g) {
  return euclideanize(t, g).jacobiSvd().singularValues()(0);
}

RealVector metric_hermitian_eigenvalues(const Matrix& t, const HilbertMetric& g) {
  Matrix s = hermitian_part(g.gram() * t);
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(s, g.gram(), Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  return es.eigenvalues();
}

double metric_numerical_radius(const Matrix& t, const HilbertMetric& g) {
  Matrix te = euclideanize(t, g);
  auto sweep = [&](int points) {
    double best = 0.0;
    for (int i = 0; i < points; ++i) {
      double theta = 2.0 * M_PI * i / points;
      Matrix h = hermitian_part(Complex(std::cos(theta), std::sin(theta)) * te);
      Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
      best = std::max(best, es.eigenvalues().maxCoeff());
    }
    return best;
  };
  double coarse = sweep(720);
  double fine = sweep(1440);
  return fine + (fine - coarse) / 3.0;
}

double form_continuity_norm(const Matrix& m, const HilbertMetric& g) {
  Matrix l = g.cholesky_factor();
  Matrix x = l.triangularView<Eigen::Lower>().solve(m);  // L^{-1} M
  Matrix y = l.triangularView<Eigen::Lower>().solve(x.adjoint()).adjoint();
  return y.jacobiSvd().singularValues()(0);
}

RealVector form_hermitian_eigenvalues(const Matrix& m, const HilbertMetric& g) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(hermitian_part(m), g.gram(),
                                                      Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  return es.eigenvalues();
}

SesquilinearForm::SesquilinearForm(Matrix coeff, HilbertMetric v_metric)
    : coeff_(std::move(coeff)), v_metric_(std::move(v_metric)) {
  if (coeff_.rows() != coeff_.cols())
    throw ConfigError("form coefficient array must be square");
  if (coeff_.rows() != v_metric_.dim())
    throw ConfigError("form coefficient and V-metric dimensions differ");
}

FormConstants form_constants(const SesquilinearForm& a) {
  RealVector eigs = form_hermitian_eigenvalues(a.coeff(), a.v_metric());
  double c = eigs.minCoeff();
  if (c <= 0.0)
    throw NumericalError("form is not strongly accretive (best constant " + format_double(c) + ")");
  double big_c = form_continuity_norm(a.coeff(), a.v_metric());
  return FormConstants{c, big_c};
}

SymmetrizedForm symmetrized_form(const SesquilinearForm& a, double shift,
                                 const HilbertMetric& h_metric) {
  if (h_metric.dim() != a.dim())
    throw ConfigError("H metric dimension does not match the form");
  Matrix coeff = hermitian_part(a.coeff()) + 0.5 * shift * h_metric.gram();
  coeff = hermitian_part(coeff);  // kill roundoff skew exactly
  RealVector eigs = form_hermitian_eigenvalues(coeff, h_metric);
  double lo = eigs.minCoeff();
  return SymmetrizedForm{SesquilinearForm(coeff, a.v_metric()), lo, lo > 0.0};
}

}  // namespace scalelab
