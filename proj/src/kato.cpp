#include "scalelab/kato.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>

namespace scalelab {

namespace {

void require_hermitian_pd(const SesquilinearForm& b, const char* who) {
  if (!b.hermitian(1e-12)) throw ConfigError(std::string(who) + " requires a Hermitian form");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(b.coeff()), Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) <= 0.0)
    throw ConfigError(std::string(who) + " requires a positive definite form; min eigenvalue " +
                      format_double(es.eigenvalues()(0)));
}

// T with b(u, A^{-1}v) = <Tu, v> in the pivot metric: T = G^{-1} A^{-H} M_b
Matrix kato_operator(const Matrix& b_coeff, const PositiveTypeOperator& a,
                     const HilbertMetric& pivot) {
  Matrix x = a.entries().adjoint().partialPivLu().solve(b_coeff);
  return pivot.llt().solve(x);
}

KatoConstants constants_of(const Matrix& t, const HilbertMetric& pivot) {
  KatoConstants k;
  k.c1 = metric_hermitian_eigenvalues(t, pivot)(0);
  k.c2 = metric_operator_norm(t, pivot);
  k.c3 = metric_numerical_radius(t, pivot);
  return k;
}

}  // namespace

KatoConstants akato_constants(const SesquilinearForm& b, const PositiveTypeOperator& a) {
  return akato_constants(b, a, a.metric());
}

KatoConstants akato_constants(const SesquilinearForm& b, const PositiveTypeOperator& a,
                              const HilbertMetric& pivot) {
  require_hermitian_pd(b, "akato_constants");
  if (b.dim() != a.dim() || pivot.dim() != a.dim())
    throw ConfigError("form, operator, and pivot metric dimensions must agree");
  return constants_of(kato_operator(b.coeff(), a, pivot), pivot);
}

QuasiSymmetryReport quasi_symmetry(const PositiveTypeOperator& a, double shift) {
  if (shift < 0.0) throw ConfigError("quasi-symmetry shift must be nonnegative");
  Matrix astar = a.adjoint();
  auto lu = astar.partialPivLu();
  Matrix shifted = lu.solve(a.entries() + shift * Matrix::Identity(a.dim(), a.dim()));

  QuasiSymmetryReport report;
  report.shift = shift;
  report.alpha_best = metric_hermitian_eigenvalues(shifted, a.metric())(0);
  report.beta = metric_operator_norm(lu.solve(a.entries()), a.metric());
  report.quasi_symmetric = report.alpha_best > -1.0;
  return report;
}

double verify_constant_relation(const PositiveTypeOperator& a, double shift) {
  double alpha = quasi_symmetry(a, shift).alpha_best;
  // shift-symmetrized product of the operator's own form, M_a = G A
  Matrix m_a = a.metric().gram() * a.entries();
  Matrix b_coeff = hermitian_part(m_a) + (0.5 * shift) * a.metric().gram();
  double c1 = constants_of(kato_operator(b_coeff, a, a.metric()), a.metric()).c1;
  return std::abs(2.0 * c1 - (1.0 + alpha));
}

SesquilinearForm sqrt_scalar_product(const PositiveTypeOperator& a) {
  Matrix s = fractional_power(a, Complex(0.5, 0.0));
  Matrix coeff = hermitian_part(s.adjoint() * a.metric().gram() * s);
  return SesquilinearForm(coeff, HilbertMetric(coeff));
}

SesquilinearForm acl_form(const SesquilinearForm& b, const PositiveTypeOperator& a) {
  require_hermitian_pd(b, "acl_form");
  if (b.dim() != a.dim()) throw ConfigError("form and operator dimensions must agree");
  Matrix coeff = a.entries().adjoint().partialPivLu().solve(b.coeff());
  return SesquilinearForm(coeff, b.v_metric());
}

SesquilinearForm transport_product(const SesquilinearForm& b, const PositiveTypeOperator& a,
                                   double alpha, double beta) {
  require_hermitian_pd(b, "transport_product");
  if (b.dim() != a.dim()) throw ConfigError("form and operator dimensions must agree");
  Matrix j = fractional_power(a, Complex(beta - alpha, 0.0));
  Matrix coeff = hermitian_part(j.adjoint() * b.coeff() * j);
  return SesquilinearForm(coeff, HilbertMetric(coeff));
}

KatoBatteryReport kato_battery(const SesquilinearForm& form, const HilbertMetric& h_metric) {
  FormConstants fc = form_constants(form);
  PositiveTypeOperator a = associated_operator(form, h_metric);
  SesquilinearForm b = sqrt_scalar_product(a);

  KatoBatteryReport report;
  report.form_accretivity = fc.accretivity;
  report.form_continuity = fc.continuity;

  RealVector ratios_sq = form_hermitian_eigenvalues(b.coeff(), form.v_metric());
  report.norm_equivalence.ratio_min = std::sqrt(ratios_sq(0));
  report.norm_equivalence.ratio_max = std::sqrt(ratios_sq(ratios_sq.size() - 1));
  report.norm_equivalence.c1_factor = 1.0 / report.norm_equivalence.ratio_max;
  report.norm_equivalence.c2_factor = 1.0 / report.norm_equivalence.ratio_min;

  report.sqrt_product.constants = akato_constants(b, a);
  report.sqrt_product.c1_lower_bound =
      report.norm_equivalence.c1_factor * report.norm_equivalence.c1_factor * fc.accretivity;
  report.sqrt_product.polarization_c2_bound = 2.0 * report.sqrt_product.constants.c3;

  Matrix a_inv = a.entries().partialPivLu().inverse();
  HilbertMetric half_scale_metric(hermitian_part(a_inv.adjoint() * b.coeff() * a_inv));
  for (double s : {0.25, 0.5, 1.0}) {
    for (double sign : {1.0, -1.0}) {
      ImaginaryPowerItem item;
      item.s = sign * s;
      item.norm = imaginary_power_norm(a, item.s, half_scale_metric, true);
      item.bound = std::exp(0.5 * M_PI * std::abs(item.s));
      report.imaginary_powers.push_back(item);
    }
  }

  report.half_scale_note =
      "the half-scale extension and the form operator share one coordinate array in finite "
      "dimension; recorded without a separate test";
  return report;
}

}  // namespace scalelab
