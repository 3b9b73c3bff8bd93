#include "scalelab/fracpow.hpp"

#include <cmath>

#include "scalelab/rng.hpp"

namespace scalelab {

Matrix adjoint_operator(const Matrix& t, const HilbertMetric& metric) {
  if (t.rows() != t.cols() || t.rows() != metric.dim())
    throw ConfigError("adjoint requires a square operator matching the metric dimension");
  return metric.llt().solve(t.adjoint() * metric.gram());
}

namespace {

// distance from z to the branch cut (-inf, 0] of the principal logarithm
double cut_distance(Complex z) {
  if (z.real() <= 0.0) return std::abs(z.imag());
  return std::abs(z);
}

}  // namespace

PositiveTypeOperator::PositiveTypeOperator(Matrix entries, HilbertMetric metric,
                                           DecompositionPolicy policy)
    : entries_(std::move(entries)),
      metric_(std::move(metric)),
      decomposition_(SpectralDecomposition::compute(entries_, policy)) {
  if (entries_.rows() != metric_.dim())
    throw ConfigError("operator dimension does not match the metric dimension");
  for (Index i = 0; i < decomposition_.eigenvalues().size(); ++i) {
    Complex lambda = decomposition_.eigenvalues()[i];
    if (cut_distance(lambda) <= 1e-12 * std::max(1.0, std::abs(lambda)))
      throw NumericalError("eigenvalue " + format_double(lambda.real()) + " + " +
                           format_double(lambda.imag()) +
                           "i lies on the branch cut of the principal logarithm");
  }
}

PositiveTypeOperator associated_operator(const SesquilinearForm& form,
                                         const HilbertMetric& h_metric) {
  form_constants(form);  // rejects forms without a positive lower bound
  if (form.dim() != h_metric.dim())
    throw ConfigError("form dimension does not match the pivot metric dimension");
  Matrix a = h_metric.llt().solve(form.coeff());
  PositiveTypeOperator op(std::move(a), h_metric);
  for (Index i = 0; i < op.decomposition().eigenvalues().size(); ++i) {
    Complex lambda = op.decomposition().eigenvalues()[i];
    if (lambda.real() <= 0.0)
      throw NumericalError("associated operator has an eigenvalue with real part " +
                           format_double(lambda.real()) + " outside the open right half-plane");
  }
  return op;
}

Matrix fractional_power(const PositiveTypeOperator& a, Complex alpha) {
  return a.decomposition().apply(power_function(alpha));
}

double scale_norm(const PositiveTypeOperator& a, double alpha, const Vector& u) {
  if (u.size() != a.dim()) throw ConfigError("vector dimension does not match the operator");
  if (alpha == 0.0) return a.metric().norm(u);
  return a.metric().norm(fractional_power(a, alpha) * u);
}

HilbertMetric scale_metric(const PositiveTypeOperator& a, double alpha) {
  Matrix p = fractional_power(a, alpha);
  Matrix gram = p.adjoint() * a.metric().gram() * p;
  return HilbertMetric(hermitian_part(gram));
}

Matrix j_isometry(const PositiveTypeOperator& a, double alpha, double beta) {
  return fractional_power(a, Complex(alpha - beta, 0.0));
}

SemigroupCheckReport power_semigroup_check(const PositiveTypeOperator& a, double gamma,
                                           double delta, int trials, std::uint64_t seed) {
  if (trials <= 0) throw ConfigError("trial count must be positive");
  Matrix ag = fractional_power(a, gamma);
  Matrix ad = fractional_power(a, delta);
  Matrix agd = fractional_power(a, gamma + delta);
  Matrix j = j_isometry(a, gamma, delta);

  Rng rng(seed);
  SemigroupCheckReport report;
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    Vector u = rng.complex_vector(a.dim());
    Vector composed = ag * (ad * u);
    Vector direct = agd * u;
    double dev = a.metric().norm(composed - direct) / a.metric().norm(direct);
    report.max_identity_deviation = std::max(report.max_identity_deviation, dev);

    double lhs = scale_norm(a, delta, j * u);
    double rhs = scale_norm(a, gamma, u);
    double iso = std::abs(lhs - rhs) / std::max(1.0, rhs);
    report.max_isometry_deviation = std::max(report.max_isometry_deviation, iso);
  }
  return report;
}

double imaginary_power_norm(const PositiveTypeOperator& a, double s, const HilbertMetric& metric,
                            bool enforce_bound) {
  Matrix p = fractional_power(a, Complex(0.0, s));
  double norm = metric_operator_norm(p, metric);
  double bound = std::exp(0.5 * M_PI * std::abs(s));
  if (enforce_bound && norm > bound + 1e-10)
    throw NumericalError("imaginary power norm " + format_double(norm) + " at s = " +
                         format_double(s) + " exceeds the accretive bound " +
                         format_double(bound));
  return norm;
}

}  // namespace scalelab
