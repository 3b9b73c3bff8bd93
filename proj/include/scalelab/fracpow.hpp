#pragma once

#include <cstdint>

#include "scalelab/operator.hpp"

namespace scalelab {

// principal fractional power A^alpha through the spectral decomposition
Matrix fractional_power(const PositiveTypeOperator& a, Complex alpha);

// graph norm of order alpha: |A^alpha u| measured in the carried metric
double scale_norm(const PositiveTypeOperator& a, double alpha, const Vector& u);

// Gram matrix of the order-alpha scale space, (A^alpha)^H G A^alpha
HilbertMetric scale_metric(const PositiveTypeOperator& a, double alpha);

// connecting map between scale levels, A^{alpha - beta}
Matrix j_isometry(const PositiveTypeOperator& a, double alpha, double beta);

struct SemigroupCheckReport {
  double max_identity_deviation = 0.0;  // |A^g A^d u - A^{g+d} u| over trials
  double max_isometry_deviation = 0.0;  // | |J u|_beta - |u|_alpha | over trials
  int trials = 0;
};

// randomized check of the power law and the isometry of the connecting maps
SemigroupCheckReport power_semigroup_check(const PositiveTypeOperator& a, double gamma,
                                           double delta, int trials, std::uint64_t seed);

// norm of the purely imaginary power A^{is} in the given metric; when
// enforce_bound is set, exceeding e^{pi |s| / 2} raises a NumericalError
double imaginary_power_norm(const PositiveTypeOperator& a, double s, const HilbertMetric& metric,
                            bool enforce_bound = true);

}  // namespace scalelab
