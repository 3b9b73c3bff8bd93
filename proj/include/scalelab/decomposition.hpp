#pragma once

#include <functional>

#include "scalelab/types.hpp"

namespace scalelab {

// A holomorphic scalar function together with its derivatives, the payload of
// the matrix functional calculus. derivative(z, k) is the k-th derivative,
// k >= 1; it is only consulted for (nearly) confluent eigenvalues.
struct ScalarFunction {
  std::function<Complex(Complex)> value;
  std::function<Complex(Complex, int)> derivative;
};

// f(z) = exp(alpha Log z), principal branch with the cut along (-inf, 0]
ScalarFunction power_function(Complex alpha);
// f(z) = exp(s z)
ScalarFunction scaled_exp(double s);
// f(z) = phi_j(s z) where phi_j(w) = sum_{m>=0} w^m/(m+j)!; j in {1, 2}
ScalarFunction scaled_phi(int j, double s);

// phi_j evaluated with the small-argument guard: |w| < 1e-4 switches to the
// 6-term Taylor polynomial, away from it the closed forms are stable.
Complex phi_value(int j, Complex w);

enum class DecompositionPolicy { automatic, force_diagonal, force_schur };

// f(T) for upper-triangular T: block Parlett recurrence. Consecutive diagonal
// entries within relative 1e-8 are clustered; cluster blocks are evaluated by
// a Taylor series around the cluster mean (whose first-order term is the
// divided-difference-to-derivative replacement), distinct blocks couple
// through triangular Sylvester solves.
Matrix triangular_function(const Matrix& t, const ScalarFunction& f);

// Cached eigenstructure of a dense matrix. Diagonalization is preferred; when
// the eigenvector matrix has condition number above cond_limit (1e8) the
// unitary Schur form is kept instead and functions are evaluated by the
// Parlett recurrence on the triangular factor.
class SpectralDecomposition {
 public:
  enum class Kind { diagonalizable, schur };

  static SpectralDecomposition compute(const Matrix& a,
                                       DecompositionPolicy policy = DecompositionPolicy::automatic,
                                       double cond_limit = 1e8);

  Kind kind() const { return kind_; }
  const Vector& eigenvalues() const { return eigenvalues_; }
  double eigenvector_condition() const { return cond_; }
  double reconstruction_error() const { return reconstruction_error_; }
  Index dim() const { return eigenvalues_.size(); }

  Matrix apply(const ScalarFunction& f) const;

 private:
  SpectralDecomposition() = default;
  Kind kind_ = Kind::diagonalizable;
  Vector eigenvalues_;
  Matrix v_, v_inv_;  // diagonalizable: A = V diag V^{-1}
  Matrix q_, t_;      // schur: A = Q T Q^H
  double cond_ = 0.0;
  double reconstruction_error_ = 0.0;
};

}  // namespace scalelab
