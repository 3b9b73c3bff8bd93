#pragma once

#include "scalelab/decomposition.hpp"
#include "scalelab/form.hpp"
#include "scalelab/metric.hpp"
#include "scalelab/types.hpp"

namespace scalelab {

// adjoint of t with respect to the metric's scalar product: G^{-1} t^H G
Matrix adjoint_operator(const Matrix& t, const HilbertMetric& metric);

// An operator whose spectrum stays clear of the branch cut (-inf, 0] of the
// principal logarithm, carried together with the ambient metric.  All
// fractional-power machinery goes through this type so the spectral
// admissibility check happens exactly once.
class PositiveTypeOperator {
 public:
  PositiveTypeOperator(Matrix entries, HilbertMetric metric,
                       DecompositionPolicy policy = DecompositionPolicy::automatic);

  const Matrix& entries() const { return entries_; }
  const HilbertMetric& metric() const { return metric_; }
  const SpectralDecomposition& decomposition() const { return decomposition_; }
  Index dim() const { return entries_.rows(); }

  Matrix adjoint() const { return adjoint_operator(entries_, metric_); }

 private:
  Matrix entries_;
  HilbertMetric metric_;
  SpectralDecomposition decomposition_;
};

// operator representing the form against the metric, G^{-1} M; requires the
// form to be accretive and the spectrum to lie in the open right half-plane
PositiveTypeOperator associated_operator(const SesquilinearForm& form,
                                         const HilbertMetric& h_metric);

}  // namespace scalelab
