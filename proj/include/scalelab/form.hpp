#pragma once

#include "scalelab/metric.hpp"
#include "scalelab/types.hpp"

namespace scalelab {

// Sesquilinear form a(u,v) = v^H M u on the space V carried by v_metric.
// Construction validates shapes only; accretivity is checked by the
// operations that require it, so non-accretive coefficient arrays can still
// be inspected and rejected with a meaningful constant.
class SesquilinearForm {
 public:
  SesquilinearForm(Matrix coeff, HilbertMetric v_metric);

  Index dim() const { return coeff_.rows(); }
  const Matrix& coeff() const { return coeff_; }
  const HilbertMetric& v_metric() const { return v_metric_; }

  Complex operator()(const Vector& u, const Vector& v) const {
    return (v.adjoint() * coeff_ * u)(0);
  }
  bool hermitian(double tol = 1e-12) const { return is_hermitian(coeff_, tol); }

 private:
  Matrix coeff_;
  HilbertMetric v_metric_;
};

struct FormConstants {
  double accretivity;  // best c with Re a(u,u) >= c |u|_V^2
  double continuity;   // best C with |a(u,v)| <= C |u|_V |v|_V
};

// Throws NumericalError when the form is not strongly accretive (c <= 0),
// reporting the offending constant.
FormConstants form_constants(const SesquilinearForm& a);

struct SymmetrizedForm {
  SesquilinearForm form;   // b_M(u,v) = (a(u,v) + conj(a(v,u)))/2 + M <u,v>_H
  double min_eigenvalue;   // of the (Hermitian) coefficient against the H metric
  bool positive_definite;
};

SymmetrizedForm symmetrized_form(const SesquilinearForm& a, double shift,
                                 const HilbertMetric& h_metric);

}  // namespace scalelab
