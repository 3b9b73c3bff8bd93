#pragma once

#include <string>
#include <vector>

#include "scalelab/fracpow.hpp"

namespace scalelab {

// constants of a candidate scalar product b measured against an operator:
// Re b(u, A^{-1}u) >= c1 |u|^2, |b(u, A^{-1}v)| <= c2 |u||v|, and c3 the
// numerical-radius refinement sup |b(u, A^{-1}u)| / |u|^2
struct KatoConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

struct QuasiSymmetryReport {
  double alpha_best = 0.0;  // min Hermitian-part eigenvalue of (A*)^{-1}(A + shift)
  double beta = 0.0;        // operator norm of (A*)^{-1}A
  double shift = 0.0;
  bool quasi_symmetric = false;  // alpha_best > -1
};

// constants measured in the operator's carried metric
KatoConstants akato_constants(const SesquilinearForm& b, const PositiveTypeOperator& a);
// constants measured in an explicit pivot metric (scale transport checks)
KatoConstants akato_constants(const SesquilinearForm& b, const PositiveTypeOperator& a,
                              const HilbertMetric& pivot);

QuasiSymmetryReport quasi_symmetry(const PositiveTypeOperator& a, double shift);

// |2 c1 - (1 + alpha)| for the shift-symmetrized product of the operator's
// own form; zero in exact arithmetic for every metric
double verify_constant_relation(const PositiveTypeOperator& a, double shift);

// b(u,v) = <A^{1/2}u, A^{1/2}v>, carried with its own Gram as V-metric
SesquilinearForm sqrt_scalar_product(const PositiveTypeOperator& a);

// (u,v) -> b(u, A^{-1}v); for b equal to a symmetric generating form this
// collapses to the pivot scalar product
SesquilinearForm acl_form(const SesquilinearForm& b, const PositiveTypeOperator& a);

// B(u,v) = b(Ju, Jv) with J = A^{beta-alpha}; constants are preserved when
// measured in the matching scale metrics
SesquilinearForm transport_product(const SesquilinearForm& b, const PositiveTypeOperator& a,
                                   double alpha, double beta);

struct NormEquivalenceItem {
  double ratio_min = 0.0;  // extremes of |A^{1/2}u|_H / |u|_V
  double ratio_max = 0.0;
  double c1_factor = 0.0;  // 1 / ratio_max
  double c2_factor = 0.0;  // 1 / ratio_min
};

struct SqrtProductItem {
  KatoConstants constants;
  double c1_lower_bound = 0.0;        // c1_factor^2 * form accretivity
  double polarization_c2_bound = 0.0;  // 2 * c3, reported alongside c2, never equated
};

struct ImaginaryPowerItem {
  double s = 0.0;
  double norm = 0.0;
  double bound = 0.0;  // e^{pi |s| / 2}
};

struct KatoBatteryReport {
  double form_accretivity = 0.0;
  double form_continuity = 0.0;
  NormEquivalenceItem norm_equivalence;          // item ii
  SqrtProductItem sqrt_product;                  // item iii
  std::vector<ImaginaryPowerItem> imaginary_powers;  // item v
  std::string half_scale_note;                   // item vii, recorded only
};

KatoBatteryReport kato_battery(const SesquilinearForm& form, const HilbertMetric& h_metric);

}  // namespace scalelab
