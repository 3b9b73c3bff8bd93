#pragma once

#include <functional>
#include <map>
#include <vector>

#include "scalelab/fracpow.hpp"

namespace scalelab {

// e^{-tA} through the cached decomposition; t = 0 returns the exact identity
Matrix semigroup_matrix(const PositiveTypeOperator& a, double t);
Vector semigroup_apply(const PositiveTypeOperator& a, double t, const Vector& u);

struct SmoothingResult {
  double supremum = 0.0;  // sup over the grid of t^alpha ||A^alpha e^{-tA}||
  double argmax_t = 0.0;
};

SmoothingResult smoothing_constant(const PositiveTypeOperator& a, double alpha,
                                   const std::vector<double>& t_grid);

struct MildProblem {
  PositiveTypeOperator a;
  std::function<Vector(double, const Vector&)> f;  // nonlinearity f(t, u)
  Vector u0;
  double t0 = 0.0;
  double t1 = 1.0;
  double step = 0.1;
};

struct Trajectory {
  std::vector<double> times;  // strictly increasing
  std::vector<Vector> states;
  std::map<double, std::vector<double>> norms;  // scale-norm sequences keyed by alpha
  double richardson_error = 0.0;  // endpoint error estimate from step halving
};

// Variation-of-constants stepping, second order: the step combines e^{-hA}
// with phi_1/phi_2 weights of the nonlinearity at both endpoints; the
// implicit endpoint value is resolved by fixed-point iteration.  Norm growth
// past 1e12 or a non-finite state raises BlowUpError with the last good time.
Trajectory solve_mild(const MildProblem& p);

// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) on u' = -Au + f(t,u),
// relative tolerance 1e-10; oracle integrator, lands exactly on the nodes of
// the fixed step grid
Trajectory solve_reference(const MildProblem& p);

// fills traj.norms[alpha] with scale_norm(a, alpha, state) for every state
void attach_scale_norms(Trajectory& traj, const PositiveTypeOperator& a,
                        const std::vector<double>& alphas);

struct DecayFit {
  double rate = 0.0;       // -slope of the least-squares line through (t, log norm)
  double prefactor = 0.0;  // fitted line evaluated at the first trajectory time
  bool truncated = false;  // a nonpositive norm cut the fit window short
  bool growing = false;    // positive slope: the trajectory is not decaying
  int samples = 0;
};

// fits the tail (final tail_fraction of the samples) of the selected norm
DecayFit decay_fit(const Trajectory& traj, double norm_alpha, double tail_fraction);

}  // namespace scalelab
