#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "scalelab/operator.hpp"
#include "scalelab/rds.hpp"
#include "scalelab/rng.hpp"

// Generators and independent oracles shared by the test binaries. Oracles are
// deliberately built from different discretizations than the library uses.
namespace scalelab::testing {

// coefficient = (HPD part bounded below by 0.8 in euclidean) + anti-Hermitian
// perturbation, so accretivity holds for every admissible V-metric drawn here
inline SesquilinearForm random_accretive_form(Rng& rng, Index n) {
  Matrix herm = rng.hpd_matrix(n, 0.8, 3.0);
  Matrix skew = rng.complex_matrix(n, n);
  skew = 0.5 * (skew - skew.adjoint());
  Matrix gram = rng.hpd_matrix(n, 0.5, 2.0);
  return SesquilinearForm(herm + 0.6 * skew, HilbertMetric(std::move(gram)));
}

inline PositiveTypeOperator random_form_operator(Rng& rng, Index n) {
  SesquilinearForm form = random_accretive_form(rng, n);
  Matrix h_gram = rng.hpd_matrix(n, 0.5, 2.0);
  return associated_operator(form, HilbertMetric(std::move(h_gram)));
}

// diagonalizable with eigenvector condition <= 3: V = I + U/2 for unitary U;
// spectrum on moduli [0.3, 5] inside the sector |arg| <= pi/3
inline Matrix random_sectorial_matrix(Rng& rng, Index n, double angle_max = M_PI / 3.0) {
  Eigen::HouseholderQR<Matrix> qr(rng.complex_matrix(n, n));
  Matrix v = Matrix::Identity(n, n) + 0.5 * Matrix(qr.householderQ());
  Vector lambda(n);
  for (Index i = 0; i < n; ++i) {
    double r = rng.uniform(0.3, 5.0);
    double theta = rng.uniform(-angle_max, angle_max);
    lambda(i) = Complex(r * std::cos(theta), r * std::sin(theta));
  }
  return v * lambda.asDiagonal() * v.partialPivLu().inverse();
}

// First `count` nonzero eigenvalues of -u'' on (0, length) from a symmetric
// second-difference discretization with `grid` interior unknowns; Neumann
// faces enter through ghost-point reflection made symmetric by half-weight
// end-node scaling.
inline RealVector fd_laplace_eigenvalues(double length, std::array<Bc, 2> bc, int grid,
                                         int count) {
  bool left_n = bc[0] == Bc::neumann, right_n = bc[1] == Bc::neumann;
  int m = grid + (left_n && right_n ? 1 : 0);
  double h = left_n || right_n ? length / grid : length / (grid + 1);
  double w = 1.0 / (h * h);
  RealVector diag = RealVector::Constant(m, 2.0 * w);
  RealVector sub = RealVector::Constant(m - 1, -w);
  if (left_n) sub(0) = -std::sqrt(2.0) * w;
  if (right_n) sub(m - 2) = -std::sqrt(2.0) * w;

  Eigen::SelfAdjointEigenSolver<RealMatrix> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  int skip = left_n && right_n ? 1 : 0;  // discrete constant mode is exactly zero
  RealVector out(count);
  for (int i = 0; i < count; ++i) out(i) = solver.eigenvalues()(i + skip);
  return out;
}

// Two-component reaction-diffusion reference on (0,1) with homogeneous
// Dirichlet faces: vertex-centered second differences, Crank-Nicolson for the
// stiff diffusion, Adams-Bashforth 2 for the reaction (explicit Euler start).
// State layout: per-node interleaved components, node x_i = i*h, i = 1..grid.
struct FdReference {
  RealVector x;      // interior nodes
  RealMatrix state;  // grid x components at final time
};

inline FdReference fd_reaction_reference(const RealVector& d,
                                         const std::function<RealVector(const RealVector&)>& f,
                                         const std::function<double(double, int)>& u0,
                                         int grid, double dt, double t_end) {
  int n = static_cast<int>(d.size());
  double h = 1.0 / (grid + 1);
  RealVector x(grid);
  for (int i = 0; i < grid; ++i) x(i) = (i + 1) * h;

  // Thomas factorization of (I + dt/2 * d_j * L_h) per component, with
  // L_h = tridiag(-1, 2, -1)/h^2
  double w = 1.0 / (h * h);
  RealMatrix cp(grid - 1, n);  // modified upper coefficients
  RealMatrix dq(grid, n);      // modified diagonal reciprocals
  for (int j = 0; j < n; ++j) {
    double a = -0.5 * dt * d(j) * w;          // off diagonal
    double b = 1.0 + dt * d(j) * w;           // diagonal
    double denom = b;
    dq(0, j) = 1.0 / denom;
    for (int i = 1; i < grid; ++i) {
      cp(i - 1, j) = a * dq(i - 1, j);
      denom = b - a * cp(i - 1, j);
      dq(i, j) = 1.0 / denom;
    }
  }
  auto solve = [&](RealVector& rhs, int j) {
    rhs(0) *= dq(0, j);
    double a = -0.5 * dt * d(j) * w;
    for (int i = 1; i < grid; ++i) rhs(i) = (rhs(i) - a * rhs(i - 1)) * dq(i, j);
    for (int i = grid - 2; i >= 0; --i) rhs(i) -= cp(i, j) * rhs(i + 1);
  };
  auto laplace_apply = [&](const RealVector& u) {
    RealVector out(grid);
    for (int i = 0; i < grid; ++i) {
      double left = i > 0 ? u(i - 1) : 0.0;
      double right = i + 1 < grid ? u(i + 1) : 0.0;
      out(i) = (2.0 * u(i) - left - right) * w;
    }
    return out;
  };

  RealMatrix u(grid, n);
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < n; ++j) u(i, j) = u0(x(i), j);

  auto reaction_grid = [&](const RealMatrix& state) {
    RealMatrix out(grid, n);
    RealVector point(n);
    for (int i = 0; i < grid; ++i) {
      point = state.row(i).transpose();
      out.row(i) = f(point).transpose();
    }
    return out;
  };

  auto steps = static_cast<long>(std::llround(t_end / dt));
  RealMatrix f_prev = reaction_grid(u);
  for (long s = 0; s < steps; ++s) {
    RealMatrix f_now = reaction_grid(u);
    RealMatrix f_ab = s == 0 ? f_now : RealMatrix(1.5 * f_now - 0.5 * f_prev);
    for (int j = 0; j < n; ++j) {
      RealVector rhs =
          u.col(j) - 0.5 * dt * d(j) * laplace_apply(u.col(j)) + dt * f_ab.col(j);
      solve(rhs, j);
      u.col(j) = rhs;
    }
    f_prev = f_now;
  }
  return {x, u};
}

}  // namespace scalelab::testing
