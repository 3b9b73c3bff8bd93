#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "scalelab/semigroup.hpp"

namespace scalelab {

enum class Bc { dirichlet, neumann };

Bc parse_bc(const std::string& name);
std::string bc_name(Bc bc);

// Interval (0, L) or rectangle (0, Lx) x (0, Ly) with one boundary condition
// per face; faces are ordered (x = 0, x = L) and, for rectangles, (y = 0, y = L).
struct DomainSpec {
  enum class Kind { interval, rectangle };
  Kind kind = Kind::interval;
  double lx = 1.0;
  double ly = 1.0;
  std::array<Bc, 2> bc_x{Bc::dirichlet, Bc::dirichlet};
  std::array<Bc, 2> bc_y{Bc::dirichlet, Bc::dirichlet};

  static DomainSpec interval(double length, Bc left, Bc right);
  static DomainSpec rectangle(double lx, double ly, std::array<Bc, 2> bc_x,
                              std::array<Bc, 2> bc_y);
};

// Nonzero Laplace eigenvalues in ascending order; the zero mode (all-Neumann
// domains) is tracked by the flag and kept out of the sequence itself.
// mode_ids holds the separated indices (k, 0) for intervals, (kx, ky) for
// rectangles.
struct LaplaceEigensystem {
  std::vector<double> kappas;
  std::vector<std::array<int, 2>> mode_ids;
  bool includes_zero = false;
};

LaplaceEigensystem laplace_eigenvalues(const DomainSpec& domain, int count);

struct SignConditions {
  bool b11_positive = false;
  bool trace_negative = false;
  bool det_positive = false;
  bool all() const { return b11_positive && trace_negative && det_positive; }
};

// the 2x2 activator-inhibitor sign pattern the hyperbola criterion assumes
SignConditions sign_conditions(const RealMatrix& b);

// block of the linearized operator on one Laplace mode: kappa * diag(d) - B
RealMatrix mode_matrix(double kappa, const RealVector& d, const RealMatrix& b);

struct ReactionDiffusionSpec {
  DomainSpec domain;
  RealVector diffusion;                           // d_j > 0 per component
  RealMatrix linearization;                       // B, the Jacobian of f at 0
  std::function<Vector(const Vector&)> reaction;  // pointwise f, f(0) = 0
  int mode_cutoff = 64;
};

struct SpectralGap {
  double lambda0 = 0.0;  // min over modes of the minimal real eigenvalue part
  std::array<int, 2> argmin_mode{0, 0};
  double kappa_at_min = 0.0;
};

// Minimal real part of the spectrum of the mode-diagonalized linearization.
// The mode cutoff must certify the tail: kappa_max * min(d) - ||B|| >= lambda0,
// otherwise a NumericalError names the cutoff that would close it.
SpectralGap spectral_gap(const ReactionDiffusionSpec& spec);

// Per-mode diffusion criterion: every retained kappa satisfies
//   d1 >= b11/kappa  or  d2 < b12 b21 / (kappa (kappa d1 - b11)) + b22/kappa.
// Exact under truncation once the retained kappas reach past b11/d1.
bool hyperbola_region_test(double d1, double d2, const RealMatrix& b,
                           const LaplaceEigensystem& modes);

struct CurveSample {
  int k = 0;  // 1-based mode rank
  double d1 = 0.0;
  double d2 = 0.0;
};

// boundary curves (kappa d1 - b11)(kappa d2 - b22) = b12 b21 sampled over the
// d1 grid, one branch per mode, only where d1 < b11/kappa
std::vector<CurveSample> hyperbola_curves(const RealMatrix& b, const LaplaceEigensystem& modes,
                                          const std::vector<double>& d1_grid);

struct RegionCell {
  double d1 = 0.0;
  double d2 = 0.0;
  bool in_region = false;
  double gap = 0.0;
  bool boundary = false;  // |gap| below the band: excluded from agreement
};

struct RegionScan {
  std::vector<RegionCell> cells;  // row-major over (d1, d2)
  long mismatches = 0;
  long boundary_cells = 0;
  bool region_test_available = false;  // sign conditions held, test column valid
};

// Dual evaluation over the grid: the closed-form region test against the
// brute-force spectral gap of every mode block. The two must agree outside
// the |gap| < band strip around the curves.
RegionScan region_scan(const RealMatrix& b, const LaplaceEigensystem& modes,
                       const std::vector<double>& d1_grid, const std::vector<double>& d2_grid,
                       int workers = 1, double band = 1e-8);

struct AssembledRD {
  PositiveTypeOperator a;  // block-diagonal kappa*diag(d) plus the positivity shift
  Matrix b_blocks;         // block-diagonal lift of the linearization
  std::function<Vector(double, const Vector&)> reaction_modal;  // f(u) + shift*u in mode space
  double shift = 0.0;
  std::vector<double> kappas;  // per block, zero mode first when present
  std::vector<std::array<int, 2>> mode_ids;
  int components = 0;
  RealMatrix synthesis;  // grid values = synthesis * modal coefficients (per component)
  RealMatrix analysis;   // modal coefficients = analysis * grid values
};

// Spectral Galerkin assembly on an interval: closed-form eigenbasis, pointwise
// nonlinearity on a midpoint collocation grid (3/2-rule size), exact discrete
// orthogonality, and the positivity shift max(0, 1 - min eig sym B).
AssembledRD galerkin_assemble(const ReactionDiffusionSpec& spec);

// modal coefficient vector with a single excited (mode, component) pair
Vector mode_unit_state(const AssembledRD& rd, int mode_rank, int component, double amplitude);

struct SimulationReport {
  Trajectory trajectory;  // norms attached for alpha = 0 and alpha = 1/2
  DecayFit fit_l2;
  DecayFit fit_half;
  double lambda0 = 0.0;
  double shift = 0.0;
};

SimulationReport simulate_rd(const ReactionDiffusionSpec& spec, const Vector& u0_modal,
                             double horizon, double step, double tail_fraction = 0.5);

}  // namespace scalelab
