#include "scalelab/rds.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace scalelab {

Bc parse_bc(const std::string& name) {
  if (name == "dirichlet") return Bc::dirichlet;
  if (name == "neumann") return Bc::neumann;
  throw ConfigError("unknown boundary condition \"" + name +
                    "\" (expected \"dirichlet\" or \"neumann\")");
}

std::string bc_name(Bc bc) { return bc == Bc::dirichlet ? "dirichlet" : "neumann"; }

DomainSpec DomainSpec::interval(double length, Bc left, Bc right) {
  if (!(length > 0.0)) throw ConfigError("interval length must be positive");
  DomainSpec d;
  d.kind = Kind::interval;
  d.lx = length;
  d.bc_x = {left, right};
  return d;
}

DomainSpec DomainSpec::rectangle(double lx, double ly, std::array<Bc, 2> bc_x,
                                 std::array<Bc, 2> bc_y) {
  if (!(lx > 0.0) || !(ly > 0.0)) throw ConfigError("rectangle side lengths must be positive");
  DomainSpec d;
  d.kind = Kind::rectangle;
  d.lx = lx;
  d.ly = ly;
  d.bc_x = bc_x;
  d.bc_y = bc_y;
  return d;
}

namespace {

struct AxisMode {
  double kappa;
  int k;
};

// separated eigenvalues on (0, L); index k = 0 is the constant Neumann mode
std::vector<AxisMode> axis_modes(double length, std::array<Bc, 2> bc, int count) {
  std::vector<AxisMode> modes;
  bool nn = bc[0] == Bc::neumann && bc[1] == Bc::neumann;
  bool dd = bc[0] == Bc::dirichlet && bc[1] == Bc::dirichlet;
  if (nn) modes.push_back({0.0, 0});
  for (int k = 1; k <= count; ++k) {
    double wave = dd || nn ? k * M_PI / length : (k - 0.5) * M_PI / length;
    modes.push_back({wave * wave, k});
  }
  return modes;
}

}  // namespace

LaplaceEigensystem laplace_eigenvalues(const DomainSpec& domain, int count) {
  if (count < 1) throw ConfigError("mode count must be at least 1");
  LaplaceEigensystem sys;
  if (domain.kind == DomainSpec::Kind::interval) {
    std::vector<AxisMode> axis = axis_modes(domain.lx, domain.bc_x, count);
    sys.includes_zero = !axis.empty() && axis.front().kappa == 0.0;
    for (const AxisMode& m : axis) {
      if (m.kappa == 0.0) continue;
      if (static_cast<int>(sys.kappas.size()) == count) break;
      sys.kappas.push_back(m.kappa);
      sys.mode_ids.push_back({m.k, 0});
    }
    return sys;
  }

  std::vector<AxisMode> ax = axis_modes(domain.lx, domain.bc_x, count);
  std::vector<AxisMode> ay = axis_modes(domain.ly, domain.bc_y, count);
  struct Pair {
    double kappa;
    int kx, ky;
  };
  std::vector<Pair> pairs;
  pairs.reserve(ax.size() * ay.size());
  for (const AxisMode& mx : ax)
    for (const AxisMode& my : ay) pairs.push_back({mx.kappa + my.kappa, mx.k, my.k});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.kappa != b.kappa) return a.kappa < b.kappa;
    if (a.kx != b.kx) return a.kx < b.kx;
    return a.ky < b.ky;
  });
  sys.includes_zero = !pairs.empty() && pairs.front().kappa == 0.0;
  for (const Pair& p : pairs) {
    if (p.kappa == 0.0) continue;
    if (static_cast<int>(sys.kappas.size()) == count) break;
    sys.kappas.push_back(p.kappa);
    sys.mode_ids.push_back({p.kx, p.ky});
  }
  return sys;
}

SignConditions sign_conditions(const RealMatrix& b) {
  if (b.rows() != 2 || b.cols() != 2)
    throw ConfigError("sign conditions are defined for 2x2 linearizations");
  SignConditions s;
  s.b11_positive = b(0, 0) > 0.0;
  s.trace_negative = b(0, 0) + b(1, 1) < 0.0;
  s.det_positive = b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0) > 0.0;
  return s;
}

RealMatrix mode_matrix(double kappa, const RealVector& d, const RealMatrix& b) {
  if (kappa < 0.0) throw ConfigError("Laplace eigenvalue must be nonnegative");
  if (d.size() != b.rows() || b.rows() != b.cols())
    throw ConfigError("diffusion vector and linearization dimensions must agree");
  RealMatrix m = -b;
  m.diagonal() += kappa * d;
  return m;
}

namespace {

double min_real_eigenvalue(const RealMatrix& m) {
  if (m.rows() == 1) return m(0, 0);
  if (m.rows() == 2) {
    double tr = m(0, 0) + m(1, 1);
    double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    double disc = tr * tr - 4.0 * det;
    return disc >= 0.0 ? 0.5 * (tr - std::sqrt(disc)) : 0.5 * tr;
  }
  Eigen::EigenSolver<RealMatrix> es(m, false);
  return es.eigenvalues().real().minCoeff();
}

void validate_spec(const ReactionDiffusionSpec& spec) {
  Index n = spec.diffusion.size();
  if (n < 1) throw ConfigError("at least one component required");
  if (spec.diffusion.minCoeff() <= 0.0) throw ConfigError("diffusion coefficients must be positive");
  if (spec.linearization.rows() != n || spec.linearization.cols() != n)
    throw ConfigError("linearization must be square with one row per component");
  if (spec.mode_cutoff < 1) throw ConfigError("mode cutoff must be at least 1");
}

double spectral_norm(const RealMatrix& b) {
  return Eigen::JacobiSVD<RealMatrix>(b).singularValues()(0);
}

}  // namespace

SpectralGap spectral_gap(const ReactionDiffusionSpec& spec) {
  validate_spec(spec);
  LaplaceEigensystem modes = laplace_eigenvalues(spec.domain, spec.mode_cutoff);

  SpectralGap gap;
  bool first = true;
  auto consider = [&](double kappa, std::array<int, 2> id) {
    double re = min_real_eigenvalue(mode_matrix(kappa, spec.diffusion, spec.linearization));
    if (first || re < gap.lambda0) {
      gap.lambda0 = re;
      gap.argmin_mode = id;
      gap.kappa_at_min = kappa;
      first = false;
    }
  };
  if (modes.includes_zero) consider(0.0, {0, 0});
  for (std::size_t i = 0; i < modes.kappas.size(); ++i)
    consider(modes.kappas[i], modes.mode_ids[i]);

  // every discarded mode has min real part >= kappa*min(d) - ||B||, so the
  // cutoff is certified once that lower bound clears the computed gap
  double d_min = spec.diffusion.minCoeff();
  double b_norm = spectral_norm(spec.linearization);
  if (modes.kappas.back() * d_min - b_norm < gap.lambda0) {
    double kappa_req = (gap.lambda0 + b_norm) / d_min;
    int needed = spec.mode_cutoff;
    for (int trial = spec.mode_cutoff * 2; trial <= (1 << 24); trial *= 2) {
      LaplaceEigensystem bigger = laplace_eigenvalues(spec.domain, trial);
      auto it = std::lower_bound(bigger.kappas.begin(), bigger.kappas.end(), kappa_req);
      if (it != bigger.kappas.end()) {
        needed = static_cast<int>(it - bigger.kappas.begin()) + 1;
        break;
      }
    }
    throw NumericalError("mode cutoff " + std::to_string(spec.mode_cutoff) +
                         " does not certify the spectral tail; at least " +
                         std::to_string(needed) + " modes are required");
  }
  return gap;
}

namespace {

void require_hyperbola_preconditions(const RealMatrix& b) {
  SignConditions s = sign_conditions(b);
  if (!s.all())
    throw ConfigError(
        "hyperbola criterion requires b11 > 0, negative trace, and positive determinant");
}

double hyperbola_bound(double kappa, double d1, const RealMatrix& b) {
  return b(0, 1) * b(1, 0) / (kappa * (kappa * d1 - b(0, 0))) + b(1, 1) / kappa;
}

}  // namespace

bool hyperbola_region_test(double d1, double d2, const RealMatrix& b,
                           const LaplaceEigensystem& modes) {
  require_hyperbola_preconditions(b);
  if (!(d1 > 0.0) || !(d2 > 0.0)) throw ConfigError("diffusion coefficients must be positive");
  if (modes.kappas.empty()) throw ConfigError("mode list must be non-empty");
  if (modes.kappas.back() * d1 < b(0, 0))
    throw NumericalError("retained modes end at kappa = " + format_double(modes.kappas.back()) +
                         " before the crossover b11/d1 = " + format_double(b(0, 0) / d1) +
                         "; enlarge the mode count");
  for (double kappa : modes.kappas) {
    if (kappa * d1 >= b(0, 0)) continue;  // high modes pass unconditionally
    if (!(d2 < hyperbola_bound(kappa, d1, b))) return false;
  }
  return true;
}

std::vector<CurveSample> hyperbola_curves(const RealMatrix& b, const LaplaceEigensystem& modes,
                                          const std::vector<double>& d1_grid) {
  require_hyperbola_preconditions(b);
  std::vector<CurveSample> samples;
  for (std::size_t i = 0; i < modes.kappas.size(); ++i) {
    double kappa = modes.kappas[i];
    for (double d1 : d1_grid) {
      if (!(d1 > 0.0) || kappa * d1 >= b(0, 0)) continue;  // branch exists left of the pole
      samples.push_back({static_cast<int>(i) + 1, d1, hyperbola_bound(kappa, d1, b)});
    }
  }
  return samples;
}

RegionScan region_scan(const RealMatrix& b, const LaplaceEigensystem& modes,
                       const std::vector<double>& d1_grid, const std::vector<double>& d2_grid,
                       int workers, double band) {
  if (d1_grid.empty() || d2_grid.empty()) throw ConfigError("scan grids must be non-empty");
  if (b.rows() != b.cols()) throw ConfigError("linearization must be square");
  if (modes.kappas.empty()) throw ConfigError("mode list must be non-empty");
  workers = std::clamp(workers, 1, 64);

  RegionScan scan;
  scan.region_test_available = b.rows() == 2 && sign_conditions(b).all();
  if (scan.region_test_available) {
    double d1_min = *std::min_element(d1_grid.begin(), d1_grid.end());
    if (modes.kappas.back() * d1_min < b(0, 0))
      throw NumericalError("retained modes end at kappa = " + format_double(modes.kappas.back()) +
                           " before the crossover b11/d1 = " + format_double(b(0, 0) / d1_min) +
                           "; enlarge the mode count");
  }

  Index n = b.rows();
  RealVector d = RealVector::Zero(n);
  std::size_t rows = d1_grid.size(), cols = d2_grid.size();
  scan.cells.resize(rows * cols);

  auto work = [&](std::size_t row_begin, std::size_t row_end, long* mismatches,
                  long* boundary) {
    RealVector dc(n);
    for (std::size_t i = row_begin; i < row_end; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        RegionCell& cell = scan.cells[i * cols + j];
        cell.d1 = d1_grid[i];
        cell.d2 = d2_grid[j];
        if (n == 2) {
          dc << cell.d1, cell.d2;
        } else {
          dc.setConstant(cell.d1);
        }
        double gap = min_real_eigenvalue(mode_matrix(0.0, dc, b));
        if (!modes.includes_zero) gap = std::numeric_limits<double>::infinity();
        for (double kappa : modes.kappas)
          gap = std::min(gap, min_real_eigenvalue(mode_matrix(kappa, dc, b)));
        cell.gap = gap;
        cell.boundary = std::abs(gap) < band;
        if (scan.region_test_available)
          cell.in_region = hyperbola_region_test(cell.d1, cell.d2, b, modes);
        if (cell.boundary) {
          ++*boundary;
        } else if (scan.region_test_available && cell.in_region != (gap > 0.0)) {
          ++*mismatches;
        }
      }
    }
  };

  if (workers == 1) {
    work(0, rows, &scan.mismatches, &scan.boundary_cells);
  } else {
    std::vector<std::thread> pool;
    std::vector<long> mm(static_cast<std::size_t>(workers), 0);
    std::vector<long> bd(static_cast<std::size_t>(workers), 0);
    std::size_t chunk = (rows + static_cast<std::size_t>(workers) - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      std::size_t lo = std::min(rows, w * chunk), hi = std::min(rows, (w + 1) * chunk);
      pool.emplace_back(work, lo, hi, &mm[w], &bd[w]);
    }
    for (auto& th : pool) th.join();
    for (int w = 0; w < workers; ++w) {
      scan.mismatches += mm[w];
      scan.boundary_cells += bd[w];
    }
  }
  return scan;
}

namespace {

// orthonormal interval eigenfunctions per boundary-condition pair
double basis_value(std::array<Bc, 2> bc, double length, int k, double x) {
  bool left_d = bc[0] == Bc::dirichlet, right_d = bc[1] == Bc::dirichlet;
  double s2 = std::sqrt(2.0 / length);
  if (left_d && right_d) return s2 * std::sin(k * M_PI * x / length);
  if (!left_d && !right_d)
    return k == 0 ? std::sqrt(1.0 / length) : s2 * std::cos(k * M_PI * x / length);
  if (left_d) return s2 * std::sin((k - 0.5) * M_PI * x / length);
  return s2 * std::cos((k - 0.5) * M_PI * x / length);
}

}  // namespace

AssembledRD galerkin_assemble(const ReactionDiffusionSpec& spec) {
  validate_spec(spec);
  if (spec.domain.kind != DomainSpec::Kind::interval)
    throw ConfigError("Galerkin assembly supports interval domains only");
  if (!spec.reaction) throw ConfigError("reaction function must be set");

  Index n = spec.diffusion.size();
  LaplaceEigensystem modes = laplace_eigenvalues(spec.domain, spec.mode_cutoff);
  std::vector<double> kappas;
  std::vector<std::array<int, 2>> ids;
  if (modes.includes_zero) {
    kappas.push_back(0.0);
    ids.push_back({0, 0});
  }
  kappas.insert(kappas.end(), modes.kappas.begin(), modes.kappas.end());
  ids.insert(ids.end(), modes.mode_ids.begin(), modes.mode_ids.end());
  auto m = static_cast<Index>(kappas.size());

  RealMatrix sym_b = 0.5 * (spec.linearization + spec.linearization.transpose());
  double min_sym = Eigen::SelfAdjointEigenSolver<RealMatrix>(sym_b).eigenvalues()(0);
  double shift = std::max(0.0, 1.0 - min_sym);

  Matrix a_entries = Matrix::Zero(m * n, m * n);
  Matrix b_blocks = Matrix::Zero(m * n, m * n);
  for (Index i = 0; i < m; ++i)
    for (Index r = 0; r < n; ++r) {
      a_entries(i * n + r, i * n + r) = kappas[static_cast<std::size_t>(i)] * spec.diffusion(r) + shift;
      for (Index c = 0; c < n; ++c)
        b_blocks(i * n + r, i * n + c) = spec.linearization(r, c);
    }

  // midpoint collocation grid sized by the 3/2 dealiasing rule
  int k_max = 0;
  for (const auto& id : ids) k_max = std::max(k_max, id[0]);
  Index grid_n = std::max<Index>({static_cast<Index>(std::ceil(1.5 * k_max)), k_max + 1, 4});
  double length = spec.domain.lx;
  RealMatrix synthesis(grid_n, m);
  for (Index q = 0; q < grid_n; ++q) {
    double x = (static_cast<double>(q) + 0.5) * length / static_cast<double>(grid_n);
    for (Index i = 0; i < m; ++i)
      synthesis(q, i) = basis_value(spec.domain.bc_x, length, ids[static_cast<std::size_t>(i)][0], x);
  }
  RealMatrix analysis = (length / static_cast<double>(grid_n)) * synthesis.transpose();
  if ((analysis * synthesis - RealMatrix::Identity(m, m)).norm() > 1e-10)
    throw NumericalError("collocation grid failed discrete orthogonality");

  Vector f0 = spec.reaction(Vector::Zero(n));
  if (f0.size() != n) throw ConfigError("reaction must map n components to n components");
  if (f0.norm() > 1e-12) throw ConfigError("reaction must vanish at the origin");
  double b_scale = std::max(1.0, spec.linearization.cwiseAbs().maxCoeff());
  for (Index j = 0; j < n; ++j) {
    const double eps = 1e-5;
    Vector e = Vector::Zero(n);
    e(j) = eps;
    Vector col = (spec.reaction(e) - spec.reaction(-e)) / (2.0 * eps);
    for (Index r = 0; r < n; ++r)
      if (std::abs(col(r).real() - spec.linearization(r, j)) > 1e-4 * b_scale ||
          std::abs(col(r).imag()) > 1e-4 * b_scale)
        throw ConfigError("reaction linearization disagrees with the declared matrix in column " +
                          std::to_string(j));
  }

  auto reaction = spec.reaction;
  auto reaction_modal = [reaction, synthesis, analysis, m, n, grid_n, shift](
                            double, const Vector& c) -> Vector {
    Matrix grid(grid_n, n);
    for (Index j = 0; j < n; ++j) {
      Vector cj(m);
      for (Index i = 0; i < m; ++i) cj(i) = c(i * n + j);
      grid.col(j) = synthesis * cj;
    }
    Matrix fgrid(grid_n, n);
    Vector point(n);
    for (Index q = 0; q < grid_n; ++q) {
      point = grid.row(q).transpose();
      fgrid.row(q) = reaction(point).transpose();
    }
    Vector out(m * n);
    for (Index j = 0; j < n; ++j) {
      Vector fj = analysis * fgrid.col(j);
      for (Index i = 0; i < m; ++i) out(i * n + j) = fj(i);
    }
    out += shift * c;
    return out;
  };

  return AssembledRD{PositiveTypeOperator(std::move(a_entries),
                                          HilbertMetric::euclidean(m * n)),
                     std::move(b_blocks),
                     std::move(reaction_modal),
                     shift,
                     std::move(kappas),
                     std::move(ids),
                     static_cast<int>(n),
                     std::move(synthesis),
                     std::move(analysis)};
}

Vector mode_unit_state(const AssembledRD& rd, int mode_rank, int component, double amplitude) {
  if (component < 0 || component >= rd.components)
    throw ConfigError("component index out of range");
  auto it = std::find_if(rd.mode_ids.begin(), rd.mode_ids.end(),
                         [mode_rank](const std::array<int, 2>& id) { return id[0] == mode_rank; });
  if (it == rd.mode_ids.end())
    throw ConfigError("mode " + std::to_string(mode_rank) + " is not among the retained modes");
  auto block = static_cast<Index>(it - rd.mode_ids.begin());
  Vector v = Vector::Zero(static_cast<Index>(rd.kappas.size()) * rd.components);
  v(block * rd.components + component) = amplitude;
  return v;
}

SimulationReport simulate_rd(const ReactionDiffusionSpec& spec, const Vector& u0_modal,
                             double horizon, double step, double tail_fraction) {
  SpectralGap gap = spectral_gap(spec);
  AssembledRD rd = galerkin_assemble(spec);
  if (u0_modal.size() != rd.a.dim())
    throw ConfigError("initial state has " + std::to_string(u0_modal.size()) +
                      " coefficients, expected " + std::to_string(rd.a.dim()));

  MildProblem problem{rd.a, rd.reaction_modal, u0_modal, 0.0, horizon, step};
  SimulationReport report{solve_mild(problem), {}, {}, gap.lambda0, rd.shift};
  attach_scale_norms(report.trajectory, rd.a, {0.0, 0.5});
  report.fit_l2 = decay_fit(report.trajectory, 0.0, tail_fraction);
  report.fit_half = decay_fit(report.trajectory, 0.5, tail_fraction);
  return report;
}

}  // namespace scalelab
