#include "scalelab/semigroup.hpp"

#include <algorithm>
#include <cmath>

namespace scalelab {

Matrix semigroup_matrix(const PositiveTypeOperator& a, double t) {
  if (t < 0.0) throw ConfigError("semigroup time must be nonnegative");
  if (t == 0.0) return Matrix::Identity(a.dim(), a.dim());
  return a.decomposition().apply(scaled_exp(-t));
}

Vector semigroup_apply(const PositiveTypeOperator& a, double t, const Vector& u) {
  if (u.size() != a.dim()) throw ConfigError("vector dimension does not match the operator");
  if (t == 0.0) return u;
  return semigroup_matrix(a, t) * u;
}

SmoothingResult smoothing_constant(const PositiveTypeOperator& a, double alpha,
                                   const std::vector<double>& t_grid) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("smoothing order must lie in (0, 1]");
  if (t_grid.empty()) throw ConfigError("smoothing grid must be non-empty");
  Matrix p = fractional_power(a, Complex(alpha, 0.0));
  SmoothingResult result;
  for (double t : t_grid) {
    if (t <= 0.0) throw ConfigError("smoothing grid times must be positive");
    double value = std::pow(t, alpha) * metric_operator_norm(p * semigroup_matrix(a, t), a.metric());
    if (value > result.supremum) {
      result.supremum = value;
      result.argmax_t = t;
    }
  }
  return result;
}

namespace {

constexpr double kBlowUpNorm = 1e12;
constexpr int kMaxCorrector = 50;

void validate(const MildProblem& p) {
  if (!(p.t0 < p.t1)) throw ConfigError("time horizon requires t0 < t1");
  if (!(p.step > 0.0) || p.step > (p.t1 - p.t0) * (1.0 + 1e-12))
    throw ConfigError("step must be positive and no larger than the horizon");
  if (p.u0.size() != p.a.dim())
    throw ConfigError("initial state dimension does not match the operator");
  if (!p.f) throw ConfigError("nonlinearity must be set (use a zero function for linear runs)");
}

void check_finite(const MildProblem& p, const Vector& u, double last_good_t) {
  if (!u.allFinite() || p.a.metric().norm(u) > kBlowUpNorm)
    throw BlowUpError("state norm left the trust region after t = " + format_double(last_good_t),
                      last_good_t);
}

struct StepMatrices {
  Matrix e;        // e^{-hA}
  Matrix phi1;     // phi_1(-hA)
  Matrix phi2;     // phi_2(-hA)
  Matrix phi_dif;  // phi1 - phi2
};

StepMatrices step_matrices(const PositiveTypeOperator& a, double h) {
  StepMatrices m;
  m.e = a.decomposition().apply(scaled_exp(-h));
  m.phi1 = a.decomposition().apply(scaled_phi(1, -h));
  m.phi2 = a.decomposition().apply(scaled_phi(2, -h));
  m.phi_dif = m.phi1 - m.phi2;
  return m;
}

// one implicit exponential-trapezoidal step from (t, u) over h
Vector etd2_step(const MildProblem& p, const StepMatrices& m, double t, const Vector& u,
                 double h) {
  Vector fn = p.f(t, u);
  Vector fixed = m.e * u + h * (m.phi_dif * fn);
  Vector v = fixed + h * (m.phi2 * fn);  // predictor: frozen right endpoint
  for (int it = 0; it < kMaxCorrector; ++it) {
    Vector next = fixed + h * (m.phi2 * p.f(t + h, v));
    // a diverging corrector is the discrete signature of finite-time blow-up
    if (!next.allFinite() || p.a.metric().norm(next) > kBlowUpNorm)
      throw BlowUpError("state norm left the trust region after t = " + format_double(t), t);
    double delta = p.a.metric().norm(next - v);
    v = std::move(next);
    if (delta <= 1e-13 * std::max(1.0, p.a.metric().norm(v))) return v;
  }
  throw NumericalError("fixed-point corrector did not converge at t = " + format_double(t));
}

// integrate over the macro grid; substeps > 1 refines each macro step
std::vector<Vector> etd2_integrate(const MildProblem& p, const std::vector<double>& nodes,
                                   int substeps) {
  StepMatrices full;
  double cached_h = 0.0;
  std::vector<Vector> states;
  states.reserve(nodes.size());
  states.push_back(p.u0);
  Vector u = p.u0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    double h = (nodes[i + 1] - nodes[i]) / substeps;
    // equal spacing up to rounding noise reuses the cached matrices
    if (std::abs(h - cached_h) <= 1e-12 * std::max(h, cached_h)) {
      h = cached_h;
    } else {
      full = step_matrices(p.a, h);
      cached_h = h;
    }
    for (int s = 0; s < substeps; ++s) {
      double t = nodes[i] + s * h;
      u = etd2_step(p, full, t, u, h);
      check_finite(p, u, t);
    }
    states.push_back(u);
  }
  return states;
}

std::vector<double> macro_nodes(const MildProblem& p) {
  std::vector<double> nodes{p.t0};
  double span = p.t1 - p.t0;
  auto full = static_cast<std::size_t>(std::floor(span / p.step + 1e-9));
  for (std::size_t n = 1; n <= full; ++n) nodes.push_back(p.t0 + static_cast<double>(n) * p.step);
  if (p.t1 - nodes.back() > 1e-9 * p.step) nodes.push_back(p.t1);
  else nodes.back() = p.t1;
  return nodes;
}

}  // namespace

Trajectory solve_mild(const MildProblem& p) {
  validate(p);
  std::vector<double> nodes = macro_nodes(p);
  Trajectory traj;
  traj.times = nodes;
  traj.states = etd2_integrate(p, nodes, 1);
  std::vector<Vector> halved = etd2_integrate(p, nodes, 2);
  traj.richardson_error =
      (4.0 / 3.0) * p.a.metric().norm(traj.states.back() - halved.back());
  return traj;
}

namespace {

// Dormand-Prince 5(4) tableau
constexpr double kC[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr double kB5[7] = {35.0 / 384,      0.0,       500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kErr[7] = {71.0 / 57600,       0.0,         -71.0 / 16695, 71.0 / 1920,
                            -17253.0 / 339200, 22.0 / 525,  -1.0 / 40};

}  // namespace

Trajectory solve_reference(const MildProblem& p) {
  validate(p);
  const double rtol = 1e-10, atol = 1e-14;
  std::vector<double> nodes = macro_nodes(p);

  auto rhs = [&p](double t, const Vector& u) -> Vector { return -(p.a.entries() * u) + p.f(t, u); };

  Trajectory traj;
  traj.times = nodes;
  traj.states.reserve(nodes.size());
  traj.states.push_back(p.u0);

  Vector u = p.u0;
  double t = p.t0;
  double h = std::min(p.step, (p.t1 - p.t0) / 100.0);
  std::vector<Vector> k(7);
  long steps = 0;
  for (std::size_t node = 1; node < nodes.size(); ++node) {
    double target = nodes[node];
    while (t < target - 1e-14 * std::max(1.0, std::abs(target))) {
      if (++steps > 20'000'000)
        throw NumericalError("reference integrator exceeded its step budget");
      double h_try = std::min(h, target - t);
      k[0] = rhs(t, u);
      for (int stage = 1; stage < 7; ++stage) {
        Vector y = u;
        for (int j = 0; j < stage; ++j)
          if (kA[stage][j] != 0.0) y += (h_try * kA[stage][j]) * k[j];
        k[stage] = rhs(t + kC[stage] * h_try, y);
      }
      Vector u5 = u;
      for (int j = 0; j < 7; ++j)
        if (kB5[j] != 0.0) u5 += (h_try * kB5[j]) * k[j];
      Vector err = Vector::Zero(u.size());
      for (int j = 0; j < 7; ++j)
        if (kErr[j] != 0.0) err += (h_try * kErr[j]) * k[j];

      double err_norm = 0.0;
      for (Index i = 0; i < u.size(); ++i) {
        double scale = atol + rtol * std::max(std::abs(u[i]), std::abs(u5[i]));
        double e = std::abs(err[i]) / scale;
        err_norm += e * e;
      }
      err_norm = std::sqrt(err_norm / static_cast<double>(u.size()));

      if (err_norm <= 1.0) {
        t += h_try;
        u = u5;
        check_finite(p, u, t);
      }
      double factor = err_norm > 0.0 ? 0.9 * std::pow(err_norm, -0.2) : 5.0;
      h = h_try * std::clamp(factor, 0.2, 5.0);
      if (h < 1e-15 * std::max(1.0, std::abs(t)))
        throw NumericalError("reference integrator step size underflow at t = " +
                             format_double(t));
    }
    t = target;
    traj.states.push_back(u);
  }
  return traj;
}

void attach_scale_norms(Trajectory& traj, const PositiveTypeOperator& a,
                        const std::vector<double>& alphas) {
  for (double alpha : alphas) {
    Matrix p = alpha == 0.0 ? Matrix::Identity(a.dim(), a.dim())
                            : fractional_power(a, Complex(alpha, 0.0));
    std::vector<double> values;
    values.reserve(traj.states.size());
    for (const Vector& u : traj.states) values.push_back(a.metric().norm(p * u));
    traj.norms[alpha] = std::move(values);
  }
}

DecayFit decay_fit(const Trajectory& traj, double norm_alpha, double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction < 1.0))
    throw ConfigError("tail fraction must lie in (0, 1)");
  auto it = traj.norms.find(norm_alpha);
  if (it == traj.norms.end())
    throw ConfigError("trajectory carries no norm sequence for alpha = " +
                      format_double(norm_alpha));
  const std::vector<double>& norms = it->second;
  std::size_t n = norms.size();
  if (n != traj.times.size() || n < 2) throw ConfigError("trajectory too short to fit");

  auto window = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(n)));
  window = std::max<std::size_t>(window, 2);
  std::size_t start = n - window;

  DecayFit fit;
  std::vector<double> ts, ys;
  for (std::size_t i = start; i < n; ++i) {
    if (!(norms[i] > 0.0)) {
      fit.truncated = true;
      break;
    }
    ts.push_back(traj.times[i]);
    ys.push_back(std::log(norms[i]));
  }
  fit.samples = static_cast<int>(ts.size());
  if (ts.size() < 2) return fit;  // degenerate: all zero or a single point

  double tm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    tm += ts[i];
    ym += ys[i];
  }
  tm /= static_cast<double>(ts.size());
  ym /= static_cast<double>(ts.size());
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    sxx += (ts[i] - tm) * (ts[i] - tm);
    sxy += (ts[i] - tm) * (ys[i] - ym);
  }
  double slope = sxy / sxx;
  fit.rate = -slope;
  fit.prefactor = std::exp(ym + slope * (traj.times.front() - tm));
  fit.growing = slope > 0.0;
  return fit;
}

}  // namespace scalelab
