#include <doctest.h>

#include "helpers.hpp"
#include "scalelab/rng.hpp"
#include "scalelab/semigroup.hpp"

using namespace scalelab;
using doctest::Approx;

namespace {

PositiveTypeOperator euclid_op(Matrix m) {
  Index n = m.rows();
  return PositiveTypeOperator(std::move(m), HilbertMetric::euclidean(n));
}

PositiveTypeOperator scalar_op(double value) {
  Matrix m(1, 1);
  m(0, 0) = value;
  return euclid_op(std::move(m));
}

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> grid;
  grid.reserve(points);
  for (int i = 0; i < points; ++i)
    grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
  return grid;
}

Vector scalar_state(double value) {
  Vector u(1);
  u(0) = value;
  return u;
}

auto zero_rhs = [](double, const Vector& u) { return Vector(Vector::Zero(u.size())); };

}  // namespace

TEST_CASE("semigroup matrix on a Jordan block") {
  Matrix a(2, 2);
  a << 2, 1, 0, 2;
  PositiveTypeOperator op = euclid_op(a);

  Matrix expected(2, 2);
  expected << 1, -1, 0, 1;
  expected *= std::exp(-2.0);
  CHECK((semigroup_matrix(op, 1.0) - expected).norm() < 1e-12);
  CHECK((semigroup_matrix(op, 0.0) - Matrix::Identity(2, 2)).norm() == 0.0);
}

TEST_CASE("semigroup law and metric contraction") {
  Rng rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    Index n = 2 + static_cast<Index>(rng.raw() % 5);
    PositiveTypeOperator a = testing::random_form_operator(rng, n);
    double s = rng.uniform(0.05, 1.5), t = rng.uniform(0.05, 1.5);
    Matrix both = semigroup_matrix(a, s + t);
    Matrix split = semigroup_matrix(a, s) * semigroup_matrix(a, t);
    CHECK((both - split).norm() <= 1e-11 * std::max(1.0, both.norm()));

    Vector u = rng.complex_vector(n);
    CHECK(a.metric().norm(semigroup_apply(a, t, u)) <= a.metric().norm(u) * (1.0 + 1e-12));
  }
}

TEST_CASE("equilibria are reproduced exactly by the stepper") {
  MildProblem p{scalar_op(1.0), [](double, const Vector& u) { return u; }, scalar_state(0.7),
                0.0, 3.0, 0.05};
  Trajectory traj = solve_mild(p);
  for (const Vector& u : traj.states) CHECK(std::abs(u(0) - Complex(0.7)) < 1e-13);
  CHECK(traj.richardson_error < 1e-13);
}

TEST_CASE("cubic problem matches the adaptive reference integrator") {
  Matrix a(2, 2);
  a << 1, 0, 0, 3;
  auto cubic = [](double, const Vector& u) -> Vector { return -u.array().cube().matrix(); };
  Vector u0(2);
  u0 << 0.6, 0.4;
  MildProblem p{euclid_op(a), cubic, u0, 0.0, 2.0, 0.005};
  Trajectory mild = solve_mild(p);
  Trajectory ref = solve_reference(p);
  REQUIRE(mild.times.size() == ref.times.size());
  CHECK((mild.states.back() - ref.states.back()).norm() <= 1e-6);
  CHECK(mild.richardson_error < 1e-4);
}

TEST_CASE("step halving gains a factor of four at second order") {
  auto cubic = [](double, const Vector& u) -> Vector { return -u.array().cube().matrix(); };
  MildProblem coarse{scalar_op(1.0), cubic, scalar_state(0.5), 0.0, 2.0, 0.1};
  MildProblem fine = coarse;
  fine.step = 0.05;
  Complex exact = solve_reference(fine).states.back()(0);
  double err_coarse = std::abs(solve_mild(coarse).states.back()(0) - exact);
  double err_fine = std::abs(solve_mild(fine).states.back()(0) - exact);
  REQUIRE(err_fine > 0.0);
  CHECK(err_coarse / err_fine >= 3.5);
  CHECK(err_coarse / err_fine <= 4.5);

  // the halving estimate brackets the measured endpoint error
  double estimated = solve_mild(coarse).richardson_error;
  CHECK(estimated >= 0.2 * err_coarse);
  CHECK(estimated <= 5.0 * err_coarse);
}

TEST_CASE("linear decay is governed by the slowest mode") {
  Matrix a(2, 2);
  a << 1, 0, 0, 5;
  Vector u0(2);
  u0 << 1, 1;
  MildProblem p{euclid_op(a), zero_rhs, u0, 0.0, 8.0, 0.01};
  PositiveTypeOperator op = euclid_op(a);
  Trajectory traj = solve_mild(p);
  attach_scale_norms(traj, op, {0.0, 0.5});
  DecayFit fit = decay_fit(traj, 0.0, 0.5);
  CHECK(fit.rate == Approx(1.0).epsilon(1e-2));
  CHECK_FALSE(fit.growing);
  CHECK_FALSE(fit.truncated);
  CHECK(fit.prefactor > 0.0);
  DecayFit fit_half = decay_fit(traj, 0.5, 0.5);
  CHECK(fit_half.rate == Approx(1.0).epsilon(1e-2));
}

TEST_CASE("smoothing constants of self-adjoint operators") {
  std::vector<double> grid = log_grid(1e-4, 10.0, 1200);
  Matrix a(2, 2);
  a << 1, 0, 0, 100;
  PositiveTypeOperator op = euclid_op(a);

  SmoothingResult half = smoothing_constant(op, 0.5, grid);
  CHECK(half.supremum == Approx(1.0 / std::sqrt(2.0 * std::exp(1.0))).epsilon(1e-4));
  // the supremum is attained where t * eigenvalue = 1/2, at either eigenvalue
  double lo = std::abs(std::log(half.argmax_t / 0.005));
  double hi = std::abs(std::log(half.argmax_t / 0.5));
  CHECK(std::min(lo, hi) < 0.05);

  SmoothingResult one = smoothing_constant(op, 1.0, grid);
  CHECK(one.supremum == Approx(std::exp(-1.0)).epsilon(1e-4));

  SmoothingResult scalar = smoothing_constant(scalar_op(1.0), 0.5, grid);
  CHECK(scalar.supremum == Approx(1.0 / std::sqrt(2.0 * std::exp(1.0))).epsilon(1e-4));
  CHECK(scalar.argmax_t == Approx(0.5).epsilon(0.02));
}

TEST_CASE("smoothing rejects bad orders and grids") {
  PositiveTypeOperator op = scalar_op(1.0);
  CHECK_THROWS_AS(smoothing_constant(op, 0.0, {1.0}), ConfigError);
  CHECK_THROWS_AS(smoothing_constant(op, 1.5, {1.0}), ConfigError);
  CHECK_THROWS_AS(smoothing_constant(op, 0.5, {}), ConfigError);
  CHECK_THROWS_AS(smoothing_constant(op, 0.5, {0.0}), ConfigError);
}

TEST_CASE("reference integrator handles a stiff diagonal operator") {
  Matrix a(2, 2);
  a << 1, 0, 0, 1e4;
  Vector u0(2);
  u0 << 1, 1;
  MildProblem p{euclid_op(a), zero_rhs, u0, 0.0, 1.0, 0.1};
  Trajectory traj = solve_reference(p);
  REQUIRE(traj.times.size() == 11);
  CHECK(std::abs(traj.states.back()(0) - Complex(std::exp(-1.0))) < 1e-8);
  CHECK(std::abs(traj.states.back()(1)) < 1e-12);
}

TEST_CASE("supercritical growth raises the blow-up signal with the last good time") {
  auto focusing = [](double, const Vector& u) -> Vector { return u.array().cube().matrix(); };
  MildProblem p{scalar_op(1.0), focusing, scalar_state(2.0), 0.0, 5.0, 1e-3};
  bool raised = false;
  try {
    solve_mild(p);
  } catch (const BlowUpError& e) {
    raised = true;
    CHECK(e.last_finite_time > 0.0);
    CHECK(e.last_finite_time < 1.0);
    CHECK(std::string(e.what()).find("trust region") != std::string::npos);
  }
  CHECK(raised);
}

TEST_CASE("decay fit flags and rejections") {
  Trajectory traj;
  traj.times = {0.0, 1.0, 2.0, 3.0};
  traj.norms[0.0] = {1.0, 2.0, 4.0, 8.0};
  DecayFit up = decay_fit(traj, 0.0, 0.5);
  CHECK(up.growing);
  CHECK(up.rate < 0.0);

  traj.norms[0.0] = {1.0, 0.5, 0.0, 0.0};
  DecayFit cut = decay_fit(traj, 0.0, 0.9);
  CHECK(cut.truncated);

  CHECK_THROWS_AS(decay_fit(traj, 0.25, 0.5), ConfigError);  // no such norm sequence
  CHECK_THROWS_AS(decay_fit(traj, 0.0, 0.0), ConfigError);
  CHECK_THROWS_AS(decay_fit(traj, 0.0, 1.0), ConfigError);

  Trajectory stub;
  stub.times = {0.0};
  stub.norms[0.0] = {1.0};
  CHECK_THROWS_AS(decay_fit(stub, 0.0, 0.5), ConfigError);
}

TEST_CASE("problem validation") {
  auto f = [](double, const Vector& u) -> Vector { return u; };
  MildProblem bad_horizon{scalar_op(1.0), f, scalar_state(1.0), 1.0, 1.0, 0.1};
  CHECK_THROWS_AS(solve_mild(bad_horizon), ConfigError);
  MildProblem bad_step{scalar_op(1.0), f, scalar_state(1.0), 0.0, 1.0, 0.0};
  CHECK_THROWS_AS(solve_mild(bad_step), ConfigError);
  MildProblem bad_dim{scalar_op(1.0), f, Vector(Vector::Zero(2)), 0.0, 1.0, 0.1};
  CHECK_THROWS_AS(solve_mild(bad_dim), ConfigError);
  MildProblem no_f{scalar_op(1.0), nullptr, scalar_state(1.0), 0.0, 1.0, 0.1};
  CHECK_THROWS_AS(solve_mild(no_f), ConfigError);
}
