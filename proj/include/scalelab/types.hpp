#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace scalelab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Bad user input: malformed documents, unknown keys, out-of-range parameters.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numerical contract was violated: accretivity lost, spectrum on the cut,
// tolerance exceeded, tail not closed.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Trajectory left the trust region; carries the last time with a finite state.
struct BlowUpError : NumericalError {
  BlowUpError(const std::string& what, double t) : NumericalError(what), last_finite_time(t) {}
  double last_finite_time;
};

// All file output goes through this: 17 significant digits round-trips a double
// exactly and keeps reruns byte-identical.
inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

inline bool is_hermitian(const Matrix& m, double tol = 1e-12) {
  double scale = std::max(1.0, m.norm());
  return (m - m.adjoint()).norm() <= tol * scale;
}

}  // namespace scalelab
