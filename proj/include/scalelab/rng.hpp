#pragma once

#include <cstdint>
#include <random>

#include "scalelab/types.hpp"

namespace scalelab {

// mt19937_64 driven directly so draws do not depend on the standard library's
// distribution implementations; identical seeds give identical streams anywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // uniform in [0,1)
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // rough normal via sum of uniforms; good enough for generating test matrices
  double gauss() {
    double s = 0.0;
    for (int i = 0; i < 12; ++i) s += uniform();
    return s - 6.0;
  }

  Complex complex_gauss() { return Complex(gauss(), gauss()); }

  Vector complex_vector(Index n) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = complex_gauss();
    return v;
  }

  Matrix complex_matrix(Index rows, Index cols) {
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) m(i, j) = complex_gauss();
    return m;
  }

  // Hermitian positive definite with eigenvalues in [lo, hi]
  Matrix hpd_matrix(Index n, double lo = 0.5, double hi = 2.0) {
    Matrix x = complex_matrix(n, n);
    Eigen::HouseholderQR<Matrix> qr(x);
    Matrix q = qr.householderQ();
    Vector d(n);
    for (Index i = 0; i < n; ++i) d[i] = uniform(lo, hi);
    return q * d.asDiagonal() * q.adjoint();
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace scalelab
