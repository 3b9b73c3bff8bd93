#include "scalelab/decomposition.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <vector>

namespace scalelab {

namespace {

constexpr double kClusterTol = 1e-8;  // relative eigenvalue separation
constexpr double kPhiTaylorRadius = 1e-4;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// k-th derivative of phi_j via the recursion
//   phi_j^{(k)}(w) = (phi_{j-1}^{(k-1)}(w) - (j+k-1) phi_j^{(k-1)}(w)) / w,
// anchored at phi_0 = exp; near w = 0 the series
//   phi_j^{(k)}(w) = sum_m (m+k)!/m! w^m / (m+k+j)!  is used instead.
Complex phi_derivative(int j, int k, Complex w) {
  if (std::abs(w) < 0.5) {
    Complex sum = 0.0, term;
    Complex wp = 1.0;
    for (int m = 0; m < 64; ++m) {
      double coeff = factorial(m + k) / (factorial(m) * factorial(m + k + j));
      term = coeff * wp;
      sum += term;
      wp *= w;
      if (std::abs(term) < 1e-20 * std::abs(sum)) break;
    }
    return sum;
  }
  std::vector<std::vector<Complex>> d(j + 1, std::vector<Complex>(k + 1));
  for (int kk = 0; kk <= k; ++kk) d[0][kk] = std::exp(w);
  for (int jj = 1; jj <= j; ++jj) d[jj][0] = phi_value(jj, w);
  for (int kk = 1; kk <= k; ++kk)
    for (int jj = 1; jj <= j; ++jj)
      d[jj][kk] = (d[jj - 1][kk - 1] - Complex(jj + kk - 1) * d[jj][kk - 1]) / w;
  return d[j][k];
}

}  // namespace

Complex phi_value(int j, Complex w) {
  if (j == 0) return std::exp(w);
  if (std::abs(w) < kPhiTaylorRadius) {
    Complex sum = 0.0, wp = 1.0;
    for (int m = 0; m < 6; ++m) {
      sum += wp / factorial(m + j);
      wp *= w;
    }
    return sum;
  }
  if (j == 1) return (std::exp(w) - 1.0) / w;
  if (j == 2) return (std::exp(w) - 1.0 - w) / (w * w);
  return (phi_value(j - 1, w) - 1.0 / factorial(j - 1)) / w;
}

ScalarFunction power_function(Complex alpha) {
  auto value = [alpha](Complex z) { return std::exp(alpha * std::log(z)); };
  auto derivative = [alpha](Complex z, int k) {
    Complex coeff = 1.0;
    for (int m = 0; m < k; ++m) coeff *= alpha - Complex(m);
    return coeff * std::exp((alpha - Complex(k)) * std::log(z));
  };
  return ScalarFunction{value, derivative};
}

ScalarFunction scaled_exp(double s) {
  auto value = [s](Complex z) { return std::exp(s * z); };
  auto derivative = [s](Complex z, int k) { return std::pow(Complex(s), k) * std::exp(s * z); };
  return ScalarFunction{value, derivative};
}

ScalarFunction scaled_phi(int j, double s) {
  auto value = [j, s](Complex z) { return phi_value(j, s * z); };
  auto derivative = [j, s](Complex z, int k) {
    return std::pow(Complex(s), k) * phi_derivative(j, k, s * z);
  };
  return ScalarFunction{value, derivative};
}

namespace {

// cluster consecutive diagonal entries whose gap is below the relative tol
std::vector<Index> cluster_starts(const Matrix& t) {
  std::vector<Index> starts{0};
  for (Index i = 1; i < t.rows(); ++i) {
    Complex a = t(i - 1, i - 1), b = t(i, i);
    double sep = std::abs(a - b);
    if (sep > kClusterTol * std::max(std::abs(a), std::abs(b))) starts.push_back(i);
  }
  starts.push_back(t.rows());
  return starts;
}

// f on a (nearly) single-eigenvalue triangular block: Taylor about the mean
Matrix confluent_block(const Matrix& tb, const ScalarFunction& f) {
  Index n = tb.rows();
  Complex mu = tb.diagonal().mean();
  Matrix e = tb - mu * Matrix::Identity(n, n);
  Matrix sum = f.value(mu) * Matrix::Identity(n, n);
  Matrix ek = Matrix::Identity(n, n);
  double kfact = 1.0;
  int kmax = static_cast<int>(2 * n) + 30;
  for (int k = 1; k <= kmax; ++k) {
    ek = ek * e;
    kfact *= k;
    Matrix term = (f.derivative(mu, k) / kfact) * ek;
    sum += term;
    if (term.norm() <= 1e-18 * std::max(1.0, sum.norm()) && k >= n) return sum;
  }
  throw NumericalError("Taylor evaluation on an eigenvalue cluster did not converge");
}

// X solving T1 X - X T2 = C with T1, T2 upper triangular and spectra separated
Matrix triangular_sylvester(const Matrix& t1, const Matrix& t2, const Matrix& c) {
  Index p = t1.rows(), q = t2.rows();
  Matrix x(p, q);
  for (Index j = 0; j < q; ++j) {
    for (Index i = p - 1; i >= 0; --i) {
      Complex rhs = c(i, j);
      for (Index k = i + 1; k < p; ++k) rhs -= t1(i, k) * x(k, j);
      for (Index k = 0; k < j; ++k) rhs += x(i, k) * t2(k, j);
      Complex denom = t1(i, i) - t2(j, j);
      x(i, j) = rhs / denom;
    }
  }
  return x;
}

}  // namespace

Matrix triangular_function(const Matrix& t, const ScalarFunction& f) {
  Index n = t.rows();
  std::vector<Index> starts = cluster_starts(t);
  Index nblocks = static_cast<Index>(starts.size()) - 1;
  Matrix fm = Matrix::Zero(n, n);

  auto block = [&](const Matrix& m, Index bi, Index bj) {
    return m.block(starts[bi], starts[bj], starts[bi + 1] - starts[bi],
                   starts[bj + 1] - starts[bj]);
  };

  for (Index bi = 0; bi < nblocks; ++bi) {
    Matrix tb = block(t, bi, bi);
    if (tb.rows() == 1)
      fm(starts[bi], starts[bi]) = f.value(tb(0, 0));
    else
      fm.block(starts[bi], starts[bi], tb.rows(), tb.cols()) = confluent_block(tb, f);
  }
  // superdiagonal sweep: F_IJ couples through everything strictly between
  for (Index diag = 1; diag < nblocks; ++diag) {
    for (Index bi = 0; bi + diag < nblocks; ++bi) {
      Index bj = bi + diag;
      Matrix c = block(fm, bi, bi) * block(t, bi, bj) - block(t, bi, bj) * block(fm, bj, bj);
      for (Index bk = bi + 1; bk < bj; ++bk)
        c += block(fm, bi, bk) * block(t, bk, bj) - block(t, bi, bk) * block(fm, bk, bj);
      fm.block(starts[bi], starts[bj], c.rows(), c.cols()) =
          triangular_sylvester(block(t, bi, bi), block(t, bj, bj), c);
    }
  }
  return fm;
}

SpectralDecomposition SpectralDecomposition::compute(const Matrix& a, DecompositionPolicy policy,
                                                     double cond_limit) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw ConfigError("operator matrix must be square and non-empty");
  double a_norm = std::max(a.norm(), 1e-300);

  SpectralDecomposition d;
  if (policy != DecompositionPolicy::force_schur) {
    Eigen::ComplexEigenSolver<Matrix> es(a, true);
    if (es.info() == Eigen::Success) {
      Matrix v = es.eigenvectors();
      Eigen::JacobiSVD<Matrix> svd(v);
      double smin = svd.singularValues()(v.cols() - 1);
      double cond = smin > 0.0 ? svd.singularValues()(0) / smin : std::numeric_limits<double>::infinity();
      if (cond <= cond_limit) {
        Matrix v_inv = v.partialPivLu().inverse();
        double rec = (v * es.eigenvalues().asDiagonal() * v_inv - a).norm() / a_norm;
        if (rec <= 1e-10) {
          d.kind_ = Kind::diagonalizable;
          d.eigenvalues_ = es.eigenvalues();
          d.v_ = std::move(v);
          d.v_inv_ = std::move(v_inv);
          d.cond_ = cond;
          d.reconstruction_error_ = rec;
          return d;
        }
        if (policy == DecompositionPolicy::force_diagonal)
          throw NumericalError("diagonalization reconstruction error " + format_double(rec) +
                               " exceeds 1e-10 and the Schur fallback was not requested");
      } else if (policy == DecompositionPolicy::force_diagonal) {
        throw NumericalError("eigenvector condition number " + format_double(cond) +
                             " exceeds 1e8 and the Schur fallback was not requested");
      }
    } else if (policy == DecompositionPolicy::force_diagonal) {
      throw NumericalError("eigendecomposition failed and the Schur fallback was not requested");
    }
  }

  Eigen::ComplexSchur<Matrix> schur(a, true);
  if (schur.info() != Eigen::Success) throw NumericalError("Schur decomposition failed");
  d.kind_ = Kind::schur;
  d.q_ = schur.matrixU();
  d.t_ = schur.matrixT();
  d.eigenvalues_ = d.t_.diagonal();
  d.cond_ = std::numeric_limits<double>::infinity();
  d.reconstruction_error_ = (d.q_ * d.t_ * d.q_.adjoint() - a).norm() / a_norm;
  if (d.reconstruction_error_ > 1e-10)
    throw NumericalError("Schur reconstruction error " + format_double(d.reconstruction_error_) +
                         " exceeds 1e-10");
  return d;
}

Matrix SpectralDecomposition::apply(const ScalarFunction& f) const {
  if (kind_ == Kind::diagonalizable) {
    Vector fv(eigenvalues_.size());
    for (Index i = 0; i < eigenvalues_.size(); ++i) fv[i] = f.value(eigenvalues_[i]);
    return v_ * fv.asDiagonal() * v_inv_;
  }
  return q_ * triangular_function(t_, f) * q_.adjoint();
}

}  // namespace scalelab
