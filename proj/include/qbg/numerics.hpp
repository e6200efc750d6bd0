#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qbg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultHermTol = 1e-10;

namespace numerics {

/// Largest entrywise |m - m^dagger|. Throws DimensionMismatch for non-square input.
double hermiticity_deviation(const ComplexMatrix& m);

/// Real spectrum of a Hermitian matrix, sorted descending.
/// Throws NotHermitian (with the measured deviation) when m is further than
/// herm_tol from Hermitian.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m,
                                          double herm_tol = kDefaultHermTol);

/// Eigenvalues (descending) and matching unit eigenvectors as columns.
struct HermitianEigen {
  std::vector<double> values;
  ComplexMatrix vectors;
};
HermitianEigen hermitian_eigen(const ComplexMatrix& m,
                               double herm_tol = kDefaultHermTol);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

/// Prefix-sum majorization test on descending sequences: every prefix sum of
/// `a` is at least the prefix sum of `b` minus tol, and totals agree within tol.
bool majorizes(std::span<const double> a, std::span<const double> b,
               double tol);

}  // namespace numerics
}  // namespace qbg
