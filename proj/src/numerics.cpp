#include "qbg/numerics.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

#include "qbg/error.hpp"

namespace qbg::numerics {

namespace {

void require_square(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::DimensionMismatch,
                "expected a non-empty square matrix, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_hermitian(const ComplexMatrix& m, double herm_tol) {
  const double dev = hermiticity_deviation(m);
  if (!(dev <= herm_tol)) {
    throw Error(ErrorKind::NotHermitian,
                "max |m - m^dagger| = " + std::to_string(dev) +
                    " exceeds tolerance " + std::to_string(herm_tol),
                dev);
  }
}

}  // namespace

double hermiticity_deviation(const ComplexMatrix& m) {
  require_square(m);
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m, double herm_tol) {
  require_hermitian(m, herm_tol);
  // Solve on the exact Hermitian part so the solver never sees the residual.
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "Hermitian eigensolver failed");
  }
  // Eigen returns ascending order.
  const auto n = h.rows();
  HermitianEigen out;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[static_cast<std::size_t>(k)] = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m,
                                          double herm_tol) {
  require_hermitian(m, herm_tol);
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "Hermitian eigensolver failed");
  }
  std::vector<double> values(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + h.rows());
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

double trace_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

bool majorizes(std::span<const double> a, std::span<const double> b,
               double tol) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::LengthMismatch,
                "majorization needs equal lengths, got " +
                    std::to_string(a.size()) + " and " +
                    std::to_string(b.size()));
  }
  double prefix_a = 0.0;
  double prefix_b = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    prefix_a += a[k];
    prefix_b += b[k];
    if (prefix_a < prefix_b - tol) return false;
  }
  return std::abs(prefix_a - prefix_b) <= tol;
}

}  // namespace qbg::numerics
