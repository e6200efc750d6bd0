#pragma once

// Test-only generators and reference computations. Nothing here calls into
// the library's sampling code, so these serve as independent oracles.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qbg/state.hpp"
#include "qbg/transform.hpp"

namespace qbg::test {

inline ComplexMatrix sigma_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline ComplexMatrix sigma_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

inline ComplexMatrix sigma_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline ComplexMatrix ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix g(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) g(r, c) = Complex(normal(rng), normal(rng));
  }
  return g;
}

/// Random state of random rank, built without the library's sampler.
inline ComplexMatrix random_state_matrix(int d, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> rank_dist(1, d);
  const ComplexMatrix g = ginibre(d, rank_dist(rng), rng);
  ComplexMatrix m = g * g.adjoint();
  m = 0.5 * (m + m.adjoint());
  return m / m.trace().real();
}

inline DensityMatrix random_state(int d, std::mt19937_64& rng) {
  return DensityMatrix::validate(random_state_matrix(d, rng));
}

/// Haar unitary via QR with phase correction.
inline ComplexMatrix random_unitary(int d, std::mt19937_64& rng) {
  const ComplexMatrix z = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    const Complex diag = r(k, k);
    q.col(k) *= diag / std::abs(diag);
  }
  return q;
}

inline std::vector<RotationStep> random_steps(int d, int count, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> idx(0, d - 1);
  std::uniform_real_distribution<double> angle(-3.2, 3.2);
  std::vector<RotationStep> steps;
  while (static_cast<int>(steps.size()) < count) {
    const int k = idx(rng);
    const int l = idx(rng);
    if (k != l) steps.push_back({k, l, angle(rng)});
  }
  return steps;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// Sum of squared eigenvalues / d: the spectral route to S^2 of a traceless part.
inline double weight_sq_by_spectrum(const ComplexMatrix& part) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(part, Eigen::EigenvaluesOnly);
  return es.eigenvalues().squaredNorm() / static_cast<double>(part.rows());
}

}  // namespace qbg::test
