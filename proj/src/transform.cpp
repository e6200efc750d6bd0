#include "qbg/transform.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qbg/error.hpp"

namespace qbg {

namespace {

constexpr double kBisectionTol = 1e-12;
constexpr int kBisectionMaxIter = 200;

// Diagonal entry k of O rho O^T as a function of theta (only k and l move).
double rotated_diag(const ComplexMatrix& m, int k, int l, double theta, bool first) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double kk = m(k, k).real();
  const double ll = m(l, l).real();
  const double kl = m(k, l).real() + m(l, k).real();  // 2 Re rho_kl
  return first ? c * c * kk + s * s * ll + c * s * kl
               : s * s * kk + c * c * ll - c * s * kl;
}

double max_diag_deviation(const ComplexMatrix& m) {
  const double target = 1.0 / static_cast<double>(m.rows());
  double worst = 0.0;
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    worst = std::max(worst, std::abs(m(k, k).real() - target));
  }
  return worst;
}

}  // namespace

DensityMatrix givens_conjugate(const DensityMatrix& rho, const RotationStep& step) {
  const int d = rho.dim();
  if (step.k == step.l || step.k < 0 || step.l < 0 || step.k >= d || step.l >= d) {
    throw Error(ErrorKind::IndexOutOfRange,
                "rotation indices (" + std::to_string(step.k) + ", " +
                    std::to_string(step.l) + ") invalid for d=" + std::to_string(d));
  }
  const double c = std::cos(step.theta);
  const double s = std::sin(step.theta);
  ComplexMatrix m = rho.matrix();
  // Rows: O m
  for (int j = 0; j < d; ++j) {
    const Complex a = m(step.k, j);
    const Complex b = m(step.l, j);
    m(step.k, j) = c * a + s * b;
    m(step.l, j) = -s * a + c * b;
  }
  // Columns: (O m) O^T
  for (int j = 0; j < d; ++j) {
    const Complex a = m(j, step.k);
    const Complex b = m(j, step.l);
    m(j, step.k) = c * a + s * b;
    m(j, step.l) = -s * a + c * b;
  }
  return DensityMatrix::assume_valid(std::move(m), rho.tolerances());
}

DensityMatrix replay_steps(const DensityMatrix& rho, std::span<const RotationStep> steps) {
  DensityMatrix out = rho;
  for (const auto& step : steps) out = givens_conjugate(out, step);
  return out;
}

SweepResult sweep_uniform_diagonal(const DensityMatrix& rho, double diag_tol) {
  const int d = rho.dim();
  const double target = 1.0 / d;
  const int max_iter = 4 * d * d;

  SweepResult result{rho, {}};
  for (int iter = 0;; ++iter) {
    const ComplexMatrix& m = result.state.matrix();
    int hi = 0;
    int lo = 0;
    for (int j = 1; j < d; ++j) {
      if (m(j, j).real() > m(hi, hi).real()) hi = j;
      if (m(j, j).real() < m(lo, lo).real()) lo = j;
    }
    const double above = m(hi, hi).real() - target;
    const double below = target - m(lo, lo).real();
    if (above <= diag_tol && below <= diag_tol) break;
    if (iter >= max_iter) {
      const double residual = max_diag_deviation(m);
      throw Error(ErrorKind::ConvergenceFailure,
                  "diagonal sweep did not converge after " + std::to_string(max_iter) +
                      " rotations, residual " + std::to_string(residual),
                  residual);
    }

    // Drive the entry closer to 1/d onto it; the partner keeps its side.
    const bool move_hi = above <= below;
    const int k = std::min(hi, lo);
    const int l = std::max(hi, lo);
    const bool track_first = (move_hi ? hi : lo) == k;
    auto residual = [&](double theta) {
      return rotated_diag(m, k, l, theta, track_first) - target;
    };

    // residual(0) and residual(pi/2) straddle zero.
    double a = 0.0;
    double b = std::numbers::pi / 2.0;
    const double fa_sign = residual(a) >= 0.0 ? 1.0 : -1.0;
    double theta = 0.5 * (a + b);
    for (int it = 0; it < kBisectionMaxIter; ++it) {
      theta = 0.5 * (a + b);
      const double f = residual(theta);
      if (std::abs(f) <= kBisectionTol) break;
      if ((f >= 0.0 ? 1.0 : -1.0) == fa_sign) {
        a = theta;
      } else {
        b = theta;
      }
    }
    const RotationStep step{k, l, theta};
    result.state = givens_conjugate(result.state, step);
    result.steps.push_back(step);
  }
  return result;
}

DensityMatrix transpose_state(const DensityMatrix& rho) {
  return DensityMatrix::assume_valid(rho.matrix().transpose(), rho.tolerances());
}

}  // namespace qbg
