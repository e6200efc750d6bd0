#pragma once

#include <span>
#include <vector>

#include "qbg/state.hpp"

namespace qbg {

/// Planar rotation O = cos(theta)(|k><k| + |l><l|) + sin(theta)(|k><l| - |l><k|),
/// identity elsewhere. Indices are 0-based.
struct RotationStep {
  int k = 0;
  int l = 1;
  double theta = 0.0;

  friend bool operator==(const RotationStep&, const RotationStep&) = default;
};

/// rho -> O rho O^T. Real orthogonal conjugation keeps S_R and S_I fixed.
/// Throws IndexOutOfRange for k == l or indices outside [0, d).
DensityMatrix givens_conjugate(const DensityMatrix& rho, const RotationStep& step);

/// Applies the steps in order.
DensityMatrix replay_steps(const DensityMatrix& rho, std::span<const RotationStep> steps);

struct SweepResult {
  DensityMatrix state;
  std::vector<RotationStep> steps;
};

inline constexpr double kDefaultDiagTol = 1e-8;

/// Rotates weight from the diagonal part into the real off-diagonal part
/// until every diagonal entry is within diag_tol of 1/d.
///
/// Each iteration pairs the largest and the smallest diagonal entry (lowest
/// index on ties) and bisects theta on [0, pi/2] until one of the two sits at
/// 1/d. The pair swaps values at pi/2, so a crossing always exists. The entry
/// driven to 1/d is the one whose partner stays on its own side of 1/d.
/// Throws ConvergenceFailure (carrying the residual) after 4 d^2 iterations.
SweepResult sweep_uniform_diagonal(const DensityMatrix& rho,
                                   double diag_tol = kDefaultDiagTol);

/// Entrywise transpose. Keeps S_D, S_X, S_I and flips the sign of I.
DensityMatrix transpose_state(const DensityMatrix& rho);

}  // namespace qbg
