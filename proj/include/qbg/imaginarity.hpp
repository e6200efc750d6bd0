#pragma once

#include "qbg/state.hpp"

namespace qbg {

inline constexpr double kFullImaginarityTol = 1e-9;

struct ImaginarityReport {
  double robustness = 0.0;  // trace norm of I/d
  double s_r = 0.0;
  bool full_imaginarity = false;  // robustness >= 1 - 1e-9
};

/// Robustness of imaginarity ||I/d||_1, with I the imaginary DXI part.
/// Zero exactly when rho has real entries.
ImaginarityReport robustness(const DensityMatrix& rho);

}  // namespace qbg
