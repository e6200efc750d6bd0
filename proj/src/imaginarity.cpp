#include "qbg/imaginarity.hpp"

namespace qbg {

ImaginarityReport robustness(const DensityMatrix& rho) {
  const DxiParts parts = decompose(rho);
  const Coordinates c = coordinates(parts);
  ImaginarityReport report;
  report.robustness = numerics::trace_norm(parts.i_matrix() / static_cast<double>(parts.dim));
  report.s_r = c.s_r;
  report.full_imaginarity = report.robustness >= 1.0 - kFullImaginarityTol;
  return report;
}

}  // namespace qbg
