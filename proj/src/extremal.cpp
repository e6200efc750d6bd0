#include "qbg/extremal.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "qbg/error.hpp"

namespace qbg {

namespace {

constexpr double kWeightTol = 1e-10;
// Slack on the alpha interval so grid endpoints computed in floating point
// are not rejected.
constexpr double kAlphaSlack = 1e-12;

[[noreturn]] void violation(const std::string& what) {
  throw Error(ErrorKind::SpecViolation, what);
}

void check_block_weights(std::span<const double> alphas, std::string_view family) {
  if (alphas.empty()) violation(std::string(family) + ": no block weights given");
  for (double a : alphas) {
    if (!std::isfinite(a) || a < 0.0) {
      violation(std::string(family) + ": block weight " + std::to_string(a) +
                " is negative");
    }
  }
  const double total = 2.0 * std::accumulate(alphas.begin(), alphas.end(), 0.0);
  if (std::abs(total - 1.0) > kWeightTol) {
    violation(std::string(family) + ": 2*sum(alphas) = " + std::to_string(total) +
              ", trace must be 1");
  }
}

ComplexMatrix block_matrix(int d, std::span<const double> alphas) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (std::size_t b = 0; b < alphas.size(); ++b) {
    const auto k = static_cast<Eigen::Index>(2 * b);
    const double a = alphas[b];
    m(k, k) = a;
    m(k + 1, k + 1) = a;
    m(k, k + 1) = Complex(0.0, -a);
    m(k + 1, k) = Complex(0.0, a);
  }
  return m;
}

}  // namespace

std::string_view to_string(ExtremalFamily family) {
  switch (family) {
    case ExtremalFamily::EvenBlock: return "EVEN_BLOCK";
    case ExtremalFamily::OddBlockZero: return "ODD_BLOCK_ZERO";
    case ExtremalFamily::OddLinear: return "ODD_LINEAR";
    case ExtremalFamily::EmbeddedImagPure: return "EMBEDDED_IMAG_PURE";
  }
  return "EVEN_BLOCK";
}

ExtremalFamily family_from_string(std::string_view text) {
  if (text == "EVEN_BLOCK") return ExtremalFamily::EvenBlock;
  if (text == "ODD_BLOCK_ZERO") return ExtremalFamily::OddBlockZero;
  if (text == "ODD_LINEAR") return ExtremalFamily::OddLinear;
  if (text == "EMBEDDED_IMAG_PURE") return ExtremalFamily::EmbeddedImagPure;
  throw Error(ErrorKind::Parse, "unknown extremal family '" + std::string(text) + "'");
}

DensityMatrix even_block(std::span<const double> alphas) {
  check_block_weights(alphas, "EVEN_BLOCK");
  const int d = static_cast<int>(2 * alphas.size());
  return DensityMatrix::validate(block_matrix(d, alphas));
}

DensityMatrix odd_block_zero(std::span<const double> alphas) {
  check_block_weights(alphas, "ODD_BLOCK_ZERO");
  const int d = static_cast<int>(2 * alphas.size() + 1);
  return DensityMatrix::validate(block_matrix(d, alphas));
}

DensityMatrix odd_linear(int d, double alpha) {
  if (d < 3 || d % 2 == 0) {
    violation("ODD_LINEAR needs odd d >= 3, got d=" + std::to_string(d));
  }
  const double lo = 1.0 / d;
  const double hi = 1.0 / (d - 1.0);
  if (!std::isfinite(alpha) || alpha < lo - kAlphaSlack || alpha > hi + kAlphaSlack) {
    violation("ODD_LINEAR alpha = " + std::to_string(alpha) + " outside [1/d, 1/(d-1)] = [" +
              std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  const std::vector<double> alphas(static_cast<std::size_t>((d - 1) / 2), alpha);
  ComplexMatrix m = block_matrix(d, alphas);
  m(d - 1, d - 1) = 1.0 - (d - 1) * alpha;
  return DensityMatrix::validate(m);
}

DensityMatrix embedded_imag_pure(int d, double beta) {
  if (d < 2) violation("EMBEDDED_IMAG_PURE needs d >= 2, got d=" + std::to_string(d));
  if (!(beta >= 0.0 && beta <= 1.0)) {
    violation("EMBEDDED_IMAG_PURE beta = " + std::to_string(beta) + " outside [0, 1]");
  }
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
  psi(0) = beta;
  psi(1) = Complex(0.0, std::sqrt(1.0 - beta * beta));
  return DensityMatrix::validate(psi * psi.adjoint());
}

DensityMatrix build_extremal(const ExtremalSpec& spec) {
  auto need_alphas = [&]() -> const std::vector<double>& {
    if (!spec.alphas) violation(std::string(to_string(spec.family)) + " needs 'alphas'");
    return *spec.alphas;
  };
  auto build = [&]() {
    switch (spec.family) {
      case ExtremalFamily::EvenBlock: return even_block(need_alphas());
      case ExtremalFamily::OddBlockZero: return odd_block_zero(need_alphas());
      case ExtremalFamily::OddLinear:
        if (!spec.alpha) violation("ODD_LINEAR needs 'alpha'");
        return odd_linear(spec.dim, *spec.alpha);
      case ExtremalFamily::EmbeddedImagPure:
        if (!spec.beta) violation("EMBEDDED_IMAG_PURE needs 'beta'");
        return embedded_imag_pure(spec.dim, *spec.beta);
    }
    violation("unknown family");
  };
  DensityMatrix rho = build();
  if (rho.dim() != spec.dim) {
    violation(std::string(to_string(spec.family)) + ": weights give d=" +
              std::to_string(rho.dim()) + " but spec says dim=" + std::to_string(spec.dim));
  }
  return rho;
}

SaturationReport saturation_report(const DensityMatrix& rho) {
  SaturationReport report;
  report.coords = coordinates(rho);
  report.verdict = evaluate_bounds(report.coords);
  const int d = rho.dim();
  report.region = boundary_region(report.coords.s_r, d);

  const Landmarks lm = landmarks(d);
  auto add = [&](std::string name, BoundaryPoint p) {
    const double dist =
        std::hypot(report.coords.s_r - p.s_r, report.coords.s_i - p.s_i);
    report.landmarks.push_back({std::move(name), p, dist});
  };
  add("imag_cap", {0.0, lm.si_cap_at_zero});
  add("pure_floor", {lm.pure_floor, std::sqrt(d / 2.0)});
  if (lm.even_intersection) add("even_intersection", *lm.even_intersection);
  if (lm.odd_tangent) add("odd_tangent", *lm.odd_tangent);
  return report;
}

}  // namespace qbg
