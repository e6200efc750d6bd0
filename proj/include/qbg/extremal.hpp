#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qbg/bounds.hpp"
#include "qbg/state.hpp"

namespace qbg {

enum class ExtremalFamily { EvenBlock, OddBlockZero, OddLinear, EmbeddedImagPure };

std::string_view to_string(ExtremalFamily family);
ExtremalFamily family_from_string(std::string_view text);

struct ExtremalSpec {
  ExtremalFamily family = ExtremalFamily::EvenBlock;
  int dim = 0;
  std::optional<std::vector<double>> alphas;
  std::optional<double> alpha;
  std::optional<double> beta;
};

/// Consecutive 2x2 blocks [[a, -i a], [i a, a]], one per weight, d = 2*len.
/// Weights must be nonnegative with 2*sum = 1; zero weights are allowed.
DensityMatrix even_block(std::span<const double> alphas);

/// Same blocks followed by a trailing 0 on the diagonal, d = 2*len + 1.
DensityMatrix odd_block_zero(std::span<const double> alphas);

/// (d-1)/2 identical blocks of weight alpha and a final diagonal entry
/// 1 - (d-1) alpha. Needs odd d >= 3 and 1/d <= alpha <= 1/(d-1).
DensityMatrix odd_linear(int d, double alpha);

/// Projector onto beta|0> + i sqrt(1 - beta^2)|1> embedded in dimension d.
DensityMatrix embedded_imag_pure(int d, double beta);

/// Dispatches on spec.family and checks spec.dim against the built state.
DensityMatrix build_extremal(const ExtremalSpec& spec);

struct LandmarkDistance {
  std::string name;
  BoundaryPoint point;
  double distance = 0.0;
};

struct SaturationReport {
  Coordinates coords;
  BoundVerdict verdict;
  Region region = Region::Purity;  // active boundary region at coords.s_r
  std::vector<LandmarkDistance> landmarks;
};

SaturationReport saturation_report(const DensityMatrix& rho);

}  // namespace qbg
