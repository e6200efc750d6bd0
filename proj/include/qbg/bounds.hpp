#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "qbg/state.hpp"

namespace qbg {

/// Absolute tolerance applied to every bound margin.
inline constexpr double kBoundTol = 1e-9;

/// Which inequality is the active boundary at a given S_R.
enum class Region { Linear, Quadratic, Purity };

std::string_view to_string(Region region);
Region region_from_string(std::string_view text);

/// Margins are positive when satisfied with slack.
///   purity:    d - 1 - S_D^2 - S_X^2 - S_I^2
///   quadratic: 1 + S_R^2 - S_I^2
///   linear:    sqrt(d-1) + S_R - sqrt(d) S_I   (odd d, S_R <= 1/sqrt(d-1) only)
struct BoundVerdict {
  double purity_margin = 0.0;
  double quadratic_margin = 0.0;
  bool linear_applicable = false;
  std::optional<double> linear_margin;
  bool all_satisfied = false;
};

bool linear_bound_applies(int d, double s_r);

BoundVerdict evaluate_bounds(const Coordinates& c, double tol = kBoundTol);

/// Active region at s_r. Ties at a joint go to the lower-s_r region; regions
/// of zero width (quadratic for d=2 and d=3) are never reported.
Region boundary_region(double s_r, int d);

/// Largest S_I compatible with a state of real weight s_r.
/// Throws OutOfRange unless 0 <= s_r <= sqrt(d-1).
double max_imaginary(double s_r, int d);

struct BoundaryPoint {
  double s_r = 0.0;
  double s_i = 0.0;
};

struct Landmarks {
  int dim = 0;
  double pure_floor = 0.0;                           // sqrt((d-2)/2)
  std::optional<BoundaryPoint> even_intersection;    // even d >= 4
  std::optional<BoundaryPoint> odd_tangent;          // odd d >= 3
  double si_cap_at_zero = 0.0;

  /// Width of the LINEAR region, 1/sqrt(d-1) for odd d, 0 otherwise.
  double linear_width() const;
};

Landmarks landmarks(int d);

struct BoundarySample {
  double s_r = 0.0;
  double s_i_max = 0.0;
  Region region = Region::Purity;
};

struct BoundaryCurve {
  int dim = 0;
  std::vector<BoundarySample> samples;
};

/// n points with s_r evenly spaced on [0, sqrt(d-1)].
BoundaryCurve boundary_samples(int d, int n);

}  // namespace qbg
