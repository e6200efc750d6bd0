#include "qbg/bounds.hpp"

#include <cmath>
#include <string>

#include "qbg/error.hpp"

namespace qbg {

namespace {

void require_dim(int d) {
  if (d < 2) {
    throw Error(ErrorKind::InvalidArgument,
                "dimension must be at least 2, got " + std::to_string(d));
  }
}

bool is_odd(int d) { return d % 2 != 0; }

double linear_edge(int d) { return 1.0 / std::sqrt(d - 1.0); }

double purity_edge(int d) { return std::sqrt((d - 2.0) / 2.0); }

}  // namespace

std::string_view to_string(Region region) {
  switch (region) {
    case Region::Linear: return "LINEAR";
    case Region::Quadratic: return "QUADRATIC";
    case Region::Purity: return "PURITY";
  }
  return "PURITY";
}

Region region_from_string(std::string_view text) {
  if (text == "LINEAR") return Region::Linear;
  if (text == "QUADRATIC") return Region::Quadratic;
  if (text == "PURITY") return Region::Purity;
  throw Error(ErrorKind::Parse, "unknown region tag '" + std::string(text) + "'");
}

bool linear_bound_applies(int d, double s_r) {
  return is_odd(d) && s_r <= linear_edge(d);
}

BoundVerdict evaluate_bounds(const Coordinates& c, double tol) {
  require_dim(c.dim);
  const double d = c.dim;
  BoundVerdict v;
  v.purity_margin = (d - 1.0) - c.s_d * c.s_d - c.s_x * c.s_x - c.s_i * c.s_i;
  v.quadratic_margin = 1.0 + c.s_r * c.s_r - c.s_i * c.s_i;
  // Same slack at the 1/sqrt(d-1) edge as on the margins; the linear and
  // quadratic branches coincide there.
  v.linear_applicable = is_odd(c.dim) && c.s_r <= linear_edge(c.dim) + tol;
  if (v.linear_applicable) {
    v.linear_margin = std::sqrt(d - 1.0) + c.s_r - std::sqrt(d) * c.s_i;
  }
  v.all_satisfied = v.purity_margin >= -tol && v.quadratic_margin >= -tol &&
                    (!v.linear_margin || *v.linear_margin >= -tol);
  return v;
}

Region boundary_region(double s_r, int d) {
  require_dim(d);
  if (is_odd(d)) {
    if (s_r <= linear_edge(d)) return Region::Linear;
    // d=3: the quadratic stretch collapses onto the tangent point.
    if (d >= 5 && s_r <= purity_edge(d)) return Region::Quadratic;
    return Region::Purity;
  }
  if (d >= 4 && s_r <= purity_edge(d)) return Region::Quadratic;
  return Region::Purity;
}

double max_imaginary(double s_r, int d) {
  require_dim(d);
  const double cap = std::sqrt(d - 1.0);
  if (!(s_r >= 0.0 && s_r <= cap)) {
    throw Error(ErrorKind::OutOfRange,
                "s_r = " + std::to_string(s_r) + " outside [0, sqrt(d-1)] for d=" +
                    std::to_string(d),
                s_r);
  }
  switch (boundary_region(s_r, d)) {
    case Region::Linear:
      return (cap + s_r) / std::sqrt(static_cast<double>(d));
    case Region::Quadratic:
      return std::sqrt(1.0 + s_r * s_r);
    case Region::Purity:
      break;
  }
  return std::sqrt(std::max(0.0, (cap - s_r) * (cap + s_r)));
}

double Landmarks::linear_width() const {
  return odd_tangent ? odd_tangent->s_r : 0.0;
}

Landmarks landmarks(int d) {
  require_dim(d);
  Landmarks lm;
  lm.dim = d;
  lm.pure_floor = purity_edge(d);
  if (is_odd(d)) {
    lm.odd_tangent = BoundaryPoint{linear_edge(d), std::sqrt(d / (d - 1.0))};
    lm.si_cap_at_zero = std::sqrt((d - 1.0) / d);
  } else {
    if (d >= 4) {
      lm.even_intersection = BoundaryPoint{purity_edge(d), std::sqrt(d / 2.0)};
    }
    lm.si_cap_at_zero = 1.0;
  }
  return lm;
}

BoundaryCurve boundary_samples(int d, int n) {
  require_dim(d);
  if (n < 2) {
    throw Error(ErrorKind::InvalidArgument,
                "need at least 2 boundary samples, got " + std::to_string(n));
  }
  const double cap = std::sqrt(d - 1.0);
  BoundaryCurve curve;
  curve.dim = d;
  curve.samples.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double s_r = cap * (static_cast<double>(k) / (n - 1));
    curve.samples.push_back({s_r, max_imaginary(s_r, d), boundary_region(s_r, d)});
  }
  return curve;
}

}  // namespace qbg
