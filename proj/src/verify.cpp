#include "qbg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "qbg/bounds.hpp"
#include "qbg/error.hpp"
#include "qbg/extremal.hpp"
#include "qbg/imaginarity.hpp"
#include "qbg/random.hpp"
#include "qbg/sampling.hpp"
#include "qbg/transform.hpp"

namespace qbg {

namespace {

CheckResult upper_check(std::string name, int d, double worst, double tol) {
  return {std::move(name), d, worst <= tol, worst, tol, ""};
}

CheckResult lower_check(std::string name, int d, double worst, double floor_value) {
  return {std::move(name), d, worst >= floor_value, worst, floor_value, ""};
}

double min_margin(const BoundVerdict& v) {
  double m = std::min(v.purity_margin, v.quadratic_margin);
  if (v.linear_margin) m = std::min(m, *v.linear_margin);
  return m;
}

std::vector<DensityMatrix> draw(int d, Measure measure, std::size_t n, std::uint64_t seed,
                                unsigned workers) {
  std::vector<ComplexMatrix> mats(n);
  parallel_for(0, n, workers, [&](std::size_t i) {
    mats[i] = sample_state(d, measure, seed, i).matrix();
  });
  std::vector<DensityMatrix> out;
  out.reserve(n);
  for (auto& m : mats) out.push_back(DensityMatrix::assume_valid(std::move(m)));
  return out;
}

void check_dimension(int d, const VerifyConfig& cfg, std::vector<CheckResult>& out) {
  const std::size_t n = cfg.samples;
  const auto hs = draw(d, Measure::HsMixed, n, cfg.seed, cfg.workers);
  const auto haar = draw(d, Measure::HaarPure, n, cfg.seed ^ 0x9E3779B97F4A7C15ULL, cfg.workers);

  double purity_dev = 0.0;
  double transpose_dev = 0.0;
  double hs_margin = INFINITY;
  double robust_max = 0.0;
  double robust_min = INFINITY;
  for (const auto& rho : hs) {
    const Coordinates c = coordinates(rho);
    const double expect = (1.0 + c.s_d * c.s_d + c.s_x * c.s_x + c.s_i * c.s_i) / d;
    purity_dev = std::max(purity_dev, std::abs(purity(rho) - expect));
    const double tr_rho_rhot = rho.matrix().cwiseProduct(rho.matrix()).sum().real();
    transpose_dev = std::max(
        transpose_dev, std::abs(d * tr_rho_rhot - (1.0 + c.s_r * c.s_r - c.s_i * c.s_i)));
    hs_margin = std::min(hs_margin, min_margin(evaluate_bounds(c)));
  }
  const std::size_t small = std::min<std::size_t>(n, 1000);
  for (std::size_t k = 0; k < small; ++k) {
    const double r = robustness(hs[k]).robustness;
    robust_max = std::max(robust_max, r);
    robust_min = std::min(robust_min, r);
  }
  out.push_back(upper_check("purity identity", d, purity_dev, 1e-12));
  out.push_back(upper_check("transpose identity", d, transpose_dev, 1e-12));
  out.push_back(lower_check("bounds sound (HS)", d, hs_margin, -kBoundTol));
  out.push_back(upper_check("robustness <= 1", d, robust_max, 1.0 + 1e-9));
  out.push_back(lower_check("robustness >= 0", d, robust_min, 0.0));

  double haar_margin = INFINITY;
  double min_sr = INFINITY;
  double haar_purity_dev = 0.0;
  for (const auto& rho : haar) {
    const Coordinates c = coordinates(rho);
    haar_margin = std::min(haar_margin, min_margin(evaluate_bounds(c)));
    min_sr = std::min(min_sr, c.s_r);
    haar_purity_dev = std::max(haar_purity_dev, std::abs(purity(rho) - 1.0));
  }
  out.push_back(lower_check("bounds sound (Haar)", d, haar_margin, -kBoundTol));
  out.push_back(upper_check("Haar purity = 1", d, haar_purity_dev, 1e-12));
  out.push_back(lower_check("pure-state S_R floor", d, min_sr - landmarks(d).pure_floor, -1e-9));

  // Structural identities on a smaller corpus.
  const BlochBasis basis = gellmann_basis(d);
  double roundtrip = 0.0;
  double bloch_dev = 0.0;
  double ortho = 0.0;
  for (std::size_t k = 0; k < small; ++k) {
    const auto& rho = hs[k];
    const DxiParts parts = decompose(rho);
    roundtrip = std::max(roundtrip, (recompose(parts).matrix() - rho.matrix()).cwiseAbs().maxCoeff());
    const ComplexMatrix dm = parts.d_matrix();
    const ComplexMatrix xm = parts.x_matrix();
    const ComplexMatrix im = parts.i_matrix();
    ortho = std::max({ortho, std::abs((dm * xm).trace()), std::abs((dm * im).trace()),
                      std::abs((xm * im).trace())});
    const Coordinates c = coordinates(parts);
    const BlochVector v = bloch_vector(rho, basis);
    auto sq = [](const std::vector<double>& x) {
      double s = 0.0;
      for (double e : x) s += e * e;
      return s;
    };
    bloch_dev = std::max({bloch_dev, std::abs(sq(v.v_d) - c.s_d * c.s_d),
                          std::abs(sq(v.v_x) - c.s_x * c.s_x), std::abs(sq(v.v_i) - c.s_i * c.s_i)});
  }
  out.push_back(upper_check("decompose/recompose round trip", d, roundtrip, 1e-12));
  out.push_back(upper_check("DXI orthogonality", d, ortho, 1e-12));
  out.push_back(upper_check("Bloch squared-norm identities", d, bloch_dev, 1e-10));

  std::size_t chain_failures = 0;
  for (std::size_t k = 0; k < std::min<std::size_t>(n, 10000); ++k) {
    if (!proof_step_check(hs[k]).all_ok()) ++chain_failures;
  }
  out.push_back(upper_check("proof chain (pairing/domination/majorization/t)", d,
                            static_cast<double>(chain_failures), 0.0));

  // Sweep contract.
  double sweep_diag = 0.0;
  double sweep_drift = 0.0;
  double replay_dev = 0.0;
  double robust_drift = 0.0;
  for (std::size_t k = 0; k < std::min<std::size_t>(n, 100); ++k) {
    const auto& rho = hs[k];
    const Coordinates before = coordinates(rho);
    const SweepResult sw = sweep_uniform_diagonal(rho);
    const Coordinates after = coordinates(sw.state);
    for (int j = 0; j < d; ++j) {
      sweep_diag = std::max(sweep_diag, std::abs(sw.state(j, j).real() - 1.0 / d));
    }
    sweep_drift = std::max({sweep_drift, std::abs(after.s_r - before.s_r),
                            std::abs(after.s_i - before.s_i)});
    replay_dev = std::max(
        replay_dev, (replay_steps(rho, sw.steps).matrix() - sw.state.matrix()).cwiseAbs().maxCoeff());
    robust_drift = std::max(robust_drift,
                            std::abs(robustness(sw.state).robustness - robustness(rho).robustness));
  }
  out.push_back(upper_check("sweep flattens diagonal", d, sweep_diag, kDefaultDiagTol));
  out.push_back(upper_check("sweep preserves (S_R, S_I)", d, sweep_drift, 1e-10));
  out.push_back(upper_check("sweep step log replays", d, replay_dev, 1e-12));
  out.push_back(upper_check("robustness orthogonal invariance", d, robust_drift, 1e-10));

  // Tightness of the extremal families.
  double tight = 0.0;
  if (d % 2 == 0) {
    CounterRng rng(cfg.seed, 0xE7E7E7ULL + static_cast<std::uint64_t>(d));
    for (int draw_idx = 0; draw_idx < 100; ++draw_idx) {
      std::vector<double> alphas(static_cast<std::size_t>(d / 2));
      double total = 0.0;
      for (auto& a : alphas) total += (a = rng.uniform_open());
      for (auto& a : alphas) a /= 2.0 * total;
      tight = std::max(tight, std::abs(saturation_report(even_block(alphas)).verdict.quadratic_margin));
    }
    out.push_back(upper_check("even-block quadratic saturation", d, tight, 1e-10));
  } else {
    for (int g = 0; g < 100; ++g) {
      const double a = 1.0 / d + (1.0 / (d - 1.0) - 1.0 / d) * g / 99.0;
      const auto v = saturation_report(odd_linear(d, a)).verdict;
      tight = std::max(tight, v.linear_margin ? std::abs(*v.linear_margin) : INFINITY);
    }
    out.push_back(upper_check("odd-linear saturation", d, tight, 1e-10));
  }

  out.push_back(upper_check("boundary continuity at joints", d, boundary_joint_jump(d), 1e-8));
  const double full = robustness(embedded_imag_pure(d, std::numbers::sqrt2 / 2.0)).robustness;
  out.push_back(upper_check("embedded pure state robustness = 1", d, std::abs(full - 1.0), 1e-10));
}

}  // namespace

double boundary_joint_jump(int d, int points) {
  const double cap = std::sqrt(d - 1.0);
  double worst = 0.0;
  double prev_x = 0.0;
  Region prev_region = boundary_region(0.0, d);
  for (int k = 1; k < points; ++k) {
    const double x = cap * (static_cast<double>(k) / (points - 1));
    const Region region = boundary_region(x, d);
    if (region != prev_region) {
      double lo = prev_x;
      double hi = x;
      while (std::nextafter(lo, hi) < hi) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (boundary_region(mid, d) == prev_region ? lo : hi) = mid;
      }
      worst = std::max(worst, std::abs(max_imaginary(hi, d) - max_imaginary(lo, d)));
    }
    prev_x = x;
    prev_region = region;
  }
  return worst;
}

std::vector<CheckResult> run_verification(const VerifyConfig& config) {
  if (config.dims.empty()) throw Error(ErrorKind::InvalidArgument, "no dimensions given");
  for (int d : config.dims) {
    if (d < 2) {
      throw Error(ErrorKind::InvalidArgument, "dimension must be at least 2, got " + std::to_string(d));
    }
  }
  if (config.samples == 0) throw Error(ErrorKind::InvalidArgument, "samples must be positive");
  std::vector<CheckResult> results;
  for (int d : config.dims) check_dimension(d, config, results);
  return results;
}

void print_check_table(std::ostream& out, const std::vector<CheckResult>& results) {
  char line[256];
  for (const auto& r : results) {
    std::snprintf(line, sizeof line, "%-4s d=%-3d %-50s worst=% .3e tol=% .1e\n",
                  r.passed ? "PASS" : "FAIL", r.dim, r.name.c_str(), r.worst, r.tolerance);
    out << line;
  }
  const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.passed; });
  out << results.size() - static_cast<std::size_t>(failed) << "/" << results.size() << " checks passed\n";
}

}  // namespace qbg
