#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "qbg/state.hpp"

namespace qbg {

enum class Measure { HaarPure, HsMixed };

std::string_view to_string(Measure measure);
/// Accepts HAAR_PURE / HS_MIXED and the short forms haar / hs.
Measure measure_from_string(std::string_view text);

/// |psi><psi| with psi a normalized vector of i.i.d. standard complex
/// Gaussians drawn from stream (seed, index).
DensityMatrix haar_pure(int d, std::uint64_t seed, std::uint64_t index = 0);

/// G G^dagger / Tr(G G^dagger) with G a d x d standard complex Gaussian
/// matrix (Hilbert-Schmidt measure).
DensityMatrix hs_mixed(int d, std::uint64_t seed, std::uint64_t index = 0);

DensityMatrix sample_state(int d, Measure measure, std::uint64_t seed, std::uint64_t index);

struct CoordinateRecord {
  std::uint64_t seed_index = 0;
  int dim = 0;
  double s_d = 0.0;
  double s_x = 0.0;
  double s_i = 0.0;
  double s_r = 0.0;
  double purity = 0.0;
  std::optional<double> robustness;
};

CoordinateRecord make_record(const DensityMatrix& rho, std::uint64_t index,
                             bool with_robustness = false);

struct CloudConfig {
  int dim = 2;
  std::size_t n = 0;
  Measure measure = Measure::HsMixed;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  bool with_robustness = false;
};

/// Calls sink(record) for every index in [0, n), in index order, whatever the
/// worker count. Records are produced in chunks so memory stays bounded.
void stream_cloud(const CloudConfig& config,
                  const std::function<void(const CoordinateRecord&)>& sink);

/// Materialized form of stream_cloud. Throws InvalidArgument for n == 0.
std::vector<CoordinateRecord> coordinate_cloud(const CloudConfig& config);

/// Runs fn(index) for index in [begin, end) split across `workers` threads.
void parallel_for(std::size_t begin, std::size_t end, unsigned workers,
                  const std::function<void(std::size_t)>& fn);

struct EmpiricalBin {
  double lo = 0.0;
  double hi = 0.0;
  double center = 0.0;
  std::size_t count = 0;
  std::optional<double> s_i_max;  // empty when no sample fell in the bin
  double s_r_at_max = 0.0;
};

struct EmpiricalCurve {
  int dim = 0;
  std::vector<EmpiricalBin> bins;
  std::size_t samples = 0;
  /// Samples with s_i > max_imaginary(s_r) + 1e-9. Zero if the bounds hold.
  std::size_t violations = 0;
  double max_excess = 0.0;
};

struct EmpiricalConfig {
  int dim = 2;
  int bins = 50;
  std::size_t n = 0;  // random samples, alternating HS and Haar
  std::uint64_t seed = 0;
  bool refine = false;
  unsigned workers = 1;
};

/// Per-bin maximum of sampled S_I over s_r in [0, sqrt(d-1)]. With refine,
/// extremal-family anchors are added together with local random walks of
/// small two-level unitary rotations around each anchor.
EmpiricalCurve empirical_boundary(const EmpiricalConfig& config);

/// Extremal-family states used as refinement anchors for dimension d.
std::vector<DensityMatrix> extremal_anchors(int d, int grid = 25);

inline constexpr double kProofTol = 1e-9;

/// Numerical walk through the linear-bound proof for one state.
struct ProofStepReport {
  std::vector<double> lambda_i;      // eigenvalues of I, descending
  std::vector<double> lambda_r;      // eigenvalues of R = d (rho + rho^T)/2, descending
  std::vector<double> r_tilde_diag;  // diag(U^dagger R U), U diagonalizing I, same order as lambda_i
  double t = 0.0;                    // smallest eigenvalue of R
  double t_lower = 0.0;              // 1 - sqrt(d-1) S_R
  bool pairing_ok = false;
  bool domination_ok = false;
  bool majorization_ok = false;
  bool t_bound_ok = false;

  bool all_ok() const { return pairing_ok && domination_ok && majorization_ok && t_bound_ok; }
};

ProofStepReport proof_step_check(const DensityMatrix& rho, double tol = kProofTol);

}  // namespace qbg
