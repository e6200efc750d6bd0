#include "qbg/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <thread>

#include "qbg/bounds.hpp"
#include "qbg/error.hpp"
#include "qbg/extremal.hpp"
#include "qbg/imaginarity.hpp"
#include "qbg/random.hpp"

namespace qbg {

namespace {

constexpr std::size_t kChunk = 4096;
constexpr std::uint64_t kWalkStreamSalt = 0x5DEECE66DULL;
constexpr int kWalkAcceptedSteps = 200;
constexpr int kWalkMaxProposals = 2000;

void require_dim(int d) {
  if (d < 2) {
    throw Error(ErrorKind::InvalidArgument,
                "dimension must be at least 2, got " + std::to_string(d));
  }
}

Complex complex_gaussian(CounterRng& rng) {
  const double re = rng.gaussian();
  const double im = rng.gaussian();
  return {re, im};
}

// Hermitian part, so downstream checks see an exactly Hermitian matrix.
ComplexMatrix hermitize(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  if (n == 1) return {lo};
  for (int k = 0; k < n; ++k) out.push_back(lo + (hi - lo) * k / (n - 1));
  return out;
}

// Weight t on the first block, the rest split evenly; 2 * sum = 1.
std::vector<double> skewed_blocks(std::size_t blocks, double t) {
  std::vector<double> alphas(blocks, 0.0);
  alphas[0] = t;
  for (std::size_t b = 1; b < blocks; ++b) {
    alphas[b] = std::max(0.0, (0.5 - t) / static_cast<double>(blocks - 1));
  }
  return alphas;
}

class BinAccumulator {
 public:
  BinAccumulator(int d, int bins) : dim_(d), cap_(std::sqrt(d - 1.0)) {
    curve_.dim = d;
    const double width = cap_ / bins;
    for (int b = 0; b < bins; ++b) {
      EmpiricalBin bin;
      bin.lo = width * b;
      bin.hi = b + 1 == bins ? cap_ : width * (b + 1);
      bin.center = 0.5 * (bin.lo + bin.hi);
      curve_.bins.push_back(bin);
    }
  }

  void add(const Coordinates& c) {
    const double s_r = std::min(c.s_r, cap_);
    const auto nbins = curve_.bins.size();
    auto b = static_cast<std::size_t>(s_r / cap_ * static_cast<double>(nbins));
    b = std::min(b, nbins - 1);
    EmpiricalBin& bin = curve_.bins[b];
    ++bin.count;
    if (!bin.s_i_max || c.s_i > *bin.s_i_max) {
      bin.s_i_max = c.s_i;
      bin.s_r_at_max = c.s_r;
    }
    ++curve_.samples;
    const double excess = c.s_i - max_imaginary(s_r, dim_);
    if (excess > kBoundTol) ++curve_.violations;
    curve_.max_excess = std::max(curve_.max_excess, excess);
  }

  EmpiricalCurve take() { return std::move(curve_); }

 private:
  int dim_;
  double cap_;
  EmpiricalCurve curve_;
};

// Two-level unitary [[c, -e^{-i phi} s], [e^{i phi} s, c]] on (k, l).
ComplexMatrix two_level_conjugate(const ComplexMatrix& m, int k, int l, double theta,
                                  double phi) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex phase = std::polar(1.0, phi);
  ComplexMatrix u = ComplexMatrix::Identity(m.rows(), m.cols());
  u(k, k) = c;
  u(l, l) = c;
  u(k, l) = -std::conj(phase) * s;
  u(l, k) = phase * s;
  return hermitize(u * m * u.adjoint());
}

}  // namespace

std::string_view to_string(Measure measure) {
  return measure == Measure::HaarPure ? "HAAR_PURE" : "HS_MIXED";
}

Measure measure_from_string(std::string_view text) {
  if (text == "HAAR_PURE" || text == "haar" || text == "HAAR") return Measure::HaarPure;
  if (text == "HS_MIXED" || text == "hs" || text == "HS") return Measure::HsMixed;
  throw Error(ErrorKind::Parse, "unknown measure '" + std::string(text) + "'");
}

DensityMatrix haar_pure(int d, std::uint64_t seed, std::uint64_t index) {
  require_dim(d);
  CounterRng rng(seed, index);
  Eigen::VectorXcd psi(d);
  for (int k = 0; k < d; ++k) psi(k) = complex_gaussian(rng);
  psi.normalize();
  // Rank one and PSD by construction.
  return DensityMatrix::assume_valid(hermitize(psi * psi.adjoint()));
}

DensityMatrix hs_mixed(int d, std::uint64_t seed, std::uint64_t index) {
  require_dim(d);
  CounterRng rng(seed, index);
  ComplexMatrix g(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) g(r, c) = complex_gaussian(rng);
  }
  ComplexMatrix m = hermitize(g * g.adjoint());
  m /= m.trace().real();
  // G G^dagger is PSD by construction.
  return DensityMatrix::assume_valid(std::move(m));
}

DensityMatrix sample_state(int d, Measure measure, std::uint64_t seed, std::uint64_t index) {
  return measure == Measure::HaarPure ? haar_pure(d, seed, index) : hs_mixed(d, seed, index);
}

CoordinateRecord make_record(const DensityMatrix& rho, std::uint64_t index,
                             bool with_robustness) {
  const Coordinates c = coordinates(rho);
  CoordinateRecord rec;
  rec.seed_index = index;
  rec.dim = c.dim;
  rec.s_d = c.s_d;
  rec.s_x = c.s_x;
  rec.s_i = c.s_i;
  rec.s_r = c.s_r;
  rec.purity = purity(rho);
  if (with_robustness) rec.robustness = robustness(rho).robustness;
  return rec;
}

void parallel_for(std::size_t begin, std::size_t end, unsigned workers,
                  const std::function<void(std::size_t)>& fn) {
  if (end <= begin) return;
  const std::size_t total = end - begin;
  const std::size_t nthreads = std::min<std::size_t>(std::max(1u, workers), total);
  if (nthreads == 1) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(nthreads);
  const std::size_t per = (total + nthreads - 1) / nthreads;
  for (std::size_t t = 0; t < nthreads; ++t) {
    const std::size_t lo = begin + t * per;
    const std::size_t hi = std::min(end, lo + per);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
}

void stream_cloud(const CloudConfig& config,
                  const std::function<void(const CoordinateRecord&)>& sink) {
  require_dim(config.dim);
  if (config.n == 0) {
    throw Error(ErrorKind::InvalidArgument, "cloud needs n >= 1 records");
  }
  std::vector<CoordinateRecord> chunk;
  for (std::size_t start = 0; start < config.n; start += kChunk) {
    const std::size_t stop = std::min(config.n, start + kChunk);
    chunk.assign(stop - start, CoordinateRecord{});
    parallel_for(start, stop, config.workers, [&](std::size_t idx) {
      const auto state = sample_state(config.dim, config.measure, config.seed, idx);
      chunk[idx - start] = make_record(state, idx, config.with_robustness);
    });
    for (const auto& rec : chunk) sink(rec);
  }
}

std::vector<CoordinateRecord> coordinate_cloud(const CloudConfig& config) {
  std::vector<CoordinateRecord> out;
  out.reserve(config.n);
  stream_cloud(config, [&](const CoordinateRecord& rec) { out.push_back(rec); });
  return out;
}

std::vector<DensityMatrix> extremal_anchors(int d, int grid) {
  require_dim(d);
  std::vector<DensityMatrix> anchors;
  if (d % 2 == 0) {
    const auto blocks = static_cast<std::size_t>(d / 2);
    if (blocks == 1) {
      anchors.push_back(even_block(std::vector<double>{0.5}));
    } else {
      for (double t : linspace(1.0 / d, 0.5, grid)) {
        anchors.push_back(even_block(skewed_blocks(blocks, t)));
      }
    }
  } else {
    for (double a : linspace(1.0 / d, 1.0 / (d - 1.0), grid)) {
      anchors.push_back(odd_linear(d, a));
    }
    const auto blocks = static_cast<std::size_t>((d - 1) / 2);
    if (blocks == 1) {
      anchors.push_back(odd_block_zero(std::vector<double>{0.5}));
    } else {
      for (double t : linspace(1.0 / (d - 1.0), 0.5, grid)) {
        anchors.push_back(odd_block_zero(skewed_blocks(blocks, t)));
      }
    }
  }
  for (double b : linspace(0.0, 1.0, grid)) anchors.push_back(embedded_imag_pure(d, b));
  return anchors;
}

EmpiricalCurve empirical_boundary(const EmpiricalConfig& config) {
  require_dim(config.dim);
  if (config.bins < 2) {
    throw Error(ErrorKind::InvalidArgument,
                "need at least 2 bins, got " + std::to_string(config.bins));
  }
  const int d = config.dim;
  BinAccumulator acc(d, config.bins);

  std::vector<Coordinates> chunk;
  for (std::size_t start = 0; start < config.n; start += kChunk) {
    const std::size_t stop = std::min(config.n, start + kChunk);
    chunk.assign(stop - start, Coordinates{});
    parallel_for(start, stop, config.workers, [&](std::size_t idx) {
      const Measure m = idx % 2 == 0 ? Measure::HsMixed : Measure::HaarPure;
      chunk[idx - start] = coordinates(sample_state(d, m, config.seed, idx));
    });
    for (const auto& c : chunk) acc.add(c);
  }

  if (config.refine) {
    const auto anchors = extremal_anchors(d);
    std::vector<std::vector<Coordinates>> walks(anchors.size());
    parallel_for(0, anchors.size(), config.workers, [&](std::size_t a) {
      CounterRng rng(config.seed ^ kWalkStreamSalt, a);
      auto& out = walks[a];
      out.push_back(coordinates(anchors[a]));
      ComplexMatrix current = anchors[a].matrix();
      int accepted = 0;
      for (int p = 0; p < kWalkMaxProposals && accepted < kWalkAcceptedSteps; ++p) {
        int k = static_cast<int>(rng() % static_cast<std::uint64_t>(d));
        int l = static_cast<int>(rng() % static_cast<std::uint64_t>(d - 1));
        if (l >= k) ++l;
        const int exponent = 1 + static_cast<int>(rng() % 6);
        const double sign = (rng() & 1U) != 0U ? 1.0 : -1.0;
        const double theta = sign * std::pow(10.0, -exponent);
        const double phi = 2.0 * std::numbers::pi * rng.uniform();
        ComplexMatrix proposal = two_level_conjugate(current, k, l, theta, phi);
        try {
          const auto state = DensityMatrix::validate(proposal);
          out.push_back(coordinates(state));
          current = std::move(proposal);
          ++accepted;
        } catch (const Error&) {
          // rejected: not a state within tolerance
        }
      }
    });
    for (const auto& walk : walks) {
      for (const auto& c : walk) acc.add(c);
    }
  }
  return acc.take();
}

ProofStepReport proof_step_check(const DensityMatrix& rho, double tol) {
  const int d = rho.dim();
  const double scale = d;
  const ComplexMatrix& m = rho.matrix();
  const ComplexMatrix r = scale * 0.5 * (m + m.transpose());
  const ComplexMatrix i_part = scale * 0.5 * (m - m.transpose());
  // Both inherit rho's Hermiticity residual, amplified by d.
  const double herm_tol = std::max(kDefaultHermTol, scale * rho.tolerances().herm);

  ProofStepReport rep;
  const auto eig_i = numerics::hermitian_eigen(i_part, herm_tol);
  rep.lambda_i = eig_i.values;
  rep.lambda_r = numerics::hermitian_eigenvalues(r, herm_tol);
  const ComplexMatrix r_tilde = eig_i.vectors.adjoint() * r * eig_i.vectors;
  rep.r_tilde_diag.resize(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) rep.r_tilde_diag[static_cast<std::size_t>(k)] = r_tilde(k, k).real();

  rep.pairing_ok = true;
  for (int k = 0; k < d / 2; ++k) {
    const double sum = rep.lambda_i[static_cast<std::size_t>(k)] +
                       rep.lambda_i[static_cast<std::size_t>(d - 1 - k)];
    if (std::abs(sum) > tol) rep.pairing_ok = false;
  }
  if (d % 2 != 0 && std::abs(rep.lambda_i[static_cast<std::size_t>(d / 2)]) > tol) {
    rep.pairing_ok = false;
  }

  rep.domination_ok = true;
  for (std::size_t k = 0; k < rep.r_tilde_diag.size(); ++k) {
    if (rep.r_tilde_diag[k] < std::abs(rep.lambda_i[k]) - tol) rep.domination_ok = false;
  }

  std::vector<double> sorted_diag = rep.r_tilde_diag;
  std::sort(sorted_diag.begin(), sorted_diag.end(), std::greater<>());
  rep.majorization_ok = numerics::majorizes(rep.lambda_r, sorted_diag, tol);

  rep.t = rep.lambda_r.back();
  rep.t_lower = 1.0 - std::sqrt(scale - 1.0) * coordinates(rho).s_r;
  rep.t_bound_ok = rep.t >= rep.t_lower - tol;
  return rep;
}

}  // namespace qbg
