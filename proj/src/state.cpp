#include "qbg/state.hpp"

#include <cmath>
#include <string>

#include "qbg/error.hpp"

namespace qbg {

namespace {

void require_dim(Eigen::Index rows, Eigen::Index cols) {
  if (rows != cols) {
    throw Error(ErrorKind::DimensionMismatch,
                "matrix is " + std::to_string(rows) + "x" +
                    std::to_string(cols) + ", expected square");
  }
  if (rows < 2) {
    throw Error(ErrorKind::InvalidArgument,
                "dimension must be at least 2, got " + std::to_string(rows));
  }
}

// Tr(A B) without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.cwiseProduct(b.transpose()).sum();
}

}  // namespace

DensityMatrix DensityMatrix::validate(const ComplexMatrix& raw,
                                      const Tolerances& tol) {
  require_dim(raw.rows(), raw.cols());
  if (!raw.allFinite()) {
    throw Error(ErrorKind::InvalidArgument, "matrix has non-finite entries");
  }
  // hermitian_eigenvalues raises NotHermitian with the measured deviation.
  const auto spectrum = numerics::hermitian_eigenvalues(raw, tol.herm);

  const double trace_dev = std::abs(raw.trace().real() - 1.0);
  if (!(trace_dev <= tol.trace)) {
    throw Error(ErrorKind::TraceNotOne,
                "|Tr rho - 1| = " + std::to_string(trace_dev) +
                    " exceeds tolerance " + std::to_string(tol.trace),
                trace_dev);
  }
  const double smallest = spectrum.back();
  if (smallest < -tol.psd) {
    throw Error(ErrorKind::NotPositive,
                "smallest eigenvalue " + std::to_string(smallest) +
                    " is below -" + std::to_string(tol.psd),
                smallest);
  }
  return DensityMatrix(raw, tol);
}

DensityMatrix DensityMatrix::assume_valid(ComplexMatrix m,
                                          const Tolerances& tol) {
  require_dim(m.rows(), m.cols());
  return DensityMatrix(std::move(m), tol);
}

ComplexMatrix DxiParts::d_matrix() const {
  return diagonal.cast<Complex>().asDiagonal();
}

ComplexMatrix DxiParts::x_matrix() const { return real_offdiag.cast<Complex>(); }

ComplexMatrix DxiParts::i_matrix() const {
  return Complex(0.0, 1.0) * imag_offdiag.cast<Complex>();
}

DxiParts decompose(const DensityMatrix& rho) {
  const int d = rho.dim();
  const double scale = d;
  const ComplexMatrix& m = rho.matrix();

  DxiParts parts;
  parts.dim = d;
  parts.diagonal.resize(d);
  parts.real_offdiag = RealMatrix::Zero(d, d);
  parts.imag_offdiag = RealMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    parts.diagonal(k) = scale * m(k, k).real() - 1.0;
    for (int l = k + 1; l < d; ++l) {
      // Average with the mirrored entry so X is exactly symmetric and A
      // exactly skew even when rho is only Hermitian to within herm_tol.
      const Complex upper = 0.5 * (m(k, l) + std::conj(m(l, k)));
      const double re = scale * upper.real();
      const double im = scale * upper.imag();
      parts.real_offdiag(k, l) = re;
      parts.real_offdiag(l, k) = re;
      parts.imag_offdiag(k, l) = im;
      parts.imag_offdiag(l, k) = -im;
    }
  }
  return parts;
}

DensityMatrix recompose(const DxiParts& parts, const Tolerances& tol) {
  const int d = parts.dim;
  if (d < 2 || parts.diagonal.size() != d || parts.real_offdiag.rows() != d ||
      parts.real_offdiag.cols() != d || parts.imag_offdiag.rows() != d ||
      parts.imag_offdiag.cols() != d) {
    throw Error(ErrorKind::DimensionMismatch,
                "DXI parts do not share dimension " + std::to_string(d));
  }
  ComplexMatrix m = ComplexMatrix::Identity(d, d) + parts.d_matrix() +
                    parts.x_matrix() + parts.i_matrix();
  m /= static_cast<double>(d);
  return DensityMatrix::validate(m, tol);
}

Coordinates coordinates(const DxiParts& parts) {
  const double d = parts.dim;
  Coordinates c;
  c.dim = parts.dim;
  // Tr D^2, Tr X^2 and Tr I^2 = Tr (iA)^2 = sum of A_kl^2 for skew A.
  const double tr_d2 = parts.diagonal.squaredNorm();
  const double tr_x2 = parts.real_offdiag.squaredNorm();
  const double tr_i2 = parts.imag_offdiag.squaredNorm();
  c.s_d = std::sqrt(tr_d2 / d);
  c.s_x = std::sqrt(tr_x2 / d);
  c.s_i = std::sqrt(tr_i2 / d);
  c.s_r = std::sqrt((tr_d2 + tr_x2) / d);
  return c;
}

double purity(const DensityMatrix& rho) {
  return trace_of_product(rho.matrix(), rho.matrix()).real();
}

BlochBasis gellmann_basis(int d) {
  if (d < 2) {
    throw Error(ErrorKind::InvalidArgument,
                "Bloch basis needs d >= 2, got " + std::to_string(d));
  }
  // Standard Gell-Mann elements have Tr mu^2 = 2; rescale to d.
  const double rescale = std::sqrt(d / 2.0);
  BlochBasis basis;
  basis.dim = d;

  for (int j = 1; j < d; ++j) {
    ComplexMatrix mu = ComplexMatrix::Zero(d, d);
    const double norm = std::sqrt(2.0 / (j * (j + 1.0)));
    for (int k = 0; k < j; ++k) mu(k, k) = norm;
    mu(j, j) = -j * norm;
    basis.diagonal.push_back(rescale * mu);
  }
  for (int k = 0; k < d; ++k) {
    for (int l = k + 1; l < d; ++l) basis.pairs.emplace_back(k, l);
  }
  for (const auto& [k, l] : basis.pairs) {
    ComplexMatrix mu = ComplexMatrix::Zero(d, d);
    mu(k, l) = rescale;
    mu(l, k) = rescale;
    basis.symmetric.push_back(std::move(mu));
  }
  // Same sign convention as sigma_y: -i above the diagonal.
  for (const auto& [k, l] : basis.pairs) {
    ComplexMatrix mu = ComplexMatrix::Zero(d, d);
    mu(k, l) = Complex(0.0, -rescale);
    mu(l, k) = Complex(0.0, rescale);
    basis.antisymmetric.push_back(std::move(mu));
  }
  return basis;
}

BlochVector bloch_vector(const DensityMatrix& rho, const BlochBasis& basis) {
  if (rho.dim() != basis.dim) {
    throw Error(ErrorKind::DimensionMismatch,
                "state has d=" + std::to_string(rho.dim()) +
                    " but basis has d=" + std::to_string(basis.dim));
  }
  auto expand = [&](const std::vector<ComplexMatrix>& elements) {
    std::vector<double> v;
    v.reserve(elements.size());
    for (const auto& mu : elements) {
      v.push_back(trace_of_product(rho.matrix(), mu).real());
    }
    return v;
  };
  return BlochVector{basis.dim, expand(basis.diagonal), expand(basis.symmetric),
                     expand(basis.antisymmetric)};
}

DensityMatrix state_from_bloch(const BlochVector& v, const BlochBasis& basis,
                               const Tolerances& tol) {
  if (v.dim != basis.dim || v.v_d.size() != basis.diagonal.size() ||
      v.v_x.size() != basis.symmetric.size() ||
      v.v_i.size() != basis.antisymmetric.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "Bloch vector layout does not match basis of d=" +
                    std::to_string(basis.dim));
  }
  const int d = basis.dim;
  ComplexMatrix m = ComplexMatrix::Identity(d, d);
  for (std::size_t k = 0; k < v.v_d.size(); ++k) m += v.v_d[k] * basis.diagonal[k];
  for (std::size_t k = 0; k < v.v_x.size(); ++k) m += v.v_x[k] * basis.symmetric[k];
  for (std::size_t k = 0; k < v.v_i.size(); ++k) m += v.v_i[k] * basis.antisymmetric[k];
  m /= static_cast<double>(d);
  return DensityMatrix::validate(m, tol);
}

DensityMatrix maximally_mixed(int d) {
  if (d < 2) {
    throw Error(ErrorKind::InvalidArgument,
                "dimension must be at least 2, got " + std::to_string(d));
  }
  return DensityMatrix::assume_valid(
      ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

}  // namespace qbg
