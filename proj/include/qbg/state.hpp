#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qbg/numerics.hpp"

namespace qbg {

/// Acceptance tolerances carried along with every validated state.
struct Tolerances {
  double herm = 1e-10;   // entrywise |rho - rho^dagger|
  double trace = 1e-10;  // |Tr rho - 1|
  double psd = 1e-9;     // smallest eigenvalue >= -psd
};

/// A d x d Hermitian, unit-trace, positive-semidefinite matrix with d >= 2.
/// Instances only come out of validation or out of operations that map
/// states to states (orthogonal conjugation, transposition).
class DensityMatrix {
 public:
  static DensityMatrix validate(const ComplexMatrix& raw,
                                const Tolerances& tol = {});

  /// Wraps a matrix that is a state by construction. No checks beyond shape.
  static DensityMatrix assume_valid(ComplexMatrix m, const Tolerances& tol = {});

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  const Tolerances& tolerances() const noexcept { return tol_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

 private:
  DensityMatrix(ComplexMatrix m, const Tolerances& tol)
      : m_(std::move(m)), tol_(tol) {}

  ComplexMatrix m_;
  Tolerances tol_;
};

inline DensityMatrix validate_density(const ComplexMatrix& raw,
                                      const Tolerances& tol = {}) {
  return DensityMatrix::validate(raw, tol);
}

/// rho = (1/d)(1 + D + X + I). D is stored as its diagonal; I = i*A with A
/// real skew-symmetric, stored as A.
struct DxiParts {
  int dim = 0;
  RealVector diagonal;      // D_kk
  RealMatrix real_offdiag;  // X, symmetric with zero diagonal
  RealMatrix imag_offdiag;  // A, skew-symmetric; I = i*A

  ComplexMatrix d_matrix() const;
  ComplexMatrix x_matrix() const;
  ComplexMatrix i_matrix() const;
};

struct Coordinates {
  int dim = 0;
  double s_d = 0.0;
  double s_x = 0.0;
  double s_i = 0.0;
  double s_r = 0.0;
};

DxiParts decompose(const DensityMatrix& rho);

/// Rebuilds (1/d)(1 + D + X + I) and validates it. Throws NotPositive when
/// the triple does not correspond to a state.
DensityMatrix recompose(const DxiParts& parts, const Tolerances& tol = {});

Coordinates coordinates(const DxiParts& parts);
inline Coordinates coordinates(const DensityMatrix& rho) {
  return coordinates(decompose(rho));
}

/// Tr rho^2.
double purity(const DensityMatrix& rho);

/// Traceless Hermitian basis normalized as Tr(mu_k mu_l^dagger) = d delta_kl.
/// Element order: diagonal ladder, then symmetric pairs (k<l lexicographic),
/// then antisymmetric pairs in the same order.
struct BlochBasis {
  int dim = 0;
  std::vector<ComplexMatrix> diagonal;
  std::vector<ComplexMatrix> symmetric;
  std::vector<ComplexMatrix> antisymmetric;
  std::vector<std::pair<int, int>> pairs;  // (k, l) behind symmetric[j], antisymmetric[j]

  std::size_t size() const {
    return diagonal.size() + symmetric.size() + antisymmetric.size();
  }
};

BlochBasis gellmann_basis(int d);

struct BlochVector {
  int dim = 0;
  std::vector<double> v_d;
  std::vector<double> v_x;
  std::vector<double> v_i;
};

BlochVector bloch_vector(const DensityMatrix& rho, const BlochBasis& basis);

/// (1/d)(1 + sum v_k mu_k), validated; NotPositive when v lies outside the
/// state body.
DensityMatrix state_from_bloch(const BlochVector& v, const BlochBasis& basis,
                               const Tolerances& tol = {});

/// (1/d) * identity.
DensityMatrix maximally_mixed(int d);

}  // namespace qbg
