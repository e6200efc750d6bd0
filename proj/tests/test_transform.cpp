#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "qbg/error.hpp"
#include "qbg/extremal.hpp"
#include "qbg/transform.hpp"

using namespace qbg;

namespace {

DensityMatrix diag_state(std::initializer_list<double> entries) {
  const int d = static_cast<int>(entries.size());
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  int k = 0;
  for (double v : entries) m(k, k) = v, ++k;
  return DensityMatrix::validate(m);
}

// Dense O rho O^T with O built explicitly, as an oracle for the in-place update.
ComplexMatrix dense_rotation(const ComplexMatrix& rho, const RotationStep& s) {
  const int d = static_cast<int>(rho.rows());
  RealMatrix o = RealMatrix::Identity(d, d);
  o(s.k, s.k) = o(s.l, s.l) = std::cos(s.theta);
  o(s.k, s.l) = std::sin(s.theta);
  o(s.l, s.k) = -std::sin(s.theta);
  const ComplexMatrix oc = o.cast<Complex>();
  return oc * rho * oc.transpose();
}

std::vector<double> spectrum(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

double diag_deviation(const DensityMatrix& rho) {
  double worst = 0.0;
  for (int k = 0; k < rho.dim(); ++k) {
    worst = std::max(worst, std::abs(rho(k, k).real() - 1.0 / rho.dim()));
  }
  return worst;
}

}  // namespace

TEST_CASE("givens_conjugate examples") {
  std::mt19937_64 rng(31);
  const auto rho = test::random_state(4, rng);
  CHECK(test::max_abs_diff(givens_conjugate(rho, {0, 2, 0.0}).matrix(), rho.matrix()) == 0.0);
  CHECK(test::max_abs_diff(givens_conjugate(rho, {1, 3, 2 * std::numbers::pi}).matrix(),
                           rho.matrix()) < 1e-14);

  const auto q = givens_conjugate(diag_state({0.75, 0.25}), {0, 1, std::numbers::pi / 4});
  CHECK(q(0, 0).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(q(1, 1).real() == doctest::Approx(0.5).epsilon(1e-15));
  // With O_kl = +sin the off-diagonal entry is -1/4; only its size is convention-free.
  CHECK(std::abs(q(0, 1)) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(q(0, 1).imag() == 0.0);
  const auto c = coordinates(q);
  CHECK(c.s_r == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(c.s_d < 1e-14);
  CHECK(c.s_x == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("givens_conjugate rejects bad indices") {
  const auto rho = maximally_mixed(3);
  for (const RotationStep bad : {RotationStep{1, 1, 0.1}, RotationStep{0, 3, 0.1},
                                 RotationStep{-1, 0, 0.1}}) {
    try {
      (void)givens_conjugate(rho, bad);
      FAIL("expected IndexOutOfRange");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::IndexOutOfRange);
    }
  }
}

TEST_CASE("givens_conjugate matches dense O rho O^T and preserves the spectrum") {
  std::mt19937_64 rng(32);
  for (int d = 2; d <= 7; ++d) {
    for (int rep = 0; rep < 50; ++rep) {
      const auto rho = test::random_state(d, rng);
      const auto step = test::random_steps(d, 1, rng).front();
      const auto out = givens_conjugate(rho, step);
      CHECK(test::max_abs_diff(out.matrix(), dense_rotation(rho.matrix(), step)) < 1e-14);
      const auto before = spectrum(rho);
      const auto after = spectrum(out);
      for (std::size_t k = 0; k < before.size(); ++k) CHECK(std::abs(before[k] - after[k]) <= 1e-10);
      CHECK_NOTHROW((void)DensityMatrix::validate(out.matrix()));
    }
  }
}

TEST_CASE("(S_R, S_I) survive 100 random rotations") {
  std::mt19937_64 rng(33);
  for (int d = 2; d <= 7; ++d) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto rho = test::random_state(d, rng);
      const auto steps = test::random_steps(d, 100, rng);
      const auto out = replay_steps(rho, steps);
      const auto a = coordinates(rho);
      const auto b = coordinates(out);
      CHECK(std::abs(a.s_r - b.s_r) <= 1e-10);
      CHECK(std::abs(a.s_i - b.s_i) <= 1e-10);
    }
  }
}

TEST_CASE("sweep examples") {
  const auto mm = sweep_uniform_diagonal(maximally_mixed(4));
  CHECK(mm.steps.empty());
  CHECK(test::max_abs_diff(mm.state.matrix(), maximally_mixed(4).matrix()) == 0.0);

  const auto q = sweep_uniform_diagonal(diag_state({0.75, 0.25}));
  REQUIRE(q.steps.size() == 1);
  CHECK(q.steps[0].k == 0);
  CHECK(q.steps[0].l == 1);
  CHECK(q.steps[0].theta == doctest::Approx(std::numbers::pi / 4).epsilon(1e-10));
  CHECK(diag_deviation(q.state) <= 1e-12);

  const auto block = odd_block_zero(std::vector<double>{0.5});
  const auto before = coordinates(block);
  const auto swept = sweep_uniform_diagonal(block);
  const auto after = coordinates(swept.state);
  CHECK(after.s_d <= 1e-8);
  CHECK(std::abs(after.s_x - before.s_r) <= 1e-8);
  CHECK(std::abs(after.s_i - before.s_i) <= 1e-10);
}

TEST_CASE("sweep flattens the diagonal and only shifts weight from D to X") {
  std::mt19937_64 rng(34);
  for (int d = 2; d <= 6; ++d) {
    for (int rep = 0; rep < 100; ++rep) {
      const auto rho = test::random_state(d, rng);
      const auto res = sweep_uniform_diagonal(rho);
      CHECK(diag_deviation(res.state) <= 1e-8);
      const auto a = coordinates(rho);
      const auto b = coordinates(res.state);
      CHECK(std::abs(a.s_r - b.s_r) <= 1e-10);
      CHECK(std::abs(a.s_i - b.s_i) <= 1e-10);
      CHECK(std::abs(b.s_x * b.s_x + b.s_d * b.s_d - a.s_r * a.s_r) <= 1e-9);
      // sum_k (d rho_kk - 1)^2 / d with every term at most (d * 1e-8)^2.
      CHECK(b.s_d <= d * 1e-8);
      CHECK(static_cast<int>(res.steps.size()) <= 4 * d * d);
      CHECK(test::max_abs_diff(replay_steps(rho, res.steps).matrix(), res.state.matrix()) <= 1e-12);
    }
  }
}

TEST_CASE("sweep leaves an already-flat diagonal alone") {
  ComplexMatrix m = ComplexMatrix::Identity(3, 3) / 3.0;
  m(0, 1) = Complex(0.1, 0.05);
  m(1, 0) = std::conj(m(0, 1));
  const auto rho = DensityMatrix::validate(m);
  const auto res = sweep_uniform_diagonal(rho);
  CHECK(res.steps.empty());
  CHECK(test::max_abs_diff(res.state.matrix(), m) == 0.0);
}

TEST_CASE("sweep reports ConvergenceFailure when the tolerance is out of reach") {
  std::mt19937_64 rng(35);
  const auto rho = test::random_state(5, rng);
  try {
    (void)sweep_uniform_diagonal(rho, 1e-300);
    FAIL("expected ConvergenceFailure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConvergenceFailure);
    CHECK(e.measured() > 0.0);
    CHECK(e.measured() < 1e-8);
  }
}

TEST_CASE("transpose_state examples and properties") {
  ComplexMatrix real(2, 2);
  real << 0.7, 0.2, 0.2, 0.3;
  const auto r = DensityMatrix::validate(real);
  CHECK(test::max_abs_diff(transpose_state(r).matrix(), real) == 0.0);

  const ComplexMatrix plus = 0.5 * (ComplexMatrix::Identity(2, 2) + test::sigma_y());
  const ComplexMatrix minus = 0.5 * (ComplexMatrix::Identity(2, 2) - test::sigma_y());
  CHECK(test::max_abs_diff(transpose_state(DensityMatrix::validate(plus)).matrix(), minus) == 0.0);

  std::mt19937_64 rng(36);
  for (int d = 2; d <= 7; ++d) {
    for (int rep = 0; rep < 100; ++rep) {
      const auto rho = test::random_state(d, rng);
      const auto t = transpose_state(rho);
      CHECK_NOTHROW((void)DensityMatrix::validate(t.matrix()));
      CHECK(test::max_abs_diff(transpose_state(t).matrix(), rho.matrix()) == 0.0);

      const auto p = decompose(rho);
      const auto pt = decompose(t);
      CHECK((p.diagonal - pt.diagonal).cwiseAbs().maxCoeff() == 0.0);
      CHECK((p.real_offdiag - pt.real_offdiag).cwiseAbs().maxCoeff() == 0.0);
      CHECK((p.imag_offdiag + pt.imag_offdiag).cwiseAbs().maxCoeff() == 0.0);

      const auto c = coordinates(rho);
      const double lhs = d * (rho.matrix().cwiseProduct(rho.matrix())).sum().real();
      CHECK(std::abs(lhs - (1 + c.s_r * c.s_r - c.s_i * c.s_i)) <= 1e-12);
    }
  }
}
