#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "ewopt/errors.hpp"
#include "ewopt/linalg.hpp"
#include "test_support.hpp"

using namespace ewopt;
using ewopt::testing::random_hermitian;
using ewopt::testing::random_matrix;

namespace {

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  }
  return out;
}

// Largest singular value by power iteration on M^dag M.
double power_iteration_norm(const ComplexMatrix& m) {
  const auto mtm = m.adjoint() * m;
  ComplexVector v(m.cols(), Complex(1.0, 0.3));
  double lambda = 0.0;
  for (int it = 0; it < 5000; ++it) {
    auto w = mtm * v;
    const double nw = norm(w);
    if (nw == 0.0) return 0.0;
    for (auto& z : w) z /= nw;
    lambda = nw;
    v = std::move(w);
  }
  return std::sqrt(lambda);
}

}  // namespace

TEST(HermitianEig, MatchesEigenOracleOnRandomMatrices) {
  for (std::size_t n : {1u, 2u, 3u, 5u, 9u, 16u}) {
    for (std::uint64_t k = 0; k < 10; ++k) {
      auto rng = make_rng(100 + n, k);
      const auto m = random_hermitian(rng, n);
      const auto ours = hermitian_eig(m);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> oracle(to_eigen(m));
      ASSERT_EQ(ours.eigenvalues.size(), n);
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_NEAR(ours.eigenvalues[i], oracle.eigenvalues()(static_cast<Eigen::Index>(i)), 1e-10)
            << "n=" << n << " k=" << k << " i=" << i;
      }
    }
  }
}

TEST(HermitianEig, EigenpairsSatisfyDefinitionAndAreOrthonormal) {
  auto rng = make_rng(7, 0);
  const auto m = random_hermitian(rng, 9);
  const auto eig = hermitian_eig(m);
  for (std::size_t k = 0; k < 9; ++k) {
    const auto v = eig.eigenvector(k);
    const auto mv = m * v;
    for (std::size_t i = 0; i < 9; ++i) EXPECT_LT(std::abs(mv[i] - eig.eigenvalues[k] * v[i]), 1e-10);
    for (std::size_t j = 0; j < 9; ++j) {
      const Complex ip = inner(eig.eigenvector(j), v);
      EXPECT_NEAR(std::abs(ip), j == k ? 1.0 : 0.0, 1e-12);
    }
  }
  EXPECT_TRUE(std::is_sorted(eig.eigenvalues.begin(), eig.eigenvalues.end()));
}

TEST(HermitianEig, DiagonalAndDegenerateInputs) {
  const std::vector<Complex> d{3.0, -1.0, 2.0};
  const auto eig = hermitian_eig(ComplexMatrix::diagonal(d));
  EXPECT_DOUBLE_EQ(eig.eigenvalues[0], -1.0);
  EXPECT_DOUBLE_EQ(eig.eigenvalues[2], 3.0);

  const auto id = hermitian_eig(ComplexMatrix::identity(6));
  for (double v : id.eigenvalues) EXPECT_NEAR(v, 1.0, 1e-15);
  const auto zero = hermitian_eig(ComplexMatrix(4, 4));
  for (double v : zero.eigenvalues) EXPECT_EQ(v, 0.0);
}

TEST(HermitianEig, RejectsNonHermitianAndNonSquare) {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(hermitian_eig(m), NonHermitianInput);
  EXPECT_THROW(hermitian_eig(ComplexMatrix(2, 3)), DimensionMismatch);
}

TEST(HermitianEig, TraceAndFrobeniusAreSpectralInvariants) {
  for (std::uint64_t k = 0; k < 20; ++k) {
    auto rng = make_rng(55, k);
    const auto m = random_hermitian(rng, 6);
    const auto eig = hermitian_eig(m);
    double sum = 0.0;
    double sq = 0.0;
    for (double v : eig.eigenvalues) {
      sum += v;
      sq += v * v;
    }
    EXPECT_NEAR(sum, m.trace().real(), 1e-10);
    EXPECT_NEAR(std::sqrt(sq), m.frobenius_norm(), 1e-10);
  }
}

TEST(OperatorNorm, MatchesPowerIterationOracle) {
  for (std::uint64_t k = 0; k < 10; ++k) {
    auto rng = make_rng(9, k);
    const auto general = random_matrix(rng, 5, 5);
    EXPECT_NEAR(operator_norm(general), power_iteration_norm(general), 1e-8);
    const auto herm = random_hermitian(rng, 5);
    EXPECT_NEAR(operator_norm(herm), power_iteration_norm(herm), 1e-8);
  }
}

TEST(Kron, MixedProductProperty) {
  auto rng = make_rng(3, 0);
  const auto a = random_matrix(rng, 2, 3);
  const auto b = random_matrix(rng, 3, 2);
  const auto c = random_matrix(rng, 3, 2);
  const auto d = random_matrix(rng, 2, 3);
  const auto lhs = kron(a, b) * kron(c, d);
  const auto rhs = kron(a * c, b * d);
  EXPECT_LT(max_abs_diff(lhs, rhs), 1e-12);
}

TEST(Kron, VectorKronMatchesMatrixAction) {
  auto rng = make_rng(3, 1);
  const auto a = random_matrix(rng, 3, 3);
  const auto b = random_matrix(rng, 2, 2);
  const auto u = gaussian_vector(rng, 3);
  const auto v = gaussian_vector(rng, 2);
  const auto lhs = kron(a, b) * kron(u, v);
  const auto rhs = kron(a * u, b * v);
  for (std::size_t i = 0; i < lhs.size(); ++i) EXPECT_LT(std::abs(lhs[i] - rhs[i]), 1e-12);
}

TEST(PartialTranspose, ActsOnTheChosenFactorOfProducts) {
  auto rng = make_rng(4, 0);
  const auto a = random_matrix(rng, 2, 2);
  const auto b = random_matrix(rng, 3, 3);
  const auto m = kron(a, b);
  EXPECT_LT(max_abs_diff(partial_transpose(m, 2, 3, Subsystem::B), kron(a, b.transpose())), 1e-14);
  EXPECT_LT(max_abs_diff(partial_transpose(m, 2, 3, Subsystem::A), kron(a.transpose(), b)), 1e-14);
}

TEST(PartialTranspose, InvolutionAndComposition) {
  auto rng = make_rng(4, 1);
  const auto m = random_matrix(rng, 6, 6);
  EXPECT_EQ(partial_transpose(partial_transpose(m, 2, 3), 2, 3), m);
  const auto both = partial_transpose(partial_transpose(m, 2, 3, Subsystem::A), 2, 3, Subsystem::B);
  EXPECT_EQ(both, m.transpose());
}

TEST(PartialTranspose, MaximallyEntangledProjectorIsNotPpt) {
  // Partial transpose of |psi+><psi+| on 3x3 is the swap / 3 with eigenvalue -1/3.
  ComplexVector psi(9);
  for (std::size_t i = 0; i < 3; ++i) psi[i * 3 + i] = 1.0 / std::sqrt(3.0);
  const auto pt = partial_transpose(ComplexMatrix::outer(psi), 3, 3);
  EXPECT_NEAR(min_eigenvalue(pt), -1.0 / 3.0, 1e-12);
  EXPECT_NEAR(max_eigenvalue(pt), 1.0 / 3.0, 1e-12);
}

TEST(PartialTrace, OfProductReturnsScaledFactor) {
  auto rng = make_rng(5, 0);
  const auto a = random_matrix(rng, 2, 2);
  const auto b = random_matrix(rng, 3, 3);
  const auto m = kron(a, b);
  EXPECT_LT(max_abs_diff(partial_trace(m, 2, 3, Subsystem::B), b.trace() * a), 1e-12);
  EXPECT_LT(max_abs_diff(partial_trace(m, 2, 3, Subsystem::A), a.trace() * b), 1e-12);
}

TEST(PartialTrace, PreservesTrace) {
  auto rng = make_rng(5, 1);
  const auto m = random_matrix(rng, 12, 12);
  EXPECT_LT(std::abs(partial_trace(m, 3, 4, Subsystem::A).trace() - m.trace()), 1e-12);
  EXPECT_LT(std::abs(partial_trace(m, 3, 4, Subsystem::B).trace() - m.trace()), 1e-12);
}

TEST(NumericalRank, MatchesSvdOracle) {
  auto rng = make_rng(6, 0);
  for (std::size_t target : {1u, 3u, 5u}) {
    std::vector<ComplexVector> basis;
    for (std::size_t i = 0; i < target; ++i) basis.push_back(gaussian_vector(rng, 7));
    std::vector<ComplexVector> vectors;
    for (std::size_t k = 0; k < 12; ++k) {
      ComplexVector v(7);
      for (const auto& b : basis) {
        const Complex w = gaussian_vector(rng, 1)[0];
        for (std::size_t i = 0; i < 7; ++i) v[i] += w * b[i];
      }
      vectors.push_back(v);
    }
    Eigen::MatrixXcd stacked(7, 12);
    for (std::size_t k = 0; k < 12; ++k) {
      for (std::size_t i = 0; i < 7; ++i) stacked(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = vectors[k][i];
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked);
    svd.setThreshold(1e-8);
    EXPECT_EQ(numerical_rank(vectors, 1e-8), static_cast<std::size_t>(svd.rank()));
    EXPECT_EQ(numerical_rank(std::span(vectors).first(3), 1e-8), std::min<std::size_t>(3, target));
  }
}

TEST(NumericalRank, Errors) {
  std::vector<ComplexVector> none;
  EXPECT_THROW(numerical_rank(none, 1e-8), EmptyInput);
  std::vector<ComplexVector> ragged{ComplexVector(2), ComplexVector(3)};
  EXPECT_THROW(numerical_rank(ragged, 1e-8), DimensionMismatch);
}

TEST(Vectors, NormalizeAndInner) {
  const ComplexVector v{Complex(3.0, 0.0), Complex(0.0, 4.0)};
  const auto u = normalized(v);
  EXPECT_NEAR(norm(u), 1.0, 1e-15);
  EXPECT_LT(std::abs(inner(v, v) - Complex(25.0)), 1e-14);
  EXPECT_THROW(normalized(ComplexVector(3)), InvalidArgument);
}

TEST(Matrix, ConstructionErrorsAndHermiticity) {
  EXPECT_THROW(ComplexMatrix(2, 2, std::vector<Complex>(3)), DimensionMismatch);
  EXPECT_THROW(ComplexMatrix(2, 2) * ComplexMatrix(3, 3), DimensionMismatch);
  auto rng = make_rng(8, 0);
  const auto h = random_hermitian(rng, 4);
  EXPECT_TRUE(is_hermitian(h, 1e-12));
  auto skew = h;
  skew(0, 1) += Complex(0.0, 1e-3);
  EXPECT_FALSE(is_hermitian(skew, 1e-12));
}
