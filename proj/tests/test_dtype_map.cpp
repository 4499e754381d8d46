#include <gtest/gtest.h>

#include <cmath>

#include "ewopt/dtype_map.hpp"
#include "ewopt/errors.hpp"
#include "test_support.hpp"

using namespace ewopt;
using ewopt::testing::random_hermitian;
using ewopt::testing::random_matrix;
using ewopt::testing::random_state;

namespace {

const Permutation kCycle({2, 3, 1});

// Closed form of the Choi matrix read off from Phi(E_ii) and Phi(E_ij):
// (n-t) sum |ii><ii| + t sum |i, pi^{-1}(i)><i, pi^{-1}(i)| - n |psi+><psi+|.
ComplexMatrix choi_oracle(double t, const Permutation& p) {
  const std::size_t n = p.size();
  const auto inv = p.inverse();
  ComplexMatrix w(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i) {
    w(i * n + i, i * n + i) += n - t;
    const std::size_t j = inv.image0(i);
    w(i * n + j, i * n + j) += t;
    for (std::size_t k = 0; k < n; ++k) w(i * n + i, k * n + k) -= 1.0;
  }
  return w;
}

}  // namespace

TEST(DTypeMap, UnitMatrixImageAtUnitT) {
  const DTypeMap m(1.0, kCycle);
  const auto out = m.apply(ComplexMatrix::unit(3, 0, 0));
  EXPECT_EQ(out, ComplexMatrix::unit(3, 0, 0) + ComplexMatrix::unit(3, 2, 2));
}

TEST(DTypeMap, OffDiagonalEntriesAreNegated) {
  auto rng = make_rng(1, 0);
  const auto x = random_matrix(rng, 3, 3);
  const auto y = DTypeMap(0.7, kCycle).apply(x);
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t k = 0; k < 3; ++k) {
      if (j != k) {
        EXPECT_EQ(y(j, k), -x(j, k));
      }
    }
    EXPECT_LT(std::abs(y(j, j) - ((3.0 - 0.7 - 1.0) * x(j, j) + 0.7 * x(kCycle.image0(j), kCycle.image0(j)))),
              1e-14);
  }
}

TEST(DTypeMap, ChoiMatchesClosedFormForAllSmallCases) {
  for (std::size_t n = 2; n <= 4; ++n) {
    for (const auto& p : Permutation::all(n)) {
      for (double t : {0.0, 0.4, 1.0, 2.0}) {
        const auto w = choi_matrix(DTypeMap(t, p));
        EXPECT_LT(max_abs_diff(w.choi, choi_oracle(t, p)), 1e-14) << p.to_string() << " t=" << t;
        EXPECT_EQ(w.dim_a, n);
        EXPECT_EQ(w.dim_b, n);
      }
    }
  }
}

TEST(DTypeMap, ChoiOfCyclicUnitTHasNegativeDirection) {
  const auto w = choi_matrix(DTypeMap(1.0, kCycle));
  const auto psi = max_entangled(3);
  // <psi+|W|psi+> = -t
  Complex value = 0.0;
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t j = 0; j < 9; ++j) value += w.choi(i, j) * psi(j, i);
  }
  EXPECT_NEAR(value.real(), -1.0, 1e-14);
  EXPECT_NEAR(min_eigenvalue(w.choi), -1.0, 1e-12);
}

TEST(DTypeMap, LinearTraceScalingAndHermiticityPreserving) {
  auto rng = make_rng(2, 0);
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto p = Permutation::all(n).back();
    const DTypeMap m(0.8, p);
    const auto a = random_matrix(rng, n, n);
    const auto b = random_matrix(rng, n, n);
    const Complex s(0.3, -1.2);
    EXPECT_LT(max_abs_diff(m.apply(a + s * b), m.apply(a) + s * m.apply(b)), 1e-12);
    EXPECT_LT(std::abs(m.apply(a).trace() - static_cast<double>(n - 1) * a.trace()), 1e-12);
    EXPECT_LT(max_abs_diff(m.apply(a.adjoint()), m.apply(a).adjoint()), 1e-14);
    EXPECT_LT(max_abs_diff(m.apply(ComplexMatrix::identity(n)),
                           static_cast<double>(n - 1) * ComplexMatrix::identity(n)),
              1e-14);
  }
}

TEST(DTypeMap, ChoiReproducesTheMap) {
  // Phi(X) = Tr_A[(X^T (x) I) W]
  auto rng = make_rng(3, 0);
  const DTypeMap m(1.3, Permutation({3, 1, 2}));
  const auto w = choi_matrix(m).choi;
  for (int k = 0; k < 5; ++k) {
    const auto x = random_matrix(rng, 3, 3);
    const auto via_choi =
        partial_trace(kron(x.transpose(), ComplexMatrix::identity(3)) * w, 3, 3, Subsystem::A);
    EXPECT_LT(max_abs_diff(via_choi, m.apply(x)), 1e-12);
  }
}

TEST(DTypeMap, SecondFactorActionOnMaximallyEntangledStateIsChoi) {
  const DTypeMap m(0.6, kCycle);
  const auto lhs = apply_on_second_factor(m, max_entangled(3));
  EXPECT_LT(max_abs_diff(lhs, (1.0 / 3.0) * choi_matrix(m).choi), 1e-14);
}

TEST(DTypeMap, PositiveMapKeepsRandomStatesPositive) {
  const DTypeMap m(1.0, kCycle);
  for (std::uint64_t k = 0; k < 50; ++k) {
    auto rng = make_rng(4, k);
    EXPECT_GE(min_eigenvalue(m.apply(random_state(rng, 3))), -1e-12);
  }
}

TEST(DTypeMap, SubtractionRemovesRankOneChoiTerm) {
  auto rng = make_rng(5, 0);
  const auto c = random_matrix(rng, 3, 3);
  const DTypeMap base(0.5, kCycle);
  const auto sub = base.with_subtraction(c);
  const auto x = random_matrix(rng, 3, 3);
  EXPECT_LT(max_abs_diff(sub.apply(x), base.apply(x) - c * x * c.adjoint()), 1e-12);
  EXPECT_LT(max_abs_diff(subtracted_map(base, c).apply(x), sub.apply(x)), 1e-15);

  ComplexVector v(9);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t k = 0; k < 3; ++k) v[i * 3 + k] = c(k, i);
  }
  EXPECT_LT(max_abs_diff(choi_matrix(sub).choi, choi_matrix(base).choi - ComplexMatrix::outer(v)), 1e-12);
}

TEST(DTypeMap, RelabelingConjugatesThePermutation) {
  auto rng = make_rng(6, 0);
  const Permutation pi({2, 1, 4, 3});
  for (const auto& sigma : Permutation::all(4)) {
    const auto p = permutation_matrix(sigma);
    const auto x = random_matrix(rng, 4, 4);
    const auto lhs = p * DTypeMap(0.9, pi).apply(p.adjoint() * x * p) * p.adjoint();
    const auto rhs = DTypeMap(0.9, sigma.compose(pi).compose(sigma.inverse())).apply(x);
    EXPECT_LT(max_abs_diff(lhs, rhs), 1e-12) << sigma.to_string();
  }
}

TEST(DTypeMap, PermutationMatrixMapsBasisVectors) {
  const Permutation sigma({3, 1, 2});
  const auto p = permutation_matrix(sigma);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t r = 0; r < 3; ++r) EXPECT_EQ(p(r, i), Complex(r == sigma.image0(i) ? 1.0 : 0.0));
  }
}

TEST(DTypeMap, PreconditionErrors) {
  EXPECT_THROW(DTypeMap(-0.1, kCycle), InvalidArgument);
  EXPECT_THROW(DTypeMap(3.1, kCycle), InvalidArgument);
  EXPECT_THROW(DTypeMap(0.5, Permutation({1})), InvalidArgument);
  EXPECT_THROW(DTypeMap(0.5, kCycle).with_subtraction(ComplexMatrix(2, 2)), DimensionMismatch);
  EXPECT_THROW(DTypeMap(0.5, kCycle).apply(ComplexMatrix(2, 2)), DimensionMismatch);
  EXPECT_THROW(max_entangled(1), InvalidArgument);
  ComplexMatrix bad(4, 4);
  bad(0, 1) = 1.0;
  EXPECT_THROW(Witness::from_matrix(bad, 2, 2), NonHermitianInput);
  EXPECT_THROW(Witness::from_matrix(ComplexMatrix(4, 4), 2, 3), DimensionMismatch);
}

TEST(DTypeMap, MaximallyEntangledIsPureState) {
  const auto psi = max_entangled(4);
  EXPECT_NEAR(psi.trace().real(), 1.0, 1e-15);
  EXPECT_LT(max_abs_diff(psi * psi, psi), 1e-15);
}
