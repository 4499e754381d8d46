#pragma once

#include <cstdint>

#include "ewopt/linalg.hpp"
#include "ewopt/random.hpp"

namespace ewopt::testing {

inline ComplexMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols, gaussian_vector(rng, rows * cols));
}

inline ComplexMatrix random_hermitian(Rng& rng, std::size_t n) {
  const auto a = random_matrix(rng, n, n);
  return 0.5 * (a + a.adjoint());
}

/// Random density matrix G G^dag / Tr.
inline ComplexMatrix random_state(Rng& rng, std::size_t n) {
  const auto g = random_matrix(rng, n, n);
  auto rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return rho;
}

inline ComplexVector random_unit(Rng& rng, std::size_t n) { return normalized(gaussian_vector(rng, n)); }

}  // namespace ewopt::testing
