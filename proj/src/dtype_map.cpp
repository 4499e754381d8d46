#include "ewopt/dtype_map.hpp"

#include <cmath>
#include <string>

#include "ewopt/errors.hpp"

namespace ewopt {

DTypeMap::DTypeMap(double t, Permutation pi) : t_(t), pi_(std::move(pi)) {
  if (pi_.size() < 2) throw InvalidArgument("D-type map needs n >= 2");
  if (!std::isfinite(t_) || t_ < 0.0 || t_ > static_cast<double>(pi_.size())) {
    throw InvalidArgument("t must lie in [0, n], got " + std::to_string(t_));
  }
}

DTypeMap DTypeMap::with_subtraction(ComplexMatrix c) const {
  if (c.rows() != n() || c.cols() != n()) {
    throw DimensionMismatch("subtraction operator must be n x n");
  }
  DTypeMap out = *this;
  out.subtraction_ = std::move(c);
  return out;
}

ComplexMatrix DTypeMap::apply(const ComplexMatrix& x) const {
  const std::size_t dim = n();
  if (x.rows() != dim || x.cols() != dim) throw DimensionMismatch("map input must be n x n");
  const double nd = static_cast<double>(dim);

  ComplexMatrix out(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t k = 0; k < dim; ++k) out(j, k) = -x(j, k);
    const std::size_t pj = pi_.image0(j);
    out(j, j) = (nd - t_ - 1.0) * x(j, j) + t_ * x(pj, pj);
  }
  if (subtraction_) {
    const auto& c = *subtraction_;
    out -= c * x * c.adjoint();
  }
  return out;
}

Witness Witness::from_matrix(ComplexMatrix choi, std::size_t dim_a, std::size_t dim_b) {
  if (choi.rows() != dim_a * dim_b || choi.cols() != dim_a * dim_b) {
    throw DimensionMismatch("witness matrix is not (dimA*dimB)-square");
  }
  if (!is_hermitian(choi, 1e-12)) throw NonHermitianInput("witness matrix is not Hermitian");
  return Witness{dim_a, dim_b, std::move(choi)};
}

Witness choi_matrix(const DTypeMap& m) {
  const std::size_t n = m.n();
  ComplexMatrix w(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto block = m.apply(ComplexMatrix::unit(n, i, j));
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) w(i * n + k, j * n + l) = block(k, l);
      }
    }
  }
  return Witness::from_matrix(std::move(w), n, n);
}

ComplexMatrix max_entangled(std::size_t n) {
  if (n < 2) throw InvalidArgument("maximally entangled state needs n >= 2");
  ComplexVector psi(n * n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) psi[i * n + i] = amp;
  return ComplexMatrix::outer(psi);
}

ComplexMatrix apply_on_second_factor(const DTypeMap& m, const ComplexMatrix& rho) {
  const std::size_t n = m.n();
  if (rho.rows() != n * n || rho.cols() != n * n) {
    throw DimensionMismatch("state must live on C^n (x) C^n");
  }
  ComplexMatrix out(n * n, n * n);
  ComplexMatrix block(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) block(k, l) = rho(i * n + k, j * n + l);
      }
      const auto mapped = m.apply(block);
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) out(i * n + k, j * n + l) = mapped(k, l);
      }
    }
  }
  return out;
}

ComplexMatrix permutation_matrix(const Permutation& sigma) {
  const std::size_t n = sigma.size();
  ComplexMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) p(sigma.image0(i), i) = 1.0;
  return p;
}

}  // namespace ewopt
