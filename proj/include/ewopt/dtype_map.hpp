#pragma once

#include <cstddef>
#include <optional>

#include "ewopt/linalg.hpp"
#include "ewopt/perm.hpp"

namespace ewopt {

/// The D-type map
///   Phi_{t,pi}(A) = (n-t) sum_i E_ii A E_ii + t sum_i E_{i,pi(i)} A E_{i,pi(i)}^dag - A,
/// optionally followed by subtracting C A C^dag.
class DTypeMap {
 public:
  /// Throws InvalidArgument unless n >= 2 and 0 <= t <= n.
  DTypeMap(double t, Permutation pi);

  std::size_t n() const { return pi_.size(); }
  double t() const { return t_; }
  const Permutation& pi() const { return pi_; }
  const std::optional<ComplexMatrix>& subtraction() const { return subtraction_; }

  /// Same map with X -> Phi(X) - C X C^dag. Throws DimensionMismatch unless C is n x n.
  DTypeMap with_subtraction(ComplexMatrix c) const;

  /// Throws DimensionMismatch unless x is n x n.
  ComplexMatrix apply(const ComplexMatrix& x) const;

 private:
  double t_;
  Permutation pi_;
  std::optional<ComplexMatrix> subtraction_;
};

/// Hermitian Choi matrix W = (Phi(E_ij))_{ij} on H (x) K, |i j> at row i*dim_b + j.
struct Witness {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  ComplexMatrix choi;

  /// Throws DimensionMismatch or NonHermitianInput (tolerance 1e-12).
  static Witness from_matrix(ComplexMatrix choi, std::size_t dim_a, std::size_t dim_b);
};

inline ComplexMatrix apply_map(const DTypeMap& m, const ComplexMatrix& x) { return m.apply(x); }

Witness choi_matrix(const DTypeMap& m);

/// |psi+><psi+| with |psi+> = (|11> + ... + |nn>) / sqrt(n). Throws InvalidArgument for n < 2.
ComplexMatrix max_entangled(std::size_t n);

inline DTypeMap subtracted_map(const DTypeMap& m, ComplexMatrix c) {
  return m.with_subtraction(std::move(c));
}

/// (I (x) Phi)(rho) for rho on C^n (x) C^n.
ComplexMatrix apply_on_second_factor(const DTypeMap& m, const ComplexMatrix& rho);

/// Permutation matrix P with P e_i = e_{sigma(i)}.
ComplexMatrix permutation_matrix(const Permutation& sigma);

}  // namespace ewopt
