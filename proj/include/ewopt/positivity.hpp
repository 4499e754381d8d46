#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "ewopt/dtype_map.hpp"
#include "ewopt/execution.hpp"
#include "ewopt/linalg.hpp"
#include "ewopt/perm.hpp"

namespace ewopt {

inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kViolationThreshold = 1e-8;

/// Closed-form positivity of Phi_{t,pi}: positive iff t <= n / l(pi).
bool closed_form_positive(std::size_t n, double t, const Permutation& p);

struct CpResult {
  bool completely_positive = false;
  double min_eigenvalue = 0.0;
};

/// CP iff the Choi matrix has min eigenvalue >= -1e-10 * max(1, ||W||).
CpResult is_completely_positive(const DTypeMap& m);

struct SearchConfig {
  int restarts = 100;
  int max_iters = 200;
  double tol = 1e-12;
  std::uint64_t seed = 42;
  /// Scan restarts in fixed blocks and return after the first block that
  /// contains a violation. Used by searches that only need the status.
  bool stop_at_first_violation = false;
};

enum class PositivityStatus { NoViolationFound, ViolationFound, ClosedFormPositive, ClosedFormNotPositive };

const char* to_string(PositivityStatus s);

struct ProductPair {
  ComplexVector e;  // unit vector on the first factor
  ComplexVector f;  // unit vector on the second factor
};

struct PositivityVerdict {
  PositivityStatus status = PositivityStatus::NoViolationFound;
  double min_value = 0.0;
  std::optional<ProductPair> witness_pair;
  std::size_t samples_used = 0;
};

/// A_e with entries <e (x) b_j| W |e (x) b_k>, dimB x dimB.
ComplexMatrix contract_first(const Witness& w, std::span<const Complex> e);
/// B_f with entries <b_a (x) f| W |b_b (x) f>, dimA x dimA.
ComplexMatrix contract_second(const Witness& w, std::span<const Complex> f);
/// <e (x) f| W |e (x) f>
double product_expectation(const Witness& w, std::span<const Complex> e, std::span<const Complex> f);

struct DescentResult {
  ComplexVector e;
  ComplexVector f;
  double value = 0.0;
  int iterations = 0;
};

/// Alternating eigenvector descent from (e0, f0): f <- argmin of A_e, then
/// e <- argmin of B_f, until the decrease falls below tol or max_iters.
DescentResult alternating_descent(const Witness& w, ComplexVector e0, ComplexVector f0,
                                  int max_iters, double tol);

/// Best-effort minimization of the product-state quadratic form over
/// `restarts` seeded random starts. NoViolationFound is not a certificate.
PositivityVerdict numeric_block_positivity(const Witness& w, const SearchConfig& config,
                                           Execution exec = Execution::Parallel);

/// Lemma-style closed form for the D-type family (no subtraction term).
PositivityVerdict closed_form_verdict(const DTypeMap& m);

struct PptResult {
  bool ppt = false;                 // partial transpose is PSD
  double min_eigenvalue = 0.0;      // of M itself
  double min_pt_eigenvalue = 0.0;   // of M^{T_B}
};

/// PPT test on the second factor: true iff M^{T_B} has min eigenvalue
/// >= -1e-10 * max(1, ||M||). Throws DimensionMismatch.
PptResult is_ppt(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b);

}  // namespace ewopt
