#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ewopt/dtype_map.hpp"
#include "ewopt/errors.hpp"
#include "ewopt/execution.hpp"
#include "ewopt/linalg.hpp"
#include "ewopt/perm.hpp"
#include "ewopt/positivity.hpp"

namespace ewopt {

// ---------------------------------------------------------------------------
// Verdict for the qutrit family.

enum class OptimalityReason { CyclicAtUnitT, CompletelyPositive, DecomposableLengthTwo, CertificateCyclicSmallT };

const char* to_string(OptimalityReason r);

struct OptimalityVerdict {
  bool optimal = false;
  OptimalityReason reason = OptimalityReason::CompletelyPositive;
  /// Positive-subtraction operator C when reason is CertificateCyclicSmallT.
  std::optional<ComplexMatrix> certificate;
};

/// n = 3 only. Optimal iff t == 1 and pi is a 3-cycle.
/// Throws NotAWitness when the map is completely positive (pi = id or t = 0)
/// or not positive (t > 3 / l(pi)).
OptimalityVerdict optimality_verdict(double t, const Permutation& p);

// ---------------------------------------------------------------------------
// Length-two decomposition W = P + Q with P >= 0 and Q^{T_B} >= 0.

enum class SplitBranch { HighT, LowT };

const char* to_string(SplitBranch b);

struct DecompositionSplit {
  ComplexMatrix positive_part;
  ComplexMatrix ppt_part;
  SplitBranch branch = SplitBranch::LowT;
};

/// Built for pi = (12) and carried to other transpositions by conjugating
/// with the permutation matrix. HighT for t >= 1, LowT for t < 1. The
/// decomposable part is t (E22(x)E11 + E11(x)E22 - E12(x)E12 - E21(x)E21).
/// Throws WrongLoopStructure unless l(pi) == 2, InvalidArgument unless
/// n == 3 and 0 < t <= 3/2.
DecompositionSplit case2_split(double t, const Permutation& p);

// ---------------------------------------------------------------------------
// Cyclic case: the diag(c, -c, 0) certificate and its local coefficient matrices.

/// diag(c, -c, 0). Throws OutOfCertificateRange unless 0 < t < 1 and 0 < c^2 <= 1 - t + 1e-12.
ComplexMatrix c0_certificate(double t, double c);

/// Local coefficients at x: rows (alpha, beta) and (delta, gamma) of the 2x6
/// matrix expressing I x and C0 x through sqrt(3-t) E_ii x and sqrt(t) E_{i,i+1} x.
struct CoefficientMatrix {
  std::array<Complex, 3> alpha{};
  std::array<Complex, 3> beta{};
  std::array<Complex, 3> delta{};
  std::array<Complex, 3> gamma{};
  int subcase = 0;  // 1..8, by the zero pattern of x

  ComplexMatrix as_matrix() const;  // 2 x 6
  ComplexMatrix gram() const;       // F F^dag, 2 x 2
};

/// Zero pattern of a unit x in C^3 (|x_i| < 1e-12 counts as zero): 1 equal
/// moduli, 2 generic, 3/4/5 only x1/x2/x3 zero, 6 x=(0,0,*), 7 x=(0,*,0), 8 x=(*,0,0).
int classify_subcase(std::span<const Complex> x);

/// Throws NotUnitVector, InvalidArgument (t outside (0,1) or c <= 0).
CoefficientMatrix coefficient_matrix(std::span<const Complex> x, double t, double c);

/// (|| x - sum a_i sqrt(3-t) E_ii x - sum b_i sqrt(t) E_{i,i+1} x ||,
///  || C0 x - sum d_i sqrt(3-t) E_ii x - sum g_i sqrt(t) E_{i,i+1} x ||)
std::pair<double, double> reconstruction_residual(std::span<const Complex> x,
                                                  const CoefficientMatrix& f, double t, double c);

struct GramContraction {
  double max_eig = 0.0;
  bool contractive = false;  // max_eig <= 1 + 1e-9
};

GramContraction gram_contraction(const CoefficientMatrix& f);
GramContraction gram_contraction(const ComplexMatrix& gram2x2);

/// Fixed representatives of subcases 1 and 3..8.
std::vector<ComplexVector> degenerate_patterns();

struct SweepViolation {
  ComplexVector x;
  double max_gram_eig = 0.0;
};

struct SweepReport {
  double t = 0.0;
  double c = 0.0;
  std::size_t samples = 0;           // random vectors, excluding the degenerate patterns
  double max_gram_eig = 0.0;
  double max_identity_residual = 0.0;
  double max_subtraction_residual = 0.0;
  std::array<std::size_t, 9> subcase_counts{};  // index = subcase
  std::vector<SweepViolation> violations;
};

/// Random unit x (complex Gaussian, per-sample seeds) plus the degenerate
/// patterns; records every non-contractive F_x.
/// Throws OutOfCertificateRange unless 0 < t < 1 and 0 < c^2 <= 1 - t.
SweepReport certificate_sweep(double t, double c, std::size_t samples, std::uint64_t seed,
                              Execution exec = Execution::Parallel);

/// Error raised by require_contractive; carries the offending vector.
class ContractionViolated : public Error {
 public:
  ContractionViolated(const std::string& what, ComplexVector x) : Error(what), x_(std::move(x)) {}
  const ComplexVector& x() const { return x_; }

 private:
  ComplexVector x_;
};

/// Throws ContractionViolated with the first violation of the report.
void require_contractive(const SweepReport& report);

// ---------------------------------------------------------------------------
// Zero locus, detection and the subtraction probe.

inline constexpr double kZeroLocusEigenThreshold = 1e-9;
inline constexpr double kZeroLocusRankTolerance = 1e-8;

struct ZeroLocusResult {
  std::size_t dimension = 0;
  std::vector<ComplexVector> vectors;  // a spanning subset of the collected e (x) f
  std::size_t points_collected = 0;
};

/// Each sample runs alternating descent from a seeded random product pair,
/// then collects e (x) f for every eigenvector f of A_e with eigenvalue below
/// 1e-9. Dimension is the numerical rank (tolerance 1e-8) of all collected vectors.
ZeroLocusResult zero_locus_span(const Witness& w, const SearchConfig& config, std::size_t samples,
                                Execution exec = Execution::Parallel);

/// Tr(W rho). Throws NotAState unless rho is Hermitian, PSD and of unit trace (1e-9).
double detect_value(const Witness& w, const ComplexMatrix& rho);

struct ProbeOptions {
  SearchConfig search{.restarts = 100, .max_iters = 200, .tol = 1e-12, .seed = 42,
                      .stop_at_first_violation = true};
  double min_scale = 0.3;  // ||C||_F below this is treated as zero
  double max_scale = 3.0;
  int bisection_steps = 20;
};

struct ProbeResult {
  bool found = false;
  std::optional<ComplexMatrix> best_c;  // passing C with the largest norm
  double best_scale = 0.0;
  std::size_t candidates_tested = 0;
  std::size_t candidates_passing = 0;
};

/// diag(a, b, 0, ...) placed on consecutive diagonal slots (i, i+1 mod n),
/// (a, b) = (cos k pi/8, sin k pi/8) for k = 0..7; unit Frobenius norm.
std::vector<ComplexMatrix> structured_subtraction_family(std::size_t n);

/// Searches C = s D over the structured family plus `trials` random complex
/// Gaussian directions D, bisecting the scale s between min_scale and
/// max_scale against numeric_block_positivity. found iff some direction
/// passes at s >= min_scale. Throws InvalidArgument if m is not positive in closed form.
ProbeResult subtraction_probe(const DTypeMap& m, std::size_t trials, std::uint64_t seed,
                              const ProbeOptions& options = {},
                              Execution exec = Execution::Parallel);

}  // namespace ewopt
