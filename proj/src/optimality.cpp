#include "ewopt/optimality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ewopt/errors.hpp"
#include "ewopt/random.hpp"

namespace ewopt {

namespace {

constexpr double kZeroModulus = 1e-12;
constexpr double kUnitTolerance = 1e-10;
constexpr double kContractionSlack = 1e-9;
constexpr double kRangeSlack = 1e-12;  // lets c = sqrt(1 - t) through after rounding

const Permutation& standard_cycle() {
  static const Permutation cycle({2, 3, 1});
  return cycle;
}

const Permutation& standard_transposition() {
  static const Permutation swap12({2, 1, 3});
  return swap12;
}

// E_ab (x) E_cd on C^3 (x) C^3, 1-based labels.
ComplexMatrix elementary(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
  return kron(ComplexMatrix::unit(3, a - 1, b - 1), ComplexMatrix::unit(3, c - 1, d - 1));
}

ComplexMatrix conjugate_local(const ComplexMatrix& m, const ComplexMatrix& p) {
  const auto pp = kron(p, p);
  return pp * m * pp.adjoint();
}

void require_certificate_range(double t, double c) {
  if (!(t > 0.0 && t < 1.0)) throw OutOfCertificateRange("certificate needs 0 < t < 1");
  if (!(c > 0.0) || c * c > (1.0 - t) + kRangeSlack) {
    throw OutOfCertificateRange("certificate needs 0 < c^2 <= 1 - t");
  }
}

ComplexVector random_unit(std::uint64_t seed, std::size_t index, std::size_t dim) {
  auto rng = make_rng(seed, index);
  return normalized(gaussian_vector(rng, dim));
}

}  // namespace

const char* to_string(OptimalityReason r) {
  switch (r) {
    case OptimalityReason::CyclicAtUnitT: return "Cyclic_t1";
    case OptimalityReason::CompletelyPositive: return "CompletelyPositive";
    case OptimalityReason::DecomposableLengthTwo: return "Decomposable_l2";
    case OptimalityReason::CertificateCyclicSmallT: return "Certificate_l3_smallt";
  }
  return "?";
}

const char* to_string(SplitBranch b) { return b == SplitBranch::HighT ? "HighT" : "LowT"; }

OptimalityVerdict optimality_verdict(double t, const Permutation& p) {
  if (p.size() != 3) throw InvalidArgument("optimality verdict covers n = 3 only");
  const std::size_t length = loop_length(p);
  if (!closed_form_positive(3, t, p)) {
    throw NotAWitness("map is not positive, so its Choi matrix is not a witness");
  }
  if (length == 1 || t == 0.0) {
    throw NotAWitness("map is completely positive, so its Choi matrix is PSD");
  }
  if (length == 2) return {false, OptimalityReason::DecomposableLengthTwo, std::nullopt};
  if (std::abs(t - 1.0) <= 1e-12) return {true, OptimalityReason::CyclicAtUnitT, std::nullopt};

  // 0 < t < 1, 3-cycle: carry diag(c, -c, 0) from the standard cycle.
  const double c = std::sqrt(1.0 - t);
  const auto sigma = conjugator(standard_cycle(), p);
  const auto perm = permutation_matrix(sigma);
  return {false, OptimalityReason::CertificateCyclicSmallT,
          perm * c0_certificate(t, c) * perm.adjoint()};
}

DecompositionSplit case2_split(double t, const Permutation& p) {
  if (p.size() != 3) throw InvalidArgument("decomposition covers n = 3 only");
  if (loop_length(p) != 2) throw WrongLoopStructure("decomposition needs l(pi) = 2");
  if (!(t > 0.0 && t <= 1.5)) throw InvalidArgument("decomposition needs 0 < t <= 3/2");

  ComplexMatrix ppt = elementary(2, 2, 1, 1) + elementary(1, 1, 2, 2) - elementary(1, 2, 1, 2) -
                      elementary(2, 1, 2, 1);
  ppt *= t;
  const auto w = choi_matrix(DTypeMap(t, standard_transposition())).choi;
  ComplexMatrix positive = w - ppt;

  const auto sigma = conjugator(standard_transposition(), p);
  if (!(sigma == Permutation::identity(3))) {
    const auto perm = permutation_matrix(sigma);
    positive = conjugate_local(positive, perm);
    ppt = conjugate_local(ppt, perm);
  }
  return {std::move(positive), std::move(ppt), t >= 1.0 ? SplitBranch::HighT : SplitBranch::LowT};
}

ComplexMatrix c0_certificate(double t, double c) {
  require_certificate_range(t, c);
  const std::array<Complex, 3> diag{c, -c, 0.0};
  return ComplexMatrix::diagonal(diag);
}

ComplexMatrix CoefficientMatrix::as_matrix() const {
  ComplexMatrix m(2, 6);
  for (std::size_t i = 0; i < 3; ++i) {
    m(0, i) = alpha[i];
    m(0, i + 3) = beta[i];
    m(1, i) = delta[i];
    m(1, i + 3) = gamma[i];
  }
  return m;
}

ComplexMatrix CoefficientMatrix::gram() const {
  const auto f = as_matrix();
  return f * f.adjoint();
}

int classify_subcase(std::span<const Complex> x) {
  if (x.size() != 3) throw DimensionMismatch("subcase dispatch needs x in C^3");
  const bool z1 = std::abs(x[0]) < kZeroModulus;
  const bool z2 = std::abs(x[1]) < kZeroModulus;
  const bool z3 = std::abs(x[2]) < kZeroModulus;
  if (z1 && z2 && z3) throw NotUnitVector("zero vector");
  if (!z1 && !z2 && !z3) {
    const double total = std::norm(x[0]) + std::norm(x[1]) + std::norm(x[2]);
    const bool equal = std::all_of(x.begin(), x.end(), [&](Complex z) {
      return std::abs(std::norm(z) - total / 3.0) <= kZeroModulus;
    });
    return equal ? 1 : 2;
  }
  if (z1 && !z2 && !z3) return 3;
  if (!z1 && z2 && !z3) return 4;
  if (!z1 && !z2 && z3) return 5;
  if (z1 && z2) return 6;
  if (z1 && z3) return 7;
  return 8;
}

CoefficientMatrix coefficient_matrix(std::span<const Complex> x, double t, double c) {
  if (x.size() != 3 || std::abs(norm(x) - 1.0) > kUnitTolerance) {
    throw NotUnitVector("coefficient matrix needs a unit vector in C^3");
  }
  if (!(t > 0.0 && t < 1.0)) throw InvalidArgument("coefficient matrix needs 0 < t < 1");
  if (!(c > 0.0)) throw InvalidArgument("coefficient matrix needs c > 0");

  const double sa = std::sqrt(3.0 - t);  // weight of E_ii
  const double sb = std::sqrt(t);        // weight of E_{i,i+1}
  const std::array<double, 3> sign{c, -c, 0.0};  // C0 = diag(c, -c, 0)

  CoefficientMatrix f;
  f.subcase = classify_subcase(x);

  // Solves x_i = alpha_i sa x_i + beta_i sb x_{i+1} with the split weighted by
  // r_i = |x_i / x_{i+1}|^2; beta_i carries the phase of x_i / x_{i+1}.
  auto generic_slot = [&](std::size_t i) {
    const Complex u = x[i] / x[(i + 1) % 3];
    const double r = std::norm(u);
    const double d = t + (3.0 - t) * r;
    f.alpha[i] = sa * r / d;
    f.beta[i] = sb * u / d;
  };

  switch (f.subcase) {
    case 1:
      for (std::size_t i = 0; i < 3; ++i) {
        f.alpha[i] = sa / 3.0;
        f.beta[i] = sb * x[i] / (3.0 * x[(i + 1) % 3]);
        f.delta[i] = sign[i] * f.alpha[i];
        f.gamma[i] = sign[i] * f.beta[i];
      }
      break;
    case 2:
      for (std::size_t i = 0; i < 3; ++i) {
        generic_slot(i);
        f.delta[i] = sign[i] * f.alpha[i];
        f.gamma[i] = sign[i] * f.beta[i];
      }
      break;
    case 3:  // x1 = 0
      generic_slot(1);
      f.alpha[2] = 1.0 / sa;
      f.delta[1] = -c * f.alpha[1];
      f.gamma[1] = -c * f.beta[1];
      break;
    case 4:  // x2 = 0
      f.alpha[0] = 1.0 / sa;
      generic_slot(2);
      f.delta[0] = c / sa;
      break;
    case 5:  // x3 = 0
      generic_slot(0);
      f.alpha[1] = 1.0 / sa;
      f.delta[0] = c * f.alpha[0];
      f.gamma[0] = c * f.beta[0];
      f.delta[1] = -c / sa;
      break;
    case 6:  // x = (0, 0, x3)
      f.alpha[2] = 1.0 / sa;
      break;
    case 7:  // x = (0, x2, 0)
      f.alpha[1] = 1.0 / sa;
      f.delta[1] = -c / sa;
      break;
    case 8:  // x = (x1, 0, 0)
      f.alpha[0] = 1.0 / sa;
      f.delta[0] = c / sa;
      break;
    default:
      break;
  }
  return f;
}

std::pair<double, double> reconstruction_residual(std::span<const Complex> x,
                                                  const CoefficientMatrix& f, double t, double c) {
  if (x.size() != 3 || std::abs(norm(x) - 1.0) > kUnitTolerance) {
    throw NotUnitVector("reconstruction needs a unit vector in C^3");
  }
  const double sa = std::sqrt(3.0 - t);
  const double sb = std::sqrt(t);
  const std::array<double, 3> sign{c, -c, 0.0};
  ComplexVector r1(3);
  ComplexVector r2(3);
  for (std::size_t i = 0; i < 3; ++i) {
    const Complex next = x[(i + 1) % 3];
    r1[i] = x[i] - f.alpha[i] * sa * x[i] - f.beta[i] * sb * next;
    r2[i] = sign[i] * x[i] - f.delta[i] * sa * x[i] - f.gamma[i] * sb * next;
  }
  return {norm(r1), norm(r2)};
}

GramContraction gram_contraction(const ComplexMatrix& g) {
  if (g.rows() != 2 || g.cols() != 2) throw DimensionMismatch("gram_contraction needs a 2x2 matrix");
  const double a = g(0, 0).real();
  const double d = g(1, 1).real();
  const double half_gap = 0.5 * (a - d);
  const double max_eig = 0.5 * (a + d) + std::sqrt(half_gap * half_gap + std::norm(g(0, 1)));
  return {max_eig, max_eig <= 1.0 + kContractionSlack};
}

GramContraction gram_contraction(const CoefficientMatrix& f) { return gram_contraction(f.gram()); }

std::vector<ComplexVector> degenerate_patterns() {
  const auto phase = [](double theta) { return std::polar(1.0, theta); };
  const double third = 1.0 / std::sqrt(3.0);
  return {
      {third, third * phase(0.7), third * phase(-1.9)},  // 1: equal moduli
      {0.0, 0.6, 0.8 * phase(1.1)},                      // 3
      {0.8 * phase(0.3), 0.0, 0.6},                      // 4
      {0.6, 0.8 * phase(-2.0), 0.0},                     // 5
      {0.0, 0.0, phase(0.5)},                            // 6
      {0.0, 1.0, 0.0},                                   // 7
      {phase(-0.4), 0.0, 0.0},                           // 8
  };
}

SweepReport certificate_sweep(double t, double c, std::size_t samples, std::uint64_t seed,
                              Execution exec) {
  require_certificate_range(t, c);
  auto patterns = degenerate_patterns();
  const std::size_t total = samples + patterns.size();

  struct Sample {
    ComplexVector x;
    int subcase = 0;
    double max_eig = 0.0;
    double res_identity = 0.0;
    double res_subtraction = 0.0;
  };
  std::vector<Sample> out(total);
  for_each_index(exec, total, [&](std::size_t i) {
    Sample s;
    s.x = i < patterns.size() ? patterns[i] : random_unit(seed, i - patterns.size(), 3);
    const auto f = coefficient_matrix(s.x, t, c);
    s.subcase = f.subcase;
    s.max_eig = gram_contraction(f).max_eig;
    std::tie(s.res_identity, s.res_subtraction) = reconstruction_residual(s.x, f, t, c);
    out[i] = std::move(s);
  });

  SweepReport report;
  report.t = t;
  report.c = c;
  report.samples = samples;
  for (auto& s : out) {
    report.max_gram_eig = std::max(report.max_gram_eig, s.max_eig);
    report.max_identity_residual = std::max(report.max_identity_residual, s.res_identity);
    report.max_subtraction_residual = std::max(report.max_subtraction_residual, s.res_subtraction);
    ++report.subcase_counts[static_cast<std::size_t>(s.subcase)];
    if (s.max_eig > 1.0 + kContractionSlack) report.violations.push_back({std::move(s.x), s.max_eig});
  }
  return report;
}

void require_contractive(const SweepReport& report) {
  if (report.violations.empty()) return;
  const auto& v = report.violations.front();
  throw ContractionViolated("coefficient matrix not contractive (max Gram eigenvalue " +
                                std::to_string(v.max_gram_eig) + ")",
                            v.x);
}

ZeroLocusResult zero_locus_span(const Witness& w, const SearchConfig& config, std::size_t samples,
                                Execution exec) {
  std::vector<std::vector<ComplexVector>> found(samples);
  for_each_index(exec, samples, [&](std::size_t i) {
    auto rng = make_rng(config.seed, i);
    auto e = normalized(gaussian_vector(rng, w.dim_a));
    auto f = normalized(gaussian_vector(rng, w.dim_b));
    const auto r = alternating_descent(w, std::move(e), std::move(f), config.max_iters, config.tol);
    const auto eig = hermitian_eig(contract_first(w, r.e), 1e-10);
    for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
      if (eig.eigenvalues[k] < kZeroLocusEigenThreshold) {
        found[i].push_back(kron(r.e, eig.eigenvector(k)));
      }
    }
  });

  ZeroLocusResult result;
  std::vector<ComplexVector> all;
  for (auto& list : found) {
    for (auto& v : list) all.push_back(std::move(v));
  }
  result.points_collected = all.size();
  if (all.empty()) return result;
  result.dimension = numerical_rank(all, kZeroLocusRankTolerance);

  // Greedy spanning subset in collection order.
  std::vector<ComplexVector> basis;
  for (const auto& v : all) {
    if (basis.size() == result.dimension) break;
    auto residual = v;
    for (const auto& b : basis) {
      const Complex overlap = inner(b, residual);
      for (std::size_t k = 0; k < residual.size(); ++k) residual[k] -= overlap * b[k];
    }
    if (norm(residual) > 1e-3) {
      basis.push_back(normalized(residual));
      result.vectors.push_back(v);
    }
  }
  return result;
}

double detect_value(const Witness& w, const ComplexMatrix& rho) {
  if (rho.rows() != w.choi.rows() || rho.cols() != w.choi.cols()) {
    throw NotAState("state dimension does not match the witness");
  }
  if (!is_hermitian(rho, 1e-9)) throw NotAState("state is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0)) > 1e-9) throw NotAState("state trace is not 1");
  if (min_eigenvalue(rho) < -1e-9) throw NotAState("state is not positive semidefinite");
  Complex sum = 0.0;
  for (std::size_t i = 0; i < rho.rows(); ++i) {
    for (std::size_t j = 0; j < rho.cols(); ++j) sum += w.choi(i, j) * rho(j, i);
  }
  return sum.real();
}

std::vector<ComplexMatrix> structured_subtraction_family(std::size_t n) {
  std::vector<ComplexMatrix> family;
  for (std::size_t slot = 0; slot < n; ++slot) {
    for (int k = 0; k < 8; ++k) {
      const double angle = k * std::numbers::pi / 8.0;
      ComplexMatrix d(n, n);
      d(slot, slot) = std::cos(angle);
      d((slot + 1) % n, (slot + 1) % n) = std::sin(angle);
      family.push_back(std::move(d));
    }
  }
  return family;
}

ProbeResult subtraction_probe(const DTypeMap& m, std::size_t trials, std::uint64_t seed,
                              const ProbeOptions& options, Execution exec) {
  if (m.subtraction()) throw InvalidArgument("probe expects an unsubtracted map");
  if (!closed_form_positive(m.n(), m.t(), m.pi())) {
    throw InvalidArgument("probe expects a positive map");
  }
  if (!(options.min_scale > 0.0 && options.max_scale > options.min_scale)) {
    throw InvalidArgument("probe needs 0 < min_scale < max_scale");
  }

  const std::size_t n = m.n();
  auto directions = structured_subtraction_family(n);
  for (std::size_t k = 0; k < trials; ++k) {
    auto rng = make_rng(seed, k);
    auto entries = gaussian_vector(rng, n * n);
    ComplexMatrix d(n, n, std::move(entries));
    d *= 1.0 / d.frobenius_norm();
    directions.push_back(std::move(d));
  }

  auto passes = [&](const ComplexMatrix& direction, double scale) {
    const auto w = choi_matrix(m.with_subtraction(scale * direction));
    return numeric_block_positivity(w, options.search, Execution::Serial).status ==
           PositivityStatus::NoViolationFound;
  };

  std::vector<double> boundary(directions.size(), 0.0);
  for_each_index(exec, directions.size(), [&](std::size_t i) {
    const auto& dir = directions[i];
    if (!passes(dir, options.min_scale)) return;
    double lo = options.min_scale;
    double hi = options.max_scale;
    if (passes(dir, hi)) {
      boundary[i] = hi;
      return;
    }
    for (int step = 0; step < options.bisection_steps; ++step) {
      const double mid = 0.5 * (lo + hi);
      (passes(dir, mid) ? lo : hi) = mid;
    }
    boundary[i] = lo;
  });

  ProbeResult result;
  result.candidates_tested = directions.size();
  std::size_t best = directions.size();
  for (std::size_t i = 0; i < directions.size(); ++i) {
    if (boundary[i] <= 0.0) continue;
    ++result.candidates_passing;
    if (best == directions.size() || boundary[i] > boundary[best]) best = i;
  }
  if (best < directions.size()) {
    result.found = true;
    result.best_scale = boundary[best];
    result.best_c = boundary[best] * directions[best];
  }
  return result;
}

}  // namespace ewopt
