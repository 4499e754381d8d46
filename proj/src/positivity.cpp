#include "ewopt/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ewopt/errors.hpp"
#include "ewopt/random.hpp"

namespace ewopt {

namespace {

constexpr std::size_t kEarlyStopBlock = 8;

double psd_floor(const ComplexMatrix& m) { return -kPsdTolerance * std::max(1.0, operator_norm(m)); }

struct MinEigenpair {
  double value;
  ComplexVector vector;
};

MinEigenpair min_eigenpair(const ComplexMatrix& m) {
  auto eig = hermitian_eig(m, 1e-10);
  return {eig.eigenvalues.front(), eig.eigenvector(0)};
}

DescentResult run_restart(const Witness& w, const SearchConfig& config, std::size_t index) {
  auto rng = make_rng(config.seed, index);
  auto e = normalized(gaussian_vector(rng, w.dim_a));
  auto f = normalized(gaussian_vector(rng, w.dim_b));
  return alternating_descent(w, std::move(e), std::move(f), config.max_iters, config.tol);
}

}  // namespace

const char* to_string(PositivityStatus s) {
  switch (s) {
    case PositivityStatus::NoViolationFound: return "NoViolationFound";
    case PositivityStatus::ViolationFound: return "ViolationFound";
    case PositivityStatus::ClosedFormPositive: return "ClosedFormPositive";
    case PositivityStatus::ClosedFormNotPositive: return "ClosedFormNotPositive";
  }
  return "?";
}

bool closed_form_positive(std::size_t n, double t, const Permutation& p) {
  if (p.size() != n) throw DimensionMismatch("permutation size differs from n");
  const auto length = static_cast<double>(loop_length(p));
  return t >= 0.0 && t <= static_cast<double>(n) / length;
}

CpResult is_completely_positive(const DTypeMap& m) {
  const auto w = choi_matrix(m);
  const double lo = min_eigenvalue(w.choi);
  return {lo >= psd_floor(w.choi), lo};
}

ComplexMatrix contract_first(const Witness& w, std::span<const Complex> e) {
  if (e.size() != w.dim_a) throw DimensionMismatch("contract_first: vector size");
  const std::size_t db = w.dim_b;
  ComplexMatrix out(db, db);
  for (std::size_t a = 0; a < w.dim_a; ++a) {
    const Complex ea = std::conj(e[a]);
    if (ea == Complex{}) continue;
    for (std::size_t b = 0; b < w.dim_a; ++b) {
      const Complex weight = ea * e[b];
      if (weight == Complex{}) continue;
      for (std::size_t j = 0; j < db; ++j) {
        for (std::size_t k = 0; k < db; ++k) out(j, k) += weight * w.choi(a * db + j, b * db + k);
      }
    }
  }
  return out;
}

ComplexMatrix contract_second(const Witness& w, std::span<const Complex> f) {
  if (f.size() != w.dim_b) throw DimensionMismatch("contract_second: vector size");
  const std::size_t db = w.dim_b;
  ComplexMatrix out(w.dim_a, w.dim_a);
  for (std::size_t a = 0; a < w.dim_a; ++a) {
    for (std::size_t b = 0; b < w.dim_a; ++b) {
      Complex sum = 0.0;
      for (std::size_t j = 0; j < db; ++j) {
        const Complex fj = std::conj(f[j]);
        if (fj == Complex{}) continue;
        for (std::size_t k = 0; k < db; ++k) sum += fj * f[k] * w.choi(a * db + j, b * db + k);
      }
      out(a, b) = sum;
    }
  }
  return out;
}

double product_expectation(const Witness& w, std::span<const Complex> e, std::span<const Complex> f) {
  const auto a_e = contract_first(w, e);
  return inner(f, a_e * f).real();
}

DescentResult alternating_descent(const Witness& w, ComplexVector e0, ComplexVector f0,
                                  int max_iters, double tol) {
  DescentResult r{std::move(e0), std::move(f0), 0.0, 0};
  r.value = product_expectation(w, r.e, r.f);
  for (int it = 0; it < max_iters; ++it) {
    auto step_f = min_eigenpair(contract_first(w, r.e));
    r.f = std::move(step_f.vector);
    auto step_e = min_eigenpair(contract_second(w, r.f));
    r.e = std::move(step_e.vector);
    const double previous = r.value;
    r.value = step_e.value;
    r.iterations = it + 1;
    if (previous - r.value < tol) break;
  }
  return r;
}

PositivityVerdict numeric_block_positivity(const Witness& w, const SearchConfig& config,
                                           Execution exec) {
  if (!is_hermitian(w.choi, 1e-12)) throw NonHermitianInput("witness is not Hermitian");
  if (config.restarts <= 0) throw InvalidArgument("restarts must be positive");

  const auto total = static_cast<std::size_t>(config.restarts);
  std::vector<DescentResult> results(total);
  std::size_t done = 0;
  const std::size_t block = config.stop_at_first_violation ? kEarlyStopBlock : total;
  bool violated = false;
  while (done < total && !violated) {
    const std::size_t count = std::min(block, total - done);
    for_each_index(exec, count, [&](std::size_t i) {
      results[done + i] = run_restart(w, config, done + i);
    });
    for (std::size_t i = done; i < done + count; ++i) {
      violated = violated || results[i].value < -kViolationThreshold;
    }
    done += count;
    if (!config.stop_at_first_violation) break;
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < done; ++i) {
    if (results[i].value < results[best].value) best = i;
  }

  PositivityVerdict verdict;
  verdict.samples_used = done;
  verdict.min_value = results[best].value;
  verdict.witness_pair = ProductPair{results[best].e, results[best].f};
  verdict.status = verdict.min_value < -kViolationThreshold ? PositivityStatus::ViolationFound
                                                            : PositivityStatus::NoViolationFound;
  return verdict;
}

PositivityVerdict closed_form_verdict(const DTypeMap& m) {
  if (m.subtraction()) throw InvalidArgument("closed form covers only the unsubtracted family");
  PositivityVerdict v;
  v.status = closed_form_positive(m.n(), m.t(), m.pi()) ? PositivityStatus::ClosedFormPositive
                                                        : PositivityStatus::ClosedFormNotPositive;
  v.min_value = std::numeric_limits<double>::quiet_NaN();
  return v;
}

PptResult is_ppt(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b) {
  const auto pt = partial_transpose(m, dim_a, dim_b, Subsystem::B);
  PptResult r;
  r.min_eigenvalue = min_eigenvalue(m);
  r.min_pt_eigenvalue = min_eigenvalue(pt);
  r.ppt = r.min_pt_eigenvalue >= psd_floor(m);
  return r;
}

}  // namespace ewopt
