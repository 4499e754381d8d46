#include <gtest/gtest.h>

#include <cmath>

#include "ewopt/inequality.hpp"
#include "ewopt/optimality.hpp"
#include "ewopt/positivity.hpp"

// The OpenMP kernels and the serial reference path must agree bit for bit.
using namespace ewopt;

namespace {
const Permutation kCycle({2, 3, 1});
}

TEST(ParallelVsSerial, BlockPositivity) {
  const auto w = choi_matrix(DTypeMap(1.3, kCycle));
  const SearchConfig cfg{.restarts = 40, .seed = 5};
  const auto a = numeric_block_positivity(w, cfg, Execution::Serial);
  const auto b = numeric_block_positivity(w, cfg, Execution::Parallel);
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.min_value, b.min_value);
  EXPECT_EQ(a.witness_pair->e, b.witness_pair->e);
  EXPECT_EQ(a.witness_pair->f, b.witness_pair->f);
}

TEST(ParallelVsSerial, EarlyStopSearch) {
  const auto w = choi_matrix(DTypeMap(1.05, kCycle));
  SearchConfig cfg{.restarts = 64, .seed = 8, .stop_at_first_violation = true};
  const auto a = numeric_block_positivity(w, cfg, Execution::Serial);
  const auto b = numeric_block_positivity(w, cfg, Execution::Parallel);
  EXPECT_EQ(a.samples_used, b.samples_used);
  EXPECT_EQ(a.min_value, b.min_value);
}

TEST(ParallelVsSerial, CertificateSweep) {
  const auto a = certificate_sweep(0.3, std::sqrt(0.7), 3000, 2, Execution::Serial);
  const auto b = certificate_sweep(0.3, std::sqrt(0.7), 3000, 2, Execution::Parallel);
  EXPECT_EQ(a.max_gram_eig, b.max_gram_eig);
  EXPECT_EQ(a.max_identity_residual, b.max_identity_residual);
  EXPECT_EQ(a.max_subtraction_residual, b.max_subtraction_residual);
  EXPECT_EQ(a.subcase_counts, b.subcase_counts);
}

TEST(ParallelVsSerial, ConstrainedScan) {
  const auto a = constrained_scan(0.6, 20000, 3.0, 4, 1e-6, Execution::Serial);
  const auto b = constrained_scan(0.6, 20000, 3.0, 4, 1e-6, Execution::Parallel);
  EXPECT_EQ(a.min_g, b.min_g);
  EXPECT_EQ(a.min_f_gap, b.min_f_gap);
  EXPECT_EQ(a.argmin, b.argmin);
  EXPECT_EQ(a.sign_mismatches, b.sign_mismatches);
}

TEST(ParallelVsSerial, ZeroLocus) {
  const auto w = choi_matrix(DTypeMap(1.0, kCycle));
  const auto a = zero_locus_span(w, {.seed = 3}, 300, Execution::Serial);
  const auto b = zero_locus_span(w, {.seed = 3}, 300, Execution::Parallel);
  EXPECT_EQ(a.dimension, b.dimension);
  EXPECT_EQ(a.points_collected, b.points_collected);
  EXPECT_EQ(a.vectors, b.vectors);
}

TEST(ParallelVsSerial, SubtractionProbe) {
  const DTypeMap m(0.5, kCycle);
  const auto a = subtraction_probe(m, 4, 6, {}, Execution::Serial);
  const auto b = subtraction_probe(m, 4, 6, {}, Execution::Parallel);
  EXPECT_EQ(a.found, b.found);
  EXPECT_EQ(a.best_scale, b.best_scale);
  EXPECT_EQ(a.candidates_passing, b.candidates_passing);
}

TEST(ParallelVsSerial, ExceptionsPropagateFromWorkers) {
  EXPECT_THROW(for_each_index(Execution::Parallel, 100,
                              [](std::size_t i) {
                                if (i == 37) throw InvalidArgument("boom");
                              }),
               InvalidArgument);
}
