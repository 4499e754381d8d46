#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace ewopt {

using Rng = std::mt19937_64;

// splitmix64 finalizer over (base, index); gives every sample its own stream
// so parallel schedules cannot change which numbers a sample sees.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline Rng make_rng(std::uint64_t base, std::uint64_t index) {
  return Rng(derive_seed(base, index));
}

/// Standard complex Gaussian entries (unit variance per component).
inline std::vector<std::complex<double>> gaussian_vector(Rng& rng, std::size_t dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::complex<double>> v(dim);
  for (auto& z : v) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = {re, im};
  }
  return v;
}

}  // namespace ewopt
