#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>

namespace ewopt {

/// Selects between the OpenMP kernel and the serial reference loop.
/// Both paths evaluate the same per-index body and reduce in index order,
/// so results are bit-identical.
enum class Execution { Serial, Parallel };

/// Runs body(i) for i in [0, count). In the parallel path an exception thrown
/// by any body is captured and the one from the lowest index is rethrown
/// after the loop, matching what the serial path would have raised first.
template <typename Body>
void for_each_index(Execution exec, std::size_t count, Body&& body) {
  const auto n = static_cast<std::int64_t>(count);
  if (exec == Execution::Serial) {
    for (std::int64_t i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
    return;
  }
  std::exception_ptr first;
  std::int64_t first_index = n;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(ewopt_for_each_index)
      if (i < first_index) {
        first_index = i;
        first = std::current_exception();
      }
    }
  }
  if (first) std::rethrow_exception(first);
}

}  // namespace ewopt
