#pragma once

#include "json.hpp"

#include "ewopt/dtype_map.hpp"
#include "ewopt/inequality.hpp"
#include "ewopt/linalg.hpp"
#include "ewopt/optimality.hpp"
#include "ewopt/positivity.hpp"

namespace ewopt::json {

using nlohmann::json;

/// {"rows": r, "cols": c, "data": [[re, im], ...]} row-major.
json matrix_to_json(const ComplexMatrix& m);
/// Throws ParseError on malformed input, NaN or infinite entries.
ComplexMatrix matrix_from_json(const json& j);

json vector_to_json(std::span<const Complex> v);

/// {"n": 3, "t": 0.5, "pi": [2,3,1], "subtraction": <matrix or null>}
json map_to_json(const DTypeMap& m);
DTypeMap map_from_json(const json& j);

/// {"restarts": 100, "max_iters": 200, "tol": 1e-12, "seed": 42}; missing keys keep defaults.
json search_config_to_json(const SearchConfig& c);
SearchConfig search_config_from_json(const json& j);

json verdict_to_json(const PositivityVerdict& v);

/// {"t", "c", "samples", "max_gram_eig", "violations": [...], ...}
json sweep_report_to_json(const SweepReport& r);

/// {"t", "samples", "min_g", "min_f_gap", "argmin": [x1, x2, x3], ...}
json scan_report_to_json(const ScanResult& r);

}  // namespace ewopt::json
