#include "ewopt/json_io.hpp"

#include <cmath>
#include <string>

#include "ewopt/errors.hpp"

namespace ewopt::json {

namespace {

double finite_number(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(std::string(what) + " must be finite");
  return v;
}

std::size_t count_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<long long>() < 0) {
    throw ParseError(std::string("field '") + key + "' must be a non-negative integer");
  }
  return j.at(key).get<std::size_t>();
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json data = json::array();
  for (const auto& z : m.data()) data.push_back({z.real(), z.imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("matrix must be a JSON object");
  const auto rows = count_field(j, "rows");
  const auto cols = count_field(j, "cols");
  if (!j.contains("data") || !j.at("data").is_array()) throw ParseError("matrix 'data' must be an array");
  const auto& data = j.at("data");
  if (data.size() != rows * cols) throw ParseError("matrix 'data' length differs from rows*cols");
  std::vector<Complex> entries;
  entries.reserve(data.size());
  for (const auto& pair : data) {
    if (!pair.is_array() || pair.size() != 2) throw ParseError("matrix entries must be [re, im]");
    entries.emplace_back(finite_number(pair[0], "real part"), finite_number(pair[1], "imaginary part"));
  }
  return ComplexMatrix(rows, cols, std::move(entries));
}

json vector_to_json(std::span<const Complex> v) {
  json out = json::array();
  for (const auto& z : v) out.push_back({z.real(), z.imag()});
  return out;
}

json map_to_json(const DTypeMap& m) {
  json out = {{"n", m.n()}, {"t", m.t()}, {"pi", m.pi().images()}};
  out["subtraction"] = m.subtraction() ? matrix_to_json(*m.subtraction()) : json(nullptr);
  return out;
}

DTypeMap map_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("map descriptor must be a JSON object");
  const auto n = count_field(j, "n");
  if (!j.contains("t")) throw ParseError("map descriptor needs 't'");
  const double t = finite_number(j.at("t"), "t");
  if (!j.contains("pi") || !j.at("pi").is_array()) throw ParseError("map descriptor needs 'pi' array");
  std::vector<int> images;
  for (const auto& v : j.at("pi")) {
    if (!v.is_number_integer()) throw ParseError("'pi' entries must be integers");
    images.push_back(v.get<int>());
  }
  if (images.size() != n) throw ParseError("'pi' length differs from n");
  DTypeMap m(t, Permutation(std::move(images)));
  if (j.contains("subtraction") && !j.at("subtraction").is_null()) {
    return m.with_subtraction(matrix_from_json(j.at("subtraction")));
  }
  return m;
}

json search_config_to_json(const SearchConfig& c) {
  return {{"restarts", c.restarts}, {"max_iters", c.max_iters}, {"tol", c.tol}, {"seed", c.seed}};
}

SearchConfig search_config_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("search config must be a JSON object");
  SearchConfig c;
  if (j.contains("restarts")) c.restarts = static_cast<int>(count_field(j, "restarts"));
  if (j.contains("max_iters")) c.max_iters = static_cast<int>(count_field(j, "max_iters"));
  if (j.contains("tol")) c.tol = finite_number(j.at("tol"), "tol");
  if (j.contains("seed")) c.seed = count_field(j, "seed");
  if (c.restarts <= 0 || c.max_iters <= 0) throw ParseError("restarts and max_iters must be positive");
  return c;
}

json verdict_to_json(const PositivityVerdict& v) {
  json out = {{"status", to_string(v.status)}, {"samples_used", v.samples_used}};
  out["min_value"] = std::isfinite(v.min_value) ? json(v.min_value) : json(nullptr);
  if (v.witness_pair) {
    out["witness_pair"] = {{"e", vector_to_json(v.witness_pair->e)},
                           {"f", vector_to_json(v.witness_pair->f)}};
  } else {
    out["witness_pair"] = nullptr;
  }
  return out;
}

json sweep_report_to_json(const SweepReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"x", vector_to_json(v.x)}, {"max_gram_eig", v.max_gram_eig}});
  }
  json counts = json::object();
  for (std::size_t k = 1; k < r.subcase_counts.size(); ++k) {
    counts[std::to_string(k)] = r.subcase_counts[k];
  }
  return {{"t", r.t},
          {"c", r.c},
          {"samples", r.samples},
          {"max_gram_eig", r.max_gram_eig},
          {"max_identity_residual", r.max_identity_residual},
          {"max_subtraction_residual", r.max_subtraction_residual},
          {"subcase_counts", std::move(counts)},
          {"violations", std::move(violations)}};
}

json scan_report_to_json(const ScanResult& r) {
  return {{"t", r.t},
          {"samples", r.samples},
          {"min_g", r.min_g},
          {"min_f_gap", r.min_f_gap},
          {"argmin", {r.argmin[0], r.argmin[1], r.argmin[2]}},
          {"excluded", r.excluded},
          {"sign_mismatches", r.sign_mismatches}};
}

}  // namespace ewopt::json
