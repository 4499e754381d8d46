#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "ewopt/dtype_map.hpp"
#include "ewopt/errors.hpp"
#include "ewopt/inequality.hpp"
#include "ewopt/optimality.hpp"
#include "ewopt/perm.hpp"
#include "ewopt/positivity.hpp"
#include "ewopt/random.hpp"

namespace ewopt::cli {

namespace {

using nlohmann::json;
namespace jio = ewopt::json;

constexpr std::size_t kMaxDimension = 4;
constexpr double kScanTolerance = 1e-9;
constexpr double kIdentityTolerance = 1e-12;
constexpr double kQuarticTolerance = 1e-10;
constexpr double kSumTolerance = 1e-14;

Execution execution(const RunConfig& cfg) { return cfg.serial ? Execution::Serial : Execution::Parallel; }

std::size_t or_default(std::size_t value, std::size_t fallback) { return value == 0 ? fallback : value; }

Permutation resolve_permutation(const RunConfig& cfg) {
  if (!cfg.pi.empty()) {
    auto p = Permutation::parse(cfg.pi);
    if (p.size() < 2 || p.size() > kMaxDimension) throw InvalidArgument("n must lie in 2..4");
    return p;
  }
  if (cfg.n < 2 || cfg.n > kMaxDimension) throw InvalidArgument("n must lie in 2..4");
  std::vector<int> images(cfg.n);
  std::iota(images.begin(), images.end(), 2);
  images.back() = 1;
  return Permutation(std::move(images));
}

DTypeMap resolve_map(const RunConfig& cfg) { return DTypeMap(cfg.t, resolve_permutation(cfg)); }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

SearchConfig search_config(const RunConfig& cfg) {
  if (cfg.restarts <= 0 || cfg.iters <= 0) throw InvalidArgument("restarts and iters must be positive");
  SearchConfig s;
  s.restarts = cfg.restarts;
  s.max_iters = cfg.iters;
  s.seed = cfg.seed;
  return s;
}

json map_config(const RunConfig& cfg, const DTypeMap& m) {
  return {{"t", m.t()}, {"pi", m.pi().to_string()}, {"n", m.n()}, {"serial", cfg.serial}};
}

json base_report(const RunConfig& cfg, json config, json tolerances, const char* claim) {
  config["command"] = cfg.command;
  return {{"command", cfg.command},
          {"config", std::move(config)},
          {"tolerances", std::move(tolerances)},
          {"paper_claim", claim}};
}

bool nearly_one(double t) { return std::abs(t - 1.0) <= 1e-12; }

// ---------------------------------------------------------------------------

CommandResult build_witness(const RunConfig& cfg) {
  auto m = resolve_map(cfg);
  if (!cfg.subtraction_file.empty()) {
    m = m.with_subtraction(jio::matrix_from_json(read_json_file(cfg.subtraction_file)));
  }
  const auto w = choi_matrix(m);
  auto report = base_report(cfg, map_config(cfg, m), {{"psd", kPsdTolerance}},
                            "The Choi matrix of a positive map that is not completely positive is an "
                            "entanglement witness.");
  report["map"] = jio::map_to_json(m);
  report["choi"] = jio::matrix_to_json(w.choi);
  report["min_eigenvalue"] = min_eigenvalue(w.choi);
  return {std::move(report), kExitPass};
}

CommandResult check_positivity(const RunConfig& cfg) {
  auto m = resolve_map(cfg);
  if (cfg.c && !cfg.subtraction_file.empty()) throw InvalidArgument("use either --c or --subtraction");
  if (cfg.c) {
    ComplexMatrix c(m.n(), m.n());
    c(0, 0) = *cfg.c;
    c(1, 1) = -*cfg.c;
    m = m.with_subtraction(std::move(c));
  } else if (!cfg.subtraction_file.empty()) {
    m = m.with_subtraction(jio::matrix_from_json(read_json_file(cfg.subtraction_file)));
  }
  const auto search = search_config(cfg);
  const auto verdict = numeric_block_positivity(choi_matrix(m), search, execution(cfg));

  auto config = map_config(cfg, m);
  config["search"] = jio::search_config_to_json(search);
  if (cfg.c) config["c"] = *cfg.c;
  auto report = base_report(cfg, std::move(config), {{"violation", kViolationThreshold}},
                            "Phi_{t,pi} is positive exactly when 0 <= t <= n / l(pi).");
  report["map"] = jio::map_to_json(m);
  report["numeric"] = jio::verdict_to_json(verdict);
  const bool violated = verdict.status == PositivityStatus::ViolationFound;
  if (!m.subtraction()) {
    const bool positive = closed_form_positive(m.n(), m.t(), m.pi());
    report["closed_form"] = to_string(closed_form_verdict(m).status);
    report["loop_length"] = loop_length(m.pi());
    report["agrees_with_closed_form"] = positive != violated;
  }
  return {std::move(report), violated ? kExitFinding : kExitPass};
}

CommandResult check_cp(const RunConfig& cfg) {
  const auto m = resolve_map(cfg);
  const auto cp = is_completely_positive(m);
  auto report = base_report(cfg, map_config(cfg, m), {{"psd", kPsdTolerance}},
                            "Phi_{t,pi} is completely positive exactly when t = 0 or pi is the identity.");
  report["completely_positive"] = cp.completely_positive;
  report["min_eigenvalue"] = cp.min_eigenvalue;
  return {std::move(report), cp.completely_positive ? kExitPass : kExitFinding};
}

CommandResult check_optimality(const RunConfig& cfg) {
  const auto p = resolve_permutation(cfg);
  auto report = base_report(cfg, {{"t", cfg.t}, {"pi", p.to_string()}, {"n", p.size()}},
                            {{"unit_t", 1e-12}},
                            "For n = 3 the witness is optimal exactly when t = 1 and pi is a 3-cycle.");
  try {
    const auto v = optimality_verdict(cfg.t, p);
    report["witness"] = true;
    report["optimal"] = v.optimal;
    report["reason"] = to_string(v.reason);
    report["certificate"] = v.certificate ? jio::matrix_to_json(*v.certificate) : json(nullptr);
  } catch (const NotAWitness& e) {
    report["witness"] = false;
    report["optimal"] = false;
    report["reason"] = e.what();
    report["certificate"] = nullptr;
  }
  return {std::move(report), kExitPass};
}

CommandResult decompose(const RunConfig& cfg) {
  const auto m = resolve_map(cfg);
  const auto split = case2_split(m.t(), m.pi());
  const auto w = choi_matrix(m);
  const double positive_min = min_eigenvalue(split.positive_part);
  const auto ppt = is_ppt(split.ppt_part, 3, 3);
  const double sum_error = max_abs_diff(split.positive_part + split.ppt_part, w.choi);
  const double positive_norm = split.positive_part.frobenius_norm();

  const bool ok = positive_min >= -kPsdTolerance && ppt.ppt && sum_error <= kSumTolerance &&
                  positive_norm > kPsdTolerance;
  auto report = base_report(cfg, map_config(cfg, m),
                            {{"psd", kPsdTolerance}, {"sum", kSumTolerance}},
                            "For l(pi) = 2 the witness is a nonzero positive part plus a PPT part, so it "
                            "is decomposable and not optimal.");
  report["branch"] = to_string(split.branch);
  report["positive_part"] = jio::matrix_to_json(split.positive_part);
  report["ppt_part"] = jio::matrix_to_json(split.ppt_part);
  report["checks"] = {{"positive_part_min_eigenvalue", positive_min},
                      {"positive_part_frobenius", positive_norm},
                      {"ppt_part_min_eigenvalue", ppt.min_eigenvalue},
                      {"ppt_part_min_pt_eigenvalue", ppt.min_pt_eigenvalue},
                      {"ppt_part_is_ppt", ppt.ppt},
                      {"sum_max_abs_error", sum_error},
                      {"passed", ok}};
  return {std::move(report), ok ? kExitPass : kExitFinding};
}

CommandResult certificate_sweep_command(const RunConfig& cfg) {
  const double c = cfg.c.value_or(std::sqrt(std::max(0.0, 1.0 - cfg.t)));
  const auto samples = or_default(cfg.samples, 10000);
  const auto r = certificate_sweep(cfg.t, c, samples, cfg.seed, execution(cfg));
  auto report = base_report(
      cfg, {{"t", cfg.t}, {"c", c}, {"samples", samples}, {"seed", cfg.seed}, {"serial", cfg.serial}},
      {{"contraction", 1e-9}, {"zero_modulus", 1e-12}},
      "For a 3-cycle and 0 < t < 1, every local coefficient matrix of C0 = diag(c, -c, 0) with "
      "c^2 <= 1 - t is a contraction, so the subtracted map stays positive.");
  report.update(jio::sweep_report_to_json(r));
  return {std::move(report), r.violations.empty() ? kExitPass : kExitFinding};
}

CommandResult verify_lemma24(const RunConfig& cfg) {
  const double t = cfg.t;
  const auto samples = or_default(cfg.samples, 100000);
  const Triple unit{1.0, 1.0, 1.0};

  const double g_unit = g_value(t, unit);
  const double lambda = stationary_multiplier(t);
  const auto residual = lagrange_residual(t, unit, lambda);
  double max_residual = 0.0;
  for (double v : residual) max_residual = std::max(max_residual, std::abs(v));

  double max_quartic_error = 0.0;
  double min_bracket = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 1000; ++i) {
    auto rng = make_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL, i);
    const double x1 = std::exp(std::uniform_real_distribution<double>(-2.0, 2.0)(rng));
    const auto q = quartic_factor_check(t, x1);
    max_quartic_error = std::max(max_quartic_error, std::abs(q.lhs - q.expanded));
    min_bracket = std::min(min_bracket, q.bracket);
  }

  const auto scan = constrained_scan(t, samples, 3.0, cfg.seed, 1e-6, execution(cfg));
  const bool ok = std::abs(g_unit) <= kIdentityTolerance && max_residual <= kIdentityTolerance &&
                  max_quartic_error <= kQuarticTolerance && min_bracket > 0.0 &&
                  scan.min_g >= -kScanTolerance && scan.min_f_gap >= -kScanTolerance &&
                  scan.sign_mismatches == 0;

  auto report = base_report(
      cfg,
      {{"t", t}, {"samples", samples}, {"seed", cfg.seed}, {"half_width", 3.0},
       {"exclusion_radius", 1e-6}, {"quartic_points", 1000}, {"serial", cfg.serial}},
      {{"scan", kScanTolerance}, {"identity", kIdentityTolerance}, {"quartic", kQuarticTolerance}},
      "On x1 x2 x3 = 1 the ratio f is at least 1 - t, equivalently g >= 0, with g(1,1,1) = 0 the "
      "minimum and (1,1,1) the only stationary point.");
  report.update(jio::scan_report_to_json(scan));
  report["g_at_unit"] = g_unit;
  report["lagrange"] = {{"lambda", lambda}, {"max_residual", max_residual},
                        {"other_branch_x3", (t - 1.0) / t}};
  report["quartic"] = {{"max_abs_error", max_quartic_error}, {"min_bracket", min_bracket}};
  report["passed"] = ok;
  return {std::move(report), ok ? kExitPass : kExitFinding};
}

CommandResult verify_subcases(const RunConfig& cfg) {
  const double t = cfg.t;
  if (!(t > 0.0 && t < 1.0)) throw InvalidArgument("t must lie in (0, 1)");
  const auto samples = or_default(cfg.samples, 10000);
  constexpr double kHalfWidth = 3.0;

  json cases = json::object();
  bool ok = true;
  const BoundCase all_cases[] = {BoundCase::S2, BoundCase::S3, BoundCase::S4, BoundCase::S5};
  for (std::size_t k = 0; k < 4; ++k) {
    const BoundCase which = all_cases[k];
    double min_gap = std::numeric_limits<double>::infinity();
    std::size_t failures = 0;
    std::size_t evaluated = 0;
    for (std::size_t i = 0; i < samples; ++i) {
      auto rng = make_rng(cfg.seed + k, i);
      std::uniform_real_distribution<double> u(-kHalfWidth, kHalfWidth);
      const double u1 = u(rng);
      const double u2 = u(rng);
      Triple r{std::exp(u1), std::exp(u2), std::exp(-u1 - u2)};
      if (which == BoundCase::S2 && std::abs(r[0] - 1.0) < 1e-6 && std::abs(r[1] - 1.0) < 1e-6) continue;
      const auto b = subcase_bound(which, t, r);
      ++evaluated;
      min_gap = std::min(min_gap, b.c2_bound - (1.0 - t));
      if (!b.ge_1mt) ++failures;
    }
    ok = ok && failures == 0;
    cases[to_string(which)] = {{"evaluated", evaluated}, {"min_gap", min_gap}, {"failures", failures}};
  }

  auto report = base_report(cfg, {{"t", t}, {"samples", samples}, {"seed", cfg.seed}, {"half_width", kHalfWidth}},
                            {{"bound", 1e-12}},
                            "In every boundary subcase the largest admissible c^2 is at least 1 - t.");
  report["cases"] = std::move(cases);
  report["passed"] = ok;
  return {std::move(report), ok ? kExitPass : kExitFinding};
}

CommandResult zero_locus(const RunConfig& cfg) {
  const auto m = resolve_map(cfg);
  const auto samples = or_default(cfg.samples, 2000);
  const auto search = search_config(cfg);
  const auto w = choi_matrix(m);
  const auto r = zero_locus_span(w, search, samples, execution(cfg));
  auto config = map_config(cfg, m);
  config["samples"] = samples;
  config["search"] = jio::search_config_to_json(search);
  auto report = base_report(cfg, std::move(config),
                            {{"eigen_threshold", kZeroLocusEigenThreshold}, {"rank", kZeroLocusRankTolerance}},
                            "Witnesses induced by Choi-type maps do not have the spanning property.");
  report["dimension"] = r.dimension;
  report["full_dimension"] = w.choi.rows();
  report["spanning"] = r.dimension == w.choi.rows();
  report["points_collected"] = r.points_collected;
  json vectors = json::array();
  for (const auto& v : r.vectors) vectors.push_back(jio::vector_to_json(v));
  report["vectors"] = std::move(vectors);
  return {std::move(report), kExitPass};
}

CommandResult detect(const RunConfig& cfg) {
  const auto m = resolve_map(cfg);
  const auto w = choi_matrix(m);
  ComplexMatrix rho;
  std::string source;
  if (!cfg.rho_file.empty()) {
    rho = jio::matrix_from_json(read_json_file(cfg.rho_file));
    source = cfg.rho_file;
  } else if (cfg.state == "maximally-entangled") {
    rho = max_entangled(m.n());
    source = cfg.state;
  } else if (cfg.state == "maximally-mixed") {
    const auto d = w.choi.rows();
    rho = (1.0 / static_cast<double>(d)) * ComplexMatrix::identity(d);
    source = cfg.state;
  } else {
    const auto v = hermitian_eig(w.choi).eigenvector(0);
    rho = ComplexMatrix::outer(v);
    source = cfg.state;
  }
  const double value = detect_value(w, rho);
  const bool detected = value < -kPsdTolerance;
  auto config = map_config(cfg, m);
  config["state"] = source;
  auto report = base_report(cfg, std::move(config), {{"state", 1e-9}, {"detection", kPsdTolerance}},
                            "A state rho is detected by W when Tr(W rho) < 0.");
  report["value"] = value;
  report["detected"] = detected;
  return {std::move(report), detected ? kExitFinding : kExitPass};
}

json probe_to_json(const ProbeResult& r) {
  return {{"found", r.found},
          {"best_scale", r.best_scale},
          {"best_c", r.best_c ? jio::matrix_to_json(*r.best_c) : json(nullptr)},
          {"candidates_tested", r.candidates_tested},
          {"candidates_passing", r.candidates_passing}};
}

ProbeOptions probe_options(const RunConfig& cfg) {
  ProbeOptions o;
  o.search.restarts = cfg.restarts;
  o.search.max_iters = cfg.iters;
  o.search.seed = cfg.seed;
  if (cfg.min_scale) o.min_scale = *cfg.min_scale;
  return o;
}

json probe_options_json(const ProbeOptions& o) {
  return {{"search", jio::search_config_to_json(o.search)},
          {"min_scale", o.min_scale},
          {"max_scale", o.max_scale},
          {"bisection_steps", o.bisection_steps}};
}

CommandResult probe_subtraction(const RunConfig& cfg) {
  const auto m = resolve_map(cfg);
  search_config(cfg);
  const auto trials = or_default(cfg.trials, 200);
  const auto options = probe_options(cfg);
  const auto r = subtraction_probe(m, trials, cfg.seed, options, execution(cfg));
  auto config = map_config(cfg, m);
  config["trials"] = trials;
  config["seed"] = cfg.seed;
  config["probe"] = probe_options_json(options);
  auto report = base_report(cfg, std::move(config), {{"violation", kViolationThreshold}},
                            "An optimal witness admits no nonzero C with Phi - C . C^dag positive; a "
                            "non-optimal one does.");
  report.update(probe_to_json(r));
  return {std::move(report), r.found ? kExitFinding : kExitPass};
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text.empty() ? std::string("0.5,1") : text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size() || !std::isfinite(v)) throw InvalidArgument("bad grid value");
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw InvalidArgument("bad grid value '" + item + "'");
    }
  }
  if (out.empty()) throw InvalidArgument("empty t grid");
  return out;
}

// Relabeling the basis conjugates pi and leaves every property checked here
// unchanged, so one permutation per cycle type covers the grid.
std::vector<Permutation> probe_permutations(std::size_t n, bool all) {
  std::vector<Permutation> out;
  std::vector<std::vector<std::size_t>> seen;
  for (auto& p : Permutation::all(n)) {
    std::vector<std::size_t> type;
    for (const auto& loop : loop_decomposition(p).loops) type.push_back(loop.size());
    std::sort(type.begin(), type.end());
    if (!all && std::find(seen.begin(), seen.end(), type) != seen.end()) continue;
    seen.push_back(std::move(type));
    out.push_back(std::move(p));
  }
  return out;
}

CommandResult conjecture_probe(const RunConfig& cfg) {
  if (cfg.n < 2 || cfg.n > kMaxDimension) throw InvalidArgument("n must lie in 2..4");
  const auto grid = parse_grid(cfg.grid);
  const auto search = search_config(cfg);
  const auto trials = or_default(cfg.trials, 8);
  const auto options = probe_options(cfg);

  json points = json::array();
  bool consistent = true;
  for (const auto& p : probe_permutations(cfg.n, cfg.all_permutations)) {
    const auto length = loop_length(p);
    const bool involution = p.compose(p) == Permutation::identity(cfg.n);
    for (double t : grid) {
      if (t < 0.0 || t > static_cast<double>(cfg.n)) throw InvalidArgument("grid t must lie in [0, n]");
      const DTypeMap m(t, p);
      const bool positive = closed_form_positive(cfg.n, t, p);
      const auto cp = is_completely_positive(m);
      const auto verdict = numeric_block_positivity(choi_matrix(m), search, execution(cfg));
      const bool agrees = positive != (verdict.status == PositivityStatus::ViolationFound);
      const bool conjectured = nearly_one(t) && length == cfg.n && !involution;

      json point = {{"pi", p.to_string()},
                    {"t", t},
                    {"loop_length", length},
                    {"closed_form_positive", positive},
                    {"numeric_min", verdict.min_value},
                    {"agrees_with_closed_form", agrees},
                    {"completely_positive", cp.completely_positive},
                    {"conjectured_optimal", conjectured}};
      bool point_ok = agrees;
      if (positive && !cp.completely_positive) {
        const auto probe = subtraction_probe(m, trials, cfg.seed, options, execution(cfg));
        point["probe_found"] = probe.found;
        point["probe_best_scale"] = probe.best_scale;
        point_ok = point_ok && !(conjectured && probe.found);
      } else {
        point["probe_found"] = nullptr;
      }
      point["consistent"] = point_ok;
      consistent = consistent && point_ok;
      points.push_back(std::move(point));
    }
  }

  auto report = base_report(
      cfg,
      {{"n", cfg.n}, {"grid", grid}, {"trials", trials}, {"seed", cfg.seed},
       {"all_permutations", cfg.all_permutations},
       {"search", jio::search_config_to_json(search)}, {"probe", probe_options_json(options)},
       {"serial", cfg.serial}},
      {{"psd", kPsdTolerance}, {"violation", kViolationThreshold}},
      "Conjectured: for n >= 3 the witness is optimal exactly when t = 1, l(pi) = n and pi^2 != id.");
  report["points"] = std::move(points);
  report["consistent"] = consistent;
  return {std::move(report), consistent ? kExitPass : kExitFinding};
}

}  // namespace

CommandResult run(const RunConfig& cfg) {
  if (cfg.command == "build-witness") return build_witness(cfg);
  if (cfg.command == "check-positivity") return check_positivity(cfg);
  if (cfg.command == "check-cp") return check_cp(cfg);
  if (cfg.command == "check-optimality") return check_optimality(cfg);
  if (cfg.command == "decompose") return decompose(cfg);
  if (cfg.command == "certificate-sweep") return certificate_sweep_command(cfg);
  if (cfg.command == "verify-lemma24") return verify_lemma24(cfg);
  if (cfg.command == "verify-subcases") return verify_subcases(cfg);
  if (cfg.command == "zero-locus") return zero_locus(cfg);
  if (cfg.command == "detect") return detect(cfg);
  if (cfg.command == "probe-subtraction") return probe_subtraction(cfg);
  if (cfg.command == "conjecture-probe") return conjecture_probe(cfg);
  throw InvalidArgument("unknown command " + cfg.command);
}

}  // namespace ewopt::cli
