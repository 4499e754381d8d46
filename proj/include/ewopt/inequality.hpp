#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "ewopt/execution.hpp"

namespace ewopt {

using Triple = std::array<double, 3>;

/// Positive triple on the surface x1 x2 x3 = 1, together with 0 < t < 1.
struct ConstraintPoint {
  Triple x{1.0, 1.0, 1.0};
  double t = 0.5;

  /// Throws InvalidArgument unless all x_i > 0, |x1 x2 x3 - 1| <= 1e-12 and 0 < t < 1.
  static ConstraintPoint make(double t, Triple x);
};

/// g = (2t^2-2t-3) + (1-t)x1 + (1-t)x2 + (1-t^2)x3 + (2t-t^2)x1x2 + t x2x3 + t x1x3.
/// Plain polynomial evaluation; the constraint is not enforced.
double g_value(double t, const Triple& x);
inline double g_value(const ConstraintPoint& p) { return g_value(p.t, p.x); }

/// The ratio (1 - sum b_i) / (b1 + b2 - 4 b1 b2 - b1 b3 - b2 b3), b_i = 1/((3-t) + t x_i).
/// Throws DegeneratePoint at (1,1,1) (within 1e-12) where it is 0/0.
double f_value(double t, const Triple& x);
inline double f_value(const ConstraintPoint& p) { return f_value(p.t, p.x); }

/// Denominator of f_value; positive away from (1,1,1) on the constraint surface.
double f_denominator(double t, const Triple& x);

struct ScanResult {
  double t = 0.0;
  std::size_t samples = 0;
  double min_g = 0.0;
  double min_f_gap = 0.0;          // min of f - (1-t) over samples outside the exclusion ball
  Triple argmin{};                 // point attaining min_g
  std::size_t excluded = 0;        // samples within the exclusion radius of (1,1,1)
  std::size_t sign_mismatches = 0; // samples where sign(f-(1-t)) != sign(g), |g| > 1e-12
};

/// x = (e^{u1}, e^{u2}, e^{-u1-u2}) with u uniform on [-L, L]^2, per-sample seeds.
/// Throws InvalidArgument unless 0 < t < 1 and L > 0.
ScanResult constrained_scan(double t, std::size_t samples, double half_width, std::uint64_t seed,
                            double exclusion_radius = 1e-6, Execution exec = Execution::Parallel);

/// Left-hand sides of the stationarity system of L = g + lambda (x1 x2 x3 - 1):
/// (dL/dx1, dL/dx2, dL/dx3, x1 x2 x3 - 1).
std::array<double, 4> lagrange_residual(double t, const Triple& x, double lambda);

/// Multiplier making (1,1,1) stationary, solved from the dL/dx3 equation.
double stationary_multiplier(double t);

/// Analytic gradient of g.
Triple g_gradient(double t, const Triple& x);

struct QuarticCheck {
  double lhs = 0.0;       // (x1 - 1) * bracket
  double bracket = 0.0;   // (2t-t^2)x^3 + (1+t-t^2)x^2 + (1+t-t^2)x + (1-t^2)
  double expanded = 0.0;  // (2t-t^2)x^4 + (1-t)x^3 - t x + (t^2-1)
};

QuarticCheck quartic_factor_check(double t, double x1);

enum class BoundCase { S2, S3, S4, S5 };

const char* to_string(BoundCase c);

struct SubcaseBound {
  double c2_bound = 0.0;
  bool ge_1mt = false;  // c2_bound >= (1 - t) - 1e-12
};

/// Exact upper bound on c^2 that keeps the Gram matrix of the matching subcase
/// contractive. r = (r1, r2, r3); S3 reads r2, S4 reads r3, S5 reads r1.
/// S2 needs r1 r2 r3 = 1 and r != (1,1,1) (DegeneratePoint).
/// Throws InvalidArgument for non-positive r or t outside (0,1).
SubcaseBound subcase_bound(BoundCase which, double t, const Triple& r);

}  // namespace ewopt
