#include "ewopt/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "ewopt/errors.hpp"
#include "ewopt/random.hpp"

namespace ewopt {

namespace {

constexpr double kDegenerateRadius = 1e-12;

bool near_unit_point(const Triple& x, double radius) {
  return std::abs(x[0] - 1.0) <= radius && std::abs(x[1] - 1.0) <= radius &&
         std::abs(x[2] - 1.0) <= radius;
}

void require_open_unit_t(double t) {
  if (!(t > 0.0 && t < 1.0)) throw InvalidArgument("t must lie in (0, 1)");
}

std::array<double, 3> f_weights(double t, const Triple& x) {
  return {1.0 / ((3.0 - t) + t * x[0]), 1.0 / ((3.0 - t) + t * x[1]),
          1.0 / ((3.0 - t) + t * x[2])};
}

// r / (t + (3-t) r)
double slot_weight(double t, double r) { return r / (t + (3.0 - t) * r); }

}  // namespace

ConstraintPoint ConstraintPoint::make(double t, Triple x) {
  require_open_unit_t(t);
  if (!(x[0] > 0.0 && x[1] > 0.0 && x[2] > 0.0)) {
    throw InvalidArgument("constraint point needs positive coordinates");
  }
  if (std::abs(x[0] * x[1] * x[2] - 1.0) > 1e-12) {
    throw InvalidArgument("constraint point needs x1 x2 x3 = 1");
  }
  return ConstraintPoint{x, t};
}

// Expanded in d = x - (1,1,1): the constant term cancels symbolically, so
// g(1,1,1) is exactly 0 and values near the minimum avoid cancellation.
double g_value(double t, const Triple& x) {
  const double t2 = t * t;
  const double d1 = x[0] - 1.0;
  const double d2 = x[1] - 1.0;
  const double d3 = x[2] - 1.0;
  return (1.0 + 2.0 * t - t2) * (d1 + d2 + d3) + (2.0 * t - t2) * d1 * d2 + t * (d2 * d3 + d1 * d3);
}

double f_denominator(double t, const Triple& x) {
  const auto b = f_weights(t, x);
  return b[0] + b[1] - 4.0 * b[0] * b[1] - b[0] * b[2] - b[1] * b[2];
}

double f_value(double t, const Triple& x) {
  if (near_unit_point(x, kDegenerateRadius)) throw DegeneratePoint("f is 0/0 at (1,1,1)");
  const auto b = f_weights(t, x);
  return (1.0 - b[0] - b[1] - b[2]) / f_denominator(t, x);
}

ScanResult constrained_scan(double t, std::size_t samples, double half_width, std::uint64_t seed,
                            double exclusion_radius, Execution exec) {
  require_open_unit_t(t);
  if (!(half_width > 0.0)) throw InvalidArgument("scan half-width must be positive");

  struct Sample {
    Triple x;
    double g = 0.0;
    double f_gap = std::numeric_limits<double>::infinity();
    bool excluded = false;
    bool mismatch = false;
  };
  std::vector<Sample> out(samples);
  for_each_index(exec, samples, [&](std::size_t i) {
    auto rng = make_rng(seed, i);
    std::uniform_real_distribution<double> uniform(-half_width, half_width);
    const double u1 = uniform(rng);
    const double u2 = uniform(rng);
    Sample s;
    s.x = {std::exp(u1), std::exp(u2), std::exp(-u1 - u2)};
    s.g = g_value(t, s.x);
    s.excluded = near_unit_point(s.x, exclusion_radius);
    if (!s.excluded) {
      s.f_gap = f_value(t, s.x) - (1.0 - t);
      if (std::abs(s.g) > 1e-12) s.mismatch = (s.f_gap >= 0.0) != (s.g >= 0.0);
    }
    out[i] = s;
  });

  ScanResult r;
  r.t = t;
  r.samples = samples;
  r.min_g = std::numeric_limits<double>::infinity();
  r.min_f_gap = std::numeric_limits<double>::infinity();
  for (const auto& s : out) {
    if (s.g < r.min_g) {
      r.min_g = s.g;
      r.argmin = s.x;
    }
    if (s.excluded) {
      ++r.excluded;
    } else {
      r.min_f_gap = std::min(r.min_f_gap, s.f_gap);
      if (s.mismatch) ++r.sign_mismatches;
    }
  }
  return r;
}

std::array<double, 4> lagrange_residual(double t, const Triple& x, double lambda) {
  const double t2 = t * t;
  return {
      (1.0 - t) + (2.0 * t - t2) * x[1] + t * x[2] + lambda * x[1] * x[2],
      (1.0 - t) + (2.0 * t - t2) * x[0] + t * x[2] + lambda * x[0] * x[2],
      (1.0 - t2) + t * x[1] + t * x[0] + lambda * x[0] * x[1],
      x[0] * x[1] * x[2] - 1.0,
  };
}

double stationary_multiplier(double t) {
  // (1 - t^2) + t + t + lambda = 0 at x = (1,1,1)
  return -((1.0 - t * t) + 2.0 * t);
}

Triple g_gradient(double t, const Triple& x) {
  const double t2 = t * t;
  return {
      (1.0 - t) + (2.0 * t - t2) * x[1] + t * x[2],
      (1.0 - t) + (2.0 * t - t2) * x[0] + t * x[2],
      (1.0 - t2) + t * x[1] + t * x[0],
  };
}

QuarticCheck quartic_factor_check(double t, double x1) {
  const double t2 = t * t;
  QuarticCheck q;
  q.bracket = (2.0 * t - t2) * x1 * x1 * x1 + (1.0 + t - t2) * x1 * x1 + (1.0 + t - t2) * x1 +
              (1.0 - t2);
  q.lhs = (x1 - 1.0) * q.bracket;
  q.expanded = (2.0 * t - t2) * std::pow(x1, 4) + (1.0 - t) * x1 * x1 * x1 - t * x1 + (t2 - 1.0);
  return q;
}

const char* to_string(BoundCase c) {
  switch (c) {
    case BoundCase::S2: return "S2";
    case BoundCase::S3: return "S3";
    case BoundCase::S4: return "S4";
    case BoundCase::S5: return "S5";
  }
  return "?";
}

SubcaseBound subcase_bound(BoundCase which, double t, const Triple& r) {
  require_open_unit_t(t);
  const double b = 1.0 / (3.0 - t);
  double bound = 0.0;
  switch (which) {
    case BoundCase::S2: {
      if (!(r[0] > 0.0 && r[1] > 0.0 && r[2] > 0.0)) throw InvalidArgument("r must be positive");
      if (std::abs(r[0] * r[1] * r[2] - 1.0) > 1e-10) throw InvalidArgument("S2 needs r1 r2 r3 = 1");
      if (near_unit_point(r, kDegenerateRadius)) throw DegeneratePoint("S2 bound is 0/0 at (1,1,1)");
      const double a1 = slot_weight(t, r[0]);
      const double a2 = slot_weight(t, r[1]);
      const double rest = 1.0 - a1 - a2 - slot_weight(t, r[2]);
      bound = rest / (rest * (a1 + a2) + (a1 - a2) * (a1 - a2));
      break;
    }
    case BoundCase::S3: {
      if (!(r[1] > 0.0)) throw InvalidArgument("r2 must be positive");
      const double a = slot_weight(t, r[1]);
      bound = (1.0 - a - b) / (a - a * b);
      break;
    }
    case BoundCase::S4: {
      if (!(r[2] > 0.0)) throw InvalidArgument("r3 must be positive");
      const double a = slot_weight(t, r[2]);
      bound = (1.0 - a - b) / (b - a * b);
      break;
    }
    case BoundCase::S5: {
      if (!(r[0] > 0.0)) throw InvalidArgument("r1 must be positive");
      const double a = slot_weight(t, r[0]);
      const double rest = 1.0 - a - b;
      bound = rest / (rest * (a + b) + (a - b) * (a - b));
      break;
    }
  }
  return {bound, bound >= (1.0 - t) - 1e-12};
}

}  // namespace ewopt
