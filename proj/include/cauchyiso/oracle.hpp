#pragma once

#include "cauchyiso/types.hpp"

namespace cauchyiso {

struct QuadratureSpec {
  double abs_tol = 1e-12;       // on the normalized result
  int max_depth = 60;           // adaptive subdivision depth per panel
  double tail_mass_bound = 1e-14;  // analytic tail budget outside [-T, T]
};

/// Brute-force twin of CauchyMeasure, used only to validate the fast
/// paths.  It shares nothing with the closed-form implementation beyond
/// the density formula itself: the normalization comes from quadrature,
/// the CDF from adaptive Simpson with an analytic tail bound, and the
/// transfer value from pure bisection.  Deliberately slow.
class QuadratureOracle {
 public:
  explicit QuadratureOracle(MeasureParams params, QuadratureSpec spec = {});

  const MeasureParams& params() const { return params_; }

  /// Quadrature-based normalization constant (reciprocal of the total
  /// unnormalized mass on [-T, T] plus the tail bound).
  double normalization() const { return 1.0 / total_; }

  double cdf(double x) const;
  double interval_mass(ExtReal a, double b) const;

  /// Transfer value: the unique v with cdf(v) = mass(a, b), located by
  /// bisection only.
  double g(ExtReal a, double b) const;

  /// Half-width of the origin-symmetric interval of equal mass.
  double g_star(double a, double b) const;

 private:
  double unnormalized_density(double t) const;
  /// Adaptive Simpson over [u, v], split at geometric knots so that the
  /// recursion depth stays bounded on very wide ranges.
  double integrate(double u, double v) const;
  double simpson_panel(double u, double v, double tol) const;

  MeasureParams params_;
  QuadratureSpec spec_;
  double s2_;          // 1 + alpha^2
  double trunc_;       // truncation radius T
  double tail_bound_;  // analytic bound on each one-sided tail beyond T
  double total_;       // unnormalized mass: integral over [-T,T] + 2*tail
  double panel_tol_;   // absolute tolerance handed to each Simpson panel
};

}  // namespace cauchyiso
