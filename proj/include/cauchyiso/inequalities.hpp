#pragma once

#include <optional>
#include <vector>

#include "cauchyiso/measure.hpp"
#include "cauchyiso/transfer.hpp"
#include "cauchyiso/types.hpp"

namespace cauchyiso {

enum class PerimeterKind { additive, multiplicative };

struct PerimeterValue {
  PerimeterKind kind;
  double value;
};

/// Additive perimeter of an interval: f(a) + f(b), or f(b) alone for a
/// half-line (the one-sided growth realizes the limsup).
PerimeterValue perimeter_interval(const CauchyMeasure& m, const Interval& iv);

/// Multiplicative perimeter, defined only for origin-symmetric
/// intervals (-p, p): lim (mu((1+eps)A) - mu(A))/eps = 2 p f(p).
PerimeterValue perimeter_symmetric_multiplicative(const CauchyMeasure& m, double p);

enum class MassCase { above_half, below_half, equal_half };

/// Which of the three extremal orderings holds for (a, b) under the
/// standard Cauchy measure, with the three perimeters.
struct ExtremalClassification {
  MassCase mass_case;
  double mass;
  double per_interval;    // per(a, b)
  double per_half_line;   // per(-inf, g)
  double per_symmetric;   // per(-g*, g*)
  bool ordering_ok;       // non-strict ordering of the predicted case holds
  bool strict;            // both comparisons strict (fails only at the
                          // degenerate self-symmetric / half-line inputs)
};

ExtremalClassification classify_extremal(double a, double b);

/// One inequality instance: lhs >= rhs expected, margin = lhs - rhs.
struct GapResult {
  double lhs;
  double rhs;
  double margin;
  bool passed;
};

/// g(a-r, b+r) - g(a, b) >= r/2 for the standard Cauchy (always holds).
GapResult borell_gap_standard(double a, double b, double r);

/// The exact rational form of the same difference,
///   r ((b+r)b + (a-r)a + 2) / ((b-a+2r)(b-a)),
/// used as an independent recomputation of the lhs.
double borell_difference_identity(double a, double b, double r);

struct ConditionedGap {
  GapResult gap;        // lhs vs rhs = r
  bool condition_holds;  // g(a, b) <= -r/2, exactly equivalent to the bound
};

/// g(a-r, b+r) - g(a, b) >= r, which holds iff g(a, b) <= -r/2.  When
/// the condition fails the result is flagged, not failed.
ConditionedGap borell_gap_strong_standard(double a, double b, double r);

/// g(ra, rb) - r g(a, b); equals (r^2-1)/(r(b-a)) exactly, so the gap is
/// >= 0 iff r >= 1.  passed reflects margin >= -band at the scale of the
/// operands (equality band at r = 1).
GapResult landau_shepp_standard(double a, double b, double r);

double landau_shepp_identity(double a, double b, double r);

/// g_alpha(a-r, b+r) - g_alpha(a, b) >= r 2^{-1/n} (always holds).
GapResult borell_gap_general(const CauchyMeasure& m, double a, double b, double r);

/// Differential form at r -> 0: f(a) + f(b) >= 2^{-1/n} f(g).
GapResult borell_differential_general(const CauchyMeasure& m, double a, double b);

struct StrongBorellGeneral {
  GapResult gap;          // lhs vs rhs = r
  bool hypothesis_ok;     // mass(a, b) < 1/2
  bool differential_ok;   // f(a-s)+f(b+s) >= f(g_s) along s in [0, r]
  double sup_valid_s;     // last grid s with the differential bound intact
  double first_failing_s; // NaN when differential_ok
};

/// Strong inflation bound g_alpha(a-r, b+r) - g_alpha(a, b) >= r for
/// small r under mass < 1/2; "small enough" is operationalized as the
/// differential criterion holding along the whole inflation path,
/// checked on a grid.
StrongBorellGeneral borell_gap_strong_general(const CauchyMeasure& m, double a,
                                              double b, double r, int grid = 256);

/// g_alpha(ra, rb) - r g_alpha(a, b); >= 0 iff r >= 1.
GapResult landau_shepp_general(const CauchyMeasure& m, double a, double b, double r);

/// Differential form: -a f(a) + b f(b) >= g f(g).
GapResult landau_shepp_differential(const CauchyMeasure& m, double a, double b);

/// Worst successive increment of r -> g(ra, rb)/r over an increasing
/// grid of r values (>= 0 up to noise: the map is non-decreasing).
double scaled_transfer_worst_increment(const CauchyMeasure& m, double a, double b,
                                       const std::vector<double>& r_grid);

/// Same monotonicity scan, with each increment widened by the quantile
/// placement noise (~1e-15/f(g)) of its two grid points; grids whose
/// masses leave the resolvable window are reported as such.
struct MonotoneScalingResult {
  double worst_adjusted_increment = 0.0;
  bool resolvable = false;
};
MonotoneScalingResult scaled_transfer_monotone(const CauchyMeasure& m, double a,
                                               double b,
                                               const std::vector<double>& r_grid);

/// Auxiliary quantities from the proofs of the general inequalities.
struct ProofAuxiliaries {
  double p1;                       // sqrt((1+alpha^2)(2^{2/n}-1))
  double mass_p1;                  // mu(-p1, p1) >= 1/2
  std::optional<double> z;         // defined for p >= p1
  double x_half_chi;               // x(p): chi(x) = chi(p)/2
  double chi_half_residual;        // |2 chi(x(p)) - chi(p)|
  double phi;                      // (1+p^{n+1})/(1+p^2)^{(n+1)/2}
  std::optional<double> y;         // p >= 1 and the defining equation solvable
  std::optional<double> lambda;    // alpha = 0 only
  std::optional<double> lambda_prime;
  ExtReal h = ExtReal::neg_inf();  // h(p) = g(-p, p)
  std::optional<double> h_prime_closed;  // 2 ((s^2+h^2)/(s^2+p^2))^{(n+1)/2}
  std::optional<double> h_prime_fd;
};

ProofAuxiliaries proof_auxiliaries(const CauchyMeasure& m, double p);

/// phi and Lambda for the alpha = 0 family (used by the multiplicative
/// inequality proof); Lambda <= 0 with Lambda' >= 0 on (0, inf).
double phi_fn(int n, double p);
double lambda_fn(int n, double p);
double lambda_derivative(int n, double p);

/// z(p): the nonnegative root of
///   2((1+alpha^2+z^2)/(1+alpha^2+p^2))^{(n+1)/2} = 2^{-1/n}, p >= p1.
double z_fn(const MeasureParams& params, double p);

/// x(p): the root of chi(x) = chi(p)/2 on (0, p).
double x_half_chi_fn(const MeasureParams& params, double p);

}  // namespace cauchyiso
