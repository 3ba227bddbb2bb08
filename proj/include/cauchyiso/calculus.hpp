#pragma once

#include <array>

#include "cauchyiso/measure.hpp"
#include "cauchyiso/transfer.hpp"
#include "cauchyiso/types.hpp"

namespace cauchyiso {

struct Gradient {
  double da;  // dg/da = -f(a)/f(g)
  double db;  // dg/db =  f(b)/f(g)
};

/// First derivatives of (a, b) -> g(a, b).  Throws on zero-mass
/// intervals (g = -inf has no derivative).
Gradient grad_g(const CauchyMeasure& m, double a, double b);

enum class Definiteness { negative_semidefinite, indefinite, inconclusive };

/// Symmetric 2x2 or 3x3 second-derivative report.
struct HessianReport {
  int dim = 2;
  std::array<double, 9> matrix{};  // row-major, dim x dim entries used
  double eigen_max = 0.0;
  double eigen_min = 0.0;
  double determinant = 0.0;
  Definiteness verdict = Definiteness::inconclusive;

  double operator()(int i, int j) const { return matrix[i * dim + j]; }
  double inf_norm() const;
};

/// Builds the eigen/determinant/verdict summary for a symmetric matrix
/// given row-major entries.
HessianReport make_hessian_report(int dim, const std::array<double, 9>& sym);

/// Hessian of g for the standard Cauchy measure, closed forms:
///   d2g/da2 = -2(1+b^2)/(b-a)^3,  d2g/db2 = -2(1+a^2)/(b-a)^3,
///   d2g/dadb = 2(1+ab)/(b-a)^3;   det = 4 (b-a)^{-4}.
HessianReport hessian_g_standard(double a, double b);

/// Hessian of g for a general measure, assembled from the closed forms
/// that need only f, f' and g itself.  Cross-check against
/// hessian_g_fd when validating.
HessianReport hessian_g_general(const CauchyMeasure& m, double a, double b);

/// Central finite-difference Hessian of (a, b) -> g (step 1e-5 scaled,
/// one Richardson level, symmetrized).
HessianReport hessian_g_fd(const CauchyMeasure& m, double a, double b);

struct JointHessianReport {
  HessianReport hessian;              // 3x3 in (alpha, a, b)
  double alpha_gradient = 0.0;        // dg/dalpha (finite differences)
  double alpha_identity_rel = 0.0;    // residual of the d2g/dalpha2 identity
  bool alpha_identity_checked = false;  // skipped at alpha = 0
};

/// Finite-difference Hessian of (alpha, a, b) -> g_alpha(a, b), with the
/// closed-form identity linking d2g/dalpha2 to dg/dalpha and the (a,b)
/// block verified for alpha > 0 (one-sided differences at alpha = 0).
JointHessianReport hessian_joint(int n, double alpha, double a, double b);

/// chi(x) = (1/f(x))' in the normalization-free convention:
/// chi(x) = x (1+alpha^2+x^2)^{(n-1)/2}.  Odd, strictly increasing.
double chi(const MeasureParams& params, double x);

struct ChiCriterionResult {
  double margin;   // chi(a)chi(b)/(chi(a)-chi(b)) - chi(g); +inf when auto_pass
  bool auto_pass;  // a < 0 < b with g < 0: the criterion holds automatically
};

/// Margin of the concavity criterion
///   chi(a) chi(b) / (chi(a) - chi(b)) >= chi(g(a, b)).
ChiCriterionResult chi_criterion_margin(const CauchyMeasure& m, double a, double b);

}  // namespace cauchyiso
