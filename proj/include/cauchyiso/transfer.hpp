#pragma once

#include "cauchyiso/measure.hpp"
#include "cauchyiso/types.hpp"

namespace cauchyiso {

enum class TransferMethod { closed_form, root_find };

/// Result of a transfer-map evaluation: the value together with how it
/// was produced and the achieved |cdf mismatch| at the returned point.
struct TransferResult {
  ExtReal value;
  TransferMethod method;
  double residual;  // 0 by construction for closed_form
};

/// Transfer map for the standard Cauchy measure: the endpoint g of the
/// left half-line with the same mass as (a, b).  Closed form
/// -(1+ab)/(b-a); g(-inf, b) = b; the degenerate a == b gives -inf.
ExtReal g_standard(ExtReal a, double b);

/// Transfer map for a general measure, realized as quantile of the
/// interval mass.  Masses below the zero-mass cutoff give the -inf
/// state.  The value is always < b for finite a (== b for a = -inf).
TransferResult g_general(const CauchyMeasure& m, ExtReal a, double b);

/// Half-width of the origin-symmetric interval of equal mass, standard
/// Cauchy closed form: g* = sqrt(1 + g^2) + g  (always > 0).
double g_star_standard(double a, double b);

/// General symmetric transfer: the unique s >= 0 with
/// cdf(s) - cdf(-s) = mass(a, b).
TransferResult g_star_general(const CauchyMeasure& m, double a, double b);

/// h(p) = g(-p, p), the transfer value of the symmetric interval.
/// h -> -inf as p -> 0+.  Requires p > 0.
ExtReal symmetric_transfer(const CauchyMeasure& m, double p);

/// Residual of the scaling identity
///   g_alpha(z1, z2) = sqrt(1+alpha^2) * g_0(z1/sqrt(1+alpha^2), z2/sqrt(1+alpha^2))
/// where g_0 uses the same n.  Degenerate (near-zero-mass) inputs give 0.
double scaling_identity_residual(double alpha, int n, double z1, double z2);

}  // namespace cauchyiso
