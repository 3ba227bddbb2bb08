#include "cauchyiso/transfer.hpp"

#include <cmath>

namespace cauchyiso {

ExtReal g_standard(ExtReal a, double b) {
  if (!std::isfinite(b)) throw std::domain_error("g_standard: b must be finite");
  if (!a.finite()) return ExtReal(b);
  const double av = a.value();
  if (av == b) return ExtReal::neg_inf();
  if (av > b) throw std::domain_error("g_standard: requires a < b");
  return ExtReal(-(1.0 + av * b) / (b - av) + 0.0);  // +0.0 folds away -0
}

TransferResult g_general(const CauchyMeasure& m, ExtReal a, double b) {
  if (!std::isfinite(b)) throw std::domain_error("g_general: b must be finite");
  if (!a.less_than(b)) throw std::domain_error("g_general: requires a < b");
  if (!a.finite())
    return {ExtReal(b), TransferMethod::closed_form, 0.0};

  const double mass = m.interval_mass(a, b);
  if (mass < tols().zero_mass_cutoff)
    return {ExtReal::neg_inf(), TransferMethod::closed_form, 0.0};

  double v = m.quantile(std::min(mass, 1.0 - 1e-16));
  // Equal-mass half-line ends strictly before b when a is finite.
  if (v >= b) v = std::nextafter(b, -std::numeric_limits<double>::infinity());
  return {ExtReal(v), TransferMethod::root_find, std::abs(m.cdf(v) - mass)};
}

double g_star_standard(double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw std::domain_error("g_star_standard: requires finite a < b");
  const double g = g_standard(ExtReal(a), b).value();
  return std::sqrt(1.0 + g * g) + g;
}

TransferResult g_star_general(const CauchyMeasure& m, double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw std::domain_error("g_star_general: requires finite a < b");
  const double mass = m.interval_mass(a, b);
  const double p = 0.5 * (1.0 + mass);
  const double s = p < 1.0 ? std::max(m.quantile(p), 0.0) : m.quantile(1.0 - 1e-16);
  return {ExtReal(s), TransferMethod::root_find,
          std::abs((m.cdf(s) - m.cdf(-s)) - mass)};
}

ExtReal symmetric_transfer(const CauchyMeasure& m, double p) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw std::domain_error("symmetric_transfer: requires p > 0");
  return g_general(m, ExtReal(-p), p).value;
}

double scaling_identity_residual(double alpha, int n, double z1, double z2) {
  if (!(z1 < z2)) throw std::domain_error("scaling_identity_residual: requires z1 < z2");
  const CauchyMeasure ma({alpha, n});
  const CauchyMeasure m0({0.0, n});
  const double s = ma.scale();
  const TransferResult lhs = g_general(ma, ExtReal(z1), z2);
  const TransferResult rhs = g_general(m0, ExtReal(z1 / s), z2 / s);
  if (!lhs.value.finite() || !rhs.value.finite()) return 0.0;  // zero-mass degenerate
  return std::abs(lhs.value.value() - s * rhs.value.value());
}

}  // namespace cauchyiso
