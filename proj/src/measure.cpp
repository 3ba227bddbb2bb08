#include "cauchyiso/measure.hpp"

#include <algorithm>
#include <cmath>

namespace cauchyiso {

namespace detail {

double pow_half_int(double q, int k) {
  // q^{k/2} = q^{k/2 integer part} * (sqrt(q) if k odd)
  double result = (k & 1) ? std::sqrt(q) : 1.0;
  double base = q;
  for (int e = k >> 1; e > 0; e >>= 1) {
    if (e & 1) result *= base;
    base *= base;
  }
  return result;
}

double cos_power_integral(int m, double theta) {
  const double c = std::cos(theta);
  const double si = std::sin(theta);
  double value;
  int k;
  double cpow;  // c^{k+1}, so that c^{k-1} is available when k advances by 2
  if (m % 2 == 0) {
    value = theta + kPi / 2;  // m = 0
    k = 0;
    cpow = c;
  } else {
    value = si + 1.0;  // m = 1
    k = 1;
    cpow = c * c;
  }
  while (k + 2 <= m) {
    k += 2;
    value = cpow * si / k + (double(k - 1) / k) * value;
    cpow *= c * c;
  }
  return value;
}

}  // namespace detail

CauchyMeasure::CauchyMeasure(MeasureParams params) : params_(params) {
  params_.validate();
  const double a2 = params_.alpha * params_.alpha;
  scale_ = std::sqrt(1.0 + a2);
  const double n = params_.n;
  cdf_scale_ = std::exp(std::lgamma((n + 1) / 2.0) - std::lgamma(n / 2.0)) / std::sqrt(kPi);
  norm_ = cdf_scale_ * detail::pow_half_int(1.0 + a2, params_.n);
}

double CauchyMeasure::density(double x) const {
  const double q = scale_ * scale_ + x * x;
  return norm_ / detail::pow_half_int(q, params_.n + 1);
}

double CauchyMeasure::density_derivative(double x) const {
  const double q = scale_ * scale_ + x * x;
  return -(params_.n + 1) * x / q * density(x);
}

double CauchyMeasure::cdf(double x) const {
  const double theta = std::atan(x / scale_);
  const double value = cdf_scale_ * detail::cos_power_integral(params_.n - 1, theta);
  return std::clamp(value, 0.0, 1.0);
}

double CauchyMeasure::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("quantile: p must lie in (0, 1)");

  // tan-based guess; exact for n = 1, a usable start otherwise.
  double x = scale_ * std::tan(kPi * (p - 0.5));
  if (!std::isfinite(x)) x = std::copysign(1e300, p - 0.5);

  double lo, hi;
  if (cdf(x) >= p) {
    hi = x;
    double step = scale_;
    lo = x - step;
    while (cdf(lo) > p) {
      step *= 2;
      lo -= step;
      if (!std::isfinite(lo)) throw root_find_error("quantile: bracket expansion failed");
    }
  } else {
    lo = x;
    double step = scale_;
    hi = x + step;
    while (cdf(hi) < p) {
      step *= 2;
      hi += step;
      if (!std::isfinite(hi)) throw root_find_error("quantile: bracket expansion failed");
    }
  }

  const double res_target = 4.0 * std::numeric_limits<double>::epsilon();
  for (int it = 0; it < 200; ++it) {
    const double r = cdf(x) - p;
    if (std::abs(r) <= res_target) break;
    (r > 0 ? hi : lo) = x;
    const double f = density(x);
    double xn = f > 0 ? x - r / f : 0.5 * (lo + hi);
    if (!(xn > lo && xn < hi) || !std::isfinite(xn)) xn = 0.5 * (lo + hi);
    if (xn == x || !(lo < hi)) break;
    x = xn;
  }

  if (std::abs(cdf(x) - p) > tols().quantile_residual)
    throw root_find_error("quantile: residual above tolerance");
  return x;
}

double CauchyMeasure::interval_mass(const Interval& iv) const {
  return interval_mass(iv.lower(), iv.upper());
}

double CauchyMeasure::interval_mass(ExtReal a, double b) const {
  const double top = cdf(b);
  if (!a.finite()) return top;
  return std::clamp(top - cdf(a.value()), 0.0, 1.0);
}

double CauchyMeasure::interval_mass(double a, double b) const {
  if (a == b) return 0.0;
  return interval_mass(ExtReal(a), b);
}

}  // namespace cauchyiso
