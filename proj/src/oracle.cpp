#include "cauchyiso/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace cauchyiso {

namespace {

// Local power helper; the oracle keeps its own numerics.
double upow_half(double q, int k) {
  double result = (k & 1) ? std::sqrt(q) : 1.0;
  double base = q;
  for (int e = k >> 1; e > 0; e >>= 1) {
    if (e & 1) result *= base;
    base *= base;
  }
  return result;
}

struct SimpsonFrame {
  double a, b, fa, fm, fb, whole, tol;
  int depth;
};

}  // namespace

QuadratureOracle::QuadratureOracle(MeasureParams params, QuadratureSpec spec)
    : params_(params), spec_(spec) {
  params_.validate();
  s2_ = 1.0 + params_.alpha * params_.alpha;
  const double s = std::sqrt(s2_);
  const int n = params_.n;

  // (T/s)^{-n}/n below a conservative fraction of the total mass keeps
  // the normalized tail under spec_.tail_mass_bound.
  trunc_ = s * std::pow(1.0 / (0.1 * n * spec_.tail_mass_bound), 1.0 / n);
  tail_bound_ = std::pow(trunc_, -n) / n;

  // Crude lower bound on the unnormalized total, to turn the normalized
  // tolerance into an absolute one before the total is known.
  const double m_est = 2.0 * s * unnormalized_density(s);
  panel_tol_ = spec_.abs_tol * m_est / 64.0;

  total_ = integrate(-trunc_, trunc_) + 2.0 * tail_bound_;
}

double QuadratureOracle::unnormalized_density(double t) const {
  return 1.0 / upow_half(s2_ + t * t, params_.n + 1);
}

double QuadratureOracle::simpson_panel(double u, double v, double tol) const {
  // Iterative adaptive Simpson with the classic S2 + (S2-S1)/15 estimate.
  const auto f = [this](double t) { return unnormalized_density(t); };
  const auto simpson = [](double h, double fa, double fm, double fb) {
    return (fa + 4.0 * fm + fb) * h / 6.0;
  };

  std::vector<SimpsonFrame> stack;
  const double m0 = 0.5 * (u + v);
  stack.push_back({u, v, f(u), f(m0), f(v),
                   simpson(v - u, f(u), f(m0), f(v)), tol, 0});
  double sum = 0.0;
  while (!stack.empty()) {
    SimpsonFrame fr = stack.back();
    stack.pop_back();
    const double m = 0.5 * (fr.a + fr.b);
    const double lm = 0.5 * (fr.a + m), rm = 0.5 * (m + fr.b);
    const double flm = f(lm), frm = f(rm);
    const double h = 0.5 * (fr.b - fr.a);
    const double left = simpson(h, fr.fa, flm, fr.fm);
    const double right = simpson(h, fr.fm, frm, fr.fb);
    const double err = (left + right - fr.whole) / 15.0;
    if (std::abs(err) <= fr.tol || lm <= fr.a || rm >= fr.b) {
      sum += left + right + err;
      continue;
    }
    if (fr.depth >= spec_.max_depth)
      throw quadrature_error("oracle: Simpson tolerance not reached");
    stack.push_back({fr.a, m, fr.fa, flm, fr.fm, left, 0.5 * fr.tol, fr.depth + 1});
    stack.push_back({m, fr.b, fr.fm, frm, fr.fb, right, 0.5 * fr.tol, fr.depth + 1});
  }
  return sum;
}

double QuadratureOracle::integrate(double u, double v) const {
  if (!(u < v)) return 0.0;
  // Geometric knots at +-s*2^k keep each panel's dynamic range small.
  const double s = std::sqrt(s2_);
  std::vector<double> knots;
  knots.push_back(u);
  for (double k = s; k < trunc_ * 2; k *= 2) {
    if (-k > u && -k < v) knots.push_back(-k);
    if (k > u && k < v) knots.push_back(k);
  }
  knots.push_back(v);
  std::sort(knots.begin(), knots.end());
  double sum = 0.0;
  for (size_t i = 0; i + 1 < knots.size(); ++i)
    sum += simpson_panel(knots[i], knots[i + 1], panel_tol_);
  return sum;
}

double QuadratureOracle::cdf(double x) const {
  if (x <= -trunc_) return std::min(tail_bound_ / total_, std::pow(-x, -params_.n) / params_.n / total_);
  if (x >= trunc_) return 1.0 - std::pow(x, -params_.n) / params_.n / total_ * 0.5;
  double value;
  if (x <= 0.0)
    value = (tail_bound_ + integrate(-trunc_, x)) / total_;
  else
    value = 1.0 - (tail_bound_ + integrate(x, trunc_)) / total_;
  return std::clamp(value, 0.0, 1.0);
}

double QuadratureOracle::interval_mass(ExtReal a, double b) const {
  const double top = cdf(b);
  if (!a.finite()) return top;
  if (a.value() == b) return 0.0;
  return std::clamp(top - cdf(a.value()), 0.0, 1.0);
}

double QuadratureOracle::g(ExtReal a, double b) const {
  const double target = interval_mass(a, b);
  const double s = std::sqrt(s2_);
  double lo = -2.0 * s, hi = 2.0 * s;
  double step = 2.0 * s;
  while (cdf(lo) > target) {
    step *= 2;
    lo -= step;
    if (!std::isfinite(lo)) throw root_find_error("oracle g: bracket failed");
  }
  step = 2.0 * s;
  while (cdf(hi) < target) {
    step *= 2;
    hi += step;
    if (!std::isfinite(hi)) throw root_find_error("oracle g: bracket failed");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-11 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (cdf(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double QuadratureOracle::g_star(double a, double b) const {
  const double target = interval_mass(ExtReal(a), b);
  double lo = 0.0, hi = 2.0 * std::sqrt(s2_);
  double step = hi;
  while (cdf(hi) - cdf(-hi) < target) {
    step *= 2;
    hi += step;
    if (!std::isfinite(hi)) throw root_find_error("oracle g_star: bracket failed");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-11 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (cdf(mid) - cdf(-mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace cauchyiso
