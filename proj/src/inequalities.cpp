#include "cauchyiso/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cauchyiso/calculus.hpp"

namespace cauchyiso {

namespace {

double finite_or_throw(const TransferResult& t, const char* who) {
  if (!t.value.finite()) throw std::domain_error(std::string(who) + ": zero-mass interval");
  return t.value.value();
}

double scaled_band(double tol, double lhs, double rhs) {
  return tol * (1.0 + std::abs(lhs) + std::abs(rhs));
}

}  // namespace

PerimeterValue perimeter_interval(const CauchyMeasure& m, const Interval& iv) {
  double value = m.density(iv.upper());
  if (!iv.is_half_line()) value += m.density(iv.lower().value());
  return {PerimeterKind::additive, value};
}

PerimeterValue perimeter_symmetric_multiplicative(const CauchyMeasure& m, double p) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw std::domain_error("multiplicative perimeter: defined for (-p, p) with p > 0");
  return {PerimeterKind::multiplicative, 2.0 * p * m.density(p)};
}

ExtremalClassification classify_extremal(double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw std::domain_error("classify_extremal: requires finite a < b");
  const CauchyMeasure m({0.0, 1});
  ExtremalClassification out{};
  out.mass = m.interval_mass(a, b);
  const double g = g_standard(ExtReal(a), b).value();
  const double gs = g_star_standard(a, b);
  out.per_interval = perimeter_interval(m, Interval(a, b)).value;
  out.per_half_line = m.density(g);
  out.per_symmetric = perimeter_interval(m, Interval(-gs, gs)).value;

  const Tolerances& t = tols();
  if (std::abs(out.mass - 0.5) <= t.mass_half_eps) {
    out.mass_case = MassCase::equal_half;
    const double third = 1.0 / kPi;
    out.ordering_ok = std::abs(out.per_interval - third) <= 1e-9 &&
                      std::abs(out.per_half_line - third) <= 1e-9 &&
                      std::abs(out.per_symmetric - third) <= 1e-9;
    out.strict = false;
    return out;
  }
  const double eps = 1e-15 * (1.0 + out.per_interval);
  if (out.mass > 0.5) {
    out.mass_case = MassCase::above_half;
    out.ordering_ok = out.per_symmetric <= out.per_interval + eps &&
                      out.per_interval <= out.per_half_line + eps;
    out.strict = out.per_symmetric < out.per_interval - t.mass_half_eps &&
                 out.per_interval < out.per_half_line - t.mass_half_eps;
  } else {
    out.mass_case = MassCase::below_half;
    out.ordering_ok = out.per_half_line <= out.per_interval + eps &&
                      out.per_interval <= out.per_symmetric + eps;
    out.strict = out.per_half_line < out.per_interval - t.mass_half_eps &&
                 out.per_interval < out.per_symmetric - t.mass_half_eps;
  }
  return out;
}

GapResult borell_gap_standard(double a, double b, double r) {
  if (!(a < b) || !(r > 0)) throw std::domain_error("borell_gap_standard: a < b, r > 0");
  const double lhs =
      g_standard(ExtReal(a - r), b + r).value() - g_standard(ExtReal(a), b).value();
  const double rhs = r / 2;
  const double margin = lhs - rhs;
  return {lhs, rhs, margin, margin >= -tols().gap_margin};
}

double borell_difference_identity(double a, double b, double r) {
  return r * ((b + r) * b + (a - r) * a + 2.0) / ((b - a + 2 * r) * (b - a));
}

ConditionedGap borell_gap_strong_standard(double a, double b, double r) {
  if (!(a < b) || !(r > 0))
    throw std::domain_error("borell_gap_strong_standard: a < b, r > 0");
  const double g = g_standard(ExtReal(a), b).value();
  const double lhs = g_standard(ExtReal(a - r), b + r).value() - g;
  const double margin = lhs - r;
  const bool condition = g <= -r / 2;
  const bool passed = condition && margin >= -scaled_band(tols().gap_margin, lhs, r);
  return {{lhs, r, margin, passed}, condition};
}

GapResult landau_shepp_standard(double a, double b, double r) {
  if (!(a < b) || !(r > 0)) throw std::domain_error("landau_shepp_standard: a < b, r > 0");
  const double lhs = g_standard(ExtReal(r * a), r * b).value();
  const double rhs = r * g_standard(ExtReal(a), b).value();
  const double margin = lhs - rhs;
  return {lhs, rhs, margin, margin >= -scaled_band(tols().equality_band, lhs, rhs)};
}

double landau_shepp_identity(double a, double b, double r) {
  return (r * r - 1.0) / (r * (b - a));
}

GapResult borell_gap_general(const CauchyMeasure& m, double a, double b, double r) {
  if (!(a < b) || !(r > 0)) throw std::domain_error("borell_gap_general: a < b, r > 0");
  const double g0 = finite_or_throw(g_general(m, ExtReal(a), b), "borell_gap_general");
  const double g1 =
      finite_or_throw(g_general(m, ExtReal(a - r), b + r), "borell_gap_general");
  const double lhs = g1 - g0;
  const double rhs = r * std::exp2(-1.0 / m.n());
  const double margin = lhs - rhs;
  return {lhs, rhs, margin, margin >= -tols().borell_general_margin};
}

GapResult borell_differential_general(const CauchyMeasure& m, double a, double b) {
  const double g = finite_or_throw(g_general(m, ExtReal(a), b), "borell_differential");
  const double lhs = m.density(a) + m.density(b);
  const double rhs = std::exp2(-1.0 / m.n()) * m.density(g);
  const double margin = lhs - rhs;
  return {lhs, rhs, margin, margin >= -tols().differential_margin};
}

StrongBorellGeneral borell_gap_strong_general(const CauchyMeasure& m, double a,
                                              double b, double r, int grid) {
  if (!(a < b) || !(r > 0))
    throw std::domain_error("borell_gap_strong_general: a < b, r > 0");
  StrongBorellGeneral out{};
  out.hypothesis_ok = m.interval_mass(a, b) < 0.5;
  out.sup_valid_s = 0.0;
  out.first_failing_s = std::numeric_limits<double>::quiet_NaN();
  out.differential_ok = true;

  const double g0 = finite_or_throw(g_general(m, ExtReal(a), b), "borell_strong");
  const double g1 = finite_or_throw(g_general(m, ExtReal(a - r), b + r), "borell_strong");
  const double lhs = g1 - g0;
  const double margin = lhs - r;

  for (int i = 0; i <= grid; ++i) {
    const double s = r * i / grid;
    const double gs = finite_or_throw(g_general(m, ExtReal(a - s), b + s), "borell_strong");
    const double diff = m.density(a - s) + m.density(b + s) - m.density(gs);
    if (diff >= -tols().differential_margin) {
      out.sup_valid_s = s;
    } else {
      out.differential_ok = false;
      out.first_failing_s = s;
      break;
    }
  }
  const bool applicable = out.hypothesis_ok && out.differential_ok;
  const bool passed =
      applicable && margin >= -scaled_band(tols().gap_margin, lhs, r);
  out.gap = {lhs, r, margin, passed};
  return out;
}

GapResult landau_shepp_general(const CauchyMeasure& m, double a, double b, double r) {
  if (!(a < b) || !(r > 0)) throw std::domain_error("landau_shepp_general: a < b, r > 0");
  const double lhs = finite_or_throw(g_general(m, ExtReal(r * a), r * b), "landau_shepp");
  const double rhs =
      r * finite_or_throw(g_general(m, ExtReal(a), b), "landau_shepp");
  const double margin = lhs - rhs;
  return {lhs, rhs, margin, margin >= -scaled_band(tols().equality_band, lhs, rhs)};
}

GapResult landau_shepp_differential(const CauchyMeasure& m, double a, double b) {
  const double g = finite_or_throw(g_general(m, ExtReal(a), b), "ls_differential");
  const double lhs = -a * m.density(a) + b * m.density(b);
  const double rhs = g * m.density(g);
  const double margin = lhs - rhs;
  return {lhs, rhs, margin, margin >= -tols().ls_differential_margin};
}

double scaled_transfer_worst_increment(const CauchyMeasure& m, double a, double b,
                                       const std::vector<double>& r_grid) {
  double worst = std::numeric_limits<double>::infinity();
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (double r : r_grid) {
    const double value =
        finite_or_throw(g_general(m, ExtReal(r * a), r * b), "scaled_transfer") / r;
    if (!std::isnan(prev)) worst = std::min(worst, value - prev);
    prev = value;
  }
  return worst;
}

MonotoneScalingResult scaled_transfer_monotone(const CauchyMeasure& m, double a,
                                               double b,
                                               const std::vector<double>& r_grid) {
  MonotoneScalingResult out;
  out.worst_adjusted_increment = std::numeric_limits<double>::infinity();
  out.resolvable = true;
  double prev = std::numeric_limits<double>::quiet_NaN();
  double prev_noise = 0.0;
  for (double r : r_grid) {
    const double mass = m.interval_mass(r * a, r * b);
    if (mass < 1e-12 || mass > 1.0 - 1e-12) {
      out.resolvable = false;
      return out;
    }
    const TransferResult t = g_general(m, ExtReal(r * a), r * b);
    if (!t.value.finite()) {
      out.resolvable = false;
      return out;
    }
    const double g = t.value.value();
    const double fg = m.density(g);
    // The quantile places g within ~1e-15/f(g); increments below the
    // combined placement noise of two grid points carry no signal.
    const double noise = fg > 0 ? 1e-15 / fg / r : std::numeric_limits<double>::infinity();
    if (!(noise <= 1e-4)) {
      out.resolvable = false;
      return out;
    }
    const double value = g / r;
    if (!std::isnan(prev))
      out.worst_adjusted_increment =
          std::min(out.worst_adjusted_increment, value - prev + noise + prev_noise);
    prev = value;
    prev_noise = noise;
  }
  return out;
}

double phi_fn(int n, double p) {
  if (!(p > 0)) throw std::domain_error("phi: requires p > 0");
  return (1.0 + std::pow(p, n + 1)) / detail::pow_half_int(1.0 + p * p, n + 1);
}

double lambda_fn(int n, double p) {
  if (!(p >= 0)) throw std::domain_error("lambda: requires p >= 0");
  const CauchyMeasure m({0.0, n});
  const double q = p * std::exp2(-1.0 / n);
  return (2.0 * m.cdf(p) - 1.0 - m.cdf(q)) / m.normalization();
}

double lambda_derivative(int n, double p) {
  if (!(p >= 0)) throw std::domain_error("lambda': requires p >= 0");
  return 2.0 / detail::pow_half_int(1.0 + p * p, n + 1) -
         2.0 / detail::pow_half_int(std::exp2(2.0 / n) + p * p, n + 1);
}

double z_fn(const MeasureParams& params, double p) {
  params.validate();
  const double s2 = 1.0 + params.alpha * params.alpha;
  const double p1sq = s2 * (std::exp2(2.0 / params.n) - 1.0);
  if (p * p < p1sq)
    throw std::domain_error("z(p): no real solution below p1");
  return std::sqrt(p * p - p1sq) * std::exp2(-1.0 / params.n);
}

double x_half_chi_fn(const MeasureParams& params, double p) {
  if (!(p > 0)) throw std::domain_error("x(p): requires p > 0");
  params.validate();
  if (params.n == 1) return p / 2;  // chi(x) = x
  const double target = 0.5 * chi(params, p);
  double lo = 0.0, hi = p;
  double x = p / 2;
  const double s2 = 1.0 + params.alpha * params.alpha;
  for (int it = 0; it < 200; ++it) {
    const double r = chi(params, x) - target;
    if (std::abs(r) <= 1e-15 * (1.0 + target)) break;
    (r > 0 ? hi : lo) = x;
    const double q = s2 + x * x;
    const double slope = std::pow(q, (params.n - 3) / 2.0) * (s2 + params.n * x * x);
    double xn = slope > 0 ? x - r / slope : 0.5 * (lo + hi);
    if (!(xn > lo && xn < hi) || !std::isfinite(xn)) xn = 0.5 * (lo + hi);
    if (xn == x) break;
    x = xn;
  }
  return x;
}

ProofAuxiliaries proof_auxiliaries(const CauchyMeasure& m, double p) {
  if (!(p > 0) || !std::isfinite(p))
    throw std::domain_error("proof_auxiliaries: requires finite p > 0");
  const MeasureParams& params = m.params();
  const double s2 = 1.0 + params.alpha * params.alpha;
  const int n = params.n;

  ProofAuxiliaries out;
  out.p1 = std::sqrt(s2 * (std::exp2(2.0 / n) - 1.0));
  out.mass_p1 = m.interval_mass(-out.p1, out.p1);
  if (p >= out.p1) out.z = z_fn(params, p);
  out.x_half_chi = x_half_chi_fn(params, p);
  out.chi_half_residual = std::abs(2.0 * chi(params, out.x_half_chi) - chi(params, p));
  out.phi = phi_fn(n, p);

  if (p >= 1.0) {
    // (1+y^2) = (1+p^2) (2^{-1/n}/(1+p^{n+1}))^{2/(n+1)}
    const double factor =
        std::pow(std::exp2(-1.0 / n) / (1.0 + std::pow(p, n + 1)), 2.0 / (n + 1));
    const double y2 = (1.0 + p * p) * factor - 1.0;
    if (y2 >= 0.0) out.y = std::sqrt(y2);
  }
  if (params.alpha == 0.0) {
    out.lambda = lambda_fn(n, p);
    out.lambda_prime = lambda_derivative(n, p);
  }

  out.h = symmetric_transfer(m, p);
  if (out.h.finite()) {
    const double h = out.h.value();
    out.h_prime_closed =
        2.0 * std::pow((s2 + h * h) / (s2 + p * p), (n + 1) / 2.0);
    // h varies on scale p near zero (h''' ~ p^-3), so the step must
    // shrink with p.
    const double step = 1e-4 * p;
    const auto h_at = [&](double q) {
      const ExtReal v = symmetric_transfer(m, q);
      if (!v.finite()) throw std::domain_error("h'(p): h not finite near p");
      return v.value();
    };
    out.h_prime_fd = (h_at(p + step) - h_at(p - step)) / (2 * step);
  }
  return out;
}

}  // namespace cauchyiso
