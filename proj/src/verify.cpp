#include "cauchyiso/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

#include "cauchyiso/calculus.hpp"
#include "cauchyiso/inequalities.hpp"
#include "cauchyiso/measure.hpp"
#include "cauchyiso/oracle.hpp"
#include "cauchyiso/transfer.hpp"

namespace cauchyiso {

namespace {

uint64_t splitmix(uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

uint64_t RandomSource::next_u64() {
  state_ += 0x9E3779B97F4A7C15ull;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double RandomSource::uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

double RandomSource::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

double RandomSource::log_uniform(double lo, double hi) {
  return lo * std::exp(uniform01() * std::log(hi / lo));
}

int RandomSource::uniform_int(int lo, int hi) {
  const int span = hi - lo + 1;
  return lo + std::min(span - 1, int(uniform01() * span));
}

uint64_t mix_seed(uint64_t seed, uint64_t stream, uint64_t index) {
  return splitmix(splitmix(seed ^ splitmix(stream + 1)) ^ splitmix(index + 0x51ull));
}

void SweepConfig::validate() const {
  if (samples < 1) throw std::invalid_argument("SweepConfig: samples must be >= 1");
  if (!(alpha_range.lo > 0 && alpha_range.lo <= alpha_range.hi))
    throw std::invalid_argument("SweepConfig: bad alpha range");
  if (n_min < 1 || n_min > n_max) throw std::invalid_argument("SweepConfig: bad n range");
  if (!(a_magnitude.lo > 0 && a_magnitude.lo <= a_magnitude.hi))
    throw std::invalid_argument("SweepConfig: bad a range");
  if (!(width_range.lo > 0 && width_range.lo <= width_range.hi))
    throw std::invalid_argument("SweepConfig: width range must be positive");
  if (!(r_range.lo > 0 && r_range.lo <= r_range.hi))
    throw std::invalid_argument("SweepConfig: bad r range");
  if (!(alpha_zero_weight >= 0 && alpha_zero_weight <= 1))
    throw std::invalid_argument("SweepConfig: bad alpha_zero_weight");
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

SampleEval agree_eval(double dev, double allowed) {
  SampleEval e;
  e.lhs = dev;
  e.rhs = allowed;
  e.margin = allowed - dev;
  e.outcome = dev <= allowed ? Outcome::pass : Outcome::fail;
  return e;
}

SampleEval bound_eval(double lhs, double rhs, double tol) {
  SampleEval e;
  e.lhs = lhs;
  e.rhs = rhs;
  e.margin = lhs - rhs;
  e.outcome = e.margin >= -tol ? Outcome::pass : Outcome::fail;
  return e;
}

SampleEval skipped_eval() { return SampleEval{}; }

bool mass_in(const CauchyMeasure& m, double a, double b, double lo, double hi) {
  const double mass = m.interval_mass(a, b);
  return mass >= lo && mass <= hi;
}

double draw_alpha(RandomSource& rng, const SweepConfig& c, double cap = kInf) {
  if (rng.uniform01() < c.alpha_zero_weight) return 0.0;
  return rng.log_uniform(c.alpha_range.lo, std::min(c.alpha_range.hi, cap));
}

int draw_n(RandomSource& rng, const SweepConfig& c) {
  return rng.uniform_int(c.n_min, c.n_max);
}

double draw_signed_log(RandomSource& rng, const Range& mag) {
  const double v = rng.log_uniform(mag.lo, mag.hi);
  return rng.uniform01() < 0.5 ? -v : v;
}

// The spec sweep measure: log-uniform magnitudes for a, b-a and r.
CheckSample draw_full(RandomSource& rng, const SweepConfig& c, bool with_alpha) {
  CheckSample s;
  const double alpha = with_alpha ? draw_alpha(rng, c) : 0.0;
  s.n = with_alpha ? draw_n(rng, c) : 1;
  const double a = draw_signed_log(rng, c.a_magnitude);
  const double w = rng.log_uniform(c.width_range.lo, c.width_range.hi);
  const double r = rng.log_uniform(c.r_range.lo, c.r_range.hi);
  if (with_alpha)
    s.coords = {alpha, a, a + w, r};
  else
    s.coords = {a, a + w, r};
  return s;
}

// Conditioning-safe measure for root-find-heavy comparisons.
CheckSample draw_mid(RandomSource& rng, const SweepConfig& c) {
  CheckSample s;
  const double alpha = draw_alpha(rng, c, 5.0);
  s.n = draw_n(rng, c);
  const double a = rng.uniform(-10.0, 10.0);
  const double w = rng.uniform(0.1, 10.0);
  s.coords = {alpha, a, a + w};
  return s;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i)
    g[i] = lo * std::exp(std::log(hi / lo) * i / (points - 1));
  return g;
}

double richardson_derivative(const std::function<double(double)>& f, double x, double h) {
  const double d1 = (f(x + h) - f(x - h)) / (2 * h);
  const double d2 = (f(x + h / 2) - f(x - h / 2)) / h;
  return (4 * d2 - d1) / 3;
}

double g_value(const CauchyMeasure& m, double a, double b) {
  const TransferResult t = g_general(m, ExtReal(a), b);
  if (!t.value.finite()) throw std::domain_error("zero-mass interval");
  return t.value.value();
}

std::vector<Check> build_registry() {
  std::vector<Check> checks;
  const auto add = [&checks](Check c) { checks.push_back(std::move(c)); };

  // ---- density / transfer identities --------------------------------

  add({"cdf_vs_oracle",
       [](RandomSource& rng, const SweepConfig& c) {
         CheckSample s;
         s.coords = {draw_alpha(rng, c), rng.uniform(-50.0, 50.0)};
         s.n = draw_n(rng, c);
         return s;
       },
       [](const CheckSample& s) {
         const MeasureParams params{s.coords[0], s.n};
         const CauchyMeasure m(params);
         const QuadratureOracle oracle(params);
         return agree_eval(std::abs(m.cdf(s.coords[1]) - oracle.cdf(s.coords[1])),
                           tols().cdf_oracle);
       },
       {0.0, 0.0}});

  add({"quantile_roundtrip",
       [](RandomSource& rng, const SweepConfig& c) {
         CheckSample s;
         s.coords = {draw_alpha(rng, c), rng.uniform(-20.0, 20.0)};
         s.n = draw_n(rng, c);
         return s;
       },
       [](const CheckSample& s) {
         const CauchyMeasure m({s.coords[0], s.n});
         const double x = s.coords[1];
         const double p = m.cdf(x);
         // Quantile conditioning is 1/f(x); below this floor the
         // round-trip is not resolvable in double precision.
         if (p <= 1e-14 || p >= 1.0 - 1e-14 || m.density(x) < 1e-4)
           return skipped_eval();
         return agree_eval(std::abs(m.quantile(p) - x), 1e-10);
       },
       {0.0, 0.0}});

  add({"cdf_symmetry",
       [](RandomSource& rng, const SweepConfig& c) {
         CheckSample s;
         s.coords = {draw_alpha(rng, c), rng.uniform(-50.0, 50.0)};
         s.n = draw_n(rng, c);
         return s;
       },
       [](const CheckSample& s) {
         const CauchyMeasure m({s.coords[0], s.n});
         const double x = s.coords[1];
         return agree_eval(std::abs(m.cdf(x) + m.cdf(-x) - 1.0), 1e-12);
       },
       {0.0, 0.0}});

  add({"g_standard_vs_general",
       [](RandomSource& rng, const SweepConfig&) {
         CheckSample s;
         const double a = rng.uniform(-50.0, 50.0);
         s.coords = {a, rng.uniform(a, 50.0)};
         s.n = 1;
         return s;
       },
       [](const CheckSample& s) {
         const double a = s.coords[0], b = s.coords[1];
         if (!(a < b)) return skipped_eval();
         const CauchyMeasure m({0.0, 1});
         if (!mass_in(m, a, b, 1e-13, 1.0)) return skipped_eval();
         const double closed = g_standard(ExtReal(a), b).value();
         const TransferResult t = g_general(m, ExtReal(a), b);
         if (!t.value.finite()) return skipped_eval();
         // dx = pi (1+x^2) dm: agreement is conditioned on (1+g^2).
         const double allowed = tols().transfer_agreement * (1.0 + closed * closed);
         return agree_eval(std::abs(closed - t.value.value()), allowed);
       },
       {-1.0, 1.0}});

  add({"g_vs_oracle",
       [](RandomSource& rng, const SweepConfig& c) {
         CheckSample s;
         const double a = rng.uniform(-20.0, 20.0);
         s.coords = {draw_alpha(rng, c), a, a + rng.uniform(0.05, 40.0)};
         s.n = draw_n(rng, c);
         return s;
       },
       [](const CheckSample& s) {
         const double alpha = s.coords[0], a = s.coords[1], b = s.coords[2];
         if (!(a < b) || !(alpha >= 0)) return skipped_eval();
         const MeasureParams params{alpha, s.n};
         const CauchyMeasure m(params);
         if (!mass_in(m, a, b, 1e-10, 1.0 - 1e-10)) return skipped_eval();
         const TransferResult t = g_general(m, ExtReal(a), b);
         if (!t.value.finite()) return skipped_eval();
         const double g = t.value.value();
         const double fg = m.density(g);
         if (fg < 1e-300) return skipped_eval();
         const QuadratureOracle oracle(params);
         const double allowed =
             tols().g_oracle + 3.0 * (3e-12 / fg + 1e-11 * (1.0 + std::abs(g)));
         return agree_eval(std::abs(g - oracle.g(ExtReal(a), b)), allowed);
       },
       {0.0, -1.0, 1.0}});

  add({"gstar_fixed_point",
       [](RandomSource& rng, const SweepConfig& c) {
         CheckSample s;
         s.coords = {draw_alpha(rng, c), rng.log_uniform(1e-2, 50.0)};
         s.n = draw_n(rng, c);
         return s;
       },
       [](const CheckSample& s) {
         const double alpha = s.coords[0], p = s.coords[1];
         if (!(p > 0) || !(alpha >= 0)) return skipped_eval();
         const CauchyMeasure m({alpha, s.n});
         if (!mass_in(m, -p, p, 0.0, 1.0 - 1e-12)) return skipped_eval();
         const TransferResult t = g_star_general(m, -p, p);
         if (t.residual > tols().quantile_residual) return agree_eval(t.residual, 0.0);
         const double fp = m.density(p);
         const double allowed = 1e-8 * (1.0 + p) + (fp > 0 ? 1e-15 / fp : kInf);
         return agree_eval(std::abs(t.value.value() - p), allowed);
       },
       {0.0, 1.0}});

  add({"gstar_standard_vs_general",
       [](RandomSource& rng, const SweepConfig&) {
         CheckSample s;
         const double a = rng.uniform(-20.0, 20.0);
         s.coords = {a, a + rng.uniform(0.05, 40.0)};
         s.n = 1;
         return s;
       },
       [](const CheckSample& s) {
         const double a = s.coords[0], b = s.coords[1];
         if (!(a < b)) return skipped_eval();
         const CauchyMeasure m({0.0, 1});
         const double closed = g_star_standard(a, b);
         const TransferResult t = g_star_general(m, a, b);
         const double allowed = tols().transfer_agreement * (1.0 + closed * closed);
         return agree_eval(std::abs(closed - t.value.value()), allowed);
       },
       {-1.0, 1.0}});

  add({"scaling_identity",
       [](RandomSource& rng, const SweepConfig& c) {
         CheckSample s;
         const double z1 = rng.uniform(-10.0, 10.0);
         s.coords = {draw_alpha(rng, c), z1, z1 + rng.uniform(1.0, 10.0)};
         s.n = draw_n(rng, c);
         return s;
       },
       [](const CheckSample& s) {
         const double alpha = s.coords[0], z1 = s.coords[1], z2 = s.coords[2];
         if (!(z1 < z2) || !(alpha >= 0)) return skipped_eval();
         const CauchyMeasure m({alpha, s.n});
         // Both routes go through the quantile; masses outside this
         // window put g beyond double-precision placement at 1e-9.
         if (!mass_in(m, z1, z2, 1e-4, 1.0 - 1e-4)) return skipped_eval();
         return agree_eval(scaling_identity_residual(alpha, s.n, z1, z2),
                           tols().scaling_residual);
       },
       {0.0, -1.0, 1.0}});

  add({"monotone_endpoints",
       [](RandomSource& rng, const SweepConfig& c) { return draw_mid(rng, c); },
       [](const CheckSample& s) {
         const double alpha = s.coords[0], a = s.coords[1], b = s.coords[2];
         if (!(a < b) || !(alpha >= 0)) return skipped_eval();
         const CauchyMeasure m({alpha, s.n});
         if (!mass_in(m, a, b, 1e-10, 1.0 - 1e-10)) return skipped_eval();
         const double da = 1e-4 * (1.0 + std::abs(a));
         const double db = 1e-4 * (1.0 + std::abs(b));
         if (!(a + da < b)) return skipped_eval();
         const double g0 = g_value(m, a, b);
         const double fg = m.density(g0);
         const double predicted =
             std::min(da * m.density(a), db * m.density(b)) / fg;
         if (predicted < 1e-10 * (1.0 + std::abs(g0))) return skipped_eval();
         const double dec_a = g0 - g_value(m, a + da, b);
         const double inc_b = g_value(m, a, b + db) - g0;
         return bound_eval(std::min(dec_a, inc_b), 0.0, 1e-12 * (1.0 + std::abs(g0)));
       },
       {0.0, -1.0, 1.0}});

  add({"monotone_alpha",
       [](RandomSource& rng, const SweepConfig& c) {
         CheckSample s;
         const double a = rng.uniform(-10.0, 10.0);
         s.coords = {rng.uniform(0.0, 4.9), a, a + rng.uniform(0.1, 10.0)};
         s.n = draw_n(rng, c);
         return s;
       },
       [](const CheckSample& s) {
         const double alpha = s.coords[0], a = s.coords[1], b = s.coords[2];
         if (!(a < b) || !(alpha >= 0)) return skipped_eval();
         const CauchyMeasure m0({alpha, s.n});
         const CauchyMeasure m1({alpha + 0.1, s.n});
         if (!mass_in(m0, a, b, 1e-10, 1.0 - 1e-10)) return skipped_eval();
         const double diff = g_value(m1, a, b) - g_value(m0, a, b);
         // strict decrease: successive difference below -1e-12
         SampleEval e;
         e.lhs = -diff;
         e.rhs = 1e-12;
         e.margin = -diff;
         e.outcome = diff < -1e-12 ? Outcome::pass : Outcome::fail;
         return e;
       },
       {0.5, -1.0, 1.0}});

  // ---- calculus ------------------------------------------------------

  add({"grad_vs_fd",
       [](RandomSource& rng, const SweepConfig& c) { return draw_mid(rng, c); },
       [](const CheckSample& s) {
         const double alpha = s.coords[0], a = s.coords[1], b = s.coords[2];
         if (!(a < b) || !(alpha >= 0)) return skipped_eval();
         const CauchyMeasure m({alpha, s.n});
         if (!mass_in(m, a, b, 1e-10, 1.0 - 1e-10)) return skipped_eval();
         const Gradient cf = grad_g(m, a, b);
         // The FD relative error is ~ (quantile residual / step) / f(x);
         // skip components where the density is too small to resolve.
         double dev = -1.0;
         const double ha = 1e-4 * (1.0 + std::abs(a));
         const double hb = 1e-4 * (1.0 + std::abs(b));
         if (m.density(a) >= 1e-4 && a + ha < b) {
           const double fd = richardson_derivative(
               [&](double x) { return g_value(m, x, b); }, a, ha);
           dev = std::max(dev, std::abs(cf.da - fd) / std::abs(cf.da));
         }
         if (m.density(b) >= 1e-4 && a < b - hb) {
           const double fd = richardson_derivative(
               [&](double x) { return g_value(m, a, x); }, b, hb);
           dev = std::max(dev, std::abs(cf.db - fd) / std::abs(cf.db));
         }
         if (dev < 0) return skipped_eval();
         return agree_eval(dev, tols().grad_fd_rel);
       },
       {0.0, -1.0, 1.0}});

  add({"hessian_standard",
       [](RandomSource& rng, const SweepConfig&) {
         CheckSample s;
         const double a = rng.uniform(-8.0, 8.0);
         s.coords = {a, a + rng.uniform(0.1, 5.0)};
         s.n = 1;
         return s;
       },
       [](const CheckSample& s) {
         const double a = s.coords[0], b = s.coords[1];
         if (!(a < b)) return skipped_eval();
         const double w = b - a;
         const HessianReport cf = hessian_g_standard(a, b);
         const double det_expected = 4.0 / (w * w * w * w);
         const double det_dev = std::abs(cf.determinant - det_expected) / det_expected;
         const CauchyMeasure m({0.0, 1});
         const HessianReport fd = hessian_g_fd(m, a, b);
         double norm_dev = 0.0;
         for (int i = 0; i < 4; ++i)
           norm_dev = std::max(norm_dev, std::abs(cf.matrix[i] - fd.matrix[i]));
         norm_dev /= 1.0 + cf.inf_norm();
         SampleEval e;
         e.lhs = norm_dev;
         e.rhs = tols().hessian_fd_rel;
         e.margin = tols().hessian_fd_rel - norm_dev;
         const bool ok = det_dev <= 1e-12 && norm_dev <= tols().hessian_fd_rel &&
                         cf.verdict == Definiteness::negative_semidefinite;
         e.outcome = ok ? Outcome::pass : Outcome::fail;
         return e;
       },
       {-1.0, 1.0}});

  add({"hessian_general",
       [](RandomSource& rng, const SweepConfig& c) {
         CheckSample s;
         const double alpha = draw_alpha(rng, c, 5.0);
         const double a = rng.uniform(-8.0, 8.0);
         s.coords = {alpha, a, a + rng.uniform(0.1, 5.0)};
         s.n = draw_n(rng, c);
         return s;
       },
       [](const CheckSample& s) {
         const double alpha = s.coords[0], a = s.coords[1], b = s.coords[2];
         if (!(a < b) || !(alpha >= 0)) return skipped_eval();
         const CauchyMeasure m({alpha, s.n});
         if (!mass_in(m, a, b, 1e-10, 1.0 - 1e-10)) return skipped_eval();
         const double g = g_value(m, a, b);
         if (m.density(g) < 1e-3) return skipped_eval();
         const HessianReport cf = hessian_g_general(m, a, b);
         const HessianReport fd = hessian_g_fd(m, a, b);
         double norm_dev = 0.0;
         for (int i = 0; i < 4; ++i)
           norm_dev = std::max(norm_dev, std::abs(cf.matrix[i] - fd.matrix[i]));
         norm_dev /= 1.0 + cf.inf_norm();
         SampleEval e;
         e.lhs = norm_dev;
         e.rhs = tols().hessian_fd_rel;
         e.margin = tols().hessian_fd_rel - norm_dev;
         const bool ok = norm_dev <= tols().hessian_fd_rel &&
                         cf.verdict == Definiteness::negative_semidefinite;
         e.outcome = ok ? Outcome::pass : Outcome::fail;
         return e;
       },
       {0.0, -1.0, 1.0}});

  add({"hessian_joint_nsd",
       [](RandomSource& rng, const SweepConfig& c) {
         CheckSample s;
         const double a = rng.uniform(-5.0, 5.0);
         s.coords = {rng.log_uniform(0.05, 5.0), a, a + rng.uniform(0.5, 8.0)};
         s.n = draw_n(rng, c);
         return s;
       },
       [](const CheckSample& s) {
         const double alpha = s.coords[0], a = s.coords[1], b = s.coords[2];
         if (!(a < b) || !(alpha > 0)) return skipped_eval();
         const CauchyMeasure m({alpha, s.n});
         if (!mass_in(m, a, b, 1e-10, 1.0 - 1e-10)) return skipped_eval();
         if (m.density(g_value(m, a, b)) < 1e-3) return skipped_eval();
         const JointHessianReport rep = hessian_joint(s.n, alpha, a, b);
         const double tol =
             tols().nsd_eigen_scale * (1.0 + rep.hessian.inf_norm());
         SampleEval e;
         e.lhs = rep.hessian.eigen_max;
         e.rhs = tol;
         e.margin = tol - rep.hessian.eigen_max;
         e.outcome = rep.hessian.verdict == Definiteness::negative_semidefinite
                         ? Outcome::pass
                         : Outcome::fail;
         return e;
       },
       {1.0, -1.0, 1.0}});

  add({"hessian_alpha_identity",
       [](RandomSource& rng, const SweepConfig& c) {
         CheckSample s;
         const double a = rng.uniform(-5.0, 5.0);
         s.coords = {rng.log_uniform(0.05, 5.0), a, a + rng.uniform(0.5, 8.0)};
         s.n = draw_n(rng, c);
         return s;
       },
       [](const CheckSample& s) {
         const double alpha = s.coords[0], a = s.coords[1], b = s.coords[2];
         if (!(a < b) || !(alpha > 0)) return skipped_eval();
         const CauchyMeasure m({alpha, s.n});
         if (!mass_in(m, a, b, 1e-10, 1.0 - 1e-10)) return skipped_eval();
         if (m.density(g_value(m, a, b)) < 1e-3) return skipped_eval();
         const JointHessianReport rep = hessian_joint(s.n, alpha, a, b);
         if (!rep.alpha_identity_checked) return skipped_eval();
         return agree_eval(rep.alpha_identity_rel, tols().alpha_identity_rel);
       },
       {1.0, -1.0, 1.0}});

  add({"chi_criterion",
       [](RandomSource& rng, const SweepConfig& c) {
         CheckSample s;
         const double alpha = draw_alpha(rng, c, 5.0);
         const double a = rng.uniform(-20.0, 20.0);
         s.coords = {alpha, a, a + rng.uniform(0.01, 40.0)};
         s.n = draw_n(rng, c);
         return s;
       },
       [](const CheckSample& s) {
         const double alpha = s.coords[0], a = s.coords[1], b = s.coords[2];
         if (!(a < b) || !(alpha >= 0)) return skipped_eval();
         const CauchyMeasure m({alpha, s.n});
         if (!mass_in(m, a, b, 1e-12, 1.0 - 5e-12)) return skipped_eval();
         const ChiCriterionResult res = chi_criterion_margin(m, a, b);
         SampleEval e;
         e.lhs = res.margin;
         e.rhs = 0.0;
         e.margin = res.margin;
         e.outcome = res.auto_pass || res.margin >= -tols().chi_margin
                         ? Outcome::pass
                         : Outcome::fail;
         return e;
       },
       {0.0, -1.0, 1.0}});

  add({"midpoint_concavity",
       [](RandomSource& rng, const SweepConfig& c) {
         CheckSample s;
         s.n = draw_n(rng, c);
         s.coords.resize(6);
         for (int k = 0; k < 2; ++k) {
           s.coords[3 * k] = draw_alpha(rng, c, 3.0);
           const double a = rng.uniform(-5.0, 5.0);
           s.coords[3 * k + 1] = a;
           s.coords[3 * k + 2] = a + rng.uniform(0.5, 10.0);
         }
         return s;
       },
       [](const CheckSample& s) {
         const double al1 = s.coords[0], a1 = s.coords[1], b1 = s.coords[2];
         const double al2 = s.coords[3], a2 = s.coords[4], b2 = s.coords[5];
         if (!(a1 < b1) || !(a2 < b2) || !(al1 >= 0) || !(al2 >= 0))
           return skipped_eval();
         const CauchyMeasure m1({al1, s.n}), m2({al2, s.n});
         const CauchyMeasure mm({0.5 * (al1 + al2), s.n});
         if (!mass_in(m1, a1, b1, 1e-10, 1.0 - 1e-10) ||
             !mass_in(m2, a2, b2, 1e-10, 1.0 - 1e-10))
           return skipped_eval();
         const double gm = g_value(mm, 0.5 * (a1 + a2), 0.5 * (b1 + b2));
         const double avg = 0.5 * (g_value(m1, a1, b1) + g_value(m2, a2, b2));
         return bound_eval(gm, avg, tols().gap_margin * (1.0 + std::abs(gm)));
       },
       {0.0, -1.0, 1.0, 0.0, -1.0, 1.0}});

  // ---- inequality suite ----------------------------------------------

  add({"borell_standard",
       [](RandomSource& rng, const SweepConfig& c) { return draw_full(rng, c, false); },
       [](const CheckSample& s) {
         const double a = s.coords[0], b = s.coords[1], r = s.coords[2];
         if (!(a < b) || !(r > 0)) return skipped_eval();
         const GapResult gap = borell_gap_standard(a, b, r);
         return bound_eval(gap.lhs, gap.rhs, tols().gap_margin);
       },
       {-1.0, 1.0, 1.0}});

  add({"borell_standard_identity",
       [](RandomSource& rng, const SweepConfig& c) { return draw_full(rng, c, false); },
       [](const CheckSample& s) {
         const double a = s.coords[0], b = s.coords[1], r = s.coords[2];
         if (!(a < b) || !(r > 0)) return skipped_eval();
         const double g0 = g_standard(ExtReal(a), b).value();
         const double g1 = g_standard(ExtReal(a - r), b + r).value();
         const double direct = g1 - g0;
         const double ident = borell_difference_identity(a, b, r);
         // Endpoint rounding is amplified by (|a|+|b|)/width in each g.
         const double amp = (std::abs(a) + std::abs(b)) / (b - a) +
                            (std::abs(a - r) + std::abs(b + r)) / (b - a + 2 * r);
         const double eps = std::numeric_limits<double>::epsilon();
         const double allowed = (tols().borell_identity + 16 * eps * amp) *
                                (1.0 + std::abs(g0) + std::abs(g1));
         return agree_eval(std::abs(direct - ident), allowed);
       },
       {-1.0, 1.0, 1.0}});

  add({"borell_strong_standard",
       [](RandomSource& rng, const SweepConfig& c) { return draw_full(rng, c, false); },
       [](const CheckSample& s) {
         const double a = s.coords[0], b = s.coords[1], r = s.coords[2];
         if (!(a < b) || !(r > 0)) return skipped_eval();
         const ConditionedGap res = borell_gap_strong_standard(a, b, r);
         if (!res.condition_holds) return skipped_eval();  // flagged, not failed
         SampleEval e;
         e.lhs = res.gap.lhs;
         e.rhs = res.gap.rhs;
         e.margin = res.gap.margin;
         e.outcome = res.gap.passed ? Outcome::pass : Outcome::fail;
         return e;
       },
       {-1.0, 1.0, 1.0}});

  add({"landau_shepp_standard",
       [](RandomSource& rng, const SweepConfig& c) { return draw_full(rng, c, false); },
       [](const CheckSample& s) {
         const double a = s.coords[0], b = s.coords[1], r = s.coords[2];
         if (!(a < b) || !(r > 0)) return skipped_eval();
         const GapResult gap = landau_shepp_standard(a, b, r);
         const double band =
             tols().equality_band * (1.0 + std::abs(gap.lhs) + std::abs(gap.rhs));
         SampleEval e;
         e.lhs = gap.lhs;
         e.rhs = gap.rhs;
         e.margin = gap.margin;
         if (r >= 1.0)
           e.outcome = gap.margin >= -band ? Outcome::pass : Outcome::fail;
         else
           e.outcome = gap.margin <= band ? Outcome::expected_fail : Outcome::fail;
         return e;
       },
       {-1.0, 1.0, 2.0}});

  add({"landau_shepp_identity",
       [](RandomSource& rng, const SweepConfig& c) { return draw_full(rng, c, false); },
       [](const CheckSample& s) {
         const double a = s.coords[0], b = s.coords[1], r = s.coords[2];
         if (!(a < b) || !(r > 0)) return skipped_eval();
         const GapResult gap = landau_shepp_standard(a, b, r);
         const double ident = landau_shepp_identity(a, b, r);
         // Rounding of ra, rb perturbs the width rb-ra by eps*(|a|+|b|)/w
         // relatively; the difference of the two near-equal g's amplifies it.
         const double amp = 2.0 * (std::abs(a) + std::abs(b)) / (b - a);
         const double eps = std::numeric_limits<double>::epsilon();
         const double allowed = (tols().ls_identity + 16 * eps * amp) *
                                (1.0 + std::abs(gap.lhs) + std::abs(gap.rhs));
         return agree_eval(std::abs(gap.margin - ident), allowed);
       },
       {-1.0, 1.0, 2.0}});

  add({"borell_general",
       [](RandomSource& rng, const SweepConfig& c) { return draw_full(rng, c, true); },
       [](const CheckSample& s) {
         const double alpha = s.coords[0], a = s.coords[1], b = s.coords[2];
         const double r = s.coords[3];
         if (!(a < b) || !(r > 0) || !(alpha >= 0)) return skipped_eval();
         const CauchyMeasure m({alpha, s.n});
         if (!mass_in(m, a, b, 2e-14, 1.0) || !mass_in(m, a - r, b + r, 2e-14, 1.0))
           return skipped_eval();
         const GapResult gap = borell_gap_general(m, a, b, r);
         return bound_eval(gap.lhs, gap.rhs, tols().borell_general_margin);
       },
       {0.0, -1.0, 1.0, 1.0}});

  add({"borell_differential",
       [](RandomSource& rng, const SweepConfig& c) { return draw_full(rng, c, true); },
       [](const CheckSample& s) {
         const double alpha = s.coords[0], a = s.coords[1], b = s.coords[2];
         if (!(a < b) || !(alpha >= 0)) return skipped_eval();
         const CauchyMeasure m({alpha, s.n});
         if (!mass_in(m, a, b, 2e-14, 1.0)) return skipped_eval();
         const GapResult gap = borell_differential_general(m, a, b);
         return bound_eval(gap.lhs, gap.rhs, tols().differential_margin);
       },
       {0.0, -1.0, 1.0, 1.0}});

  add({"borell_strong_general",
       [](RandomSource& rng, const SweepConfig& c) { return draw_full(rng, c, true); },
       [](const CheckSample& s) {
         const double alpha = s.coords[0], a = s.coords[1], b = s.coords[2];
         const double r = s.coords[3];
         if (!(a < b) || !(r > 0) || !(alpha >= 0)) return skipped_eval();
         const CauchyMeasure m({alpha, s.n});
         if (!mass_in(m, a, b, 2e-14, 1.0) || !mass_in(m, a - r, b + r, 2e-14, 1.0))
           return skipped_eval();
         if (!(m.interval_mass(a, b) < 0.5)) return skipped_eval();  // hypothesis
         const StrongBorellGeneral res = borell_gap_strong_general(m, a, b, r, 64);
         if (!res.differential_ok) return skipped_eval();  // r not "small enough"
         SampleEval e;
         e.lhs = res.gap.lhs;
         e.rhs = res.gap.rhs;
         e.margin = res.gap.margin;
         e.outcome = res.gap.passed ? Outcome::pass : Outcome::fail;
         return e;
       },
       {0.0, -1.0, 1.0, 1.0}});

  add({"landau_shepp_general",
       [](RandomSource& rng, const SweepConfig& c) { return draw_full(rng, c, true); },
       [](const CheckSample& s) {
         const double alpha = s.coords[0], a = s.coords[1], b = s.coords[2];
         const double r = s.coords[3];
         if (!(a < b) || !(r > 0) || !(alpha >= 0)) return skipped_eval();
         const CauchyMeasure m({alpha, s.n});
         if (!mass_in(m, a, b, 2e-14, 1.0 - 1e-13) ||
             !mass_in(m, r * a, r * b, 2e-14, 1.0 - 1e-13))
           return skipped_eval();
         const GapResult gap = landau_shepp_general(m, a, b, r);
         const double band =
             tols().equality_band * (1.0 + std::abs(gap.lhs) + std::abs(gap.rhs));
         SampleEval e;
         e.lhs = gap.lhs;
         e.rhs = gap.rhs;
         e.margin = gap.margin;
         if (r >= 1.0)
           e.outcome = gap.margin >= -band ? Outcome::pass : Outcome::fail;
         else
           e.outcome = gap.margin <= band ? Outcome::expected_fail : Outcome::fail;
         return e;
       },
       {0.0, -1.0, 1.0, 2.0}});

  add({"landau_shepp_differential",
       [](RandomSource& rng, const SweepConfig& c) { return draw_full(rng, c, true); },
       [](const CheckSample& s) {
         const double alpha = s.coords[0], a = s.coords[1], b = s.coords[2];
         if (!(a < b) || !(alpha >= 0)) return skipped_eval();
         const CauchyMeasure m({alpha, s.n});
         if (!mass_in(m, a, b, 2e-14, 1.0 - 1e-13)) return skipped_eval();
         const GapResult gap = landau_shepp_differential(m, a, b);
         return bound_eval(gap.lhs, gap.rhs, tols().ls_differential_margin);
       },
       {0.0, -1.0, 1.0, 1.0}});

  add({"landau_shepp_monotone",
       [](RandomSource& rng, const SweepConfig& c) {
         CheckSample s;
         const double a = rng.uniform(-5.0, 5.0);
         s.coords = {draw_alpha(rng, c), a, a + rng.uniform(1.0, 10.0)};
         s.n = draw_n(rng, c);
         return s;
       },
       [](const CheckSample& s) {
         static const std::vector<double> grid = log_grid(1.0, 100.0, 64);
         const double alpha = s.coords[0], a = s.coords[1], b = s.coords[2];
         if (!(a < b) || !(alpha >= 0)) return skipped_eval();
         const CauchyMeasure m({alpha, s.n});
         const MonotoneScalingResult res = scaled_transfer_monotone(m, a, b, grid);
         if (!res.resolvable) return skipped_eval();
         return bound_eval(res.worst_adjusted_increment, 0.0, tols().ls_monotone);
       },
       {0.0, -1.0, 1.0}});

  add({"classify_extremal",
       [](RandomSource& rng, const SweepConfig&) {
         CheckSample s;
         const double a = rng.uniform(-20.0, 20.0);
         s.coords = {a, a + rng.uniform(0.05, 40.0)};
         s.n = 1;
         return s;
       },
       [](const CheckSample& s) {
         const double a = s.coords[0], b = s.coords[1];
         if (!(a < b)) return skipped_eval();
         const ExtremalClassification res = classify_extremal(a, b);
         double slack;
         if (res.mass_case == MassCase::equal_half) {
           slack = 1e-9 - std::max({std::abs(res.per_interval - 1.0 / kPi),
                                    std::abs(res.per_half_line - 1.0 / kPi),
                                    std::abs(res.per_symmetric - 1.0 / kPi)});
         } else if (res.mass_case == MassCase::above_half) {
           slack = std::min(res.per_interval - res.per_symmetric,
                            res.per_half_line - res.per_interval);
         } else {
           slack = std::min(res.per_interval - res.per_half_line,
                            res.per_symmetric - res.per_interval);
         }
         SampleEval e;
         e.lhs = slack;
         e.rhs = 0.0;
         e.margin = slack;
         e.outcome = res.ordering_ok ? Outcome::pass : Outcome::fail;
         return e;
       },
       {-1.0, 1.0}});

  // ---- proof auxiliaries ----------------------------------------------

  add({"aux_p1_mass",
       [](RandomSource& rng, const SweepConfig& c) {
         CheckSample s;
         s.coords = {draw_alpha(rng, c)};
         s.n = draw_n(rng, c);
         return s;
       },
       [](const CheckSample& s) {
         if (!(s.coords[0] >= 0)) return skipped_eval();
         const CauchyMeasure m({s.coords[0], s.n});
         const double s2 = 1.0 + s.coords[0] * s.coords[0];
         const double p1 = std::sqrt(s2 * (std::exp2(2.0 / s.n) - 1.0));
         return bound_eval(m.interval_mass(-p1, p1), 0.5, tols().aux_margin);
       },
       {0.0}});

  add({"aux_h_vs_z",
       [](RandomSource& rng, const SweepConfig& c) {
         CheckSample s;
         s.coords = {draw_alpha(rng, c), rng.log_uniform(1.0, 20.0)};
         s.n = draw_n(rng, c);
         return s;
       },
       [](const CheckSample& s) {
         const double alpha = s.coords[0], mult = s.coords[1];
         if (!(alpha >= 0) || !(mult >= 1.0)) return skipped_eval();
         const MeasureParams params{alpha, s.n};
         const CauchyMeasure m(params);
         const double s2 = 1.0 + alpha * alpha;
         const double p1 = std::sqrt(s2 * (std::exp2(2.0 / s.n) - 1.0));
         const double p = p1 * mult;
         if (!mass_in(m, -p, p, 0.0, 1.0 - 1e-9)) return skipped_eval();
         const ExtReal h = symmetric_transfer(m, p);
         if (!h.finite()) return skipped_eval();
         return bound_eval(h.value(), z_fn(params, p), 1e-7 * (1.0 + p));
       },
       {0.0, 1.0}});

  add({"aux_h_ratio",
       [](RandomSource& rng, const SweepConfig& c) {
         CheckSample s;
         s.coords = {rng.log_uniform(1e-3, 1e3)};
         s.n = draw_n(rng, c);
         return s;
       },
       [](const CheckSample& s) {
         const double p = s.coords[0];
         if (!(p > 0)) return skipped_eval();
         const CauchyMeasure m({0.0, s.n});
         if (!mass_in(m, -p, p, 2e-14, 1.0 - 1e-9)) return skipped_eval();
         const ExtReal h = symmetric_transfer(m, p);
         if (!h.finite()) return skipped_eval();
         return bound_eval(std::exp2(-1.0 / s.n), h.value() / p, tols().gap_margin);
       },
       {1.0}});

  add({"aux_lambda",
       [](RandomSource& rng, const SweepConfig& c) {
         CheckSample s;
         s.coords = {rng.log_uniform(1e-3, 1e3)};
         s.n = draw_n(rng, c);
         return s;
       },
       [](const CheckSample& s) {
         const double p = s.coords[0];
         if (!(p > 0)) return skipped_eval();
         const double lam = lambda_fn(s.n, p);
         const double lamp = lambda_derivative(s.n, p);
         return bound_eval(std::min(-lam, lamp), 0.0, tols().aux_margin);
       },
       {1.0}});

  add({"aux_chi_half",
       [](RandomSource& rng, const SweepConfig& c) {
         CheckSample s;
         s.coords = {draw_alpha(rng, c), rng.log_uniform(1e-3, 1e2)};
         s.n = draw_n(rng, c);
         return s;
       },
       [](const CheckSample& s) {
         const double alpha = s.coords[0], p = s.coords[1];
         if (!(alpha >= 0) || !(p > 0)) return skipped_eval();
         const MeasureParams params{alpha, s.n};
         const double x = x_half_chi_fn(params, p);
         const double dev = std::abs(2.0 * chi(params, x) - chi(params, p));
         return agree_eval(dev, 1e-12 * (1.0 + std::abs(chi(params, p))));
       },
       {0.0, 1.0}});

  add({"aux_phi_shape",
       [](RandomSource& rng, const SweepConfig& c) {
         CheckSample s;
         const double u1 = rng.log_uniform(1e-2, 1.0), u2 = rng.log_uniform(1e-2, 1.0);
         const double v1 = rng.log_uniform(1.0, 1e2), v2 = rng.log_uniform(1.0, 1e2);
         s.coords = {std::min(u1, u2), std::max(u1, u2), std::min(v1, v2),
                     std::max(v1, v2)};
         s.n = draw_n(rng, c);
         return s;
       },
       [](const CheckSample& s) {
         const int n = s.n;
         // decreasing on (0,1), increasing on (1,inf), minimum at 1
         const double m1 = phi_fn(n, s.coords[0]) - phi_fn(n, s.coords[1]);
         const double m2 = phi_fn(n, s.coords[3]) - phi_fn(n, s.coords[2]);
         const double phi1 = phi_fn(n, 1.0);
         const double expected = std::exp2(1.0 - (n + 1) / 2.0);
         const double dev = std::abs(phi1 - expected);
         SampleEval e;
         e.lhs = std::min(m1, m2);
         e.rhs = 0.0;
         e.margin = std::min(m1, m2);
         const double tol = 1e-13 * (1.0 + phi1);
         e.outcome = (m1 >= -tol && m2 >= -tol && dev <= tol) ? Outcome::pass
                                                              : Outcome::fail;
         return e;
       },
       {}});

  add({"aux_h_prime",
       [](RandomSource& rng, const SweepConfig& c) {
         CheckSample s;
         s.coords = {draw_alpha(rng, c), rng.log_uniform(0.05, 20.0)};
         s.n = draw_n(rng, c);
         return s;
       },
       [](const CheckSample& s) {
         const double alpha = s.coords[0], p = s.coords[1];
         if (!(alpha >= 0) || !(p > 0)) return skipped_eval();
         const CauchyMeasure m({alpha, s.n});
         if (!mass_in(m, -p, p, 1e-10, 1.0 - 1e-9)) return skipped_eval();
         const ProofAuxiliaries aux = proof_auxiliaries(m, p);
         if (!aux.h_prime_closed || !aux.h_prime_fd) return skipped_eval();
         const double dev = std::abs(*aux.h_prime_closed - *aux.h_prime_fd) /
                            (1.0 + std::abs(*aux.h_prime_closed));
         return agree_eval(dev, tols().grad_fd_rel);
       },
       {0.0, 1.0}});

  return checks;
}

}  // namespace

const std::vector<Check>& check_registry() {
  static const std::vector<Check> registry = build_registry();
  return registry;
}

std::vector<std::string> check_ids() {
  std::vector<std::string> ids;
  for (const Check& c : check_registry()) ids.push_back(c.id);
  return ids;
}

std::vector<double> shrink(std::vector<double> x, const std::vector<double>& anchor,
                           const std::function<bool(const std::vector<double>&)>& fails) {
  if (anchor.size() != x.size()) return x;
  const double step = tols().shrink_step;
  bool changed = true;
  for (int round = 0; changed && round < 200; ++round) {
    changed = false;
    for (size_t i = 0; i < x.size(); ++i) {
      double lo = x[i];
      const double target = anchor[i];
      if (lo == target) continue;
      std::vector<double> probe = x;
      probe[i] = target;
      if (fails(probe)) {
        if (std::abs(target - lo) >= step) {
          x[i] = target;
          changed = true;
        }
        continue;
      }
      double hi = target;
      while (std::abs(hi - lo) >= step) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        probe[i] = mid;
        (fails(probe) ? lo : hi) = mid;
      }
      if (std::abs(lo - x[i]) >= step) {
        x[i] = lo;
        changed = true;
      }
    }
  }
  return x;
}

namespace {

struct Partial {
  long n_pass = 0, n_fail = 0, n_xfail = 0, n_skip = 0, n_error = 0;
  double worst = kInf;
  long worst_idx = -1;
  CheckSample worst_sample;
  long first_fail_idx = -1;
  CheckSample first_fail_sample;

  void absorb(const Partial& o) {
    n_pass += o.n_pass;
    n_fail += o.n_fail;
    n_xfail += o.n_xfail;
    n_skip += o.n_skip;
    n_error += o.n_error;
    if (o.worst_idx >= 0 &&
        (worst_idx < 0 || o.worst < worst ||
         (o.worst == worst && o.worst_idx < worst_idx))) {
      worst = o.worst;
      worst_idx = o.worst_idx;
      worst_sample = o.worst_sample;
    }
    if (o.first_fail_idx >= 0 &&
        (first_fail_idx < 0 || o.first_fail_idx < first_fail_idx)) {
      first_fail_idx = o.first_fail_idx;
      first_fail_sample = o.first_fail_sample;
    }
  }
};

}  // namespace

std::vector<VerificationReport> run_sweep(const SweepConfig& config,
                                          const SampleSink& sink) {
  config.validate();
  const auto& registry = check_registry();

  std::vector<size_t> selected;
  if (config.selection.empty()) {
    for (size_t i = 0; i < registry.size(); ++i) selected.push_back(i);
  } else {
    for (const std::string& id : config.selection) {
      bool found = false;
      for (size_t i = 0; i < registry.size(); ++i)
        if (registry[i].id == id) {
          selected.push_back(i);
          found = true;
          break;
        }
      if (!found) throw std::invalid_argument("unknown inequality id: " + id);
    }
  }

  int threads = config.threads > 0
                    ? config.threads
                    : int(std::thread::hardware_concurrency());
  threads = std::max(1, std::min({threads, 64, int(config.samples)}));
  if (sink) threads = 1;

  std::vector<VerificationReport> reports;
  for (size_t idx : selected) {
    const Check& check = registry[idx];
    const auto t0 = std::chrono::steady_clock::now();

    const auto process = [&](long begin, long end, Partial& part) {
      for (long i = begin; i < end; ++i) {
        RandomSource rng(mix_seed(config.seed, idx, uint64_t(i)));
        const CheckSample sample = check.draw(rng, config);
        SampleEval ev;
        try {
          ev = check.eval(sample);
        } catch (const std::exception&) {
          ev = SampleEval{};
          ev.outcome = Outcome::error;
        }
        if (sink) sink(SampleRow{&check.id, i, &sample, &ev});
        switch (ev.outcome) {
          case Outcome::pass:
          case Outcome::fail: {
            if (ev.outcome == Outcome::pass)
              ++part.n_pass;
            else
              ++part.n_fail;
            const double margin = std::isnan(ev.margin) ? kInf : ev.margin;
            if (part.worst_idx < 0 || margin < part.worst ||
                (margin == part.worst && i < part.worst_idx)) {
              part.worst = margin;
              part.worst_idx = i;
              part.worst_sample = sample;
            }
            if (ev.outcome == Outcome::fail &&
                (part.first_fail_idx < 0 || i < part.first_fail_idx)) {
              part.first_fail_idx = i;
              part.first_fail_sample = sample;
            }
            break;
          }
          case Outcome::expected_fail:
            ++part.n_xfail;
            break;
          case Outcome::skipped:
            ++part.n_skip;
            break;
          case Outcome::error:
            ++part.n_error;
            break;
        }
      }
    };

    Partial total;
    if (threads == 1) {
      process(0, config.samples, total);
    } else {
      std::vector<Partial> parts(threads);
      std::vector<std::thread> pool;
      const long chunk = (config.samples + threads - 1) / threads;
      for (int t = 0; t < threads; ++t) {
        const long begin = t * chunk;
        const long end = std::min<long>(config.samples, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(process, begin, end, std::ref(parts[t]));
      }
      for (auto& th : pool) th.join();
      for (const Partial& p : parts) total.absorb(p);
    }

    VerificationReport rep;
    rep.inequality = check.id;
    rep.n_samples = config.samples;
    rep.n_fail = total.n_fail;
    rep.n_expected_fail = total.n_xfail;
    rep.n_skipped = total.n_skip;
    rep.n_error = total.n_error;
    rep.worst_margin = total.worst_idx >= 0 ? total.worst : kInf;
    if (total.worst_idx >= 0) rep.worst_input = total.worst_sample;

    if (total.first_fail_idx >= 0) {
      Counterexample ce;
      ce.n = total.first_fail_sample.n;
      const int n_fixed = ce.n;
      const auto fails = [&check, n_fixed](const std::vector<double>& coords) {
        CheckSample probe{coords, n_fixed};
        try {
          return check.eval(probe).outcome == Outcome::fail;
        } catch (const std::exception&) {
          return false;
        }
      };
      ce.coords = check.shrink_anchor.empty()
                      ? total.first_fail_sample.coords
                      : shrink(total.first_fail_sample.coords, check.shrink_anchor, fails);
      try {
        ce.margin = check.eval(CheckSample{ce.coords, ce.n}).margin;
      } catch (const std::exception&) {
        ce.margin = kNaN;
      }
      rep.ce = ce;
    }

    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    reports.push_back(std::move(rep));
  }
  return reports;
}

bool has_unexpected_failures(const std::vector<VerificationReport>& reports) {
  for (const VerificationReport& r : reports)
    if (r.n_fail > 0) return true;
  return false;
}

}  // namespace cauchyiso
