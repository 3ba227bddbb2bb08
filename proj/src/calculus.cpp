#include "cauchyiso/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace cauchyiso {

namespace {

double finite_g(const CauchyMeasure& m, double a, double b) {
  const TransferResult t = g_general(m, ExtReal(a), b);
  if (!t.value.finite())
    throw std::domain_error("derivative undefined: zero-mass interval");
  return t.value.value();
}

// Central difference with one Richardson level: (4 D_{h/2} - D_h) / 3.
double central_derivative(const std::function<double(double)>& f, double x, double h) {
  const double d1 = (f(x + h) - f(x - h)) / (2 * h);
  const double d2 = (f(x + h / 2) - f(x - h / 2)) / h;
  return (4 * d2 - d1) / 3;
}

// Step for second differences of root-found quantities.  The quantile
// noise floor is ~1e-15/f(g); steps below ~1e-4 lose the signal to
// cancellation, steps above ~1e-3 lose it to truncation.
double fd_step(double x) { return 5e-4 * std::max(1.0, std::abs(x)); }

// Symmetric eigenvalues by cyclic Jacobi; dim <= 3.
void jacobi_eigenvalues(int dim, std::array<double, 9> m, double* emin, double* emax) {
  if (dim == 1) {
    *emin = *emax = m[0];
    return;
  }
  if (dim == 2) {
    const double tr = m[0] + m[3];
    const double d = m[0] - m[3];
    const double disc = std::sqrt(d * d + 4 * m[1] * m[1]);
    *emin = 0.5 * (tr - disc);
    *emax = 0.5 * (tr + disc);
    return;
  }
  auto at = [&](int i, int j) -> double& { return m[i * 3 + j]; };
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) off += at(i, j) * at(i, j);
    double norm = 0.0;
    for (int i = 0; i < 9; ++i) norm = std::max(norm, std::abs(m[i]));
    if (off <= (1e-30 + 1e-28 * norm * norm)) break;
    for (int p = 0; p < 3; ++p)
      for (int q = p + 1; q < 3; ++q) {
        if (at(p, q) == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2 * at(p, q));
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (int k = 0; k < 3; ++k) {
          const double mkp = at(k, p), mkq = at(k, q);
          at(k, p) = c * mkp - s * mkq;
          at(k, q) = s * mkp + c * mkq;
        }
        for (int k = 0; k < 3; ++k) {
          const double mpk = at(p, k), mqk = at(q, k);
          at(p, k) = c * mpk - s * mqk;
          at(q, k) = s * mpk + c * mqk;
        }
      }
  }
  *emin = std::min({at(0, 0), at(1, 1), at(2, 2)});
  *emax = std::max({at(0, 0), at(1, 1), at(2, 2)});
}

double determinant(int dim, const std::array<double, 9>& m) {
  if (dim == 1) return m[0];
  if (dim == 2) return m[0] * m[3] - m[1] * m[2];
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

}  // namespace

double HessianReport::inf_norm() const {
  double norm = 0.0;
  for (int i = 0; i < dim; ++i) {
    double row = 0.0;
    for (int j = 0; j < dim; ++j) row += std::abs((*this)(i, j));
    norm = std::max(norm, row);
  }
  return norm;
}

HessianReport make_hessian_report(int dim, const std::array<double, 9>& sym) {
  HessianReport rep;
  rep.dim = dim;
  rep.matrix = sym;
  bool ok = true;
  for (int i = 0; i < dim * dim; ++i) ok = ok && std::isfinite(sym[i]);
  if (!ok) {
    rep.verdict = Definiteness::inconclusive;
    return rep;
  }
  jacobi_eigenvalues(dim, sym, &rep.eigen_min, &rep.eigen_max);
  rep.determinant = determinant(dim, sym);
  const double tol = tols().nsd_eigen_scale * (1.0 + rep.inf_norm());
  rep.verdict = rep.eigen_max <= tol ? Definiteness::negative_semidefinite
                                     : Definiteness::indefinite;
  return rep;
}

Gradient grad_g(const CauchyMeasure& m, double a, double b) {
  if (!(a < b)) throw std::domain_error("grad_g: requires a < b");
  const double g = finite_g(m, a, b);
  const double fg = m.density(g);
  return {-m.density(a) / fg, m.density(b) / fg};
}

HessianReport hessian_g_standard(double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw std::domain_error("hessian_g_standard: requires finite a < b");
  const double w = b - a;
  const double w3 = w * w * w;
  std::array<double, 9> h{};
  h[0] = -2 * (1 + b * b) / w3;
  h[1] = h[2] = 2 * (1 + a * b) / w3;
  h[3] = -2 * (1 + a * a) / w3;
  return make_hessian_report(2, h);
}

HessianReport hessian_g_general(const CauchyMeasure& m, double a, double b) {
  if (!(a < b)) throw std::domain_error("hessian_g_general: requires a < b");
  const double g = finite_g(m, a, b);
  const double fg = m.density(g);
  const double fpg = m.density_derivative(g);
  const double fa = m.density(a), fb = m.density(b);
  const double fpa = m.density_derivative(a), fpb = m.density_derivative(b);
  std::array<double, 9> h{};
  h[0] = (-fpa - fpg * fa * fa / (fg * fg)) / fg;
  h[3] = (fpb - fpg * fb * fb / (fg * fg)) / fg;
  h[1] = h[2] = fpg * fa * fb / (fg * fg) / fg;
  return make_hessian_report(2, h);
}

HessianReport hessian_g_fd(const CauchyMeasure& m, double a, double b) {
  if (!(a < b)) throw std::domain_error("hessian_g_fd: requires a < b");
  const auto g = [&m](double x, double y) { return finite_g(m, x, y); };
  const double ha = fd_step(a), hb = fd_step(b);

  const auto hess_at = [&](double sa, double sb, std::array<double, 9>& out) {
    const double g0 = g(a, b);
    out[0] = (g(a + sa, b) - 2 * g0 + g(a - sa, b)) / (sa * sa);
    out[3] = (g(a, b + sb) - 2 * g0 + g(a, b - sb)) / (sb * sb);
    out[1] = out[2] = (g(a + sa, b + sb) - g(a + sa, b - sb) - g(a - sa, b + sb) +
                       g(a - sa, b - sb)) /
                      (4 * sa * sb);
  };
  std::array<double, 9> h1{}, h2{}, h{};
  hess_at(ha, hb, h1);
  hess_at(ha / 2, hb / 2, h2);
  for (int i = 0; i < 4; ++i) h[i] = (4 * h2[i] - h1[i]) / 3;
  h[1] = h[2] = 0.5 * (h[1] + h[2]);
  return make_hessian_report(2, h);
}

JointHessianReport hessian_joint(int n, double alpha, double a, double b) {
  if (!(alpha >= 0)) throw std::domain_error("hessian_joint: requires alpha >= 0");
  if (!(a < b)) throw std::domain_error("hessian_joint: requires a < b");
  const CauchyMeasure m({alpha, n});
  const double g = finite_g(m, a, b);
  const Gradient grad = grad_g(m, a, b);
  const HessianReport hab = hessian_g_general(m, a, b);
  const double gaa = hab.matrix[0], gab = hab.matrix[1], gbb = hab.matrix[3];
  const double s2 = 1 + alpha * alpha;

  // dg/dalpha = alpha/(1+alpha^2) * (g - a dg/da - b dg/db); the scaling
  // relation g_alpha = s g_0(./s) supplies the whole alpha row in closed
  // form, with the limit value D at alpha = 0 (g is even in alpha).
  const double D = g - a * grad.da - b * grad.db;
  const double dalpha = alpha / s2 * D;
  const double quad = a * a * gaa + 2 * a * b * gab + b * b * gbb;
  const double h_alpha_alpha =
      alpha == 0.0 ? D : dalpha / (alpha * s2) + alpha * alpha / (s2 * s2) * quad;

  std::array<double, 9> h{};
  h[0] = h_alpha_alpha;
  h[1] = h[3] = -(alpha / s2) * (a * gaa + b * gab);
  h[2] = h[6] = -(alpha / s2) * (b * gbb + a * gab);
  h[4] = gaa;
  h[5] = h[7] = gab;
  h[8] = gbb;

  JointHessianReport rep;
  rep.hessian = make_hessian_report(3, h);
  rep.alpha_gradient = dalpha;

  if (alpha > 0.0) {
    // Independent route: second difference of alpha -> g against the
    // identity value assembled above.
    const double s0 = std::min(5e-3 * std::max(1.0, alpha), alpha / 2);
    const auto g_of = [&](double al) { return finite_g(CauchyMeasure({al, n}), a, b); };
    const double g0v = g_of(alpha);
    const double d1 =
        (g_of(alpha + s0) - 2 * g0v + g_of(alpha - s0)) / (s0 * s0);
    const double d2 = (g_of(alpha + s0 / 2) - 2 * g0v + g_of(alpha - s0 / 2)) /
                      (s0 * s0 / 4);
    const double fd = (4 * d2 - d1) / 3;
    rep.alpha_identity_rel = std::abs(fd - h_alpha_alpha) /
                             (1.0 + std::max(std::abs(fd), std::abs(h_alpha_alpha)));
    rep.alpha_identity_checked = true;
  }
  return rep;
}

double chi(const MeasureParams& params, double x) {
  params.validate();
  const double q = 1 + params.alpha * params.alpha + x * x;
  return x * detail::pow_half_int(q, params.n - 1);
}

ChiCriterionResult chi_criterion_margin(const CauchyMeasure& m, double a, double b) {
  if (!(a < b)) throw std::domain_error("chi_criterion_margin: requires a < b");
  const double g = finite_g(m, a, b);
  if (a < 0 && 0 < b && g < 0)
    return {std::numeric_limits<double>::infinity(), true};
  const double ca = chi(m.params(), a), cb = chi(m.params(), b);
  const double denom = ca - cb;
  if (denom == 0.0)
    throw std::domain_error("chi_criterion_margin: chi(a) == chi(b)");
  return {ca * cb / denom - chi(m.params(), g), false};
}

}  // namespace cauchyiso
