#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cauchyiso {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Parameters of the measure family with density proportional to
/// (1 + alpha^2 + x^2)^{-(n+1)/2}.  (alpha, n) = (0, 1) is the standard
/// Cauchy measure; for n > 1 the density is the one-dimensional section
/// of the n-dimensional isotropic Cauchy distribution at offset alpha.
struct MeasureParams {
  double alpha = 0.0;
  int n = 1;

  void validate() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
      throw std::domain_error("MeasureParams: alpha must be finite and >= 0");
    if (n < 1) throw std::domain_error("MeasureParams: n must be >= 1");
  }
  bool is_standard() const { return alpha == 0.0 && n == 1; }
};

/// Extended real restricted to the two states the transfer calculus
/// needs: a finite value or -infinity.  The -infinity state is explicit
/// so that no floating special value enters arithmetic downstream.
class ExtReal {
 public:
  ExtReal(double v) : finite_(true), value_(v) {
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity())
      throw std::domain_error("ExtReal: value must be finite or -inf");
    if (v == -std::numeric_limits<double>::infinity()) finite_ = false;
  }
  static ExtReal neg_inf() {
    ExtReal e;
    return e;
  }

  bool finite() const { return finite_; }
  double value() const {
    if (!finite_) throw std::logic_error("ExtReal: value() on -inf");
    return value_;
  }
  double value_or(double fallback) const { return finite_ ? value_ : fallback; }

  /// Comparison against a finite real; -inf is smaller than everything.
  bool less_than(double x) const { return !finite_ || value_ < x; }

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }

 private:
  ExtReal() : finite_(false), value_(0.0) {}
  bool finite_;
  double value_;
};

/// Oriented interval (a, b) with a < b; a may be -infinity (half-line),
/// b is always finite.
class Interval {
 public:
  Interval(ExtReal a, double b) : a_(a), b_(b) {
    if (!std::isfinite(b)) throw std::domain_error("Interval: b must be finite");
    if (!a.less_than(b)) throw std::domain_error("Interval: requires a < b");
  }
  Interval(double a, double b) : Interval(ExtReal(a), b) {}
  static Interval half_line(double b) { return Interval(ExtReal::neg_inf(), b); }

  const ExtReal& lower() const { return a_; }
  double upper() const { return b_; }
  bool is_half_line() const { return !a_.finite(); }

 private:
  ExtReal a_;
  double b_;
};

/// All numeric tolerances in one place.  Scaled tolerances are noted as
/// such: the bound applied is tol * (1 + scale of the quantities involved).
struct Tolerances {
  double normalization_agreement = 1e-10;  // closed form vs quadrature, relative
  double mass_one = 1e-10;                 // density integrates to 1
  double quantile_residual = 1e-12;        // |cdf(x*) - p| hard bound
  double zero_mass_cutoff = 1e-14;         // below: transfer value is -inf
  double transfer_agreement = 1e-10;       // closed form vs root find (scaled)
  double cdf_oracle = 1e-9;
  double g_oracle = 1e-8;                  // scaled by quantile conditioning
  double gap_margin = 1e-9;
  double borell_general_margin = 1e-8;
  double differential_margin = 1e-10;
  double ls_differential_margin = 1e-9;
  double borell_identity = 1e-10;          // scaled by operand magnitude
  double ls_identity = 1e-12;              // scaled by operand magnitude
  double equality_band = 1e-9;             // iff boundary r = 1
  double mass_half_eps = 1e-12;            // classification equality case
  double nsd_eigen_scale = 1e-7;           // eigen_max <= tol*(1+|H|_inf)
  double grad_fd_rel = 1e-6;
  double hessian_fd_rel = 1e-4;            // scaled by (1+|H|_inf)
  double alpha_identity_rel = 1e-5;
  double scaling_residual = 1e-9;
  double chi_margin = 1e-9;
  double aux_margin = 1e-10;
  double ls_monotone = 1e-8;
  double shrink_step = 1e-6;
};

inline const Tolerances& tols() {
  static const Tolerances t;
  return t;
}

class quadrature_error : public std::runtime_error {
 public:
  explicit quadrature_error(const std::string& what) : std::runtime_error(what) {}
};

class root_find_error : public std::runtime_error {
 public:
  explicit root_find_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cauchyiso
