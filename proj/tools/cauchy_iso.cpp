// Command-line front end: single-value evaluation, extremal-interval
// classification, proof-auxiliary records, and verification sweeps with
// CSV/JSON reports.
//
// Exit codes: 0 success, 1 unexpected counterexample from `verify`,
// 2 flag/usage errors, 3 numeric failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cauchyiso/calculus.hpp"
#include "cauchyiso/inequalities.hpp"
#include "cauchyiso/measure.hpp"
#include "cauchyiso/oracle.hpp"
#include "cauchyiso/report_io.hpp"
#include "cauchyiso/transfer.hpp"
#include "cauchyiso/verify.hpp"

namespace ci = cauchyiso;

namespace {

ci::ExtReal parse_lower(const std::string& text) {
  if (text == "-inf" || text == "-INF" || text == "-Inf")
    return ci::ExtReal::neg_inf();
  size_t pos = 0;
  const double v = std::stod(text, &pos);
  if (pos != text.size()) throw CLI::ValidationError("--a", "not a number: " + text);
  return ci::ExtReal(v);
}

void emit(const std::string& path, const std::string& payload) {
  if (path.empty() || path == "-") {
    std::cout << payload;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << payload;
}

int run_eval(double alpha, int n, const std::string& a_text, double b,
             const std::string& what, bool with_oracle) {
  const ci::MeasureParams params{alpha, n};
  const ci::CauchyMeasure m(params);
  const ci::ExtReal a = parse_lower(a_text);
  using ci::fmt_double_15;

  if (what == "g") {
    ci::TransferResult res = params.is_standard() && a.finite()
                                 ? ci::TransferResult{ci::g_standard(a, b),
                                                      ci::TransferMethod::closed_form, 0.0}
                                 : ci::g_general(m, a, b);
    const std::string text =
        res.value.finite() ? fmt_double_15(res.value.value()) : "-inf";
    std::cout << text << "\n";
    if (with_oracle) {
      const ci::QuadratureOracle oracle(params);
      const double ov = oracle.g(a, b);
      std::cout << "oracle " << fmt_double_15(ov) << " discrepancy "
                << fmt_double_15(res.value.finite() ? res.value.value() - ov : 0.0)
                << "\n";
    }
    return 0;
  }
  if (what == "gstar") {
    if (!a.finite()) throw std::domain_error("gstar requires finite a");
    const double value = params.is_standard()
                             ? ci::g_star_standard(a.value(), b)
                             : ci::g_star_general(m, a.value(), b).value.value();
    std::cout << fmt_double_15(value) << "\n";
    if (with_oracle) {
      const ci::QuadratureOracle oracle(params);
      const double ov = oracle.g_star(a.value(), b);
      std::cout << "oracle " << fmt_double_15(ov) << " discrepancy "
                << fmt_double_15(value - ov) << "\n";
    }
    return 0;
  }
  if (what == "mass") {
    const double value = m.interval_mass(a, b);
    std::cout << fmt_double_15(value) << "\n";
    if (with_oracle) {
      const ci::QuadratureOracle oracle(params);
      const double ov = oracle.interval_mass(a, b);
      std::cout << "oracle " << fmt_double_15(ov) << " discrepancy "
                << fmt_double_15(value - ov) << "\n";
    }
    return 0;
  }
  if (what == "per") {
    const ci::Interval iv(a, b);
    std::cout << fmt_double_15(ci::perimeter_interval(m, iv).value) << "\n";
    return 0;
  }
  if (what == "grad") {
    if (!a.finite()) throw std::domain_error("grad requires finite a");
    const ci::Gradient grad = ci::grad_g(m, a.value(), b);
    std::cout << "dg/da " << fmt_double_15(grad.da) << "\n";
    std::cout << "dg/db " << fmt_double_15(grad.db) << "\n";
    return 0;
  }
  if (what == "hessian") {
    if (!a.finite()) throw std::domain_error("hessian requires finite a");
    const ci::HessianReport rep = params.is_standard()
                                      ? ci::hessian_g_standard(a.value(), b)
                                      : ci::hessian_g_general(m, a.value(), b);
    std::cout << ci::to_json(rep) << "\n";
    if (with_oracle) {
      const ci::HessianReport fd = ci::hessian_g_fd(m, a.value(), b);
      std::cout << "fd " << ci::to_json(fd) << "\n";
    }
    return 0;
  }
  throw CLI::ValidationError("--what", "unknown quantity: " + what);
}

int run_classify(double a, double b) {
  const ci::ExtremalClassification res = ci::classify_extremal(a, b);
  using ci::fmt_double_15;
  const char* label = res.mass_case == ci::MassCase::above_half  ? "mass>1/2"
                      : res.mass_case == ci::MassCase::below_half ? "mass<1/2"
                                                                  : "mass=1/2";
  std::cout << "case " << label << " mass " << fmt_double_15(res.mass) << "\n";
  std::cout << "per(a,b) " << fmt_double_15(res.per_interval) << "\n";
  std::cout << "per(-inf,g) " << fmt_double_15(res.per_half_line) << "\n";
  std::cout << "per(-g*,g*) " << fmt_double_15(res.per_symmetric) << "\n";
  std::cout << "ordering " << (res.ordering_ok ? "verified" : "VIOLATED")
            << (res.strict ? " (strict)" : "") << "\n";
  return res.ordering_ok ? 0 : 1;
}

int run_aux(double alpha, int n, double p) {
  const ci::CauchyMeasure m({alpha, n});
  const ci::ProofAuxiliaries aux = ci::proof_auxiliaries(m, p);
  using ci::fmt_double_15;
  std::cout << "p1 " << fmt_double_15(aux.p1) << "\n";
  std::cout << "mass(-p1,p1) " << fmt_double_15(aux.mass_p1) << "\n";
  std::cout << "z " << (aux.z ? fmt_double_15(*aux.z) : "undefined (p < p1)") << "\n";
  std::cout << "x " << fmt_double_15(aux.x_half_chi) << " (2chi(x)-chi(p) residual "
            << fmt_double_15(aux.chi_half_residual) << ")\n";
  std::cout << "phi " << fmt_double_15(aux.phi) << "\n";
  if (aux.y) std::cout << "y " << fmt_double_15(*aux.y) << "\n";
  if (aux.lambda) std::cout << "lambda " << fmt_double_15(*aux.lambda) << "\n";
  if (aux.lambda_prime)
    std::cout << "lambda' " << fmt_double_15(*aux.lambda_prime) << "\n";
  std::cout << "h " << (aux.h.finite() ? fmt_double_15(aux.h.value()) : "-inf") << "\n";
  if (aux.h_prime_closed)
    std::cout << "h' " << fmt_double_15(*aux.h_prime_closed) << " (fd "
              << fmt_double_15(*aux.h_prime_fd) << ")\n";
  return 0;
}

int run_verify(ci::SweepConfig config, const std::string& format,
               const std::string& out_path, bool per_sample) {
  std::string payload;
  std::vector<ci::VerificationReport> reports;
  if (per_sample && format == "csv") {
    std::string rows = ci::sample_csv_header();
    reports = ci::run_sweep(config, [&rows](const ci::SampleRow& row) {
      rows += ci::sample_csv_row(row);
    });
    payload = rows;
  } else {
    reports = ci::run_sweep(config);
    payload = format == "json" ? ci::reports_to_json(config, reports)
                               : ci::reports_to_csv(reports);
  }
  emit(out_path, payload);
  if (ci::has_unexpected_failures(reports)) {
    for (const ci::VerificationReport& r : reports) {
      if (r.n_fail == 0) continue;
      std::cerr << "counterexample in " << r.inequality << ":";
      if (r.ce) {
        std::cerr << " n=" << r.ce->n << " coords=[";
        for (size_t i = 0; i < r.ce->coords.size(); ++i)
          std::cerr << (i ? ", " : "") << ci::fmt_double(r.ce->coords[i]);
        std::cerr << "] margin=" << ci::fmt_double(r.ce->margin);
      }
      std::cerr << "\n";
    }
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interval-transfer calculus and isoperimetric-type inequality "
               "verification for Cauchy-type measures"};
  app.require_subcommand(1);

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a single quantity");
  double alpha = 0.0, b = 1.0;
  int n = 1;
  std::string a_text = "-1";
  std::string what = "g";
  bool with_oracle = false;
  eval->add_option("--alpha", alpha, "section offset alpha >= 0")->capture_default_str();
  eval->add_option("--n", n, "ambient dimension n >= 1")->capture_default_str();
  eval->add_option("--a", a_text, "left endpoint (number or -inf)")->capture_default_str();
  eval->add_option("--b", b, "right endpoint")->capture_default_str();
  eval->add_option("--what", what, "one of g|gstar|mass|per|grad|hessian")
      ->capture_default_str();
  eval->add_flag("--oracle", with_oracle, "also print the brute-force oracle value");

  // classify
  auto* classify = app.add_subcommand("classify", "extremal-interval ordering "
                                                  "(standard Cauchy)");
  double ca = -1.0, cb = 1.0;
  classify->add_option("--a", ca, "left endpoint")->required();
  classify->add_option("--b", cb, "right endpoint")->required();

  // aux
  auto* aux = app.add_subcommand("aux", "proof-auxiliary record at p");
  double xalpha = 0.0, xp = 1.0;
  int xn = 1;
  aux->add_option("--alpha", xalpha, "section offset")->capture_default_str();
  aux->add_option("--n", xn, "ambient dimension")->capture_default_str();
  aux->add_option("--p", xp, "half-width p > 0")->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "run verification sweeps");
  ci::SweepConfig config;
  std::string ineq = "all";
  std::string format = "csv";
  std::string out_path;
  bool per_sample = false;
  long samples = 1000;
  uint64_t seed = 42;
  int threads = 0;
  verify->add_option("--seed", seed, "sweep seed")->capture_default_str();
  verify->add_option("--samples", samples, "samples per inequality")
      ->capture_default_str();
  verify->add_option("--ineq", ineq, "comma-separated inequality ids, or 'all'")
      ->capture_default_str();
  verify->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  verify->add_option("--out", out_path, "output path (default stdout)");
  verify->add_flag("--per-sample", per_sample,
                   "one CSV row per sample instead of summaries");
  verify->add_option("--threads", threads, "worker threads (0 = hardware)");
  verify->add_flag_callback("--list", [] {
    for (const std::string& id : ci::check_ids()) std::cout << id << "\n";
    std::exit(0);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (eval->parsed()) return run_eval(alpha, n, a_text, b, what, with_oracle);
    if (classify->parsed()) return run_classify(ca, cb);
    if (aux->parsed()) return run_aux(xalpha, xn, xp);
    if (verify->parsed()) {
      config.seed = seed;
      config.samples = samples;
      config.threads = threads;
      if (const char* cap = std::getenv("CAUCHY_ISO_THREADS")) {
        const int limit = std::atoi(cap);
        if (limit > 0)
          config.threads = config.threads > 0 ? std::min(config.threads, limit) : limit;
      }
      if (ineq != "all") {
        std::stringstream ss(ineq);
        std::string id;
        while (std::getline(ss, id, ',')) {
          if (!id.empty()) config.selection.push_back(id);
        }
      }
      return run_verify(config, format, out_path, per_sample);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
