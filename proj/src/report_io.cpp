#include "cauchyiso/report_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace cauchyiso {

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt_double_15(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::expected_fail: return "expected_fail";
    case Outcome::skipped: return "skipped";
    case Outcome::error: return "error";
  }
  return "unknown";
}

std::string to_json(const MeasureParams& params) {
  return "{\"alpha\": " + fmt_double(params.alpha) +
         ", \"n\": " + std::to_string(params.n) + "}";
}

std::string to_json(const TransferResult& result) {
  std::string value = result.value.finite() ? fmt_double(result.value.value())
                                            : std::string("\"-inf\"");
  return "{\"value\": " + value + ", \"method\": \"" +
         (result.method == TransferMethod::closed_form ? "closed_form" : "root_find") +
         "\", \"residual\": " + fmt_double(result.residual) + "}";
}

std::string to_json(const HessianReport& report) {
  std::string out = "{\"dim\": " + std::to_string(report.dim) + ", \"matrix\": [";
  for (int i = 0; i < report.dim * report.dim; ++i) {
    if (i) out += ", ";
    out += fmt_double(report.matrix[i]);
  }
  out += "], \"eigen_max\": " + fmt_double(report.eigen_max);
  out += ", \"eigen_min\": " + fmt_double(report.eigen_min);
  out += ", \"determinant\": " + fmt_double(report.determinant);
  out += ", \"verdict\": \"";
  switch (report.verdict) {
    case Definiteness::negative_semidefinite: out += "negative_semidefinite"; break;
    case Definiteness::indefinite: out += "indefinite"; break;
    case Definiteness::inconclusive: out += "inconclusive"; break;
  }
  out += "\"}";
  return out;
}

namespace {

std::string coords_json(const std::vector<double>& coords, int n) {
  std::string out = "{\"n\": " + std::to_string(n) + ", \"coords\": [";
  for (size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ", ";
    out += fmt_double(coords[i]);
  }
  out += "]}";
  return out;
}

// JSON numbers cannot carry inf/nan; quote them.
std::string json_number(double v) {
  if (std::isnan(v) || std::isinf(v)) return "\"" + fmt_double(v) + "\"";
  return fmt_double(v);
}

std::string coords_packed(const std::vector<double>& coords) {
  std::string out;
  for (size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ";";
    out += fmt_double(coords[i]);
  }
  return out;
}

}  // namespace

std::string reports_to_json(const SweepConfig& config,
                            const std::vector<VerificationReport>& reports) {
  std::string out = "{\n";
  out += "  \"seed\": " + std::to_string(config.seed) + ",\n";
  out += "  \"samples\": " + std::to_string(config.samples) + ",\n";
  out += "  \"reports\": [\n";
  for (size_t i = 0; i < reports.size(); ++i) {
    const VerificationReport& r = reports[i];
    out += "    {\"inequality\": \"" + r.inequality + "\"";
    out += ", \"n_samples\": " + std::to_string(r.n_samples);
    out += ", \"n_fail\": " + std::to_string(r.n_fail);
    out += ", \"n_expected_fail\": " + std::to_string(r.n_expected_fail);
    out += ", \"n_skipped\": " + std::to_string(r.n_skipped);
    out += ", \"n_error\": " + std::to_string(r.n_error);
    out += ", \"worst_margin\": " + json_number(r.worst_margin);
    out += ", \"worst_input\": ";
    out += r.worst_input ? coords_json(r.worst_input->coords, r.worst_input->n)
                         : std::string("null");
    out += ", \"ce\": ";
    if (r.ce) {
      out += "{\"input\": " + coords_json(r.ce->coords, r.ce->n) +
             ", \"margin\": " + json_number(r.ce->margin) + "}";
    } else {
      out += "null";
    }
    out += i + 1 < reports.size() ? "},\n" : "}\n";
  }
  out += "  ]\n}\n";
  return out;
}

std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
  std::string out =
      "inequality,n_samples,n_fail,n_expected_fail,n_skipped,n_error,"
      "worst_margin,worst_n,worst_input,ce_n,ce_input,ce_margin\n";
  for (const VerificationReport& r : reports) {
    out += r.inequality;
    out += "," + std::to_string(r.n_samples);
    out += "," + std::to_string(r.n_fail);
    out += "," + std::to_string(r.n_expected_fail);
    out += "," + std::to_string(r.n_skipped);
    out += "," + std::to_string(r.n_error);
    out += "," + fmt_double(r.worst_margin);
    if (r.worst_input) {
      out += "," + std::to_string(r.worst_input->n);
      out += "," + coords_packed(r.worst_input->coords);
    } else {
      out += ",,";
    }
    if (r.ce) {
      out += "," + std::to_string(r.ce->n);
      out += "," + coords_packed(r.ce->coords);
      out += "," + fmt_double(r.ce->margin);
    } else {
      out += ",,,";
    }
    out += "\n";
  }
  return out;
}

std::string sample_csv_header() {
  return "inequality,sample,n,coords,lhs,rhs,margin,outcome\n";
}

std::string sample_csv_row(const SampleRow& row) {
  std::string out = *row.check;
  out += "," + std::to_string(row.index);
  out += "," + std::to_string(row.sample->n);
  out += "," + coords_packed(row.sample->coords);
  out += "," + fmt_double(row.eval->lhs);
  out += "," + fmt_double(row.eval->rhs);
  out += "," + fmt_double(row.eval->margin);
  out += "," + outcome_name(row.eval->outcome);
  out += "\n";
  return out;
}

}  // namespace cauchyiso
