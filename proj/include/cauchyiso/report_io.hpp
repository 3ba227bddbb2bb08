#pragma once

#include <string>
#include <vector>

#include "cauchyiso/calculus.hpp"
#include "cauchyiso/transfer.hpp"
#include "cauchyiso/verify.hpp"

namespace cauchyiso {

/// Shortest round-trip decimal form (to_chars); "inf"/"-inf"/"nan" for
/// the specials.  Locale-independent.
std::string fmt_double(double v);

/// Fixed 15-significant-digit form used by the CLI eval output.
std::string fmt_double_15(double v);

std::string outcome_name(Outcome o);

std::string to_json(const MeasureParams& params);
std::string to_json(const TransferResult& result);
std::string to_json(const HessianReport& report);

/// Report emission.  Wall time is intentionally not serialized so that
/// identical seeds give byte-identical files.
std::string reports_to_json(const SweepConfig& config,
                            const std::vector<VerificationReport>& reports);
std::string reports_to_csv(const std::vector<VerificationReport>& reports);

/// Per-sample CSV: header plus one row per (check, sample).
std::string sample_csv_header();
std::string sample_csv_row(const SampleRow& row);

}  // namespace cauchyiso
