#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "smtkit/smt/margins.hpp"

namespace smtkit {

enum class ReportFormat { Csv, Text };

ReportFormat parse_report_format(const std::string& name);

using ReportMetadata = std::vector<std::pair<std::string, std::string>>;

/// "%.15g"; the same double always prints the same way.
std::string format_double(double x);

/// CSV: optional '#'-prefixed metadata lines, then the header
/// r,T,N_truncated_sum,lhs,rhs,margin,flags and one line per row (flags
/// joined by ';'). Text: metadata as "key: value" and an aligned table.
void write_margin_report(std::ostream& out, const std::vector<SmtRow>& rows, const ReportMetadata& meta,
                         ReportFormat format);

/// Writes to a file; throws InputError if it cannot be opened.
void emit_report(const std::string& path, const std::vector<SmtRow>& rows, const ReportMetadata& meta,
                 ReportFormat format);

/// Reads the margin column back from a CSV report.
std::vector<double> read_margin_column(std::istream& in);

/// Metadata describing a margin table (variant, coefficient, truncation level, scenario facts).
ReportMetadata describe(const SmtTable& table);

}  // namespace smtkit
