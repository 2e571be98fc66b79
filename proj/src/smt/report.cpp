#include "smtkit/smt/report.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace smtkit {

ReportFormat parse_report_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "text") return ReportFormat::Text;
  throw InputError("unknown report format '" + name + "' (expected csv or text)");
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

namespace {

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) out += (out.empty() ? "" : ";") + f;
  return out;
}

}  // namespace

void write_margin_report(std::ostream& out, const std::vector<SmtRow>& rows, const ReportMetadata& meta,
                         ReportFormat format) {
  if (format == ReportFormat::Csv) {
    for (const auto& [key, value] : meta) out << "# " << key << ": " << value << '\n';
    out << "r,T,N_truncated_sum,lhs,rhs,margin,flags\n";
    for (const auto& row : rows)
      out << format_double(row.r) << ',' << format_double(row.T) << ',' << format_double(row.N_truncated_sum) << ','
          << format_double(row.lhs) << ',' << format_double(row.rhs) << ',' << format_double(row.margin) << ','
          << join_flags(row.flags) << '\n';
    return;
  }
  for (const auto& [key, value] : meta) out << key << ": " << value << '\n';
  if (!meta.empty()) out << '\n';
  const char* headers[] = {"r", "T", "N_truncated_sum", "lhs", "rhs", "margin", "flags"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows)
    cells.push_back({format_double(row.r), format_double(row.T), format_double(row.N_truncated_sum),
                     format_double(row.lhs), format_double(row.rhs), format_double(row.margin),
                     join_flags(row.flags)});
  std::vector<std::size_t> width(7);
  for (int c = 0; c < 7; ++c) {
    width[c] = std::string(headers[c]).size();
    for (const auto& line : cells) width[c] = std::max(width[c], line[c].size());
  }
  for (int c = 0; c < 7; ++c) out << (c ? "  " : "") << std::left << std::setw(static_cast<int>(width[c])) << headers[c];
  out << '\n';
  for (const auto& line : cells) {
    for (int c = 0; c < 7; ++c) out << (c ? "  " : "") << std::left << std::setw(static_cast<int>(width[c])) << line[c];
    out << '\n';
  }
}

void emit_report(const std::string& path, const std::vector<SmtRow>& rows, const ReportMetadata& meta,
                 ReportFormat format) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write report to '" + path + "'");
  write_margin_report(file, rows, meta, format);
  file.flush();
  if (!file) throw InputError("error while writing '" + path + "'");
}

std::vector<double> read_margin_column(std::istream& in) {
  std::vector<double> out;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line.rfind("r,T,", 0) != 0) throw InputError("not a margin CSV");
      header = true;
      continue;
    }
    std::stringstream fields(line);
    std::string cell;
    for (int c = 0; c <= 5; ++c) std::getline(fields, cell, ',');
    out.push_back(std::stod(cell));
  }
  return out;
}

ReportMetadata describe(const SmtTable& table) {
  ReportMetadata meta;
  meta.emplace_back("theorem", to_string(table.variant));
  meta.emplace_back("k", std::to_string(table.facts.k));
  meta.emplace_back("deg_V", std::to_string(table.facts.degV));
  meta.emplace_back("q", std::to_string(table.facts.q));
  meta.emplace_back("d", std::to_string(table.facts.d));
  meta.emplace_back("N_used", std::to_string(table.facts.N_used));
  meta.emplace_back("position", to_string(table.facts.position.verdict));
  meta.emplace_back("coefficient", to_string(table.coefficient));
  meta.emplace_back("vacuous", table.vacuous ? "yes" : "no");
  meta.emplace_back("M", table.M.str());
  meta.emplace_back("M_source", table.M_from_calculator ? "calculator" : "override");
  if (table.truncation) {
    meta.emplace_back("M0", table.truncation->M0.str());
    meta.emplace_back("M0_formula", table.truncation->formula);
    meta.emplace_back("M0_rounding", "floor of the real-valued bound");
    for (const auto& [key, value] : table.truncation->echo) meta.emplace_back("M0_" + key, value);
  }
  return meta;
}

}  // namespace smtkit
