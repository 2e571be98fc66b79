#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace smtkit {

struct AcceptanceOptions {
  std::uint64_t seed = 0;
  unsigned precision = 128;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // deterministic: counts and values, never timings
};

inline constexpr int kCriterionCount = 12;

std::string criterion_name(int id);

/// Runs one acceptance criterion (1..12). Exceptions are caught and reported
/// as failures. Criterion 12 reruns 1..11 twice and compares the reports.
CriterionResult run_criterion(int id, const AcceptanceOptions& options = {});

/// One "PASS|FAIL [id] name: detail" line per result.
std::string format_results(const std::vector<CriterionResult>& results);

}  // namespace smtkit
