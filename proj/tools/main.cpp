#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "smtkit/acceptance/acceptance.hpp"
#include "smtkit/cli/scenario.hpp"
#include "smtkit/filtration/filtration.hpp"
#include "smtkit/smt/report.hpp"

using namespace smtkit;

namespace {

enum Exit { kOk = 0, kViolation = 2, kInconclusive = 3, kBadInput = 4 };

struct Flags {
  std::string scenario;
  std::string theorem = "1.1";
  std::optional<long> seed;
  std::optional<unsigned> precision;
  std::optional<int> degree_cap;
  std::string out;
  std::string format = "csv";
  bool proof_version = false;
};

// Values after applying command-line overrides to the scenario.
struct Effective {
  std::uint64_t seed = 0;
  unsigned precision = 128;
  int degree_cap = 0;
};

Effective effective(const Flags& flags, const ScenarioFile* file) {
  Effective e;
  if (file) e = {file->seed, file->precision, file->degree_cap};
  if (flags.seed) {
    if (*flags.seed < 0) throw InputError("--seed must be non-negative");
    e.seed = static_cast<std::uint64_t>(*flags.seed);
  }
  if (flags.precision) e.precision = *flags.precision;
  if (flags.degree_cap) e.degree_cap = *flags.degree_cap;
  if (e.precision < 53 || e.precision > 4096) throw InputError("--precision must lie in 53..4096 bits");
  if (e.degree_cap < 0) throw InputError("--degree-cap must be non-negative");
  return e;
}

ReportMetadata base_metadata(const std::string& command, const Flags& flags, const Effective& e) {
  ReportMetadata meta{{"tool", std::string("smtkit ") + SMTKIT_VERSION},
                      {"command", command},
                      {"scenario", flags.scenario},
                      {"seed", std::to_string(e.seed)},
                      {"precision", std::to_string(e.precision)},
                      {"degree_cap", e.degree_cap ? std::to_string(e.degree_cap) : "default"}};
  return meta;
}

void add_assumption(ReportMetadata& meta) { meta.emplace_back("assumption", "smoothness of V is not verified"); }

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

// Generic report: metadata and a table of string cells.
void write_table(std::ostream& out, const ReportMetadata& meta, const std::vector<std::string>& headers,
                 const std::vector<std::vector<std::string>>& rows, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    for (const auto& [k, v] : meta) out << "# " << k << ": " << v << '\n';
    for (std::size_t c = 0; c < headers.size(); ++c) out << (c ? "," : "") << csv_cell(headers[c]);
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_cell(row[c]);
      out << '\n';
    }
    return;
  }
  for (const auto& [k, v] : meta) out << k << ": " << v << '\n';
  if (!meta.empty()) out << '\n';
  std::vector<std::size_t> width(headers.size());
  for (std::size_t c = 0; c < headers.size(); ++c) {
    width[c] = headers[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c)
      out << (c ? "  " : "") << std::left << std::setw(static_cast<int>(width[c])) << cells[c];
    out << '\n';
  };
  line(headers);
  for (const auto& row : rows) line(row);
}

// Writes to --out, or to stdout when no path is given.
template <typename Writer>
void emit(const Flags& flags, Writer&& writer) {
  if (flags.out.empty()) {
    writer(std::cout);
    return;
  }
  std::ofstream file(flags.out, std::ios::binary);
  if (!file) throw InputError("cannot write report to '" + flags.out + "'");
  writer(file);
  file.flush();
  if (!file) throw InputError("error while writing '" + flags.out + "'");
}

std::string subset_text(const std::vector<int>& subset) {
  std::string s = "{";
  for (std::size_t i = 0; i < subset.size(); ++i) s += (i ? "," : "") + std::to_string(subset[i] + 1);
  return s + "}";
}

ScenarioFile load(const Flags& flags) { return load_scenario(flags.scenario); }

int run_check_position(const Flags& flags) {
  const auto file = load(flags);
  const auto e = effective(flags, &file);
  if (!file.N) throw InputError("check-position needs params.N");
  if (file.hypersurfaces.empty()) throw InputError("check-position needs a [hypersurfaces] section");
  const auto report = check_position(file.variety(), file.hypersurfaces, *file.N, e.degree_cap);
  auto meta = base_metadata("check-position", flags, e);
  meta.emplace_back("N", std::to_string(*file.N));
  meta.emplace_back("verdict", to_string(report.verdict));
  if (report.witness) meta.emplace_back("witness", subset_text(*report.witness));
  add_assumption(meta);
  std::vector<std::vector<std::string>> rows;
  for (const auto& cert : report.certificates)
    rows.push_back({subset_text(cert.subset), to_string(cert.verdict.kind),
                    cert.verdict.empty() ? std::to_string(cert.verdict.certificate_degree) : "",
                    std::to_string(cert.verdict.cap)});
  emit(flags, [&](std::ostream& out) {
    write_table(out, meta, {"subset", "verdict", "certificate_degree", "cap"}, rows, parse_report_format(flags.format));
  });
  if (report.verdict == PositionReport::Verdict::Fails) {
    std::cerr << "position fails: hypersurfaces " << subset_text(*report.witness)
              << " meet V (indices are 1-based)\n";
    return kViolation;
  }
  if (report.verdict == PositionReport::Verdict::Inconclusive) {
    std::cerr << "position could not be certified within the degree cap\n";
    return kInconclusive;
  }
  return kOk;
}

int run_construct_gp(const Flags& flags) {
  const auto file = load(flags);
  const auto e = effective(flags, &file);
  ReplacementOptions options;
  options.seed = e.seed;
  options.degree_cap = e.degree_cap;
  const auto sys = construct_general_position(file.variety(), file.hypersurfaces, options);
  auto meta = base_metadata("construct-gp", flags, e);
  meta.emplace_back("k", std::to_string(sys.k));
  meta.emplace_back("N", std::to_string(sys.N));
  meta.emplace_back("max_retries", std::to_string(options.max_retries));
  add_assumption(meta);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t t = 0; t < sys.P.size(); ++t) {
    const int dim = sys.chain_dims[t];
    rows.push_back({std::to_string(t + 1), sys.P[t].to_string(), dim == kEmptyDimension ? "empty" : std::to_string(dim),
                    t == 0 ? "" : std::to_string(sys.bounds_used[t - 1]),
                    t == 0 ? "" : std::to_string(sys.attempts[t - 1])});
  }
  emit(flags, [&](std::ostream& out) {
    write_table(out, meta, {"t", "P_t", "dim", "bound", "attempts"}, rows, parse_report_format(flags.format));
  });
  return kOk;
}

int run_hilbert(const Flags& flags) {
  const auto file = load(flags);
  const auto e = effective(flags, &file);
  const auto V = file.variety();
  const int cap = e.degree_cap ? e.degree_cap : V.default_degree_cap();
  const auto est = estimate_dimension(V, 0, cap);
  auto meta = base_metadata("hilbert", flags, e);
  switch (est.kind) {
    case DimensionEstimate::Kind::Empty:
      meta.emplace_back("dimension", "empty");
      break;
    case DimensionEstimate::Kind::Dimension:
      meta.emplace_back("dimension", std::to_string(est.dimension));
      meta.emplace_back("degree", est.degree.str());
      break;
    case DimensionEstimate::Kind::Unstable:
      meta.emplace_back("dimension", "unstable below the cap");
      break;
  }
  add_assumption(meta);
  std::vector<std::vector<std::string>> rows;
  for (int m = 0; m <= cap; ++m) rows.push_back({std::to_string(m), std::to_string(V.hilbert(m))});
  emit(flags, [&](std::ostream& out) { write_table(out, meta, {"m", "H"}, rows, parse_report_format(flags.format)); });
  return est.stable() ? kOk : kInconclusive;
}

int run_weights(const Flags& flags) {
  const auto file = load(flags);
  const auto e = effective(flags, &file);
  if (!file.weights) throw InputError("weights needs a [weights] section");
  const auto& W = *file.weights;
  validate_weights(W.c, file.n);
  const auto V = file.variety();
  auto meta = base_metadata("weights", flags, e);
  add_assumption(meta);
  std::vector<std::vector<std::string>> rows;
  bool violated = false;
  if (W.m) {
    const auto hw = hilbert_weight(V, *W.m, W.c);
    rows.push_back({"S", to_string(hw.S)});
    rows.push_back({"H", std::to_string(hw.h)});
  }
  std::optional<BracketPolynomial> F;
  if (W.chow_form) {
    try {
      F = parse_bracket_polynomial(*W.chow_form, file.n);
    } catch (const InputError& err) {
      throw InputError(std::string("chow_form: ") + err.what(), err.position());
    }
    const auto cw = chow_weight(*F, W.c, {.seed = e.seed});
    rows.push_back({"e", std::to_string(cw.value)});
    if (W.m) {
      const auto margin = hilbert_chow_margin(V, *F, *W.m, W.c, e.seed);
      rows.push_back({"hilbert_chow_lhs", to_string(margin.lhs)});
      rows.push_back({"hilbert_chow_rhs", to_string(margin.rhs)});
      rows.push_back({"hilbert_chow_margin", to_string(margin.margin)});
      violated = violated || margin.margin < 0;
    }
    if (!W.subset.empty()) {
      const auto margin = chow_subset_margin(V, *F, W.c, W.subset, e.seed);
      rows.push_back({"subset_lhs", to_string(margin.lhs)});
      rows.push_back({"subset_rhs", to_string(margin.rhs)});
      rows.push_back({"subset_margin", to_string(margin.margin)});
      violated = violated || margin.margin < 0;
    }
  }
  if (rows.empty()) throw InputError("[weights] needs m or chow_form");
  emit(flags,
       [&](std::ostream& out) { write_table(out, meta, {"quantity", "value"}, rows, parse_report_format(flags.format)); });
  return violated ? kViolation : kOk;
}

int run_filtration(const Flags& flags) {
  const auto file = load(flags);
  const auto e = effective(flags, &file);
  if (!file.filtration) throw InputError("filtration needs a [filtration] section");
  FiltrationParams params{file.n, file.filtration->d, file.filtration->u, file.filtration->P};
  validate_filtration_params(params, e.seed);
  const auto table = filtration_dims(params);
  const auto violations = quotient_dimension_violations(table);
  const auto b = compute_b(table);
  auto meta = base_metadata("filtration", flags, e);
  meta.emplace_back("K", std::to_string(table.K()));
  meta.emplace_back("quotient_violations", std::to_string(violations.size()));
  meta.emplace_back("b_bound", to_string(b.bound));
  bool negative_b = false;
  for (std::size_t j = 0; j < b.b.size(); ++j) {
    meta.emplace_back("b_" + std::to_string(j + 1), to_string(b.b[j]));
    negative_b = negative_b || b.margins[j] < 0;
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t s = 0; s < table.indices.size(); ++s) {
    std::string idx;
    for (std::size_t j = 0; j < table.indices[s].size(); ++j) idx += (j ? " " : "") + std::to_string(table.indices[s][j]);
    rows.push_back({idx, std::to_string(table.dims[s]), std::to_string(table.m[s])});
  }
  emit(flags, [&](std::ostream& out) {
    write_table(out, meta, {"index", "dim", "quotient"}, rows, parse_report_format(flags.format));
  });
  for (const auto& v : violations) std::cerr << "quotient dimension violated at index " << subset_text(v) << '\n';
  return violations.empty() && !negative_b ? kOk : kViolation;
}

QuadratureConfig quadrature(const Effective& e) {
  QuadratureConfig q;
  q.precision = e.precision;
  q.validate();
  return q;
}

int run_nevanlinna(const Flags& flags) {
  const auto file = load(flags);
  const auto e = effective(flags, &file);
  if (file.curve.empty()) throw InputError("nevanlinna needs a [curve] section");
  if (file.r_grid.empty()) throw InputError("nevanlinna needs r_grid or r_range");
  PrecisionScope scope(e.precision);
  const EntireCurve f(file.curve);
  const auto q = quadrature(e);
  auto meta = base_metadata("nevanlinna", flags, e);
  std::vector<std::vector<std::string>> rows;
  if (file.hypersurfaces.empty()) {
    for (double r : file.r_grid) {
      const auto T = characteristic_T(f, r, q);
      rows.push_back({"", format_double(r), format_double(T.radius), format_double(T.value), "", "", "",
                      format_double(T.error)});
    }
  }
  for (std::size_t i = 0; i < file.hypersurfaces.size(); ++i) {
    const auto table = fmt_residual(f, file.hypersurfaces[i], file.r_grid, q);
    meta.emplace_back("fmt_drift_Q" + std::to_string(i + 1), format_double(table.max_deviation));
    for (const auto& row : table.rows)
      rows.push_back({std::to_string(i + 1), format_double(row.r), format_double(row.radius), format_double(row.T),
                      format_double(row.m), format_double(row.N), format_double(row.residual),
                      format_double(row.error)});
  }
  emit(flags, [&](std::ostream& out) {
    write_table(out, meta, {"Q", "r", "radius", "T", "m", "N", "residual", "error"}, rows,
                parse_report_format(flags.format));
  });
  return kOk;
}

int run_smt(const Flags& flags) {
  const auto file = load(flags);
  const auto e = effective(flags, &file);
  const auto variant = parse_smt_variant(flags.theorem);
  PrecisionScope scope(e.precision);
  const auto scenario = file.smt_scenario();
  SmtOptions options;
  options.proof_version = flags.proof_version;
  options.degree_cap = e.degree_cap;
  options.quadrature = quadrature(e);
  if (file.truncation) options.M = Integer(*file.truncation);
  const auto table = smt_margins(scenario, variant, options);
  if (file.truncation && table.truncation && table.M < table.truncation->M0)
    std::cerr << "warning: truncation " << table.M << " is below the calculator value " << table.truncation->M0
              << '\n';
  auto meta = base_metadata("smt", flags, e);
  meta.emplace_back("proof_version_m0", flags.proof_version ? "yes" : "no");
  for (auto& entry : describe(table)) meta.push_back(std::move(entry));
  meta.emplace_back("membership", "symbolic");
  meta.emplace_back("reduced_representation", scenario.f.reduced_verified() ? "verified" : "assumed");
  add_assumption(meta);
  emit(flags, [&](std::ostream& out) { write_margin_report(out, table.rows, meta, parse_report_format(flags.format)); });
  if (table.vacuous) std::cerr << "note: the coefficient is not positive, so the bound is vacuous\n";
  int bad = 0;
  for (const auto& row : table.rows) bad += row.margin < 0 ? 1 : 0;
  if (bad) {
    std::cerr << bad << " radii with negative margin\n";
    return kViolation;
  }
  return kOk;
}

int run_selftest(const Flags& flags) {
  const auto e = effective(flags, nullptr);
  AcceptanceOptions options{e.seed, e.precision};
  std::vector<CriterionResult> results;
  int failed = 0;
  for (int id = 1; id <= kCriterionCount; ++id) {
    results.push_back(run_criterion(id, options));
    if (!results.back().pass) ++failed;
    std::cerr << (results.back().pass ? "PASS" : "FAIL") << " [" << id << "] " << results.back().name << '\n';
  }
  emit(flags, [&](std::ostream& out) {
    out << "# tool: smtkit " << SMTKIT_VERSION << "\n# seed: " << e.seed << "\n# precision: " << e.precision << '\n'
        << format_results(results);
  });
  return failed ? kViolation : kOk;
}

constexpr const char* kGrammar = R"(Scenario files:
  [variety]        n = INT, generator = POLY (repeatable)
  [hypersurfaces]  poly = POLY [; degree = INT] (repeatable)
  [curve]          component = EXPR (n+1 of them)
  [params]         N, epsilon (rational), r_grid = R R ... or r_range = FROM TO POINTS [log|linear],
                   truncation = auto|INT, seed, precision, degree_cap
  [weights]        c = INT ..., m = INT, chow_form = BRACKETS, subset = INT ... (1-based)
  [filtration]     d = INT, u = INT, P = POLY (repeatable)
  '#' starts a comment.

POLY: sums of rational multiples of monomials in x0..xn, e.g. 3/2*x0^2 - x1*x2.
EXPR: POLY grammar in z plus complex literals (2+3i, i) and exp(...), e.g. exp(2*z) - z^2 + i.
BRACKETS: terms like 3/2 * [0,1][1,2] or [0,2]^2 joined by + and -.

Exit codes: 0 success, 2 violated inequality or failed position, 3 inconclusive, 4 input error.)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Position checks, weights, filtrations and Nevanlinna margins for entire curves"};
  app.set_version_flag("--version", std::string(SMTKIT_VERSION));
  app.footer(kGrammar);
  app.require_subcommand(1);
  Flags flags;

  auto common = [&](CLI::App* sub, bool scenario) {
    if (scenario) sub->add_option("scenario", flags.scenario, "Scenario file")->required();
    sub->add_option("--seed", flags.seed, "Random seed (overrides params.seed)");
    sub->add_option("--precision", flags.precision, "Working precision in bits (overrides params.precision)");
    sub->add_option("--degree-cap", flags.degree_cap, "Degree cap for certificates (overrides params.degree_cap)");
    sub->add_option("--out", flags.out, "Report path (default: standard output)");
    sub->add_option("--format", flags.format, "Report format")->check(CLI::IsMember({"csv", "text"}));
    return sub;
  };

  std::vector<std::pair<CLI::App*, int (*)(const Flags&)>> commands{
      {common(app.add_subcommand("check-position", "N-subgeneral position of the hypersurfaces on V"), true),
       run_check_position},
      {common(app.add_subcommand("construct-gp", "Replace the hypersurfaces by k+1 in general position"), true),
       run_construct_gp},
      {common(app.add_subcommand("hilbert", "Hilbert function table, dimension and degree of V"), true), run_hilbert},
      {common(app.add_subcommand("weights", "Hilbert and Chow weights with their margin checks"), true), run_weights},
      {common(app.add_subcommand("filtration", "Filtration dimension table and quotient checks"), true),
       run_filtration},
      {common(app.add_subcommand("nevanlinna", "T, m, N and first-main-theorem residuals on the grid"), true),
       run_nevanlinna},
      {common(app.add_subcommand("selftest", "Run the acceptance suite"), false), run_selftest},
  };
  auto* smt = common(app.add_subcommand("smt", "Second-main-theorem margins with truncation calculators"), true);
  smt->add_option("--theorem", flags.theorem, "Bound to test: 1.1 (subgeneral on V) or 1.3 (projective space)")
      ->check(CLI::IsMember({"1.1", "1.3"}));
  smt->add_flag("--proof-version-m0", flags.proof_version, "Use the truncation level reached in the proof");
  commands.emplace_back(smt, run_smt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    for (const auto& [sub, run] : commands)
      if (sub->parsed()) return run(flags);
  } catch (const PositionFailure& e) {
    std::cerr << "error: " << e.what() << "; witness " << subset_text(e.witness()) << " (1-based)\n";
    return kViolation;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const InconclusiveError& e) {
    std::cerr << "inconclusive: " << e.what() << '\n';
    return kInconclusive;
  } catch (const ConvergenceError& e) {
    std::cerr << "inconclusive: " << e.what() << '\n';
    return kInconclusive;
  }
  return kBadInput;
}
