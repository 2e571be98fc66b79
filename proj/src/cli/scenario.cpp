#include "smtkit/cli/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace smtkit {

namespace {

struct Entry {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;
  std::size_t value_column = 0;  // 1-based column where value starts
};

std::string trim(const std::string& s, std::size_t* lead = nullptr) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    if (lead) *lead = s.size();
    return "";
  }
  const auto e = s.find_last_not_of(" \t\r");
  if (lead) *lead = b;
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const Entry& e, const std::string& what, std::ptrdiff_t offset = -1) {
  std::string where = "line " + std::to_string(e.line);
  if (offset >= 0) where += ", column " + std::to_string(e.value_column + offset);
  throw InputError(where + ": " + what, offset >= 0 ? static_cast<std::ptrdiff_t>(e.value_column + offset) : -1);
}

long parse_long(const Entry& e, const std::string& text) {
  long v = 0;
  const auto t = trim(text);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) fail(e, "expected an integer, got '" + t + "'");
  return v;
}

double parse_double(const Entry& e, const std::string& text) {
  const auto t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) fail(e, "expected a number, got '" + t + "'");
  return v;
}

std::vector<std::string> words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

HomogeneousPolynomial parse_poly(const Entry& e, const std::string& text, std::size_t offset, int n) {
  try {
    return parse_polynomial(text, n + 1);
  } catch (const InputError& err) {
    fail(e, err.what(), err.position() >= 0 ? static_cast<std::ptrdiff_t>(offset + err.position()) : 0);
  }
}

}  // namespace

SmtScenario ScenarioFile::smt_scenario() const {
  if (curve.empty()) throw InputError("scenario has no [curve] section");
  if (!N) throw InputError("scenario is missing params.N");
  if (!epsilon) throw InputError("scenario is missing params.epsilon");
  if (r_grid.empty()) throw InputError("scenario has no r_grid or r_range");
  return SmtScenario{variety(), hypersurfaces, *N, *epsilon, EntireCurve(curve), r_grid};
}

ScenarioFile parse_scenario(std::istream& in) {
  static const std::vector<std::string> kSections{"variety", "hypersurfaces", "curve", "params", "weights",
                                                  "filtration"};
  std::vector<Entry> entries;
  std::string section;
  std::string raw;
  for (int line_no = 1; std::getline(in, raw); ++line_no) {
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    Entry probe{section, "", "", line_no, 1};
    if (line.front() == '[') {
      if (line.back() != ']') fail(probe, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (std::find(kSections.begin(), kSections.end(), section) == kSections.end())
        fail(probe, "unknown section [" + section + "]");
      continue;
    }
    if (section.empty()) fail(probe, "entry outside of any section");
    const auto eq = raw.find('=');
    if (eq == std::string::npos || (hash != std::string::npos && eq > hash)) fail(probe, "expected key = value");
    std::size_t lead = 0;
    const std::string rest = hash == std::string::npos ? raw.substr(eq + 1) : raw.substr(eq + 1, hash - eq - 1);
    std::string value = trim(rest, &lead);
    entries.push_back({section, trim(raw.substr(0, eq)), value, line_no, eq + 2 + lead});
  }

  ScenarioFile out;
  bool have_n = false;
  for (const auto& e : entries)
    if (e.section == "variety" && e.key == "n") {
      const long n = parse_long(e, e.value);
      if (n < 1 || n > 12) fail(e, "n must lie in 1..12");
      out.n = static_cast<int>(n);
      have_n = true;
    }
  if (!have_n) throw InputError("scenario is missing [variety] n");

  auto& W = out.weights;
  auto& F = out.filtration;
  std::optional<std::pair<Entry, std::vector<std::string>>> range;
  for (const auto& e : entries) {
    const auto& k = e.key;
    if (e.section == "variety") {
      if (k == "n") continue;
      if (k != "generator") fail(e, "unknown key '" + k + "' in [variety]");
      out.generators.push_back(parse_poly(e, e.value, 0, out.n));
    } else if (e.section == "hypersurfaces") {
      if (k != "poly") fail(e, "unknown key '" + k + "' in [hypersurfaces]");
      const auto semi = e.value.find(';');
      const std::string text = e.value.substr(0, semi);
      auto poly = parse_poly(e, text, 0, out.n);
      if (semi != std::string::npos) {
        const std::string opt = trim(e.value.substr(semi + 1));
        const auto eq = opt.find('=');
        if (eq == std::string::npos || trim(opt.substr(0, eq)) != "degree") fail(e, "expected '; degree = INT'");
        const long deg = parse_long(e, opt.substr(eq + 1));
        if (deg != poly.degree())
          fail(e, "declared degree " + std::to_string(deg) + " but the polynomial has degree " +
                      std::to_string(poly.degree()));
      }
      if (poly.is_zero()) fail(e, "hypersurface polynomial is zero");
      out.hypersurfaces.push_back(std::move(poly));
    } else if (e.section == "curve") {
      if (k != "component") fail(e, "unknown key '" + k + "' in [curve]");
      try {
        out.curve.push_back(parse_curve_expression(e.value));
      } catch (const InputError& err) {
        fail(e, err.what(), err.position() >= 0 ? err.position() : 0);
      }
    } else if (e.section == "params") {
      if (k == "N") {
        out.N = static_cast<int>(parse_long(e, e.value));
      } else if (k == "epsilon") {
        try {
          out.epsilon = parse_rational(e.value);
        } catch (const InputError& err) {
          fail(e, err.what());
        }
        if (!(*out.epsilon > 0)) fail(e, "epsilon must be positive");
      } else if (k == "r_grid") {
        for (const auto& w : words(e.value)) out.r_grid.push_back(parse_double(e, w));
        if (out.r_grid.empty()) fail(e, "empty r_grid");
      } else if (k == "r_range") {
        range.emplace(e, words(e.value));
      } else if (k == "truncation") {
        if (e.value == "auto") {
          out.truncation.reset();
        } else {
          out.truncation = parse_long(e, e.value);
          if (*out.truncation < 1) fail(e, "truncation must be positive or auto");
        }
      } else if (k == "seed") {
        const long s = parse_long(e, e.value);
        if (s < 0) fail(e, "seed must be non-negative");
        out.seed = static_cast<std::uint64_t>(s);
      } else if (k == "precision") {
        const long p = parse_long(e, e.value);
        if (p < 53 || p > 4096) fail(e, "precision must lie in 53..4096 bits");
        out.precision = static_cast<unsigned>(p);
      } else if (k == "degree_cap") {
        const long c = parse_long(e, e.value);
        if (c < 0) fail(e, "degree_cap must be non-negative");
        out.degree_cap = static_cast<int>(c);
      } else {
        fail(e, "unknown key '" + k + "' in [params]");
      }
    } else if (e.section == "weights") {
      if (!W) W.emplace();
      if (k == "c") {
        for (const auto& w : words(e.value)) W->c.push_back(parse_long(e, w));
      } else if (k == "m") {
        W->m = static_cast<int>(parse_long(e, e.value));
      } else if (k == "chow_form") {
        W->chow_form = e.value;
      } else if (k == "subset") {
        for (const auto& w : words(e.value)) {
          const long i = parse_long(e, w);
          if (i < 1 || i > out.n + 1) fail(e, "subset index out of range (indices are 1-based)");
          W->subset.push_back(static_cast<int>(i - 1));
        }
      } else {
        fail(e, "unknown key '" + k + "' in [weights]");
      }
    } else if (e.section == "filtration") {
      if (!F) F.emplace();
      if (k == "d") {
        F->d = static_cast<int>(parse_long(e, e.value));
      } else if (k == "u") {
        F->u = static_cast<int>(parse_long(e, e.value));
      } else if (k == "P") {
        F->P.push_back(parse_poly(e, e.value, 0, out.n));
      } else {
        fail(e, "unknown key '" + k + "' in [filtration]");
      }
    }
  }

  if (range) {
    const auto& [e, w] = *range;
    if (!out.r_grid.empty()) fail(e, "give either r_grid or r_range, not both");
    if (w.size() < 3 || w.size() > 4) fail(e, "expected r_range = FROM TO POINTS [log|linear]");
    const double from = parse_double(e, w[0]);
    const double to = parse_double(e, w[1]);
    const long points = parse_long(e, w[2]);
    const std::string spacing = w.size() == 4 ? w[3] : "linear";
    if (spacing != "log" && spacing != "linear") fail(e, "spacing must be log or linear");
    if (points < 1 || points > 10000) fail(e, "points must lie in 1..10000");
    if (!(from >= 1) || to < from) fail(e, "need 1 <= FROM <= TO");
    for (long i = 0; i < points; ++i) {
      const double t = points == 1 ? 0 : static_cast<double>(i) / static_cast<double>(points - 1);
      out.r_grid.push_back(spacing == "log" ? from * std::pow(to / from, t) : from + (to - from) * t);
    }
  }
  for (std::size_t i = 0; i < out.r_grid.size(); ++i) {
    if (!(out.r_grid[i] >= 1)) throw InputError("r_grid values must be at least 1");
    if (i > 0 && out.r_grid[i] <= out.r_grid[i - 1]) throw InputError("r_grid must be strictly increasing");
  }
  if (!out.curve.empty() && static_cast<int>(out.curve.size()) != out.n + 1)
    throw InputError("curve needs n+1 = " + std::to_string(out.n + 1) + " components, got " +
                     std::to_string(out.curve.size()));
  return out;
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw InputError("cannot open scenario file '" + path + "'");
  return parse_scenario(file);
}

}  // namespace smtkit
