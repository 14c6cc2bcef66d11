#include "octoroot/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include <fmt/format.h>

namespace octoroot {

double round_significant(double x, int digits) {
  if (!std::isfinite(x)) return x;
  return std::strtod(fmt::format("{:.{}g}", x, digits).c_str(), nullptr);
}

IterationTrace<BigComplex> error_table_run(const Problem& problem, MethodId method,
                                           const PrecisionContext& ctx) {
  if (!problem.initial_guess || !problem.known_root) {
    throw std::invalid_argument("problem '" + problem.name + "' lacks a guess or root");
  }
  return run(method, MethodParams{}, problem, *problem.initial_guess, 10,
             default_stop_tolerance(ctx));
}

ErrorTableRow error_row(const IterationTrace<BigComplex>& trace, const BigComplex& root) {
  ErrorTableRow row;
  row.problem = trace.problem;
  row.method = std::string(method_name(trace.method));
  const BigReal floor = root.context().noise_floor();
  // Running out of precision ends a run early; a failed step does not.
  const bool stopped_by_precision = trace.termination == Termination::residual_floor ||
                                    trace.termination == Termination::step_tolerance;
  for (std::size_t n = 1; n <= 3; ++n) {
    std::string& cell = row.errors[n - 1];
    if (n >= trace.iterates.size()) {
      cell = std::string(stopped_by_precision ? kPrecisionLimited : kNotReached);
      continue;
    }
    const BigReal e = (trace.iterates[n] - root).abs();
    cell = e > floor ? format_scientific(e, 3, MantissaRounding::truncate) : std::string(kPrecisionLimited);
  }
  const auto c = coc(trace, root);
  const auto a = acoc(trace);
  if (c.defined()) row.coc = round_significant(c.value, 6);
  if (a.defined()) row.acoc = round_significant(a.value, 6);
  return row;
}

BasinTableRow basin_row(const BasinGrid& grid) {
  const auto m = metrics(grid);
  return {grid.polynomial, std::string(method_name(grid.method)), round_significant(m.ipp, 6),
          round_significant(m.nc_percent, 6), round_significant(m.icc, 6)};
}

namespace {

struct Mantissa {
  int digits;  // the three digits after "0."
  long exponent;
};

std::optional<Mantissa> split_error_string(std::string_view s) {
  if (s.size() < 7 || s.substr(0, 2) != "0." || s[5] != 'e') return std::nullopt;
  Mantissa m{};
  auto r1 = std::from_chars(s.data() + 2, s.data() + 5, m.digits);
  if (r1.ec != std::errc{} || r1.ptr != s.data() + 5) return std::nullopt;
  std::string_view exp = s.substr(6);
  if (!exp.empty() && exp.front() == '+') exp.remove_prefix(1);
  auto r2 = std::from_chars(exp.data(), exp.data() + exp.size(), m.exponent);
  if (r2.ec != std::errc{} || r2.ptr != exp.data() + exp.size()) return std::nullopt;
  return m;
}

bool within(double value, double target, double tol) {
  return std::fabs(value - target) <= tol + 1e-12;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? fmt::format("{:.6g}", *v) : std::string(kNotReached);
}

}  // namespace

bool error_strings_agree(std::string_view ours, std::string_view reference, int ulps) {
  const auto a = split_error_string(ours);
  const auto b = split_error_string(reference);
  if (!a || !b) return false;
  return a->exponent == b->exponent && std::abs(a->digits - b->digits) <= ulps;
}

Comparison compare(const ErrorTableRow& row, const ErrorTableReference& ref,
                   const Tolerances& tol) {
  Comparison out;
  std::vector<std::string> problems;
  int compared = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (row.errors[i] == kPrecisionLimited) continue;
    ++compared;
    if (!error_strings_agree(row.errors[i], ref.errors[i], tol.error_ulps)) {
      problems.push_back(fmt::format("e{} {} vs {}", i + 1, row.errors[i], ref.errors[i]));
    }
  }
  const auto check_order = [&](const char* name, const std::optional<double>& v) {
    if (!v || *v < tol.order_lo || *v > tol.order_hi) {
      problems.push_back(fmt::format("{} {} outside [{}, {}]", name, format_optional(v),
                                     tol.order_lo, tol.order_hi));
    }
  };
  check_order("coc", row.coc);
  check_order("acoc", row.acoc);
  out.pass = problems.empty();
  out.skipped = compared == 0;
  if (compared < 3) problems.push_back(fmt::format("{} of 3 errors precision-limited", 3 - compared));
  out.detail = fmt::format("{}", fmt::join(problems, "; "));
  return out;
}

Comparison compare(const BasinTableRow& row, const BasinTableReference& ref,
                   const Tolerances& tol) {
  Comparison out;
  std::vector<std::string> problems;
  const double nc_tol = ref.nc_percent < tol.nc_split ? tol.nc_small : tol.nc_large;
  if (!within(row.ipp, ref.ipp, tol.mean_iterations)) {
    problems.push_back(fmt::format("I/P {:.6g} vs {}", row.ipp, ref.ipp));
  }
  if (!within(row.nc_percent, ref.nc_percent, nc_tol)) {
    problems.push_back(fmt::format("NC {:.6g} vs {} (+-{})", row.nc_percent, ref.nc_percent, nc_tol));
  }
  if (!within(row.icc, ref.icc, tol.mean_iterations)) {
    problems.push_back(fmt::format("Ic/C {:.6g} vs {}", row.icc, ref.icc));
  }
  out.pass = problems.empty();
  out.detail = fmt::format("{}", fmt::join(problems, "; "));
  return out;
}

std::string error_table_csv(const std::vector<ErrorTableRow>& rows) {
  std::string out = "problem,method,e1,e2,e3,coc,acoc\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{}\n", r.problem, r.method, r.errors[0], r.errors[1],
                       r.errors[2], format_optional(r.coc), format_optional(r.acoc));
  }
  return out;
}

std::string basin_table_csv(const std::vector<BasinTableRow>& rows) {
  std::string out = "polynomial,method,ipp,nc_percent,icc\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{:.6g},{:.6g},{:.6g}\n", r.polynomial, r.method, r.ipp,
                       r.nc_percent, r.icc);
  }
  return out;
}

namespace {

std::vector<std::vector<std::string>> split_csv(std::string_view text, std::string_view header,
                                                std::size_t columns) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw CsvError(fmt::format("expected header '{}'", header));
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t pos; (pos = line.find(',', start)) != std::string::npos; start = pos + 1) {
      fields.push_back(line.substr(start, pos - start));
    }
    fields.push_back(line.substr(start));
    if (fields.size() != columns) {
      throw CsvError(fmt::format("line {}: expected {} fields, got {}", line_no, columns,
                                 fields.size()));
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

double parse_double(const std::string& field) {
  double v = 0.0;
  auto r = std::from_chars(field.data(), field.data() + field.size(), v);
  if (r.ec != std::errc{} || r.ptr != field.data() + field.size()) {
    throw CsvError("not a number: '" + field + "'");
  }
  return v;
}

std::optional<double> parse_optional(const std::string& field) {
  if (field == kNotReached) return std::nullopt;
  return parse_double(field);
}

}  // namespace

std::vector<ErrorTableRow> parse_error_table_csv(std::string_view text) {
  std::vector<ErrorTableRow> rows;
  for (auto& f : split_csv(text, "problem,method,e1,e2,e3,coc,acoc", 7)) {
    rows.push_back({f[0], f[1], {f[2], f[3], f[4]}, parse_optional(f[5]), parse_optional(f[6])});
  }
  return rows;
}

std::vector<BasinTableRow> parse_basin_table_csv(std::string_view text) {
  std::vector<BasinTableRow> rows;
  for (auto& f : split_csv(text, "polynomial,method,ipp,nc_percent,icc", 5)) {
    rows.push_back({f[0], f[1], parse_double(f[2]), parse_double(f[3]), parse_double(f[4])});
  }
  return rows;
}

}  // namespace octoroot
