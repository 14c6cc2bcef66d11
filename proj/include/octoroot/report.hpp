#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "octoroot/basin.hpp"
#include "octoroot/convergence.hpp"

namespace octoroot {

/// Published errors |x_n - x*| (n = 1, 2, 3) and order estimates for one
/// (problem, method) pair, errors in "0.XXXe-E" form.
struct ErrorTableReference {
  std::string_view problem;
  MethodId method;
  std::array<std::string_view, 3> errors;
  double coc;
  double acoc;
};

/// Published basin measures for one (polynomial, method) pair.
struct BasinTableReference {
  std::string_view polynomial;
  MethodId method;
  double ipp;
  double nc_percent;
  double icc;
};

std::span<const ErrorTableReference> error_table_reference();
std::span<const BasinTableReference> basin_table_reference();
const ErrorTableReference* find_error_reference(std::string_view problem, MethodId method);
const BasinTableReference* find_basin_reference(std::string_view polynomial, MethodId method);

/// Comparison tolerances used by `report`.
struct Tolerances {
  int error_ulps = 1;           // third significant digit
  double order_lo = 7.98;
  double order_hi = 8.02;
  double nc_split = 10.0;       // rows below this use nc_small
  double nc_small = 0.5;
  double nc_large = 2.0;
  double mean_iterations = 0.10;
};

inline constexpr std::string_view kPrecisionLimited = "precision-limited";
inline constexpr std::string_view kNotReached = "n/a";

/// One row of the error table as emitted: errors as 3-digit strings (or a
/// marker), order estimates rounded to 6 significant digits (empty if undefined).
struct ErrorTableRow {
  std::string problem;
  std::string method;
  std::array<std::string, 3> errors;
  std::optional<double> coc;
  std::optional<double> acoc;
  friend bool operator==(const ErrorTableRow&, const ErrorTableRow&) = default;
};

struct BasinTableRow {
  std::string polynomial;
  std::string method;
  double ipp = 0.0;
  double nc_percent = 0.0;
  double icc = 0.0;
  friend bool operator==(const BasinTableRow&, const BasinTableRow&) = default;
};

/// x rounded to `digits` significant decimal digits (the value the CSV carries).
double round_significant(double x, int digits);

/// Errors of x1..x3; iterates never reached print as "n/a" and errors below
/// the precision's noise floor as "precision-limited".
ErrorTableRow error_row(const IterationTrace<BigComplex>& trace, const BigComplex& root);

BasinTableRow basin_row(const BasinGrid& grid);

/// Runs one (problem, method) pair the way the error table is produced:
/// from the problem's initial guess, at most 10 steps, default stop tolerance.
IterationTrace<BigComplex> error_table_run(const Problem& problem, MethodId method,
                                           const PrecisionContext& ctx);

struct Comparison {
  bool pass = true;
  bool skipped = false;  // nothing comparable (e.g. precision-limited)
  std::string detail;
};

/// True when both strings are "0.DDDe<exp>" with equal exponents and the
/// three-digit mantissas differ by at most `ulps`.
bool error_strings_agree(std::string_view ours, std::string_view reference, int ulps);

Comparison compare(const ErrorTableRow& row, const ErrorTableReference& ref, const Tolerances& tol);
Comparison compare(const BasinTableRow& row, const BasinTableReference& ref, const Tolerances& tol);

std::string error_table_csv(const std::vector<ErrorTableRow>& rows);
std::string basin_table_csv(const std::vector<BasinTableRow>& rows);

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<ErrorTableRow> parse_error_table_csv(std::string_view text);
std::vector<BasinTableRow> parse_basin_table_csv(std::string_view text);

}  // namespace octoroot
