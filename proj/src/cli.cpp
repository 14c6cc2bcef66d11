#include "octoroot/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "octoroot/convergence.hpp"
#include "octoroot/expr.hpp"
#include "octoroot/report.hpp"

namespace octoroot::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<MethodId> parse_methods(const std::vector<std::string>& names) {
  std::vector<MethodId> ids;
  for (const auto& n : names) {
    if (n == "all") {
      ids.assign(kAllMethods.begin(), kAllMethods.end());
      continue;
    }
    auto id = parse_method(n);
    if (!id) throw UsageError("unknown method '" + n + "' (expected m1..m6 or all)");
    ids.push_back(*id);
  }
  return ids;
}

}  // namespace

ParseResult parse_args(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"High-order root finders: convergence orders and basins of attraction",
               "octoroot"};
  app.set_config("--config", "", "key = value file; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  std::vector<std::string> methods;
  std::vector<std::string> problems;
  std::vector<double> bounds;
  std::string format = "text";
  std::string image = "ppm";
  std::string out_path;
  RunConfig cfg;

  app.add_option("--method", methods, "m1..m6, comma separated, or all")->delimiter(',');
  app.add_option("--problem", problems, "builtin name(s): f1..f4, p1..p6, or all")
      ->delimiter(',');
  app.add_option("--expr", cfg.expr, "f(x) as an expression, e.g. \"x^3-2*x+i\"");
  app.add_option("--root", cfg.roots, "known root(s), complex constants like 1-2*i")
      ->delimiter(',');
  app.add_option("--guess", cfg.guess, "initial guess x0");
  app.add_option("--digits", cfg.digits, "working precision in decimal digits")
      ->envname("OCTOROOT_DIGITS")
      ->check(CLI::Range(static_cast<unsigned>(PrecisionContext::kMinDigits), 1000000U))
      ->capture_default_str();
  app.add_option("--max-iter", cfg.max_iter, "iteration limit (solve/order 10, basin 15)")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol", cfg.tol, "stop when |x_{n+1} - x_n| falls below this");
  app.add_option("--width", cfg.grid.width, "grid width in pixels")->check(CLI::PositiveNumber);
  app.add_option("--height", cfg.grid.height, "grid height in pixels")
      ->check(CLI::PositiveNumber);
  app.add_option("--bounds", bounds, "re_min,re_max,im_min,im_max")
      ->delimiter(',')
      ->expected(4);
  app.add_option("--escape-tol", cfg.grid.escape_tol, "capture radius around a root")
      ->check(CLI::PositiveNumber);
  app.add_flag("--high-precision", cfg.high_precision,
               "iterate basins in multiprecision at --digits instead of double");
  app.add_option("--threads", cfg.threads, "render workers (0 = all cores)");
  app.add_option("--format", format, "text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--image", image, "ppm or png")->check(CLI::IsMember({"ppm", "png"}));
  app.add_option("--out", out_path, "output file or directory");
  app.add_option("--only", cfg.only, "report: table2 or table5")
      ->check(CLI::IsMember({"table2", "table5"}));

  auto* solve = app.add_subcommand("solve", "iterate one method on one equation");
  auto* order = app.add_subcommand("order", "errors and COC/ACOC for methods x problems");
  auto* basin = app.add_subcommand("basin", "render basins of attraction and their measures");
  auto* report = app.add_subcommand("report", "reproduce the error and basin tables");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {std::nullopt, code == 0 ? kSuccess : kUsage};
  }

  try {
    if (solve->parsed()) cfg.command = Command::solve;
    if (order->parsed()) cfg.command = Command::order;
    if (basin->parsed()) cfg.command = Command::basin;
    if (report->parsed()) cfg.command = Command::report;
    cfg.methods = parse_methods(methods);
    for (const auto& p : problems) {
      if (p == "all") {
        for (const auto& name : builtin_names()) cfg.problems.push_back(name);
      } else {
        cfg.problems.push_back(p);
      }
    }
    if (!bounds.empty()) {
      cfg.grid.re_min = bounds[0];
      cfg.grid.re_max = bounds[1];
      cfg.grid.im_min = bounds[2];
      cfg.grid.im_max = bounds[3];
    }
    cfg.format = format == "csv" ? OutputFormat::csv
                 : format == "json" ? OutputFormat::json
                                    : OutputFormat::text;
    cfg.image = *parse_image_format(image);
    if (!out_path.empty()) cfg.out = out_path;
    if (cfg.expr && !cfg.problems.empty()) throw UsageError("--expr and --problem are exclusive");
  } catch (const UsageError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return {std::nullopt, kUsage};
  }
  return {cfg, kSuccess};
}

namespace {

BigComplex parse_constant(const std::string& text, const PrecisionContext& ctx) {
  const auto e = expr::parse(text);
  if (e.root().depends_on_x) throw UsageError("'" + text + "' must be a constant");
  return expr::eval_value(e, BigComplex(ctx, 0L));
}

std::vector<MethodId> methods_or_all(const RunConfig& cfg) {
  if (!cfg.methods.empty()) return cfg.methods;
  return {kAllMethods.begin(), kAllMethods.end()};
}

/// Problems named on the command line, or the custom expression, or the given defaults.
std::vector<Problem> resolve_problems(const RunConfig& cfg, const PrecisionContext& ctx,
                                      const std::vector<std::string>& defaults) {
  std::vector<Problem> out;
  if (cfg.expr) {
    std::vector<BigComplex> roots;
    for (const auto& r : cfg.roots) roots.push_back(parse_constant(r, ctx));
    std::optional<BigComplex> root;
    if (!roots.empty()) root = roots.front();
    std::optional<BigComplex> guess;
    if (cfg.guess) guess = parse_constant(*cfg.guess, ctx);
    out.push_back(custom_problem(*cfg.expr, root, guess, roots));
    return out;
  }
  for (const auto& name : cfg.problems.empty() ? defaults : cfg.problems) {
    Problem p = builtin(name, ctx);
    if (cfg.guess) p.initial_guess = parse_constant(*cfg.guess, ctx);
    if (!cfg.roots.empty()) {
      p.known_roots.clear();
      for (const auto& r : cfg.roots) p.known_roots.push_back(parse_constant(r, ctx));
      p.known_root = p.known_roots.front();
    }
    out.push_back(std::move(p));
  }
  return out;
}

BigReal stop_tolerance(const RunConfig& cfg, const PrecisionContext& ctx) {
  if (!cfg.tol) return default_stop_tolerance(ctx);
  const BigReal tol = ctx.parse(*cfg.tol);
  if (!(tol > 0)) throw UsageError("--tol must be positive");
  return tol;
}

std::string order_cell(const OrderEstimate& e, bool aligned) {
  if (!e.defined()) return std::string(kNotReached);
  return aligned ? fmt::format("{:.5f}", e.value) : fmt::format("{:.6g}", e.value);
}

json order_json(const OrderEstimate& e) {
  return e.defined() ? json(e.value) : json(nullptr);
}

IterationTrace<BigComplex> prefix(const IterationTrace<BigComplex>& t, std::size_t n) {
  IterationTrace<BigComplex> p;
  p.iterates.assign(t.iterates.begin(), t.iterates.begin() + static_cast<std::ptrdiff_t>(n));
  p.method = t.method;
  p.problem = t.problem;
  return p;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const PrecisionContext ctx(cfg.digits);
  if (cfg.methods.size() > 1) throw UsageError("solve takes a single --method");
  if (cfg.problems.size() > 1) throw UsageError("solve takes a single --problem");
  if (!cfg.expr && cfg.problems.empty()) throw UsageError("solve needs --problem or --expr");
  const MethodId method = cfg.methods.empty() ? MethodId::m1 : cfg.methods.front();
  const Problem problem = resolve_problems(cfg, ctx, {}).front();
  if (!problem.initial_guess) throw UsageError("no initial guess: pass --guess");
  const int max_iter = cfg.max_iter.value_or(10);
  const auto trace = run(method, MethodParams{}, problem, *problem.initial_guess, max_iter,
                         stop_tolerance(cfg, ctx));
  const auto& root = problem.known_root;

  // Running estimates: row n uses the iterates x_0..x_n.
  const bool aligned = cfg.format == OutputFormat::text;
  std::vector<std::string> coc_col;
  std::vector<std::string> acoc_col;
  for (std::size_t n = 1; n <= trace.iterates.size(); ++n) {
    const auto head = prefix(trace, n);
    coc_col.push_back(root ? order_cell(coc(head, *root), aligned) : std::string(kNotReached));
    acoc_col.push_back(order_cell(acoc(head), aligned));
  }
  const auto err_cell = [&](std::size_t n) {
    return trace.errors ? format_scientific((*trace.errors)[n], 3, MantissaRounding::truncate) : std::string(kNotReached);
  };

  switch (cfg.format) {
    case OutputFormat::csv:
      fmt::print(out, "n,error,residual,coc,acoc\n");
      for (std::size_t n = 0; n < trace.iterates.size(); ++n) {
        fmt::print(out, "{},{},{},{},{}\n", n, err_cell(n),
                   format_scientific(trace.residuals[n], 3), coc_col[n], acoc_col[n]);
      }
      break;
    case OutputFormat::json: {
      json j;
      j["problem"] = problem.name;
      j["expression"] = problem.source;
      j["method"] = method_name(method);
      j["digits"] = cfg.digits;
      j["termination"] = termination_name(trace.termination);
      json iters = json::array();
      for (std::size_t n = 0; n < trace.iterates.size(); ++n) {
        const auto& x = trace.iterates[n];
        iters.push_back({{"n", n},
                         {"re", format_scientific(x.re(), static_cast<int>(cfg.digits))},
                         {"im", format_scientific(x.im(), static_cast<int>(cfg.digits))},
                         {"error", trace.errors ? json(format_scientific((*trace.errors)[n],
                                                                         static_cast<int>(cfg.digits)))
                                                : json(nullptr)},
                         {"residual", format_scientific(trace.residuals[n],
                                                        static_cast<int>(cfg.digits))}});
      }
      j["iterates"] = std::move(iters);
      j["coc"] = root ? order_json(coc(trace, *root)) : json(nullptr);
      j["acoc"] = order_json(acoc(trace));
      if (trace.failure) j["failure"] = trace.failure->label;
      out << j.dump(2) << '\n';
      break;
    }
    case OutputFormat::text:
      fmt::print(out, "{} on {}: f(x) = {}  ({} digits)\n", method_name(method), problem.name,
                 problem.source, cfg.digits);
      fmt::print(out, "{:>3}  {:>14}  {:>14}  {:>9}  {:>9}\n", "n", "|x_n - x*|", "|f(x_n)|",
                 "COC", "ACOC");
      for (std::size_t n = 0; n < trace.iterates.size(); ++n) {
        fmt::print(out, "{:>3}  {:>14}  {:>14}  {:>9}  {:>9}\n", n, err_cell(n),
                   format_scientific(trace.residuals[n], 3), coc_col[n], acoc_col[n]);
      }
      fmt::print(out, "x = {}\nstopped: {}\n", trace.iterates.back().to_string(30),
                 termination_name(trace.termination));
      break;
  }
  if (trace.failure) {
    fmt::print(err, "error: step {} failed: {}\n", trace.failure->at_iteration + 1,
               trace.failure->label);
    return kNumerical;
  }
  if (trace.termination == Termination::max_iter) {
    fmt::print(err, "error: no convergence within {} iterations\n", max_iter);
    return kNumerical;
  }
  return kSuccess;
}

const std::vector<std::string> kErrorTableProblems{"f1", "f2", "f3", "f4"};
const std::vector<std::string> kPolynomials{"p1", "p2", "p3", "p4", "p5", "p6"};

struct OrderResult {
  ErrorTableRow row;
  IterationTrace<BigComplex> trace;
};

std::vector<OrderResult> order_table(const RunConfig& cfg, const PrecisionContext& ctx) {
  std::vector<OrderResult> results;
  const auto problems = resolve_problems(cfg, ctx, kErrorTableProblems);
  const auto methods = methods_or_all(cfg);
  for (const auto& p : problems) {
    if (!p.known_root) throw UsageError("problem '" + p.name + "' needs --root for COC");
    if (!p.initial_guess) throw UsageError("problem '" + p.name + "' needs --guess");
    for (auto m : methods) {
      auto trace = run(m, MethodParams{}, p, *p.initial_guess, cfg.max_iter.value_or(10),
                       stop_tolerance(cfg, ctx));
      auto row = error_row(trace, *p.known_root);
      results.push_back({std::move(row), std::move(trace)});
    }
  }
  return results;
}

void print_error_rows(const std::vector<ErrorTableRow>& rows, OutputFormat format,
                      std::ostream& out, const std::vector<OrderResult>* full, unsigned digits) {
  switch (format) {
    case OutputFormat::csv:
      out << error_table_csv(rows);
      break;
    case OutputFormat::json: {
      json arr = json::array();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        json j{{"problem", r.problem}, {"method", r.method},
               {"e1", r.errors[0]},    {"e2", r.errors[1]},
               {"e3", r.errors[2]},    {"coc", r.coc ? json(*r.coc) : json(nullptr)},
               {"acoc", r.acoc ? json(*r.acoc) : json(nullptr)}};
        if (full != nullptr && (*full)[i].trace.errors) {
          json exact = json::array();
          const auto& errs = *(*full)[i].trace.errors;
          for (std::size_t n = 1; n < errs.size() && n <= 3; ++n) {
            exact.push_back(format_scientific(errs[n], static_cast<int>(digits)));
          }
          j["errors_full"] = std::move(exact);
        }
        arr.push_back(std::move(j));
      }
      out << arr.dump(2) << '\n';
      break;
    }
    case OutputFormat::text:
      fmt::print(out, "{:<8} {:<6} {:>18} {:>18} {:>18} {:>9} {:>9}\n", "problem", "method",
                 "|x1 - x*|", "|x2 - x*|", "|x3 - x*|", "COC", "ACOC");
      for (const auto& r : rows) {
        fmt::print(out, "{:<8} {:<6} {:>18} {:>18} {:>18} {:>9} {:>9}\n", r.problem, r.method,
                   r.errors[0], r.errors[1], r.errors[2],
                   r.coc ? fmt::format("{:.5f}", *r.coc) : std::string(kNotReached),
                   r.acoc ? fmt::format("{:.5f}", *r.acoc) : std::string(kNotReached));
      }
      break;
  }
}

int cmd_order(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const PrecisionContext ctx(cfg.digits);
  const auto results = order_table(cfg, ctx);
  std::vector<ErrorTableRow> rows;
  for (const auto& r : results) rows.push_back(r.row);
  print_error_rows(rows, cfg.format, out, &results, cfg.digits);
  int code = kSuccess;
  for (const auto& r : results) {
    if (r.trace.failure) {
      fmt::print(err, "error: {} on {}: step {} failed: {}\n", r.row.method, r.row.problem,
                 r.trace.failure->at_iteration + 1, r.trace.failure->label);
      code = kNumerical;
    }
  }
  return code;
}

std::string image_stem(const BasinGrid& grid) {
  std::string m(method_name(grid.method));
  std::transform(m.begin(), m.end(), m.begin(), [](unsigned char c) { return std::tolower(c); });
  return fmt::format("{}_{}", grid.polynomial, m);
}

BasinGrid render_for(const RunConfig& cfg, MethodId m, const Problem& p,
                     const GridSpec& spec) {
  if (cfg.high_precision) {
    const PrecisionContext ctx(cfg.digits);
    return render_high_precision(m, MethodParams{}, p, spec, ctx, cfg.threads);
  }
  return render(m, MethodParams{}, p, spec, cfg.threads);
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError(dir, "cannot create directory");
}

void print_basin_rows(const std::vector<BasinTableRow>& rows, OutputFormat format,
                      std::ostream& out) {
  switch (format) {
    case OutputFormat::csv:
      out << basin_table_csv(rows);
      break;
    case OutputFormat::json: {
      json arr = json::array();
      for (const auto& r : rows) {
        arr.push_back({{"polynomial", r.polynomial},
                       {"method", r.method},
                       {"ipp", r.ipp},
                       {"nc_percent", r.nc_percent},
                       {"icc", r.icc}});
      }
      out << arr.dump(2) << '\n';
      break;
    }
    case OutputFormat::text:
      for (const auto& r : rows) {
        fmt::print(out, "{}, {}, {:.6g}, {:.6g}, {:.6g}\n", r.method, r.polynomial, r.ipp,
                   r.nc_percent, r.icc);
      }
      break;
  }
}

int cmd_basin(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.expr && cfg.roots.empty()) {
    throw UsageError("basin with --expr needs the root list (--root r1,r2,...)");
  }
  GridSpec spec = cfg.grid;
  spec.max_iter = cfg.max_iter.value_or(15);
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const PrecisionContext ctx(cfg.digits);
  const auto problems = resolve_problems(cfg, ctx, kPolynomials);
  const auto methods = methods_or_all(cfg);
  const bool single = problems.size() * methods.size() == 1;
  // A lone render may name its file; otherwise --out is a directory.
  const bool out_is_file = single && cfg.out && !fs::is_directory(*cfg.out);
  const fs::path dir = out_is_file ? fs::path{} : cfg.out.value_or(".");
  if (!out_is_file) ensure_directory(dir);

  std::vector<BasinTableRow> rows;
  for (const auto& p : problems) {
    for (auto m : methods) {
      const auto grid = render_for(cfg, m, p, spec);
      const fs::path target =
          out_is_file ? *cfg.out
                      : dir / (image_stem(grid) + "." + std::string(image_format_name(cfg.image)));
      write_image(colorize(grid, default_palette()), target, cfg.image);
      rows.push_back(basin_row(grid));
    }
  }
  print_basin_rows(rows, cfg.format, out);
  return kSuccess;
}

int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const fs::path dir = cfg.out.value_or("repro");
  ensure_directory(dir);
  const Tolerances tol;
  int failed = 0;
  int total = 0;

  if (!cfg.only || *cfg.only == "table2") {
    const PrecisionContext ctx(cfg.digits);
    RunConfig c = cfg;
    c.expr.reset();
    c.problems = kErrorTableProblems;
    c.methods.clear();
    const auto results = order_table(c, ctx);
    std::vector<ErrorTableRow> rows;
    for (const auto& r : results) rows.push_back(r.row);
    write_file_atomic(dir / "table2.csv", error_table_csv(rows));
    fmt::print(out, "table2 ({} digits):\n", cfg.digits);
    for (const auto& r : rows) {
      const auto* ref = find_error_reference(r.problem, *parse_method(r.method));
      const auto cmp = compare(r, *ref, tol);
      ++total;
      if (!cmp.pass) ++failed;
      fmt::print(out, "  {} {}/{} {}\n", cmp.pass ? "PASS" : "FAIL", r.problem, r.method,
                 cmp.detail);
    }
  }

  if (!cfg.only || *cfg.only == "table5") {
    GridSpec spec = cfg.grid;
    spec.max_iter = cfg.max_iter.value_or(15);
    const PrecisionContext ctx(std::max(cfg.digits, PrecisionContext::kMinDigits));
    std::vector<BasinTableRow> rows;
    fmt::print(out, "table5 ({}x{} grid):\n", spec.width, spec.height);
    for (const auto& name : kPolynomials) {
      const Problem p = builtin(name, ctx);
      for (auto m : kAllMethods) {
        const auto grid = render_for(cfg, m, p, spec);
        write_image(colorize(grid, default_palette()),
                    dir / (image_stem(grid) + "." + std::string(image_format_name(cfg.image))),
                    cfg.image);
        const auto row = basin_row(grid);
        const auto cmp = compare(row, *find_basin_reference(name, m), tol);
        ++total;
        if (!cmp.pass) ++failed;
        fmt::print(out, "  {} {}/{} I/P {:.6g} NC {:.6g} Ic/C {:.6g} {}\n",
                   cmp.pass ? "PASS" : "FAIL", row.polynomial, row.method, row.ipp,
                   row.nc_percent, row.icc, cmp.detail);
        rows.push_back(row);
      }
    }
    write_file_atomic(dir / "table5.csv", basin_table_csv(rows));
  }

  fmt::print(out, "{} of {} rows within tolerance\n", total - failed, total);
  return failed == 0 ? kSuccess : kComparisonFailed;
}

}  // namespace

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::solve: return cmd_solve(cfg, out, err);
      case Command::order: return cmd_order(cfg, out, err);
      case Command::basin: return cmd_basin(cfg, out, err);
      case Command::report: return cmd_report(cfg, out, err);
    }
  } catch (const UsageError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsage;
  } catch (const UnknownBuiltinError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsage;
  } catch (const expr::ExprError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsage;
  } catch (const PaletteError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsage;
  } catch (const IoError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kIo;
  } catch (const std::domain_error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kNumerical;
  } catch (const NumericalFailure& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsage;
  }
  return kUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto parsed = parse_args(args, out, err);
  if (!parsed.config) return parsed.exit_code;
  return execute(*parsed.config, out, err);
}

}  // namespace octoroot::cli
