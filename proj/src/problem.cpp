#include "octoroot/problem.hpp"

#include <algorithm>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace octoroot {

namespace {

// Roots of unity scaled by `radius` and rotated by `phase`:
// radius * exp(i (phase + 2 pi k / n)), k = 0..n-1.
std::vector<BigComplex> rotated_roots(const PrecisionContext& ctx, const BigReal& radius,
                                      const BigReal& phase, long n) {
  std::vector<BigComplex> roots;
  const BigReal two_pi = 2 * ctx.pi();
  for (long k = 0; k < n; ++k) {
    if (phase.is_zero() && k == 0) {
      roots.emplace_back(ctx, radius, ctx.real(0L));
      continue;
    }
    const BigReal angle = phase + two_pi * k / n;
    roots.emplace_back(ctx, radius * boost::multiprecision::cos(angle),
                       radius * boost::multiprecision::sin(angle));
  }
  return roots;
}

Problem make(std::string name, std::string source) {
  auto e = expr::parse(source);
  return Problem{std::move(name), std::move(source), std::move(e), std::nullopt, std::nullopt,
                 {}};
}

}  // namespace

UnknownBuiltinError::UnknownBuiltinError(std::string_view name)
    : std::invalid_argument(fmt::format("unknown builtin '{}'; available: {}", name,
                                        fmt::join(builtin_names(), ", "))) {}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"f1", "f2", "f3", "f4", "p1",
                                              "p2", "p3", "p4", "p5", "p6"};
  return names;
}

bool is_builtin(std::string_view name) {
  const auto& names = builtin_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

Problem builtin(std::string_view name, const PrecisionContext& ctx) {
  const auto real = [&](long v) { return BigComplex(ctx, v); };
  const auto imag = [&](long v) { return BigComplex(ctx, 0L, v); };

  if (name == "f1") {
    auto p = make("f1", "ln(1+x^2)+exp(x^2-3*x)*sin(x)");
    p.known_root = real(0);
    p.initial_guess = BigComplex::parse(ctx, "0.35");
    return p;
  }
  if (name == "f2") {
    auto p = make("f2", "1+exp(2+x-x^2)+x^3-cos(1+x)");
    p.known_root = real(-1);
    p.initial_guess = BigComplex::parse(ctx, "-0.3");
    return p;
  }
  if (name == "f3") {
    auto p = make("f3", "(1+x^2)*cos(pi*x/2)+ln(x^2+2*x+2)/(1+x^2)");
    p.known_root = real(-1);
    p.initial_guess = BigComplex::parse(ctx, "-1.1");
    return p;
  }
  if (name == "f4") {
    auto p = make("f4", "x^4+sin(pi/x^2)-5");
    p.known_root = BigComplex(ctx, boost::multiprecision::sqrt(ctx.real(2L)), ctx.real(0L));
    p.initial_guess = BigComplex::parse(ctx, "1.5");
    return p;
  }
  if (name == "p1") {
    auto p = make("p1", "x^2-1");
    p.known_roots = {real(1), real(-1)};
    return p;
  }
  if (name == "p2") {
    auto p = make("p2", "x^3-x");
    p.known_roots = {real(0), real(1), real(-1)};
    return p;
  }
  if (name == "p3") {
    auto p = make("p3", "x*(x^2+1)*(x^2+4)");
    p.known_roots = {real(0), imag(2), imag(-2), imag(1), imag(-1)};
    return p;
  }
  if (name == "p4") {
    auto p = make("p4", "(x^4-1)*(x^2+2*i)");
    p.known_roots = {real(1), imag(1), real(-1), imag(-1), BigComplex(ctx, -1L, 1L),
                     BigComplex(ctx, 1L, -1L)};
    return p;
  }
  if (name == "p5") {
    auto p = make("p5", "x^7-1");
    p.known_roots = rotated_roots(ctx, ctx.real(1L), ctx.real(0L), 7);
    return p;
  }
  if (name == "p6") {
    auto p = make("p6", "(10*x^5-1)*(x^5+10)");
    const BigReal fifth = ctx.real(1L) / 5;
    const BigReal small = boost::multiprecision::pow(ctx.real(10L), -fifth);
    const BigReal large = boost::multiprecision::pow(ctx.real(10L), fifth);
    p.known_roots = rotated_roots(ctx, small, ctx.real(0L), 5);
    // Principal fifth root of -10 is 10^(1/5) e^(i pi/5).
    auto outer = rotated_roots(ctx, large, ctx.pi() / 5, 5);
    p.known_roots.insert(p.known_roots.end(), outer.begin(), outer.end());
    return p;
  }
  throw UnknownBuiltinError(name);
}

Problem custom_problem(std::string_view source, std::optional<BigComplex> root,
                       std::optional<BigComplex> guess, std::vector<BigComplex> roots) {
  auto p = make("expr", std::string(source));
  p.known_root = std::move(root);
  p.initial_guess = std::move(guess);
  p.known_roots = std::move(roots);
  return p;
}

}  // namespace octoroot
