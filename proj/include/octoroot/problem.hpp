#pragma once

#include <concepts>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "octoroot/expr.hpp"
#include "octoroot/numerics.hpp"

namespace octoroot {

/// f(x) together with f'(x).
template <class T>
struct ValueSlope {
  T value;
  T slope;
};

/// Anything the iteration methods can query for f and f'.
template <class F, class T>
concept UnivariateFunction = requires(const F& f, const T& x) {
  { f.value(x) } -> std::convertible_to<T>;
  { f.value_and_derivative(x) } -> std::convertible_to<ValueSlope<T>>;
};

/// Evaluates a parsed expression, using first-order jets for the derivative.
template <Scalar T>
class ExprFunction {
 public:
  explicit ExprFunction(expr::Expr e) : expr_(std::move(e)) {}

  T value(const T& x) const { return expr::eval_value(expr_, x); }

  ValueSlope<T> value_and_derivative(const T& x) const {
    const auto jet = expr::eval_jet<2>(expr_, x);
    return {jet[0], jet[1]};
  }

  /// Taylor coefficients f^(k)(x)/k! for k = 0..order (order <= 4).
  std::vector<T> taylor(const T& x, int order) const {
    const auto jet = expr::eval_jet<5>(expr_, x);
    return {jet.coeffs().begin(), jet.coeffs().begin() + order + 1};
  }

  const expr::Expr& expression() const noexcept { return expr_; }

 private:
  expr::Expr expr_;
};

/// A target equation f(x) = 0 with whatever reference data is known.
struct Problem {
  std::string name;
  std::string source;  // expression text as parsed
  expr::Expr expr;
  std::optional<BigComplex> known_root;
  std::optional<BigComplex> initial_guess;
  std::vector<BigComplex> known_roots;
};

class UnknownBuiltinError : public std::invalid_argument {
 public:
  explicit UnknownBuiltinError(std::string_view name);
};

/// Names accepted by builtin(): f1..f4 then p1..p6.
const std::vector<std::string>& builtin_names();

bool is_builtin(std::string_view name);

/// Builtin test problem with its reference data computed at ctx's precision.
Problem builtin(std::string_view name, const PrecisionContext& ctx);

/// Problem from a user expression.
Problem custom_problem(std::string_view source, std::optional<BigComplex> root,
                       std::optional<BigComplex> guess, std::vector<BigComplex> roots = {});

}  // namespace octoroot
