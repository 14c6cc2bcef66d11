#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "octoroot/methods.hpp"
#include "octoroot/problem.hpp"

namespace octoroot {

enum class Termination { max_iter, step_tolerance, residual_floor, step_failure };

std::string_view termination_name(Termination t);

struct StepFailure {
  StepStatus status;
  std::string label;
  int at_iteration;  // index n of the iterate the failing step started from
};

/// x_0, x_1, ... of one run with per-iterate diagnostics.
template <Scalar T>
struct IterationTrace {
  std::vector<T> iterates;
  std::optional<std::vector<RealOf<T>>> errors;  // |x_n - x*| when the root is known
  std::vector<RealOf<T>> residuals;               // |f(x_n)|
  MethodId method = MethodId::m1;
  std::string problem;
  Termination termination = Termination::max_iter;
  std::optional<StepFailure> failure;
};

/// Generic driver. Before each step the residual |f(x_n)| is checked against
/// the noise floor of x0's precision; after each step |x_{n+1} - x_n| is
/// compared with stop_tol.
template <Scalar T, UnivariateFunction<T> F>
IterationTrace<T> run_function(MethodId method, const MethodParams& params, const F& f,
                               std::string problem_name, const T& x0, int max_iter,
                               const RealOf<T>& stop_tol, const std::optional<T>& root) {
  if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
  if (!(stop_tol > 0)) throw std::invalid_argument("stop_tol must be positive");

  IterationTrace<T> trace;
  trace.method = method;
  trace.problem = std::move(problem_name);
  const RealOf<T> floor = ScalarTraits<T>::noise_floor(x0);

  const auto record = [&](const T& x) {
    trace.iterates.push_back(x);
    trace.residuals.push_back(magnitude(f.value(x)));
    if (root) trace.errors->push_back(magnitude(x - *root));
  };
  if (root) trace.errors.emplace();
  record(x0);

  for (int n = 0; n < max_iter; ++n) {
    if (trace.residuals.back() <= floor) {
      trace.termination = Termination::residual_floor;
      return trace;
    }
    const T& current = trace.iterates.back();
    auto outcome = step(method, params, f, current);
    if (!outcome.ok()) {
      trace.termination = Termination::step_failure;
      trace.failure = StepFailure{outcome.status, outcome.label, n};
      return trace;
    }
    const RealOf<T> moved = magnitude(outcome.next - current);
    record(outcome.next);
    if (moved < stop_tol) {
      trace.termination = Termination::step_tolerance;
      return trace;
    }
  }
  trace.termination = Termination::max_iter;
  return trace;
}

/// Default stopping tolerance 10^-(digits - 50).
BigReal default_stop_tolerance(const PrecisionContext& ctx);

/// High-precision run on a problem; errors are recorded when the problem has
/// a known root.
IterationTrace<BigComplex> run(MethodId method, const MethodParams& params,
                               const Problem& problem, const BigComplex& x0, int max_iter,
                               const BigReal& stop_tol);

enum class OrderStatus { ok, exact_root, too_few_points, stalled };

struct OrderEstimate {
  OrderStatus status = OrderStatus::too_few_points;
  double value = 0.0;

  bool defined() const { return status == OrderStatus::ok; }
};

/// ln|e_{n+1}/e_n| / ln|e_n/e_{n-1}| over the last three errors above the
/// noise floor.
OrderEstimate coc(const IterationTrace<BigComplex>& trace, const BigComplex& root);

/// Root-free variant on the last three iterate differences above the noise
/// floor (four iterates).
OrderEstimate acoc(const IterationTrace<BigComplex>& trace);

/// Same estimators over plain error / difference sequences.
OrderEstimate order_from_sequence(const std::vector<BigReal>& magnitudes, const BigReal& floor);

struct CCoefficients {
  BigComplex c2;
  BigComplex c3;
  BigComplex c4;
};

class NotSimpleRootError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// c_k = f^(k)(x*) / (k! f'(x*)) for k = 2, 3, 4.
CCoefficients c_coefficients(const Problem& problem, const BigComplex& root);

/// Coefficient of e_n^8 in M1's error equation:
/// c2^2 (c2 + 5 c2^2 - c3)(c2^2 - 5 c2^3 - c2 c3 + c4).
BigComplex error_constant(const CCoefficients& c);

/// (x_{n+1} - x*) / (x_n - x*)^8 for consecutive iterates above the noise floor.
std::vector<BigComplex> eighth_power_ratios(const IterationTrace<BigComplex>& trace,
                                            const BigComplex& root);

/// p^(1/k) for a method of order p using k evaluations per step.
double efficiency_index(int evaluations, double order);

}  // namespace octoroot
