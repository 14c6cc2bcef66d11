#include "octoroot/convergence.hpp"

#include <cmath>

namespace octoroot {

std::string_view termination_name(Termination t) {
  switch (t) {
    case Termination::max_iter: return "max-iter";
    case Termination::step_tolerance: return "step-tolerance";
    case Termination::residual_floor: return "residual-floor";
    case Termination::step_failure: return "step-failure";
  }
  return "?";
}

BigReal default_stop_tolerance(const PrecisionContext& ctx) {
  return ctx.power_of_ten(-static_cast<long>(ctx.digits()) + 50);
}

IterationTrace<BigComplex> run(MethodId method, const MethodParams& params,
                               const Problem& problem, const BigComplex& x0, int max_iter,
                               const BigReal& stop_tol) {
  const ExprFunction<BigComplex> f(problem.expr);
  return run_function(method, params, f, problem.name, x0, max_iter, stop_tol,
                      problem.known_root);
}

OrderEstimate order_from_sequence(const std::vector<BigReal>& magnitudes, const BigReal& floor) {
  // Last index whose magnitude is still above the noise floor.
  std::ptrdiff_t last = static_cast<std::ptrdiff_t>(magnitudes.size()) - 1;
  bool saw_zero = false;
  while (last >= 0 && !(magnitudes[static_cast<std::size_t>(last)] > floor)) {
    saw_zero = saw_zero || magnitudes[static_cast<std::size_t>(last)].is_zero();
    --last;
  }
  if (last < 2) {
    return {saw_zero ? OrderStatus::exact_root : OrderStatus::too_few_points, 0.0};
  }
  const auto at = [&](std::ptrdiff_t i) -> const BigReal& {
    return magnitudes[static_cast<std::size_t>(i)];
  };
  for (std::ptrdiff_t i = last - 2; i <= last; ++i) {
    if (!(at(i) > floor)) return {OrderStatus::too_few_points, 0.0};
  }
  const BigReal num = boost::multiprecision::log(at(last) / at(last - 1));
  const BigReal den = boost::multiprecision::log(at(last - 1) / at(last - 2));
  if (den.is_zero()) return {OrderStatus::stalled, 0.0};
  return {OrderStatus::ok, static_cast<double>(num / den)};
}

OrderEstimate coc(const IterationTrace<BigComplex>& trace, const BigComplex& root) {
  std::vector<BigReal> errors;
  errors.reserve(trace.iterates.size());
  for (const auto& x : trace.iterates) errors.push_back((x - root).abs());
  return order_from_sequence(errors, root.context().noise_floor());
}

OrderEstimate acoc(const IterationTrace<BigComplex>& trace) {
  if (trace.iterates.size() < 4) return {OrderStatus::too_few_points, 0.0};
  std::vector<BigReal> steps;
  for (std::size_t n = 1; n < trace.iterates.size(); ++n) {
    steps.push_back((trace.iterates[n] - trace.iterates[n - 1]).abs());
  }
  auto estimate = order_from_sequence(steps, trace.iterates.front().context().noise_floor());
  if (estimate.status == OrderStatus::exact_root) estimate.status = OrderStatus::stalled;
  return estimate;
}

CCoefficients c_coefficients(const Problem& problem, const BigComplex& root) {
  const auto taylor = expr::eval_jet<5>(problem.expr, root);
  if (taylor[1].abs() < root.context().noise_floor()) {
    throw NotSimpleRootError("f'(root) vanishes at " + root.to_string());
  }
  const BigComplex& slope = taylor[1];
  return {taylor[2] / slope, taylor[3] / slope, taylor[4] / slope};
}

BigComplex error_constant(const CCoefficients& c) {
  const BigComplex c2sq = c.c2 * c.c2;
  const BigComplex first = c.c2 + 5.0 * c2sq - c.c3;
  const BigComplex second = c2sq - 5.0 * c2sq * c.c2 - c.c2 * c.c3 + c.c4;
  return c2sq * first * second;
}

std::vector<BigComplex> eighth_power_ratios(const IterationTrace<BigComplex>& trace,
                                            const BigComplex& root) {
  std::vector<BigComplex> ratios;
  const BigReal floor = root.context().noise_floor();
  for (std::size_t n = 0; n + 1 < trace.iterates.size(); ++n) {
    const BigComplex e_now = trace.iterates[n] - root;
    const BigComplex e_next = trace.iterates[n + 1] - root;
    if (!(e_now.abs() > floor) || !(e_next.abs() > floor)) break;
    ratios.push_back(e_next / pow(e_now, 8L));
  }
  return ratios;
}

double efficiency_index(int evaluations, double order) {
  if (evaluations < 1) throw std::invalid_argument("evaluations must be at least 1");
  if (!(order >= 1.0)) throw std::invalid_argument("order must be at least 1");
  return std::pow(order, 1.0 / evaluations);
}

}  // namespace octoroot
