#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "octoroot/divided_difference.hpp"
#include "octoroot/problem.hpp"
#include "octoroot/scalar.hpp"

namespace octoroot {

/// The six eighth-order, four-evaluation methods. M1 is the Newton-step plus
/// cubic Newton-interpolation scheme; M2..M6 are the reference methods of
/// Chun-Lee, Neta, Sharma-Sharma, Babajee-Cordero-Soleymani-Torregrosa and
/// Thukral-Petkovic.
enum class MethodId { m1, m2, m3, m4, m5, m6 };

inline constexpr std::array<MethodId, 6> kAllMethods{MethodId::m1, MethodId::m2, MethodId::m3,
                                                      MethodId::m4, MethodId::m5, MethodId::m6};

std::string_view method_name(MethodId id);  // "M1".."M6"
std::optional<MethodId> parse_method(std::string_view text);  // "m1" or "M1"

struct MethodParams {
  double neta_a = 0.0;         // M3: A
  double sharma_alpha = 1.0;   // M4: alpha in W(t) = 1 + t/(1 + alpha t)
  double thukral_beta = 0.0;   // M6: beta
  double thukral_alpha = 1.0;  // M6: alpha in psi(s) = s/(1 - alpha s)
  double chun_beta = 0.0;      // M2: beta, gamma (they cancel)
  double chun_gamma = 0.0;
};

enum class StepStatus { ok, singular, nonfinite };

template <Scalar T>
struct StepOutcome {
  T next;
  std::optional<T> y;
  std::optional<T> z;
  StepStatus status = StepStatus::ok;
  std::string label;  // vanishing denominator for singular steps

  bool ok() const { return status == StepStatus::ok; }
};

namespace method_detail {

struct Singular {
  std::string label;
};

template <Scalar T>
T divide(const T& num, const T& den, const char* label) {
  if (is_exact_zero(den)) throw Singular{label};
  return num / den;
}

// Exits the step early when a substep lands exactly on a zero of f.
template <Scalar T>
struct ExactRoot {
  T at;
};

template <Scalar T, class F>
T evaluate(const F& f, const T& at) {
  T v = f.value(at);
  if (is_exact_zero(v)) throw ExactRoot<T>{at};
  return v;
}

template <Scalar T>
T newton_dd(std::vector<NodeSample<T>> samples, const char* label) {
  try {
    const RealOf<T> zero_gap{0};
    return divided_difference<T>(samples, zero_gap);
  } catch (const NearSingularNodesError&) {
    throw Singular{label};
  }
}

template <Scalar T, class F>
StepOutcome<T> step_m1(const F& f, const T& x, const T& fx, const T& dfx) {
  StepOutcome<T> out{x, {}, {}, StepStatus::ok, {}};
  const T u = divide(fx, dfx, "f'(x) = 0");
  const T y = x - u;
  out.y = y;
  const T fy = evaluate(f, y);
  const T t = fy / fx;
  const T one_plus_u = 1.0 + u;
  const T weight = 1.0 + t + (1.0 + divide(ScalarTraits<T>::constant(x, 1.0), one_plus_u,
                                           "1 + u = 0")) * t * t;
  const T z = x - u * weight;
  out.z = z;
  const T fz = evaluate(f, z);

  // Newton form of the cubic through (z, y, x, x) with f'(x) at the double node.
  const auto coeffs = [&] {
    try {
      const RealOf<T> zero_gap{0};
      std::vector<NodeSample<T>> nodes{{z, {fz}}, {y, {fy}}, {x, {fx, dfx}}};
      return newton_coefficients<T>(nodes, zero_gap);
    } catch (const NearSingularNodesError&) {
      throw Singular{"coincident interpolation nodes"};
    }
  }();
  const T& f_zy = coeffs[1];
  const T& f_zyx = coeffs[2];
  const T& f_zyxx = coeffs[3];
  const T denom = f_zy + (z - y) * f_zyx + (z - y) * (z - x) * f_zyxx;
  out.next = z - divide(fz, denom, "interpolation derivative D = 0");
  return out;
}

template <Scalar T, class F>
StepOutcome<T> step_m2(const MethodParams& p, const F& f, const T& x, const T& fx,
                       const T& dfx) {
  StepOutcome<T> out{x, {}, {}, StepStatus::ok, {}};
  const T y = x - divide(fx, dfx, "f'(x) = 0");
  out.y = y;
  const T fy = evaluate(f, y);
  const T t = fy / fx;
  const T one_minus_t = 1.0 - t;
  const T z = y - divide(fy / dfx, one_minus_t * one_minus_t, "1 - f(y)/f(x) = 0");
  out.z = z;
  const T fz = evaluate(f, z);
  const T s = fz / fx;
  const T w = fz / fy;
  const T h = t + t * t / 2.0 - t * t * t / 2.0 + (-p.chun_beta - p.chun_gamma);
  const T j = s / 2.0 + p.chun_beta;
  const T pw = w / 2.0 + p.chun_gamma;
  const T base = 1.0 - h - j - pw;
  out.next = z - divide(fz / dfx, base * base, "1 - H - J - P = 0");
  return out;
}

template <Scalar T, class F>
StepOutcome<T> step_m3(const MethodParams& p, const F& f, const T& x, const T& fx,
                       const T& dfx) {
  StepOutcome<T> out{x, {}, {}, StepStatus::ok, {}};
  const T y = x - divide(fx, dfx, "f'(x) = 0");
  out.y = y;
  const T fy = evaluate(f, y);
  const T ratio = divide(fx + fy * p.neta_a, fx + fy * (p.neta_a - 2.0),
                         "f(x) + (A - 2) f(y) = 0");
  const T z = y - ratio * fy / dfx;
  out.z = z;
  const T fz = evaluate(f, z);
  const T inv_dfx = 1.0 / dfx;
  const T fy_gap = fy - fx;
  const T fz_gap = fz - fx;
  const T zeta_y = divide(divide(y - x, fy_gap, "F_y = 0") - inv_dfx, fy_gap, "F_y = 0");
  const T zeta_z = divide(divide(z - x, fz_gap, "F_z = 0") - inv_dfx, fz_gap, "F_z = 0");
  const T delta2 = -divide(zeta_y - zeta_z, fy_gap - fz_gap, "F_y - F_z = 0");
  const T delta1 = zeta_y + delta2 * fy_gap;
  const T fx2 = fx * fx;
  // Anchored at y, not z.
  out.next = y + delta1 * fx2 + delta2 * fx2 * fx;
  return out;
}

template <Scalar T, class F>
StepOutcome<T> step_m4(const MethodParams& p, const F& f, const T& x, const T& fx,
                       const T& dfx) {
  StepOutcome<T> out{x, {}, {}, StepStatus::ok, {}};
  const T y = x - divide(fx, dfx, "f'(x) = 0");
  out.y = y;
  const T fy = evaluate(f, y);
  const T z = y - fy / dfx * divide(fx, fx - fy * 2.0, "f(x) - 2 f(y) = 0");
  out.z = z;
  const T fz = evaluate(f, z);
  const T t = fz / fx;
  const T weight = 1.0 + divide(t, 1.0 + t * p.sharma_alpha, "1 + alpha t = 0");
  const T f_xy = newton_dd<T>({{x, {fx}}, {y, {fy}}}, "x - y = 0");
  const T f_xz = newton_dd<T>({{x, {fx}}, {z, {fz}}}, "x - z = 0");
  const T f_yz = newton_dd<T>({{y, {fy}}, {z, {fz}}}, "y - z = 0");
  out.next = z - divide(f_xy * fz, f_xz * f_yz, "f[x,z] f[y,z] = 0") * weight;
  return out;
}

template <Scalar T, class F>
StepOutcome<T> step_m5(const F& f, const T& x, const T& fx, const T& dfx) {
  StepOutcome<T> out{x, {}, {}, StepStatus::ok, {}};
  const T u = divide(fx, dfx, "f'(x) = 0");
  const T u2 = u * u;
  const T y = x - u * (1.0 + u2 * u2 * u);
  out.y = y;
  const T fy = evaluate(f, y);
  const T t = fy / fx;
  const T one_minus_t = 1.0 - t;
  const T z = y - divide(fy / dfx, one_minus_t * one_minus_t, "1 - f(y)/f(x) = 0");
  out.z = z;
  const T fz = evaluate(f, z);
  const T s = fz / fx;
  const T w = fz / fy;
  const T t2 = t * t;
  const T numer = 1.0 + t2 + t2 * t2 * 5.0 + w;
  const T base = 1.0 - t - s;
  out.next = z - fz / dfx * divide(numer, base * base, "1 - t - s = 0");
  return out;
}

template <Scalar T, class F>
StepOutcome<T> step_m6(const MethodParams& p, const F& f, const T& x, const T& fx,
                       const T& dfx) {
  StepOutcome<T> out{x, {}, {}, StepStatus::ok, {}};
  const T y = x - divide(fx, dfx, "f'(x) = 0");
  out.y = y;
  const T fy = evaluate(f, y);
  const T ratio = divide(fx + fy * p.thukral_beta, fx + fy * (p.thukral_beta - 2.0),
                         "f(x) + (beta - 2) f(y) = 0");
  const T z = y - fy / dfx * ratio;
  out.z = z;
  const T fz = evaluate(f, z);
  const T t = fy / fx;
  const T s = fz / fy;
  const T w = fz / fx;
  const T phi_base = 1.0 + divide(t, 1.0 - t * 2.0, "1 - 2t = 0");
  const T phi = phi_base * phi_base;
  const T psi = divide(s, 1.0 - s * p.thukral_alpha, "1 - alpha s = 0");
  const T omega = w * 4.0;
  out.next = z - fz / dfx * (phi + psi + omega);
  return out;
}

}  // namespace method_detail

/// One full iteration of `id` from x. Never throws for numerical trouble:
/// vanishing denominators and domain errors become StepStatus::singular,
/// overflow or NaN becomes StepStatus::nonfinite. If f vanishes exactly at x
/// or at an intermediate point, that point is returned as the next iterate.
/// A residual |f(x)| at or below the noise floor also counts as a root: at
/// that level the substep denominators are pure rounding noise.
template <Scalar T, UnivariateFunction<T> F>
StepOutcome<T> step(MethodId id, const MethodParams& params, const F& f, const T& x) {
  using namespace method_detail;
  StepOutcome<T> out{x, {}, {}, StepStatus::ok, {}};
  try {
    const auto [fx, dfx] = f.value_and_derivative(x);
    if (!is_finite_value(fx) || !is_finite_value(dfx)) {
      out.status = StepStatus::nonfinite;
      out.label = "f(x) or f'(x) not finite";
      return out;
    }
    if (is_exact_zero(fx) || magnitude(fx) <= ScalarTraits<T>::noise_floor(x)) return out;
    switch (id) {
      case MethodId::m1: out = step_m1(f, x, fx, dfx); break;
      case MethodId::m2: out = step_m2(params, f, x, fx, dfx); break;
      case MethodId::m3: out = step_m3(params, f, x, fx, dfx); break;
      case MethodId::m4: out = step_m4(params, f, x, fx, dfx); break;
      case MethodId::m5: out = step_m5(f, x, fx, dfx); break;
      case MethodId::m6: out = step_m6(params, f, x, fx, dfx); break;
    }
  } catch (const ExactRoot<T>& hit) {
    out.next = hit.at;
    out.status = StepStatus::ok;
    return out;
  } catch (const Singular& s) {
    out.next = ScalarTraits<T>::nan(x);
    out.status = StepStatus::singular;
    out.label = s.label;
    return out;
  } catch (const DomainError& e) {
    out.next = ScalarTraits<T>::nan(x);
    out.status = StepStatus::singular;
    out.label = e.what();
    return out;
  }
  if (!is_finite_value(out.next)) {
    out.status = StepStatus::nonfinite;
    out.label = "non-finite iterate";
  }
  return out;
}

/// Newton step followed by cubic Newton interpolation through (z, y, x, x).
template <Scalar T, UnivariateFunction<T> F>
StepOutcome<T> step_m1(const F& f, const T& x) {
  return step(MethodId::m1, MethodParams{}, f, x);
}

/// One step of a reference method M2..M6.
template <Scalar T, UnivariateFunction<T> F>
StepOutcome<T> step_reference(MethodId id, const MethodParams& params, const F& f, const T& x) {
  if (id == MethodId::m1) throw std::invalid_argument("step_reference takes M2..M6");
  return step(id, params, f, x);
}

}  // namespace octoroot
